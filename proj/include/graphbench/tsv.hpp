#pragma once

#include <span>
#include <string>
#include <vector>

#include "graphbench/kernels.hpp"

namespace graphbench {

// Triple file format: `row<TAB>qualifier<TAB>value<LF>`, UTF-8, no header.

// DataFormatError (with a 1-based line number) on anything that is not
// exactly three fields with a numeric value. Blank trailing line is fine.
std::vector<Triple> parseTsv(const std::string& text);

std::string renderTsv(std::span<const Triple> triples);

// IoError when the file cannot be opened or fully written.
std::vector<Triple> readTsvFile(const std::string& path);
void writeTsvFile(const std::string& path, std::span<const Triple> triples);

}  // namespace graphbench
