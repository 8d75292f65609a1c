#include "graphbench/tsv.hpp"

#include <fstream>
#include <sstream>

#include "graphbench/errors.hpp"
#include "graphbench/numeric.hpp"

namespace graphbench {

std::vector<Triple> parseTsv(const std::string& text) {
  std::vector<Triple> out;
  size_t pos = 0;
  size_t lineNo = 0;
  while (pos < text.size()) {
    ++lineNo;
    size_t eol = text.find('\n', pos);
    std::string line =
        text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
    pos = eol == std::string::npos ? text.size() : eol + 1;
    if (line.empty()) continue;
    size_t t1 = line.find('\t');
    size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos ||
        line.find('\t', t2 + 1) != std::string::npos)
      throw DataFormatError("line " + std::to_string(lineNo) +
                            ": expected exactly 3 tab-separated fields");
    Triple t{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1),
             line.substr(t2 + 1)};
    if (t.row.empty())
      throw DataFormatError("line " + std::to_string(lineNo) + ": empty row");
    try {
      Numeric::parse(t.value);
    } catch (const DataFormatError&) {
      throw DataFormatError("line " + std::to_string(lineNo) +
                            ": value is not numeric: " + t.value);
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::string renderTsv(std::span<const Triple> triples) {
  std::string out;
  for (const auto& t : triples) {
    out += t.row;
    out += '\t';
    out += t.col;
    out += '\t';
    out += t.value;
    out += '\n';
  }
  return out;
}

std::vector<Triple> readTsvFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed on " + path);
  return parseTsv(buf.str());
}

void writeTsvFile(const std::string& path, std::span<const Triple> triples) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << renderTsv(triples);
  out.flush();
  if (!out) throw IoError("write failed on " + path);
}

}  // namespace graphbench
