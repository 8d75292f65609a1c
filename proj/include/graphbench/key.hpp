#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphbench {

// Address of one cell. Keys sort lexicographically by (row, family,
// qualifier) ascending, then by timestamp descending, so the newest version
// of a cell is encountered first in a scan.
struct Key {
  std::string row;
  std::string family;
  std::string qualifier;
  uint64_t timestamp = 0;
};

// Three-way comparison of the cell coordinates only, ignoring timestamp.
int compareCell(const Key& a, const Key& b);
bool sameCell(const Key& a, const Key& b);

bool operator<(const Key& a, const Key& b);
bool operator==(const Key& a, const Key& b);

// One stored cell: key plus uninterpreted value bytes.
struct Entry {
  Key key;
  std::string value;
};

bool operator<(const Entry& a, const Entry& b);

// Write-side record. The engine stamps the timestamp at ingest.
struct Update {
  std::string row;
  std::string family;
  std::string qualifier;
  std::string value;
};

// Half-open row interval [begin, end). An absent end means unbounded; the
// default-constructed range covers everything.
struct RowRange {
  std::string begin;
  std::optional<std::string> end;

  static RowRange all() { return {}; }
  // The smallest range containing exactly one row.
  static RowRange exact(std::string_view row);
  static RowRange startingAt(std::string_view row);

  bool contains(std::string_view row) const;
  bool unbounded() const { return !end.has_value(); }
  // True when end <= begin, i.e. the range can never match.
  bool emptyInterval() const;
};

// Sorts, drops empty intervals, and merges overlapping or adjacent ranges so
// the result is a disjoint ascending list. Throws ConfigError if any range
// has end < begin.
std::vector<RowRange> normalizeRanges(std::vector<RowRange> ranges);

// True if the row falls in any of the (normalized) ranges.
bool rangesContain(const std::vector<RowRange>& ranges, std::string_view row);

}  // namespace graphbench
