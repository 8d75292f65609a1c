#include "graphbench/key.hpp"

#include <algorithm>

#include "graphbench/errors.hpp"

namespace graphbench {

int compareCell(const Key& a, const Key& b) {
  if (int c = a.row.compare(b.row)) return c;
  if (int c = a.family.compare(b.family)) return c;
  return a.qualifier.compare(b.qualifier);
}

bool sameCell(const Key& a, const Key& b) { return compareCell(a, b) == 0; }

bool operator<(const Key& a, const Key& b) {
  if (int c = compareCell(a, b)) return c < 0;
  return a.timestamp > b.timestamp;  // newer first
}

bool operator==(const Key& a, const Key& b) {
  return a.timestamp == b.timestamp && sameCell(a, b);
}

bool operator<(const Entry& a, const Entry& b) { return a.key < b.key; }

RowRange RowRange::exact(std::string_view row) {
  RowRange r;
  r.begin = std::string(row);
  r.end = std::string(row) + '\0';
  return r;
}

RowRange RowRange::startingAt(std::string_view row) {
  RowRange r;
  r.begin = std::string(row);
  return r;
}

bool RowRange::contains(std::string_view row) const {
  if (row < begin) return false;
  return !end || row < *end;
}

bool RowRange::emptyInterval() const { return end && *end <= begin; }

std::vector<RowRange> normalizeRanges(std::vector<RowRange> ranges) {
  for (const auto& r : ranges) {
    if (r.end && *r.end < r.begin)
      throw ConfigError("inverted range: end '" + *r.end + "' < begin '" +
                        r.begin + "'");
  }
  std::erase_if(ranges, [](const RowRange& r) { return r.emptyInterval(); });
  std::sort(ranges.begin(), ranges.end(),
            [](const RowRange& a, const RowRange& b) {
              if (a.begin != b.begin) return a.begin < b.begin;
              if (a.unbounded() != b.unbounded()) return b.unbounded();
              return a.end < b.end;
            });
  std::vector<RowRange> out;
  for (auto& r : ranges) {
    if (!out.empty()) {
      RowRange& last = out.back();
      // merge when the previous range reaches this one's start
      if (last.unbounded()) break;
      if (r.begin <= *last.end) {
        if (!r.end)
          last.end.reset();
        else if (*r.end > *last.end)
          last.end = *r.end;
        continue;
      }
    }
    out.push_back(std::move(r));
    if (out.back().unbounded()) break;
  }
  return out;
}

bool rangesContain(const std::vector<RowRange>& ranges, std::string_view row) {
  for (const auto& r : ranges)
    if (r.contains(row)) return true;
  return false;
}

}  // namespace graphbench
