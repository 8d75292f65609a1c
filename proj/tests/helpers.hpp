#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "graphbench/generator.hpp"
#include "graphbench/kernels.hpp"
#include "graphbench/oracle.hpp"
#include "graphbench/tablet_engine.hpp"

namespace graphbench::testutil {

inline std::vector<Entry> entries(
    std::initializer_list<std::pair<std::string, std::string>> rowQualValue1) {
  // (row, qual) pairs valued "1", timestamps descending in list order
  std::vector<Entry> out;
  uint64_t ts = rowQualValue1.size();
  for (const auto& [row, qual] : rowQualValue1)
    out.push_back(Entry{Key{row, "", qual, ts--}, "1"});
  return out;
}

inline Entry entry(std::string row, std::string qual, std::string value,
                   uint64_t ts = 1) {
  return Entry{Key{std::move(row), "", std::move(qual), ts}, std::move(value)};
}

inline Triple triple(std::string row, std::string col, std::string value) {
  return Triple{std::move(row), std::move(col), std::move(value)};
}

// Unique random cells over a rowIds x colIds grid with the given density,
// values drawn from [-9,9] minus zero.
inline std::vector<Triple> randomMatrix(std::mt19937_64& rng, int rows,
                                        int cols, double density) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> val(-9, 8);
  std::vector<Triple> out;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (coin(rng) >= density) continue;
      int v = val(rng);
      if (v >= 0) ++v;  // skip zero
      out.push_back(Triple{vertexId(r, 7), vertexId(c, 7),
                           std::to_string(v)});
    }
  }
  return out;
}

// Erdos-Renyi simple graph over zero-padded ids.
inline EdgeSet randomGraph(std::mt19937_64& rng, int vertices, double p) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  EdgeSet g;
  for (int u = 0; u < vertices; ++u)
    for (int v = u + 1; v < vertices; ++v)
      if (coin(rng) < p) g.add(vertexId(u, 9), vertexId(v, 9));
  return g;
}

inline EdgeSet pathP3() {
  EdgeSet g;
  g.add("1", "2");
  g.add("2", "3");
  return g;
}

inline EdgeSet cycleC3() {
  EdgeSet g;
  g.add("1", "2");
  g.add("2", "3");
  g.add("1", "3");
  return g;
}

inline EdgeSet cycleC4() {
  EdgeSet g;
  g.add("1", "2");
  g.add("2", "3");
  g.add("3", "4");
  g.add("1", "4");
  return g;
}

inline EdgeSet completeK4() {
  EdgeSet g;
  for (char u = '1'; u <= '4'; ++u)
    for (char v = static_cast<char>(u + 1); v <= '4'; ++v)
      g.add(std::string(1, u), std::string(1, v));
  return g;
}

}  // namespace graphbench::testutil
