#include "graphbench/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>

#include "graphbench/errors.hpp"

namespace graphbench {

void validateGenParams(const GenParams& p) {
  if (p.scale < 1 || p.scale > 26)
    throw ParameterError("scale must be in [1, 26], got " +
                         std::to_string(p.scale));
  if (p.edgesPerVertex < 1 || p.edgesPerVertex > 1024)
    throw ParameterError("edgesPerVertex must be in [1, 1024], got " +
                         std::to_string(p.edgesPerVertex));
  double sum = 0.0;
  for (double q : p.rmatProbs) {
    if (!(q > 0.0)) throw ParameterError("quadrant probabilities must be positive");
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ParameterError("quadrant probabilities must sum to 1");
}

std::string vertexId(uint64_t v, int scale) {
  uint64_t maxId = (uint64_t{1} << scale) - 1;
  std::string digits = std::to_string(maxId);
  std::string s = std::to_string(v);
  if (s.size() < digits.size()) s.insert(0, digits.size() - s.size(), '0');
  return s;
}

namespace {

// Uniform double in [0, 1) built from the top 53 bits, so the stream is the
// same on every platform for a given seed.
double unitDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<Triple> generate(const GenParams& p) {
  validateGenParams(p);
  std::mt19937_64 rng(p.seed);
  uint64_t n = uint64_t{1} << p.scale;
  uint64_t m = n * static_cast<uint64_t>(p.edgesPerVertex);
  double a = p.rmatProbs[0];
  double b = p.rmatProbs[1];
  double c = p.rmatProbs[2];
  std::vector<Triple> out;
  out.reserve(m);
  for (uint64_t e = 0; e < m; ++e) {
    uint64_t row = 0, col = 0;
    for (int level = 0; level < p.scale; ++level) {
      double u = unitDouble(rng);
      row <<= 1;
      col <<= 1;
      if (u < a) {
        // top-left: both bits 0
      } else if (u < a + b) {
        col |= 1;
      } else if (u < a + b + c) {
        row |= 1;
      } else {
        row |= 1;
        col |= 1;
      }
    }
    out.push_back(Triple{vertexId(row, p.scale), vertexId(col, p.scale), "1"});
  }
  return out;
}

std::vector<Triple> symmetrize(std::span<const Triple> raw) {
  std::set<std::pair<std::string, std::string>> cells;
  for (const auto& t : raw) {
    if (t.row == t.col) continue;
    cells.emplace(t.row, t.col);
    cells.emplace(t.col, t.row);
  }
  std::vector<Triple> out;
  out.reserve(cells.size());
  for (const auto& [r, q] : cells) out.push_back(Triple{r, q, "1"});
  return out;
}

}  // namespace graphbench
