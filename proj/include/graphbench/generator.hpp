#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graphbench/kernels.hpp"

namespace graphbench {

// Parameters for the recursive power-law generator. Vertex count is
// 2^scale; edge count is edgesPerVertex * 2^scale before symmetrization.
struct GenParams {
  int scale = 10;
  int edgesPerVertex = 16;
  uint64_t seed = 1;
  // Quadrant probabilities (a, b, c, d); the Graph500 defaults.
  std::array<double, 4> rmatProbs{0.57, 0.19, 0.19, 0.05};
};

// ParameterError unless probabilities are positive and sum to 1 within
// 1e-12, 1 <= scale <= 26, and 1 <= edgesPerVertex <= 1024.
void validateGenParams(const GenParams& p);

// Decimal id zero-padded to the width of 2^scale - 1, so lexicographic
// order over keys equals numeric order over vertices.
std::string vertexId(uint64_t v, int scale);

// Raw directed edge triples, value "1", in generation order. Duplicates and
// self-loops are kept; symmetrize() cleans them up. Deterministic per seed.
std::vector<Triple> generate(const GenParams& p);

// Union with the transpose, dedupe, drop the diagonal: simple undirected
// adjacency triples, sorted.
std::vector<Triple> symmetrize(std::span<const Triple> raw);

}  // namespace graphbench
