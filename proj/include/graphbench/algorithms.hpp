#pragma once

#include <functional>
#include <string>
#include <vector>

#include "graphbench/kernels.hpp"

namespace graphbench {

enum class Strictness { lax, strict };

struct PassMetrics {
  uint64_t partialProducts = 0;
  uint64_t entriesWritten = 0;
};

struct AlgoMetrics {
  uint64_t partialProducts = 0;
  uint64_t entriesWritten = 0;
  int64_t nnzOutput = 0;
  // Multiply passes; Jaccard always runs one, k-truss runs until
  // convergence and counts the final no-change pass too.
  uint64_t iterations = 0;
  std::vector<PassMetrics> passes;
};

// Checks that a table is a simple undirected adjacency matrix: all values
// 1, symmetric, empty diagonal. Throws ValidationError describing the first
// violation.
void validateAdjacency(TabletEngine& engine, const std::string& table);

// Writes one (vertex, "deg", count) entry per row of the adjacency. strict
// validates the input and throws; lax only warns on stderr about asymmetry.
void computeDegrees(TabletEngine& engine, const std::string& adjacency,
                    const std::string& dest,
                    Strictness strictness = Strictness::lax);

struct JaccardOptions {
  MergeLimits limits;
};

// Jaccard coefficients of every vertex pair with at least one common
// neighbor, strictly upper keys. One fused row-aligned pass over A against
// itself: the lower triangle feeds one side, the upper the other, a custom
// row fn emits all wedge partial products, a fused strict-upper filter
// drops the redundant half, and the destination's sum combiner folds counts.
// A scan-scope normalize then divides each count by the neighborhood union
// using the degree table as a broadcast side input.
AlgoMetrics jaccard(TabletEngine& engine, const std::string& adjacency,
                    const std::string& degrees, const std::string& dest,
                    const JaccardOptions& opts = {});

struct KTrussOptions {
  MergeLimits limits;
  // Called after each pass's parity filter with the surviving (table B)
  // triples and the pass's input adjacency (table A) triples. Test hook for
  // the support-parity invariant; leave empty otherwise.
  std::function<void(uint64_t pass, const std::vector<Triple>& b,
                     const std::vector<Triple>& a)>
      audit;
};

// k-truss of the adjacency: repeatedly counts triangle support per edge via
// one multiply pass (⊗ ≡ 2 on nonzero pairs, no-diagonal fused, summed into
// a clone of A so original edges are odd and everything else even), then
// compacts through drop-even, support-threshold, and set-to-one filters.
// Stops when the entry count stops changing or hits zero.
AlgoMetrics ktruss(TabletEngine& engine, const std::string& adjacency,
                   int64_t k, const std::string& dest,
                   const KTrussOptions& opts = {});

}  // namespace graphbench
