#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "graphbench/twotable.hpp"

namespace graphbench {

// Matrix entry in (row, col, value) form; the family is implicitly empty.
struct Triple {
  std::string row;
  std::string col;
  std::string value;
};

bool operator<(const Triple& a, const Triple& b);
bool operator==(const Triple& a, const Triple& b);

struct KernelMetrics {
  uint64_t partialProducts = 0;
  uint64_t entriesWritten = 0;
};

// The ops a multiply carries: ⊗ applied per entry pair inside the row merge,
// and the registered name of ⊕, which becomes the destination's combiner so
// colliding partial products sum lazily.
struct Semiring {
  BinaryOp multiply;
  std::string sumOp;
};

Semiring plusTimes();
Semiring maxPlus();

// Extra iterator descriptors spliced into a multiply's stacks: on the
// aT-side source, the b-side source, and between ⊗ and the writer. The
// afterMultiply point accepts per-entry stages only (a combiner would need
// a sort, which is exactly where fusion stops).
struct FusionHooks {
  std::vector<IterDescriptor> leftSource;
  std::vector<IterDescriptor> rightSource;
  std::vector<IterDescriptor> afterMultiply;
};

struct MultOptions {
  FusionHooks fusion;
  // Overrides the default Cartesian-product row multiply.
  RowMultiplyFn rowFn;
  // Hand single-sided rows to rowFn too.
  bool emitNonMatching = false;
  // Merged across tablet workers into this reducer when set.
  Reducer* reducer = nullptr;
  // When set, receives one PartialResult per b-side tablet.
  std::vector<PartialResult>* partials = nullptr;
  MergeLimits limits;
};

// Writes triples into a fresh table. With a sum op named, a combiner is
// attached at scan and compaction scope so colliding coordinates fold
// lazily; without one, the newest write wins.
void buildMatrix(TabletEngine& engine, const std::string& dest,
                 std::span<const Triple> triples, const std::string& sumOp = "",
                 const std::vector<std::string>& splits = {});

// The inverse transport: a full combined scan as sorted triples.
std::vector<Triple> extracTuples(TabletEngine& engine,
                                 const std::string& table);

// dest ⊕= transpose(aT)·b under the semiring, one row-aligned streaming
// pass per b-side tablet. aT must hold the transpose of the left operand.
// dest is created with b's split points when absent; its combiner must be
// (or becomes) the semiring's ⊕.
KernelMetrics tableMult(TabletEngine& engine, const std::string& aT,
                        const std::string& b, const Semiring& ring,
                        const std::string& dest, const MultOptions& opts = {});

// Element-wise union (add) and intersection (multiply) into a fresh dest.
KernelMetrics ewiseAdd(TabletEngine& engine, const std::string& a,
                       const std::string& b, const BinaryOp& add,
                       const std::string& dest);
KernelMetrics ewiseMult(TabletEngine& engine, const std::string& a,
                        const std::string& b, const BinaryOp& multiply,
                        const std::string& dest);

// Copies the sub-matrix with row in rowRanges and qualifier in colRanges.
// Rows are skipped by seeking; columns fall to a filter above the scan.
// Empty range lists select nothing.
KernelMetrics extract(TabletEngine& engine, const std::string& table,
                      std::vector<RowRange> rowRanges,
                      std::vector<RowRange> colRanges,
                      const std::string& dest);

// Materialized apply: dest = f(table) with zero results pruned. The fusion
// form is plain attachIterator with an apply descriptor.
KernelMetrics applyKernel(TabletEngine& engine, const std::string& table,
                          const IterDescriptor& applyIter,
                          const std::string& dest);

// Re-keys every entry. Collisions are fine when dest folds them with a
// combiner; otherwise they raise CollisionError.
using KeyTransform = std::function<Key(const Key&)>;
KernelMetrics assign(TabletEngine& engine, const std::string& table,
                     const KeyTransform& transform, const std::string& dest);

// Folds the whole table into a reducer, one partial per tablet, merged
// before returning.
std::unique_ptr<Reducer> reduceKernel(TabletEngine& engine,
                                      const std::string& table,
                                      const Reducer& proto);

// Entry count of the combined view, i.e. reduceKernel with nnzCount.
int64_t nnz(TabletEngine& engine, const std::string& table);

KernelMetrics transposeKernel(TabletEngine& engine, const std::string& table,
                              const std::string& dest);

}  // namespace graphbench
