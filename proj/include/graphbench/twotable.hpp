#pragma once

#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "graphbench/iterators.hpp"
#include "graphbench/stream.hpp"
#include "graphbench/tablet_engine.hpp"

namespace graphbench {

struct MergeLimits {
  // Cap on entries buffered for one row of one side during row alignment;
  // past this the merge aborts with ResourceError rather than thrash.
  size_t rowBufferCap = size_t(1) << 26;
};

// Custom per-row multiply for row-aligned merges. Called once per row with
// both sides' entries for that row; emissions may be in any order, the
// caller re-sorts by writing them through a table. With emitNonMatching set
// the fn also sees rows present on only one side (the other span empty).
using RowMultiplyFn =
    std::function<void(const std::string& row, std::span<const Entry> aRow,
                       std::span<const Entry> bRow, const EmitFn& emit)>;

// The stock row multiply: the Cartesian product of the two rows' entries,
// one ⊗ per pair. An entry of aT at (row, _, i) times an entry of b at
// (row, _, j) lands at (i, j), which makes the whole pass compute
// transpose(aT) times b row by row.
RowMultiplyFn cartesianRowFn(BinaryOp multiply);

struct RowMergeOptions {
  bool emitNonMatching = false;
  MergeLimits limits;
};

// Aligns two sorted streams on row and applies fn to each aligned pair of
// rows, streaming emissions to emit. Rows present on one side only are
// skipped unless emitNonMatching. Returns the number of rows handed to fn.
uint64_t twoTableRow(EntryStream& aT, EntryStream& b, const RowMultiplyFn& fn,
                     const EmitFn& emit, const RowMergeOptions& opts = {});

struct EwiseOptions {
  bool emitNonMatching = false;
};

// Aligns two sorted streams on full (row, family, qualifier) and applies op
// to each matched pair of values. With emitNonMatching, single-sided
// entries pass through unchanged, which turns an intersection (element-wise
// multiply) into a union (element-wise add).
uint64_t twoTableEwise(EntryStream& a, EntryStream& b, const BinaryOp& op,
                       const EmitFn& emit, const EwiseOptions& opts = {});

// Commutative-monoid accumulator fed a copy of every entry a writer emits.
// Partial states from different tablets merge in any order.
class Reducer {
 public:
  virtual ~Reducer() = default;
  virtual void combine(const Entry& e) = 0;
  virtual void merge(const Reducer& other) = 0;
  virtual std::unique_ptr<Reducer> clone() const = 0;  // fresh zero state
  virtual std::string render() const = 0;
};

// Counts entries.
class NnzReducer : public Reducer {
 public:
  void combine(const Entry&) override { count_ += 1; }
  void merge(const Reducer& other) override;
  std::unique_ptr<Reducer> clone() const override;
  std::string render() const override { return std::to_string(count_); }
  int64_t count() const { return count_; }

 private:
  int64_t count_ = 0;
};

// Collects the set of distinct values seen.
class ValueSetReducer : public Reducer {
 public:
  void combine(const Entry& e) override { values_.insert(e.value); }
  void merge(const Reducer& other) override;
  std::unique_ptr<Reducer> clone() const override;
  std::string render() const override;  // sorted, comma-joined
  const std::set<std::string>& values() const { return values_; }

 private:
  std::set<std::string> values_;
};

// Counts entries whose numeric value is at least the threshold.
class ThresholdCountReducer : public Reducer {
 public:
  explicit ThresholdCountReducer(Numeric threshold)
      : threshold_(threshold) {}
  void combine(const Entry& e) override;
  void merge(const Reducer& other) override;
  std::unique_ptr<Reducer> clone() const override;
  std::string render() const override { return std::to_string(count_); }
  int64_t count() const { return count_; }

 private:
  Numeric threshold_;
  int64_t count_ = 0;
};

struct PartialCounters {
  uint64_t partialProducts = 0;  // ⊗ results that survived in-stack filters
  uint64_t entriesEmitted = 0;   // entries handed to the destination table
};

// What one tablet-scope worker reports back: its counters plus its share of
// the reducer state, merged at the call site.
struct PartialResult {
  size_t tabletId = 0;
  PartialCounters counters;
  std::unique_ptr<Reducer> reducerState;
};

// Batches emitted entries into writes against a destination table.
// Optionally transposes (row and qualifier swap) and feeds a reducer. The
// destination's combiner, not this class, is what resolves colliding keys.
class RemoteWriter {
 public:
  static constexpr size_t kBatchSize = 1 << 16;

  RemoteWriter(TabletEngine& engine, std::string dest, bool transpose = false,
               const Reducer* reducerProto = nullptr);

  void accept(Entry e);
  // Flushes the tail batch and returns the counters and reducer state.
  PartialResult finish(size_t tabletId = 0);

 private:
  void flush();

  TabletEngine& engine_;
  std::string dest_;
  bool transpose_;
  std::unique_ptr<Reducer> reducer_;
  std::vector<Update> batch_;
  PartialCounters counters_;
};

// Drains a stream through a RemoteWriter; the one-call form of the above.
PartialResult remoteWrite(TabletEngine& engine, EntryStream& input,
                          const std::string& dest, bool transpose = false,
                          const Reducer* reducerProto = nullptr);

// Scan of another table as a merge input.
StreamPtr remoteSource(TabletEngine& engine, const std::string& table,
                       ScanOptions opts = {});

// Two independent streams over one snapshot of the same table, so a table
// can be merged against itself without a copy and without either stream's
// seeks perturbing the other.
std::pair<StreamPtr, StreamPtr> selfSource(TabletEngine& engine,
                                           const std::string& table,
                                           ScanOptions opts = {});

}  // namespace graphbench
