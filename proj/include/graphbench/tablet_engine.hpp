#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "graphbench/iterators.hpp"
#include "graphbench/key.hpp"
#include "graphbench/stream.hpp"

namespace graphbench {

struct EngineConfig {
  // Buffered entries per tablet before the buffer is cut into a sorted run.
  size_t flushThreshold = 1u << 20;
  // Runs per tablet before they are merged back into one.
  size_t maxRuns = 8;
};

struct WriteReceipt {
  uint64_t entriesWritten = 0;
};

struct ScanOptions {
  // Row ranges to read; empty means the whole table.
  std::vector<RowRange> ranges;
  // One-shot iterators stacked above the table's scan-scope stack, applied
  // in list order.
  std::vector<IterDescriptor> extraIterators;
  // Bypass all iterators and version collapsing; every stored version of
  // every cell comes back.
  bool raw = false;
};

// Single-process sorted key-value store in the BigTable mold. Tables are
// split into tablets by row; each tablet is a write buffer plus immutable
// sorted runs, so clones share runs copy-on-write and scans read a stable
// snapshot. Iterators attach per table at scan or compaction scope and run
// in ascending priority order.
//
// Scans of a table with no combining iterator in the stack collapse each
// cell to its newest version; a combiner suppresses that and folds all
// versions instead, which is what makes lazy summing work: writers dump
// partial values and readers see totals.
class TabletEngine {
 public:
  explicit TabletEngine(EngineConfig cfg = {});
  ~TabletEngine();

  TabletEngine(const TabletEngine&) = delete;
  TabletEngine& operator=(const TabletEngine&) = delete;

  // Table admin. Split points are fixed at creation; splits[i] is the first
  // row of tablet i+1.
  void createTable(const std::string& name,
                   const std::vector<std::string>& splits = {});
  // Cheap structural copy: shares the source's runs, starts with empty
  // iterator stacks. Subsequent writes to either table do not affect the
  // other.
  void cloneTable(const std::string& source, const std::string& dest);
  void deleteTable(const std::string& name);
  void renameTable(const std::string& from, const std::string& to);
  bool hasTable(const std::string& name) const;
  std::vector<std::string> tables() const;
  std::vector<std::string> splitPoints(const std::string& table) const;
  std::vector<RowRange> tabletRanges(const std::string& table) const;
  size_t tabletCount(const std::string& table) const;

  // Stamps each update with a fresh timestamp and buffers it in its tablet.
  WriteReceipt write(const std::string& table, std::span<const Update> batch);

  // Sorted read of the whole table through its iterator stack.
  StreamPtr scan(const std::string& table, ScanOptions opts = {});
  // Like scan but one stream per tablet, each covering that tablet's range;
  // distinct tablets may be consumed by distinct threads.
  std::vector<StreamPtr> scanTablets(const std::string& table,
                                     ScanOptions opts = {});
  // Several independent streams over one snapshot of the table, for reading
  // a table against itself.
  std::vector<StreamPtr> scanMulti(const std::string& table, size_t copies,
                                   ScanOptions opts = {});

  // Rewrites every tablet through the compaction-scope stack. With no
  // iterators attached this is a pure merge: contents, including all cell
  // versions, are unchanged.
  void compact(const std::string& table);

  void attachIterator(const std::string& table, IterScope scope, int priority,
                      const IterDescriptor& desc);
  void removeIterator(const std::string& table, IterScope scope, int priority);
  std::map<int, IterDescriptor> iterators(const std::string& table,
                                          IterScope scope) const;

  // Total entries accepted by write() since construction or resetMetrics().
  uint64_t entriesWritten() const { return entriesWritten_.load(); }
  void resetMetrics() { entriesWritten_.store(0); }

 private:
  struct Tablet;
  struct Table;
  struct Snapshot;

  std::shared_ptr<Table> getTable(const std::string& name) const;
  Snapshot snapshot(Table& t);
  StreamPtr assemble(const Snapshot& snap, size_t tabletFrom, size_t tabletTo,
                     const ScanOptions& opts);
  static void flushTablet(Table& t, Tablet& tab, const EngineConfig& cfg);
  static void foldRuns(Table& t, Tablet& tab);

  EngineConfig cfg_;
  mutable std::shared_mutex mapMu_;
  std::map<std::string, std::shared_ptr<Table>> tables_;
  std::atomic<uint64_t> stamp_{1};
  std::atomic<uint64_t> entriesWritten_{0};
};

}  // namespace graphbench
