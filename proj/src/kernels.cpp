#include "graphbench/kernels.hpp"

#include <algorithm>
#include <exception>
#include <set>
#include <thread>

#include "graphbench/errors.hpp"
#include "graphbench/numeric.hpp"

namespace graphbench {

bool operator<(const Triple& a, const Triple& b) {
  if (a.row != b.row) return a.row < b.row;
  if (a.col != b.col) return a.col < b.col;
  return a.value < b.value;
}

bool operator==(const Triple& a, const Triple& b) {
  return a.row == b.row && a.col == b.col && a.value == b.value;
}

Semiring plusTimes() {
  return {[](const Numeric& a, const Numeric& b) { return a.times(b); },
          "sum"};
}

Semiring maxPlus() {
  return {[](const Numeric& a, const Numeric& b) { return a.plus(b); }, "max"};
}

void buildMatrix(TabletEngine& engine, const std::string& dest,
                 std::span<const Triple> triples, const std::string& sumOp,
                 const std::vector<std::string>& splits) {
  for (const auto& t : triples) {
    if (t.row.empty() || t.col.empty())
      throw DataFormatError("triple with empty row or column");
    Numeric::parse(t.value);  // malformed values fail before the table exists
  }
  if (!sumOp.empty()) checkSumContract(sumOp);
  engine.createTable(dest, splits);
  if (!sumOp.empty()) {
    engine.attachIterator(dest, IterScope::scan, 10, combinerDesc(sumOp));
    engine.attachIterator(dest, IterScope::compaction, 10, combinerDesc(sumOp));
  }
  std::vector<Update> batch;
  batch.reserve(std::min<size_t>(triples.size(), RemoteWriter::kBatchSize));
  for (const auto& t : triples) {
    batch.push_back(Update{t.row, "", t.col, t.value});
    if (batch.size() >= RemoteWriter::kBatchSize) {
      engine.write(dest, batch);
      batch.clear();
    }
  }
  if (!batch.empty()) engine.write(dest, batch);
}

std::vector<Triple> extracTuples(TabletEngine& engine,
                                 const std::string& table) {
  std::vector<Triple> out;
  auto s = engine.scan(table);
  while (s->hasNext()) {
    Entry e = s->next();
    out.push_back(Triple{std::move(e.key.row), std::move(e.key.qualifier),
                         std::move(e.value)});
  }
  return out;
}

namespace {

// Attaches the semiring's ⊕ to dest at both scopes unless an equivalent
// combiner is already there. A different fold already configured is a
// conflict, not something to silently stack on.
void ensureCombiner(TabletEngine& engine, const std::string& table,
                    const std::string& sumOp) {
  for (IterScope scope : {IterScope::scan, IterScope::compaction}) {
    auto iters = engine.iterators(table, scope);
    bool found = false;
    for (const auto& [pri, desc] : iters) {
      if (!IterRegistry::global().combines(desc.name)) continue;
      if (desc.name == "combiner" && desc.optionOr("op", "") == sumOp) {
        found = true;
        break;
      }
      throw ConfigError("table '" + table +
                        "' already folds versions with a different op");
    }
    if (!found) {
      int pri = iters.empty() ? 10 : iters.begin()->first - 1;
      engine.attachIterator(table, scope, pri, combinerDesc(sumOp));
    }
  }
}

StreamPtr stackOn(StreamPtr s, const std::vector<IterDescriptor>& descs,
                  TabletEngine* engine) {
  for (const auto& d : descs)
    s = IterRegistry::global().build(d, std::move(s), engine);
  return s;
}

}  // namespace

KernelMetrics tableMult(TabletEngine& engine, const std::string& aT,
                        const std::string& b, const Semiring& ring,
                        const std::string& dest, const MultOptions& opts) {
  if (!ring.multiply) throw ConfigError("tableMult needs a multiply op");
  checkSumContract(ring.sumOp);
  if (!engine.hasTable(aT))
    throw NotFoundError("no such table '" + aT + "'");
  if (!engine.hasTable(dest))
    engine.createTable(dest, engine.splitPoints(b));
  ensureCombiner(engine, dest, ring.sumOp);

  const RowMultiplyFn fn =
      opts.rowFn ? opts.rowFn : cartesianRowFn(ring.multiply);
  auto ranges = engine.tabletRanges(b);

  std::vector<PartialResult> partials(ranges.size());
  std::vector<std::exception_ptr> failures(ranges.size());

  auto worker = [&](size_t idx) {
    try {
      ScanOptions so;
      so.ranges = {ranges[idx]};
      StreamPtr left, right;
      if (aT == b) {
        auto [s1, s2] = selfSource(engine, b, so);
        left = std::move(s1);
        right = std::move(s2);
      } else {
        left = engine.scan(aT, so);
        right = engine.scan(b, so);
      }
      left = stackOn(std::move(left), opts.fusion.leftSource, &engine);
      right = stackOn(std::move(right), opts.fusion.rightSource, &engine);

      RemoteWriter writer(engine, dest, /*transpose=*/false,
                          opts.reducer);
      EmitFn sink = buildPushChain(
          opts.fusion.afterMultiply,
          [&writer](Entry&& e) { writer.accept(std::move(e)); }, &engine);
      RowMergeOptions ro;
      ro.emitNonMatching = opts.emitNonMatching;
      ro.limits = opts.limits;
      twoTableRow(*left, *right, fn, sink, ro);
      partials[idx] = writer.finish(idx);
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  };

  if (ranges.size() == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(ranges.size());
    for (size_t i = 0; i < ranges.size(); ++i)
      threads.emplace_back(worker, i);
    for (auto& t : threads) t.join();
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  KernelMetrics km;
  for (auto& pr : partials) {
    km.partialProducts += pr.counters.partialProducts;
    km.entriesWritten += pr.counters.entriesEmitted;
    if (pr.reducerState && opts.reducer) opts.reducer->merge(*pr.reducerState);
  }
  if (opts.partials)
    for (auto& pr : partials) opts.partials->push_back(std::move(pr));
  return km;
}

namespace {

KernelMetrics ewiseCommon(TabletEngine& engine, const std::string& a,
                          const std::string& b, const BinaryOp& op,
                          const std::string& dest, bool unionMode) {
  auto sa = engine.scan(a);
  auto sb = engine.scan(b);
  engine.createTable(dest, engine.splitPoints(a));
  RemoteWriter writer(engine, dest);
  EwiseOptions eo;
  eo.emitNonMatching = unionMode;
  uint64_t ops = twoTableEwise(
      *sa, *sb, op, [&writer](Entry&& e) { writer.accept(std::move(e)); }, eo);
  auto pr = writer.finish();
  return KernelMetrics{ops, pr.counters.entriesEmitted};
}

}  // namespace

KernelMetrics ewiseAdd(TabletEngine& engine, const std::string& a,
                       const std::string& b, const BinaryOp& add,
                       const std::string& dest) {
  return ewiseCommon(engine, a, b, add, dest, /*unionMode=*/true);
}

KernelMetrics ewiseMult(TabletEngine& engine, const std::string& a,
                        const std::string& b, const BinaryOp& multiply,
                        const std::string& dest) {
  return ewiseCommon(engine, a, b, multiply, dest, /*unionMode=*/false);
}

KernelMetrics extract(TabletEngine& engine, const std::string& table,
                      std::vector<RowRange> rowRanges,
                      std::vector<RowRange> colRanges,
                      const std::string& dest) {
  if (!engine.hasTable(table))
    throw NotFoundError("no such table '" + table + "'");
  rowRanges = normalizeRanges(std::move(rowRanges));
  colRanges = normalizeRanges(std::move(colRanges));
  engine.createTable(dest, engine.splitPoints(table));
  if (rowRanges.empty() || colRanges.empty()) return {};
  ScanOptions so;
  so.ranges = rowRanges;
  so.extraIterators = {columnRangeDesc(colRanges)};
  auto s = engine.scan(table, so);
  auto pr = remoteWrite(engine, *s, dest);
  return KernelMetrics{pr.counters.partialProducts,
                       pr.counters.entriesEmitted};
}

KernelMetrics applyKernel(TabletEngine& engine, const std::string& table,
                          const IterDescriptor& applyIter,
                          const std::string& dest) {
  ScanOptions so;
  so.extraIterators = {applyIter};
  auto s = engine.scan(table, so);
  engine.createTable(dest, engine.splitPoints(table));
  auto pr = remoteWrite(engine, *s, dest);
  return KernelMetrics{pr.counters.partialProducts,
                       pr.counters.entriesEmitted};
}

KernelMetrics assign(TabletEngine& engine, const std::string& table,
                     const KeyTransform& transform, const std::string& dest) {
  auto s = engine.scan(table);
  if (!engine.hasTable(dest)) engine.createTable(dest);
  bool destFolds = false;
  for (IterScope scope : {IterScope::scan, IterScope::compaction})
    for (const auto& [pri, desc] : engine.iterators(dest, scope))
      destFolds = destFolds || IterRegistry::global().combines(desc.name);
  std::set<std::string> seen;
  RemoteWriter writer(engine, dest);
  while (s->hasNext()) {
    Entry e = s->next();
    Key k = transform(e.key);
    if (!destFolds) {
      std::string flat = k.row + '\0' + k.family + '\0' + k.qualifier;
      if (!seen.insert(std::move(flat)).second)
        throw CollisionError("assign maps two entries to (" + k.row + ", " +
                             k.qualifier + ") and '" + dest +
                             "' has no combiner");
    }
    writer.accept(Entry{std::move(k), std::move(e.value)});
  }
  auto pr = writer.finish();
  return KernelMetrics{pr.counters.partialProducts,
                       pr.counters.entriesEmitted};
}

std::unique_ptr<Reducer> reduceKernel(TabletEngine& engine,
                                      const std::string& table,
                                      const Reducer& proto) {
  auto merged = proto.clone();
  for (auto& s : engine.scanTablets(table)) {
    auto partial = proto.clone();
    while (s->hasNext()) partial->combine(s->next());
    merged->merge(*partial);
  }
  return merged;
}

int64_t nnz(TabletEngine& engine, const std::string& table) {
  NnzReducer proto;
  auto r = reduceKernel(engine, table, proto);
  return dynamic_cast<const NnzReducer&>(*r).count();
}

KernelMetrics transposeKernel(TabletEngine& engine, const std::string& table,
                              const std::string& dest) {
  auto s = engine.scan(table);
  engine.createTable(dest);
  auto pr = remoteWrite(engine, *s, dest, /*transpose=*/true);
  return KernelMetrics{pr.counters.partialProducts,
                       pr.counters.entriesEmitted};
}

}  // namespace graphbench
