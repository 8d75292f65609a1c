#include "graphbench/tablet_engine.hpp"

#include <algorithm>
#include <mutex>
#include <optional>

#include "graphbench/errors.hpp"
#include "graphbench/numeric.hpp"

namespace graphbench {

struct TabletEngine::Tablet {
  std::vector<Entry> buffer;  // unsorted recent writes
  std::vector<std::shared_ptr<const std::vector<Entry>>> runs;  // sorted, immutable
};

struct TabletEngine::Table {
  std::vector<std::string> splits;
  std::vector<Tablet> tablets;
  std::map<int, IterDescriptor> scanIters;
  std::map<int, IterDescriptor> compIters;
  std::mutex mu;
};

struct TabletEngine::Snapshot {
  std::vector<std::vector<std::shared_ptr<const std::vector<Entry>>>> tabletRuns;
  std::map<int, IterDescriptor> scanIters;
};

namespace {

size_t tabletFor(const std::vector<std::string>& splits,
                 const std::string& row) {
  return std::upper_bound(splits.begin(), splits.end(), row) - splits.begin();
}

// The op used to fold cell versions when cutting or merging runs. Folding
// early keeps resident size near the number of distinct cells instead of the
// number of writes; it never prunes zeros, since a zero partial sum can
// still change before the table is read or compacted.
std::optional<BinaryOp> foldOp(const std::map<int, IterDescriptor>& compIters) {
  for (const auto& [pri, desc] : compIters) {
    if (!IterRegistry::global().combines(desc.name)) continue;
    if (desc.name != "combiner") return std::nullopt;
    return OpRegistry::global().binary(desc.option("op"));
  }
  return std::nullopt;
}

void foldInto(EntryStream& in, const std::optional<BinaryOp>& op,
              std::vector<Entry>& out) {
  if (!op) {
    while (in.hasNext()) out.push_back(in.next());
    return;
  }
  while (in.hasNext()) {
    Entry first = in.next();
    if (!in.hasNext() || !sameCell(in.peek().key, first.key)) {
      out.push_back(std::move(first));
      continue;
    }
    Numeric acc = Numeric::parse(first.value);
    do {
      acc = (*op)(acc, Numeric::parse(in.next().value));
    } while (in.hasNext() && sameCell(in.peek().key, first.key));
    first.value = acc.render();
    out.push_back(std::move(first));
  }
}

}  // namespace

TabletEngine::TabletEngine(EngineConfig cfg) : cfg_(cfg) {}
TabletEngine::~TabletEngine() = default;

std::shared_ptr<TabletEngine::Table> TabletEngine::getTable(
    const std::string& name) const {
  std::shared_lock lk(mapMu_);
  auto it = tables_.find(name);
  if (it == tables_.end()) throw NotFoundError("no such table '" + name + "'");
  return it->second;
}

void TabletEngine::createTable(const std::string& name,
                               const std::vector<std::string>& splits) {
  if (name.empty()) throw ConfigError("table name must be non-empty");
  for (size_t i = 0; i < splits.size(); ++i) {
    if (splits[i].empty()) throw ConfigError("split point must be non-empty");
    if (i > 0 && splits[i] <= splits[i - 1])
      throw ConfigError("split points must be strictly ascending; '" +
                        splits[i] + "' follows '" + splits[i - 1] + "'");
  }
  auto t = std::make_shared<Table>();
  t->splits = splits;
  t->tablets.resize(t->splits.size() + 1);
  std::unique_lock lk(mapMu_);
  if (tables_.count(name))
    throw NameConflictError("table '" + name + "' already exists");
  tables_[name] = std::move(t);
}

void TabletEngine::cloneTable(const std::string& source,
                              const std::string& dest) {
  auto src = getTable(source);
  auto t = std::make_shared<Table>();
  {
    std::lock_guard lk(src->mu);
    for (auto& tab : src->tablets) flushTablet(*src, tab, cfg_);
    t->splits = src->splits;
    t->tablets.resize(src->tablets.size());
    for (size_t i = 0; i < src->tablets.size(); ++i)
      t->tablets[i].runs = src->tablets[i].runs;
  }
  std::unique_lock lk(mapMu_);
  if (tables_.count(dest))
    throw NameConflictError("table '" + dest + "' already exists");
  tables_[dest] = std::move(t);
}

void TabletEngine::deleteTable(const std::string& name) {
  std::unique_lock lk(mapMu_);
  if (!tables_.erase(name))
    throw NotFoundError("no such table '" + name + "'");
}

void TabletEngine::renameTable(const std::string& from, const std::string& to) {
  std::unique_lock lk(mapMu_);
  auto it = tables_.find(from);
  if (it == tables_.end())
    throw NotFoundError("no such table '" + from + "'");
  if (tables_.count(to))
    throw NameConflictError("table '" + to + "' already exists");
  auto t = std::move(it->second);
  tables_.erase(it);
  tables_[to] = std::move(t);
}

bool TabletEngine::hasTable(const std::string& name) const {
  std::shared_lock lk(mapMu_);
  return tables_.count(name) != 0;
}

std::vector<std::string> TabletEngine::tables() const {
  std::shared_lock lk(mapMu_);
  std::vector<std::string> out;
  out.reserve(tables_.size());
  for (const auto& [name, t] : tables_) out.push_back(name);
  return out;
}

std::vector<std::string> TabletEngine::splitPoints(
    const std::string& table) const {
  return getTable(table)->splits;
}

std::vector<RowRange> TabletEngine::tabletRanges(
    const std::string& table) const {
  auto t = getTable(table);
  std::vector<RowRange> out;
  std::string prev;
  for (const auto& s : t->splits) {
    RowRange r;
    r.begin = prev;
    r.end = s;
    out.push_back(std::move(r));
    prev = s;
  }
  RowRange last;
  last.begin = prev;
  out.push_back(std::move(last));
  return out;
}

size_t TabletEngine::tabletCount(const std::string& table) const {
  return getTable(table)->tablets.size();
}

WriteReceipt TabletEngine::write(const std::string& table,
                                 std::span<const Update> batch) {
  auto t = getTable(table);
  for (const auto& u : batch) {
    if (u.row.empty())
      throw DataFormatError("update with empty row");
    if (u.value.empty())
      throw DataFormatError("update with empty value at row '" + u.row + "'");
  }
  std::lock_guard lk(t->mu);
  for (const auto& u : batch) {
    uint64_t ts = stamp_.fetch_add(1, std::memory_order_relaxed);
    Tablet& tab = t->tablets[tabletFor(t->splits, u.row)];
    tab.buffer.push_back(
        Entry{Key{u.row, u.family, u.qualifier, ts}, u.value});
    if (tab.buffer.size() >= cfg_.flushThreshold) flushTablet(*t, tab, cfg_);
  }
  entriesWritten_.fetch_add(batch.size(), std::memory_order_relaxed);
  return WriteReceipt{batch.size()};
}

void TabletEngine::flushTablet(Table& t, Tablet& tab,
                               const EngineConfig& cfg) {
  if (tab.buffer.empty()) return;
  std::sort(tab.buffer.begin(), tab.buffer.end());
  auto op = foldOp(t.compIters);
  auto run = std::make_shared<std::vector<Entry>>();
  run->reserve(tab.buffer.size());
  VectorStream in(std::make_shared<const std::vector<Entry>>(
      std::move(tab.buffer)));
  foldInto(in, op, *run);
  tab.buffer = {};
  tab.runs.push_back(std::move(run));
  if (tab.runs.size() > cfg.maxRuns) foldRuns(t, tab);
}

void TabletEngine::foldRuns(Table& t, Tablet& tab) {
  size_t total = 0;
  std::vector<StreamPtr> vs;
  vs.reserve(tab.runs.size());
  for (auto& r : tab.runs) {
    total += r->size();
    vs.push_back(std::make_unique<VectorStream>(r));
  }
  MergeStream merged(std::move(vs));
  auto out = std::make_shared<std::vector<Entry>>();
  out->reserve(total);
  foldInto(merged, foldOp(t.compIters), *out);
  tab.runs.clear();
  tab.runs.push_back(std::move(out));
}

TabletEngine::Snapshot TabletEngine::snapshot(Table& t) {
  for (auto& tab : t.tablets) flushTablet(t, tab, cfg_);
  Snapshot snap;
  snap.tabletRuns.reserve(t.tablets.size());
  for (auto& tab : t.tablets) snap.tabletRuns.push_back(tab.runs);
  snap.scanIters = t.scanIters;
  return snap;
}

StreamPtr TabletEngine::assemble(const Snapshot& snap, size_t tabletFrom,
                                 size_t tabletTo, const ScanOptions& opts) {
  std::vector<StreamPtr> per;
  per.reserve(tabletTo - tabletFrom);
  for (size_t i = tabletFrom; i < tabletTo; ++i) {
    std::vector<StreamPtr> vs;
    vs.reserve(snap.tabletRuns[i].size());
    for (const auto& r : snap.tabletRuns[i])
      vs.push_back(std::make_unique<VectorStream>(r));
    per.push_back(std::make_unique<MergeStream>(std::move(vs)));
  }
  StreamPtr base = per.size() == 1
                       ? std::move(per.front())
                       : std::make_unique<ConcatStream>(std::move(per));
  base = std::make_unique<RangeSetStream>(std::move(base), opts.ranges);
  if (opts.raw) return base;
  bool combines = false;
  for (const auto& [pri, desc] : snap.scanIters)
    combines = combines || IterRegistry::global().combines(desc.name);
  for (const auto& desc : opts.extraIterators)
    combines = combines || IterRegistry::global().combines(desc.name);
  if (!combines)
    base = std::make_unique<NewestVersionStream>(std::move(base));
  for (const auto& [pri, desc] : snap.scanIters)
    base = IterRegistry::global().build(desc, std::move(base), this);
  for (const auto& desc : opts.extraIterators)
    base = IterRegistry::global().build(desc, std::move(base), this);
  return base;
}

StreamPtr TabletEngine::scan(const std::string& table, ScanOptions opts) {
  return std::move(scanMulti(table, 1, std::move(opts)).front());
}

std::vector<StreamPtr> TabletEngine::scanTablets(const std::string& table,
                                                 ScanOptions opts) {
  auto t = getTable(table);
  Snapshot snap;
  {
    std::lock_guard lk(t->mu);
    snap = snapshot(*t);
  }
  std::vector<StreamPtr> out;
  out.reserve(snap.tabletRuns.size());
  for (size_t i = 0; i < snap.tabletRuns.size(); ++i)
    out.push_back(assemble(snap, i, i + 1, opts));
  return out;
}

std::vector<StreamPtr> TabletEngine::scanMulti(const std::string& table,
                                               size_t copies,
                                               ScanOptions opts) {
  auto t = getTable(table);
  Snapshot snap;
  {
    std::lock_guard lk(t->mu);
    snap = snapshot(*t);
  }
  std::vector<StreamPtr> out;
  out.reserve(copies);
  for (size_t i = 0; i < copies; ++i)
    out.push_back(assemble(snap, 0, snap.tabletRuns.size(), opts));
  return out;
}

void TabletEngine::compact(const std::string& table) {
  auto t = getTable(table);
  std::lock_guard lk(t->mu);
  for (auto& tab : t->tablets) flushTablet(*t, tab, cfg_);
  for (auto& tab : t->tablets) {
    if (tab.runs.empty()) continue;
    std::vector<StreamPtr> vs;
    vs.reserve(tab.runs.size());
    for (const auto& r : tab.runs)
      vs.push_back(std::make_unique<VectorStream>(r));
    StreamPtr s = std::make_unique<MergeStream>(std::move(vs));
    for (const auto& [pri, desc] : t->compIters)
      s = IterRegistry::global().build(desc, std::move(s), this);
    auto out = std::make_shared<std::vector<Entry>>(drain(*s));
    tab.runs.clear();
    if (!out->empty()) tab.runs.push_back(std::move(out));
  }
}

void TabletEngine::attachIterator(const std::string& table, IterScope scope,
                                  int priority, const IterDescriptor& desc) {
  auto t = getTable(table);
  validateDescriptor(desc);
  std::lock_guard lk(t->mu);
  auto& m = scope == IterScope::scan ? t->scanIters : t->compIters;
  if (m.count(priority))
    throw ConfigError("table '" + table + "' already has an iterator at " +
                      (scope == IterScope::scan ? "scan" : "compaction") +
                      " priority " + std::to_string(priority));
  m[priority] = desc;
}

void TabletEngine::removeIterator(const std::string& table, IterScope scope,
                                  int priority) {
  auto t = getTable(table);
  std::lock_guard lk(t->mu);
  auto& m = scope == IterScope::scan ? t->scanIters : t->compIters;
  if (!m.erase(priority))
    throw ConfigError("table '" + table + "' has no iterator at priority " +
                      std::to_string(priority));
}

std::map<int, IterDescriptor> TabletEngine::iterators(const std::string& table,
                                                      IterScope scope) const {
  auto t = getTable(table);
  std::lock_guard lk(t->mu);
  return scope == IterScope::scan ? t->scanIters : t->compIters;
}

}  // namespace graphbench
