#include "graphbench/algorithms.hpp"

#include <algorithm>
#include <iostream>

#include "graphbench/errors.hpp"

namespace graphbench {

namespace {

// One pass over the extracted triples answers all three structure
// questions: unweighted, loop-free, symmetric.
struct AdjacencyShape {
  bool unweighted = true;
  bool loopFree = true;
  bool symmetric = true;
  std::string detail;
};

AdjacencyShape adjacencyShape(const std::vector<Triple>& triples) {
  AdjacencyShape shape;
  std::vector<std::pair<std::string, std::string>> fwd, rev;
  fwd.reserve(triples.size());
  rev.reserve(triples.size());
  for (const auto& t : triples) {
    if (shape.unweighted && t.value != "1" &&
        !Numeric::parse(t.value).equals(Numeric::ofInt(1))) {
      shape.unweighted = false;
      shape.detail = "value '" + t.value + "' at (" + t.row + ", " + t.col + ")";
    }
    if (shape.loopFree && t.row == t.col) {
      shape.loopFree = false;
      if (shape.detail.empty()) shape.detail = "self-loop at " + t.row;
    }
    fwd.emplace_back(t.row, t.col);
    rev.emplace_back(t.col, t.row);
  }
  std::sort(rev.begin(), rev.end());
  if (fwd != rev) {
    shape.symmetric = false;
    if (shape.detail.empty()) shape.detail = "matrix is not symmetric";
  }
  return shape;
}

}  // namespace

void validateAdjacency(TabletEngine& engine, const std::string& table) {
  auto shape = adjacencyShape(extracTuples(engine, table));
  if (!shape.unweighted)
    throw ValidationError("table '" + table +
                          "' is not an unweighted adjacency: " + shape.detail);
  if (!shape.loopFree)
    throw ValidationError("table '" + table + "' has a " + shape.detail);
  if (!shape.symmetric)
    throw ValidationError("table '" + table + "' is not symmetric");
}

void computeDegrees(TabletEngine& engine, const std::string& adjacency,
                    const std::string& dest, Strictness strictness) {
  auto triples = extracTuples(engine, adjacency);
  if (strictness == Strictness::strict) {
    auto shape = adjacencyShape(triples);
    if (!shape.unweighted || !shape.loopFree || !shape.symmetric)
      throw ValidationError("table '" + adjacency +
                            "' is not a simple undirected adjacency: " +
                            shape.detail);
  } else {
    auto shape = adjacencyShape(triples);
    if (!shape.symmetric)
      std::cerr << "warning: degree table over asymmetric '" << adjacency
                << "'; counts are row degrees\n";
  }
  engine.createTable(dest, engine.splitPoints(adjacency));
  std::vector<Update> batch;
  for (size_t i = 0; i < triples.size();) {
    size_t j = i;
    while (j < triples.size() && triples[j].row == triples[i].row) ++j;
    batch.push_back(
        Update{triples[i].row, "", "deg", std::to_string(j - i)});
    if (batch.size() >= RemoteWriter::kBatchSize) {
      engine.write(dest, batch);
      batch.clear();
    }
    i = j;
  }
  if (!batch.empty()) engine.write(dest, batch);
}

namespace {

// Emits every wedge centered on this row: lower×upper cross products plus
// both same-side Cartesian products. Entries of L and U are 1-valued, so
// each product is the constant 1; the fused strict-upper filter downstream
// keeps exactly one of each unordered pair.
void jaccardRow(std::span<const Entry> lRow, std::span<const Entry> uRow,
                const EmitFn& emit) {
  static const std::string kOne = "1";
  auto emitPair = [&emit](const Entry& x, const Entry& y) {
    Entry e;
    e.key.row = x.key.qualifier;
    e.key.qualifier = y.key.qualifier;
    e.value = kOne;
    emit(std::move(e));
  };
  for (const Entry& l : lRow)
    for (const Entry& u : uRow) emitPair(l, u);
  for (const Entry& l1 : lRow)
    for (const Entry& l2 : lRow) emitPair(l1, l2);
  for (const Entry& u1 : uRow)
    for (const Entry& u2 : uRow) emitPair(u1, u2);
}

}  // namespace

AlgoMetrics jaccard(TabletEngine& engine, const std::string& adjacency,
                    const std::string& degrees, const std::string& dest,
                    const JaccardOptions& opts) {
  validateAdjacency(engine, adjacency);
  if (!engine.hasTable(degrees))
    throw NotFoundError("no such table '" + degrees + "'");
  engine.createTable(dest, engine.splitPoints(adjacency));

  MultOptions mo;
  mo.fusion.leftSource = {filterDesc("strict_lower")};
  mo.fusion.rightSource = {filterDesc("strict_upper")};
  mo.fusion.afterMultiply = {filterDesc("strict_upper")};
  mo.rowFn = [](const std::string&, std::span<const Entry> aRow,
                std::span<const Entry> bRow,
                const EmitFn& emit) { jaccardRow(aRow, bRow, emit); };
  mo.emitNonMatching = true;  // rows with only-lower or only-upper neighbors
  mo.limits = opts.limits;
  KernelMetrics km = tableMult(engine, adjacency, adjacency, plusTimes(), dest, mo);

  engine.attachIterator(dest, IterScope::scan, 20, jaccardNormalizeDesc(degrees));

  AlgoMetrics am;
  am.partialProducts = km.partialProducts;
  am.entriesWritten = km.entriesWritten;
  am.iterations = 1;
  am.passes = {PassMetrics{km.partialProducts, km.entriesWritten}};
  am.nnzOutput = nnz(engine, dest);
  return am;
}

namespace {

// Deletes scratch tables on scope exit so a throw mid-iteration does not
// leak them.
class TempTables {
 public:
  TempTables(TabletEngine& engine, std::vector<std::string> names)
      : engine_(engine), names_(std::move(names)) {}
  ~TempTables() {
    for (const auto& n : names_) {
      try {
        if (engine_.hasTable(n)) engine_.deleteTable(n);
      } catch (...) {
      }
    }
  }

 private:
  TabletEngine& engine_;
  std::vector<std::string> names_;
};

}  // namespace

AlgoMetrics ktruss(TabletEngine& engine, const std::string& adjacency,
                   int64_t k, const std::string& dest,
                   const KTrussOptions& opts) {
  if (k < 3) throw ParameterError("k-truss needs k >= 3, got " +
                                  std::to_string(k));
  validateAdjacency(engine, adjacency);
  if (engine.hasTable(dest))
    throw NameConflictError("table '" + dest + "' already exists");

  const std::string ta = dest + "!a";
  const std::string tb = dest + "!b";
  TempTables guard(engine, {ta, tb});
  engine.cloneTable(adjacency, ta);

  Semiring ring{[](const Numeric&, const Numeric&) { return Numeric::ofInt(2); },
                "sum"};
  AlgoMetrics am;
  int64_t z = -1;  // stands in for the initial "infinity"
  for (;;) {
    engine.cloneTable(ta, tb);
    MultOptions mo;
    mo.fusion.afterMultiply = {filterDesc("no_diagonal")};
    mo.limits = opts.limits;
    KernelMetrics km = tableMult(engine, ta, ta, ring, tb, mo);
    am.partialProducts += km.partialProducts;
    am.entriesWritten += km.entriesWritten;
    am.passes.push_back(PassMetrics{km.partialProducts, km.entriesWritten});
    am.iterations += 1;

    engine.attachIterator(tb, IterScope::compaction, 20, dropEvenDesc());
    if (opts.audit) {
      engine.compact(tb);
      opts.audit(am.iterations, extracTuples(engine, tb),
                 extracTuples(engine, ta));
    }
    engine.attachIterator(tb, IterScope::compaction, 30, trussThresholdDesc(k));
    engine.attachIterator(tb, IterScope::compaction, 40, applyDesc("set_one"));
    engine.compact(tb);

    int64_t zNew = nnz(engine, tb);
    engine.deleteTable(ta);
    engine.renameTable(tb, ta);
    if (zNew == 0 || zNew == z) {
      z = zNew;
      break;
    }
    z = zNew;
  }
  engine.cloneTable(ta, dest);
  am.nnzOutput = z;
  return am;
}

}  // namespace graphbench
