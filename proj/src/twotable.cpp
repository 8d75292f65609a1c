#include "graphbench/twotable.hpp"

#include "graphbench/errors.hpp"
#include "graphbench/numeric.hpp"

namespace graphbench {

namespace {

// Buffers every entry of the current row. Keys within the row stay sorted.
void readRow(EntryStream& s, const std::string& row, size_t cap,
             std::vector<Entry>& buf) {
  buf.clear();
  while (s.hasNext() && s.peek().key.row == row) {
    if (buf.size() >= cap)
      throw ResourceError("row '" + row + "' exceeds the merge row buffer of " +
                          std::to_string(cap) + " entries");
    buf.push_back(s.next());
  }
}

}  // namespace

RowMultiplyFn cartesianRowFn(BinaryOp multiply) {
  return [multiply = std::move(multiply)](
             const std::string&, std::span<const Entry> aRow,
             std::span<const Entry> bRow, const EmitFn& emit) {
    if (aRow.empty() || bRow.empty()) return;
    std::vector<Numeric> av, bv;
    av.reserve(aRow.size());
    bv.reserve(bRow.size());
    for (const Entry& e : aRow) av.push_back(Numeric::parse(e.value));
    for (const Entry& e : bRow) bv.push_back(Numeric::parse(e.value));
    for (size_t i = 0; i < aRow.size(); ++i) {
      for (size_t j = 0; j < bRow.size(); ++j) {
        // A zero product is still a ⊗ result and flows through; the
        // destination's zero pruning decides its fate after ⊕.
        Numeric p = multiply(av[i], bv[j]);
        Entry e;
        e.key.row = aRow[i].key.qualifier;
        e.key.qualifier = bRow[j].key.qualifier;
        e.value = p.render();
        emit(std::move(e));
      }
    }
  };
}

uint64_t twoTableRow(EntryStream& aT, EntryStream& b, const RowMultiplyFn& fn,
                     const EmitFn& emit, const RowMergeOptions& opts) {
  uint64_t rows = 0;
  std::vector<Entry> aRow, bRow;
  const size_t cap = opts.limits.rowBufferCap;
  while (true) {
    bool haveA = aT.hasNext(), haveB = b.hasNext();
    if (!haveA && !haveB) break;
    int side;  // <0: only aT has this row, >0: only b, 0: both
    if (haveA && haveB)
      side = aT.peek().key.row.compare(b.peek().key.row);
    else
      side = haveA ? -1 : 1;
    if (side != 0 && !opts.emitNonMatching) {
      // Nothing to pair with: seek the lagging stream forward to the other
      // side's row instead of stepping entry by entry.
      if (side < 0) {
        if (!haveB) break;
        aT.seek(RowRange::startingAt(b.peek().key.row));
      } else {
        if (!haveA) break;
        b.seek(RowRange::startingAt(aT.peek().key.row));
      }
      continue;
    }
    std::string row = side <= 0 ? aT.peek().key.row : b.peek().key.row;
    if (side <= 0)
      readRow(aT, row, cap, aRow);
    else
      aRow.clear();
    if (side >= 0)
      readRow(b, row, cap, bRow);
    else
      bRow.clear();
    fn(row, aRow, bRow, emit);
    ++rows;
  }
  return rows;
}

uint64_t twoTableEwise(EntryStream& a, EntryStream& b, const BinaryOp& op,
                       const EmitFn& emit, const EwiseOptions& opts) {
  uint64_t matched = 0;
  while (a.hasNext() && b.hasNext()) {
    int c = compareCell(a.peek().key, b.peek().key);
    if (c < 0) {
      Entry e = a.next();
      if (opts.emitNonMatching) emit(std::move(e));
    } else if (c > 0) {
      Entry e = b.next();
      if (opts.emitNonMatching) emit(std::move(e));
    } else {
      Entry ea = a.next();
      Entry eb = b.next();
      Numeric r = op(Numeric::parse(ea.value), Numeric::parse(eb.value));
      ++matched;
      if (r.zero()) continue;
      ea.value = r.render();
      emit(std::move(ea));
    }
  }
  if (opts.emitNonMatching) {
    while (a.hasNext()) emit(a.next());
    while (b.hasNext()) emit(b.next());
  }
  return matched;
}

void NnzReducer::merge(const Reducer& other) {
  count_ += dynamic_cast<const NnzReducer&>(other).count_;
}

std::unique_ptr<Reducer> NnzReducer::clone() const {
  return std::make_unique<NnzReducer>();
}

void ValueSetReducer::merge(const Reducer& other) {
  const auto& o = dynamic_cast<const ValueSetReducer&>(other);
  values_.insert(o.values_.begin(), o.values_.end());
}

std::unique_ptr<Reducer> ValueSetReducer::clone() const {
  return std::make_unique<ValueSetReducer>();
}

std::string ValueSetReducer::render() const {
  std::string out;
  for (const auto& v : values_) {
    if (!out.empty()) out += ',';
    out += v;
  }
  return out;
}

void ThresholdCountReducer::combine(const Entry& e) {
  Numeric v = Numeric::parse(e.value);
  if (v.asFloat() >= threshold_.asFloat()) count_ += 1;
}

void ThresholdCountReducer::merge(const Reducer& other) {
  count_ += dynamic_cast<const ThresholdCountReducer&>(other).count_;
}

std::unique_ptr<Reducer> ThresholdCountReducer::clone() const {
  return std::make_unique<ThresholdCountReducer>(threshold_);
}

RemoteWriter::RemoteWriter(TabletEngine& engine, std::string dest,
                           bool transpose, const Reducer* reducerProto)
    : engine_(engine), dest_(std::move(dest)), transpose_(transpose) {
  if (reducerProto) reducer_ = reducerProto->clone();
  batch_.reserve(kBatchSize);
}

void RemoteWriter::accept(Entry e) {
  counters_.partialProducts += 1;
  if (reducer_) reducer_->combine(e);
  Update u;
  if (transpose_) {
    u.row = std::move(e.key.qualifier);
    u.qualifier = std::move(e.key.row);
  } else {
    u.row = std::move(e.key.row);
    u.qualifier = std::move(e.key.qualifier);
  }
  u.family = std::move(e.key.family);
  u.value = std::move(e.value);
  batch_.push_back(std::move(u));
  if (batch_.size() >= kBatchSize) flush();
}

void RemoteWriter::flush() {
  if (batch_.empty()) return;
  counters_.entriesEmitted += engine_.write(dest_, batch_).entriesWritten;
  batch_.clear();
}

PartialResult RemoteWriter::finish(size_t tabletId) {
  flush();
  PartialResult r;
  r.tabletId = tabletId;
  r.counters = counters_;
  r.reducerState = std::move(reducer_);
  return r;
}

PartialResult remoteWrite(TabletEngine& engine, EntryStream& input,
                          const std::string& dest, bool transpose,
                          const Reducer* reducerProto) {
  RemoteWriter w(engine, dest, transpose, reducerProto);
  while (input.hasNext()) w.accept(input.next());
  return w.finish();
}

StreamPtr remoteSource(TabletEngine& engine, const std::string& table,
                       ScanOptions opts) {
  return engine.scan(table, std::move(opts));
}

std::pair<StreamPtr, StreamPtr> selfSource(TabletEngine& engine,
                                           const std::string& table,
                                           ScanOptions opts) {
  auto v = engine.scanMulti(table, 2, std::move(opts));
  return {std::move(v[0]), std::move(v[1])};
}

}  // namespace graphbench
