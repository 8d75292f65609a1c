#include "graphbench/iterators.hpp"

#include <json.hpp>

#include "graphbench/errors.hpp"
#include "graphbench/tablet_engine.hpp"

namespace graphbench {

std::string IterDescriptor::option(const std::string& key) const {
  auto it = options.find(key);
  if (it == options.end())
    throw ConfigError("iterator '" + name + "' missing option '" + key + "'");
  return it->second;
}

std::string IterDescriptor::optionOr(const std::string& key,
                                     const std::string& dflt) const {
  auto it = options.find(key);
  return it == options.end() ? dflt : it->second;
}

std::string IterDescriptor::toJson() const {
  nlohmann::json j;
  j["name"] = name;
  j["options"] = options;
  return j.dump();
}

IterDescriptor IterDescriptor::fromJson(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("name"))
    throw ConfigError("bad iterator descriptor: " + text);
  IterDescriptor d;
  d.name = j["name"].get<std::string>();
  if (j.contains("options"))
    d.options = j["options"].get<std::map<std::string, std::string>>();
  return d;
}

bool operator==(const IterDescriptor& a, const IterDescriptor& b) {
  return a.name == b.name && a.options == b.options;
}

OpRegistry::OpRegistry() {
  binary_["sum"] = [](const Numeric& a, const Numeric& b) { return a.plus(b); };
  binary_["max"] = [](const Numeric& a, const Numeric& b) { return a.max(b); };
  binary_["min"] = [](const Numeric& a, const Numeric& b) { return a.min(b); };
  binary_["product"] = [](const Numeric& a, const Numeric& b) {
    return a.times(b);
  };
  unary_["identity"] = [](const Numeric& v) { return v; };
  unary_["set_one"] = [](const Numeric& v) {
    return v.zero() ? v : Numeric::ofInt(1);
  };
}

OpRegistry& OpRegistry::global() {
  static OpRegistry reg;
  return reg;
}

void OpRegistry::addBinary(const std::string& name, BinaryOp op) {
  binary_[name] = std::move(op);
}

void OpRegistry::addUnary(const std::string& name, UnaryOp op) {
  unary_[name] = std::move(op);
}

BinaryOp OpRegistry::binary(const std::string& name) const {
  auto it = binary_.find(name);
  if (it == binary_.end()) throw ConfigError("unknown binary op '" + name + "'");
  return it->second;
}

UnaryOp OpRegistry::unary(const std::string& name) const {
  auto it = unary_.find(name);
  if (it == unary_.end()) throw ConfigError("unknown unary op '" + name + "'");
  return it->second;
}

bool OpRegistry::hasBinary(const std::string& name) const {
  return binary_.count(name) != 0;
}

void checkSumContract(const std::string& opName) {
  BinaryOp op = OpRegistry::global().binary(opName);
  Numeric a = Numeric::ofInt(3), b = Numeric::ofInt(5), z = Numeric::ofInt(0);
  if (!op(a, b).equals(op(b, a)))
    throw ConfigError("sum op '" + opName + "' is not commutative");
  if (!op(z, b).equals(b) || !op(b, z).equals(b))
    throw ConfigError("sum op '" + opName + "' does not treat 0 as identity");
}

// ---------------------------------------------------------------------------
// stream transforms

CombinerStream::CombinerStream(StreamPtr input, BinaryOp op, bool keepZeros)
    : input_(std::move(input)), op_(std::move(op)), keepZeros_(keepZeros) {}

void CombinerStream::seek(const RowRange& range) {
  input_->seek(range);
  filled_ = false;
  done_ = false;
}

void CombinerStream::fill() {
  while (!filled_ && !done_) {
    if (!input_->hasNext()) {
      done_ = true;
      return;
    }
    // versions of a cell are adjacent and newest-first
    Entry first = input_->next();
    Numeric acc = Numeric::parse(first.value);
    while (input_->hasNext() && sameCell(input_->peek().key, first.key))
      acc = op_(acc, Numeric::parse(input_->next().value));
    if (!keepZeros_ && acc.zero()) continue;
    first.value = acc.render();
    pending_ = std::move(first);
    filled_ = true;
  }
}

bool CombinerStream::hasNext() {
  fill();
  return filled_;
}

const Entry& CombinerStream::peek() {
  fill();
  return pending_;
}

Entry CombinerStream::next() {
  fill();
  filled_ = false;
  return std::move(pending_);
}

NewestVersionStream::NewestVersionStream(StreamPtr input)
    : input_(std::move(input)) {}

void NewestVersionStream::seek(const RowRange& range) {
  input_->seek(range);
  haveLast_ = false;
}

bool NewestVersionStream::hasNext() {
  while (input_->hasNext() && haveLast_ &&
         sameCell(input_->peek().key, lastCell_))
    input_->next();
  return input_->hasNext();
}

const Entry& NewestVersionStream::peek() {
  hasNext();
  return input_->peek();
}

Entry NewestVersionStream::next() {
  hasNext();
  Entry e = input_->next();
  lastCell_ = e.key;
  haveLast_ = true;
  return e;
}

ApplyStream::ApplyStream(StreamPtr input, Fn fn, bool keepZeros)
    : input_(std::move(input)), fn_(std::move(fn)), keepZeros_(keepZeros) {}

void ApplyStream::seek(const RowRange& range) {
  input_->seek(range);
  filled_ = false;
  done_ = false;
}

void ApplyStream::fill() {
  while (!filled_ && !done_) {
    if (!input_->hasNext()) {
      done_ = true;
      return;
    }
    Entry e = input_->next();
    Numeric r = fn_(e.key, Numeric::parse(e.value));
    if (!keepZeros_ && r.zero()) continue;
    e.value = r.render();
    pending_ = std::move(e);
    filled_ = true;
  }
}

bool ApplyStream::hasNext() {
  fill();
  return filled_;
}

const Entry& ApplyStream::peek() {
  fill();
  return pending_;
}

Entry ApplyStream::next() {
  fill();
  filled_ = false;
  return std::move(pending_);
}

FilterStream::FilterStream(StreamPtr input, Pred pred)
    : input_(std::move(input)), pred_(std::move(pred)) {}

void FilterStream::seek(const RowRange& range) { input_->seek(range); }

void FilterStream::skip() {
  while (input_->hasNext() &&
         !pred_(input_->peek().key, input_->peek().value))
    input_->next();
}

bool FilterStream::hasNext() {
  skip();
  return input_->hasNext();
}

const Entry& FilterStream::peek() {
  skip();
  return input_->peek();
}

Entry FilterStream::next() {
  skip();
  return input_->next();
}

// ---------------------------------------------------------------------------
// stock iterator construction

namespace {

std::vector<RowRange> parseRangesOption(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_array())
    throw ConfigError("bad ranges option: " + text);
  std::vector<RowRange> out;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw ConfigError("bad range element in: " + text);
    RowRange r;
    r.begin = pair[0].get<std::string>();
    if (!pair[1].is_null()) r.end = pair[1].get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

std::string rangesToOption(const std::vector<RowRange>& ranges) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : ranges) {
    nlohmann::json pair = nlohmann::json::array();
    pair.push_back(r.begin);
    if (r.end)
      pair.push_back(*r.end);
    else
      pair.push_back(nullptr);
    j.push_back(std::move(pair));
  }
  return j.dump();
}

FilterStream::Pred makeFilterPred(const IterDescriptor& d) {
  std::string kind = d.option("kind");
  if (kind == "strict_upper")
    return [](const Key& k, const std::string&) { return k.row < k.qualifier; };
  if (kind == "strict_lower")
    return [](const Key& k, const std::string&) { return k.row > k.qualifier; };
  if (kind == "no_diagonal")
    return
        [](const Key& k, const std::string&) { return k.row != k.qualifier; };
  if (kind == "drop_even")
    return [](const Key&, const std::string& v) {
      return Numeric::parse(v).asInt() % 2 != 0;
    };
  if (kind == "truss_threshold") {
    int64_t k = Numeric::parse(d.option("k")).asInt();
    return [k](const Key&, const std::string& v) {
      return (Numeric::parse(v).asInt() - 1) / 2 >= k - 2;
    };
  }
  if (kind == "column_range") {
    auto ranges = normalizeRanges(parseRangesOption(d.option("ranges")));
    return [ranges](const Key& key, const std::string&) {
      return rangesContain(ranges, key.qualifier);
    };
  }
  throw ConfigError("unknown filter kind '" + kind + "'");
}

bool boolOption(const IterDescriptor& d, const std::string& key) {
  return d.optionOr(key, "false") == "true";
}

ApplyStream::Fn makeApplyFn(const IterDescriptor& d, TabletEngine* engine) {
  if (d.name == "jaccard_normalize") {
    if (!engine)
      throw ConfigError("jaccard_normalize needs an engine to read degrees");
    size_t cap = static_cast<size_t>(
        Numeric::parse(d.optionOr("max_vertices", "10000000")).asInt());
    auto degrees = loadDegreeMap(*engine, d.option("degree_table"), cap);
    return [degrees](const Key& key, const Numeric& v) {
      auto dr = degrees->find(key.row);
      auto dc = degrees->find(key.qualifier);
      if (dr == degrees->end())
        throw ConsistencyError("no degree entry for vertex '" + key.row + "'");
      if (dc == degrees->end())
        throw ConsistencyError("no degree entry for vertex '" + key.qualifier +
                               "'");
      double denom = static_cast<double>(dr->second) +
                     static_cast<double>(dc->second) - v.asFloat();
      if (denom <= 0)
        throw ConsistencyError("nonpositive union size for pair (" + key.row +
                               ", " + key.qualifier + ")");
      return Numeric::ofFloat(v.asFloat() / denom);
    };
  }
  std::string fn = d.option("fn");
  if (fn == "scale") {
    Numeric factor = Numeric::parse(d.option("factor"));
    return [factor](const Key&, const Numeric& v) { return v.times(factor); };
  }
  if (fn == "offset") {
    Numeric delta = Numeric::parse(d.option("delta"));
    return [delta](const Key&, const Numeric& v) {
      return v.zero() ? v : v.plus(delta);
    };
  }
  UnaryOp op = OpRegistry::global().unary(fn);
  return [op](const Key&, const Numeric& v) { return op(v); };
}

}  // namespace

void validateDescriptor(const IterDescriptor& desc) {
  if (!IterRegistry::global().known(desc.name))
    throw ConfigError("unknown iterator '" + desc.name + "'");
  if (desc.name == "combiner")
    OpRegistry::global().binary(desc.option("op"));
  else if (desc.name == "filter")
    makeFilterPred(desc);
  else if (desc.name == "apply")
    makeApplyFn(desc, nullptr);
  else if (desc.name == "jaccard_normalize")
    desc.option("degree_table");
}

std::shared_ptr<const std::map<std::string, int64_t>> loadDegreeMap(
    TabletEngine& engine, const std::string& table, size_t maxVertices) {
  auto map = std::make_shared<std::map<std::string, int64_t>>();
  auto s = engine.scan(table);
  while (s->hasNext()) {
    Entry e = s->next();
    (*map)[e.key.row] = Numeric::parse(e.value).asInt();
    if (map->size() > maxVertices)
      throw ResourceError("degree table '" + table + "' exceeds the broadcast "
                          "cap of " + std::to_string(maxVertices) +
                          " vertices");
  }
  return map;
}

IterRegistry::IterRegistry() {
  add(
      "combiner",
      [](StreamPtr in, const IterDescriptor& d, TabletEngine*) -> StreamPtr {
        BinaryOp op = OpRegistry::global().binary(d.option("op"));
        return std::make_unique<CombinerStream>(std::move(in), std::move(op),
                                                boolOption(d, "keep_zeros"));
      },
      /*combines=*/true);
  add("apply",
      [](StreamPtr in, const IterDescriptor& d, TabletEngine* eng) -> StreamPtr {
        return std::make_unique<ApplyStream>(std::move(in), makeApplyFn(d, eng),
                                             boolOption(d, "keep_zeros"));
      });
  add("filter",
      [](StreamPtr in, const IterDescriptor& d, TabletEngine*) -> StreamPtr {
        return std::make_unique<FilterStream>(std::move(in), makeFilterPred(d));
      });
  add("jaccard_normalize",
      [](StreamPtr in, const IterDescriptor& d, TabletEngine* eng) -> StreamPtr {
        return std::make_unique<ApplyStream>(std::move(in), makeApplyFn(d, eng),
                                             /*keepZeros=*/false);
      });
}

IterRegistry& IterRegistry::global() {
  static IterRegistry reg;
  return reg;
}

void IterRegistry::add(const std::string& name, IterFactory factory,
                       bool combines) {
  slots_[name] = Slot{std::move(factory), combines};
}

StreamPtr IterRegistry::build(const IterDescriptor& desc, StreamPtr input,
                              TabletEngine* engine) const {
  auto it = slots_.find(desc.name);
  if (it == slots_.end())
    throw ConfigError("unknown iterator '" + desc.name + "'");
  return it->second.factory(std::move(input), desc, engine);
}

bool IterRegistry::combines(const std::string& name) const {
  auto it = slots_.find(name);
  return it != slots_.end() && it->second.combines;
}

bool IterRegistry::known(const std::string& name) const {
  return slots_.count(name) != 0;
}

IterDescriptor combinerDesc(const std::string& op, bool keepZeros) {
  IterDescriptor d;
  d.name = "combiner";
  d.options["op"] = op;
  if (keepZeros) d.options["keep_zeros"] = "true";
  return d;
}

IterDescriptor applyDesc(const std::string& fn) {
  IterDescriptor d;
  d.name = "apply";
  d.options["fn"] = fn;
  return d;
}

IterDescriptor applyScaleDesc(double factor) {
  IterDescriptor d;
  d.name = "apply";
  d.options["fn"] = "scale";
  d.options["factor"] = Numeric::ofFloat(factor).render();
  return d;
}

IterDescriptor applyOffsetDesc(double delta) {
  IterDescriptor d;
  d.name = "apply";
  d.options["fn"] = "offset";
  d.options["delta"] = Numeric::ofFloat(delta).render();
  return d;
}

IterDescriptor filterDesc(const std::string& kind) {
  IterDescriptor d;
  d.name = "filter";
  d.options["kind"] = kind;
  return d;
}

IterDescriptor dropEvenDesc() { return filterDesc("drop_even"); }

IterDescriptor trussThresholdDesc(int64_t k) {
  IterDescriptor d = filterDesc("truss_threshold");
  d.options["k"] = std::to_string(k);
  return d;
}

IterDescriptor columnRangeDesc(const std::vector<RowRange>& qualRanges) {
  IterDescriptor d = filterDesc("column_range");
  d.options["ranges"] = rangesToOption(qualRanges);
  return d;
}

IterDescriptor jaccardNormalizeDesc(const std::string& degreeTable) {
  IterDescriptor d;
  d.name = "jaccard_normalize";
  d.options["degree_table"] = degreeTable;
  return d;
}

EmitFn buildPushChain(const std::vector<IterDescriptor>& descs, EmitFn sink,
                      TabletEngine* engine) {
  EmitFn chain = std::move(sink);
  for (auto it = descs.rbegin(); it != descs.rend(); ++it) {
    const IterDescriptor& d = *it;
    if (IterRegistry::global().combines(d.name))
      throw ConfigError("iterator '" + d.name +
                        "' folds versions and needs sorted input; it cannot "
                        "run in a fused chain");
    if (d.name == "filter") {
      auto pred = makeFilterPred(d);
      chain = [pred, next = std::move(chain)](Entry&& e) {
        if (pred(e.key, e.value)) next(std::move(e));
      };
    } else if (d.name == "apply" || d.name == "jaccard_normalize") {
      auto fn = makeApplyFn(d, engine);
      bool keep = boolOption(d, "keep_zeros");
      chain = [fn, keep, next = std::move(chain)](Entry&& e) {
        Numeric r = fn(e.key, Numeric::parse(e.value));
        if (!keep && r.zero()) return;
        e.value = r.render();
        next(std::move(e));
      };
    } else {
      throw ConfigError("iterator '" + d.name +
                        "' cannot run in a fused chain");
    }
  }
  return chain;
}

}  // namespace graphbench
