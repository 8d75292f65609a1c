#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "graphbench/numeric.hpp"
#include "graphbench/stream.hpp"

namespace graphbench {

class TabletEngine;

// Where in a table's lifecycle an iterator runs.
enum class IterScope { scan, compaction };

// Serializable description of one iterator: a registered factory name plus
// string options. Tables persist these, and they survive restarts of
// nothing in this single-process engine, but the round trip keeps
// configuration inspectable and copyable.
struct IterDescriptor {
  std::string name;
  std::map<std::string, std::string> options;

  std::string option(const std::string& key) const;  // ConfigError if absent
  std::string optionOr(const std::string& key, const std::string& dflt) const;

  std::string toJson() const;
  static IterDescriptor fromJson(const std::string& text);
};

bool operator==(const IterDescriptor& a, const IterDescriptor& b);

using BinaryOp = std::function<Numeric(const Numeric&, const Numeric&)>;
using UnaryOp = std::function<Numeric(const Numeric&)>;

// The op bundle a multiply kernel needs: element product, additive fold,
// and an optional element transform.
struct SemiringOps {
  BinaryOp multiply;
  BinaryOp sum;
  UnaryOp unary;
};

// Named ops referencable from iterator descriptors. Binary ops used as a
// combiner's fold must be commutative and associative with 0 as identity;
// unary ops must map 0 to 0. The registry ships with sum, max, min, product,
// identity, set_one, and the parameterized scale/offset are built by their
// descriptors directly.
class OpRegistry {
 public:
  static OpRegistry& global();

  void addBinary(const std::string& name, BinaryOp op);
  void addUnary(const std::string& name, UnaryOp op);
  BinaryOp binary(const std::string& name) const;  // ConfigError if unknown
  UnaryOp unary(const std::string& name) const;
  bool hasBinary(const std::string& name) const;

 private:
  OpRegistry();
  std::map<std::string, BinaryOp> binary_;
  std::map<std::string, UnaryOp> unary_;
};

// Spot-checks that a named binary op behaves like an additive monoid fold:
// commutes on a sample pair and treats 0 as identity. Throws ConfigError.
void checkSumContract(const std::string& opName);

// Builds a configured iterator as a stream transform. The engine pointer
// lets stateful iterators read side tables at build time.
using IterFactory =
    std::function<StreamPtr(StreamPtr, const IterDescriptor&, TabletEngine*)>;

class IterRegistry {
 public:
  static IterRegistry& global();

  // combines marks iterators that fold versions of a cell together; their
  // presence in a scan stack suppresses the default newest-wins collapse.
  void add(const std::string& name, IterFactory factory, bool combines = false);
  StreamPtr build(const IterDescriptor& desc, StreamPtr input,
                  TabletEngine* engine) const;
  bool combines(const std::string& name) const;
  bool known(const std::string& name) const;

 private:
  IterRegistry();
  struct Slot {
    IterFactory factory;
    bool combines;
  };
  std::map<std::string, Slot> slots_;
};

// Syntax-checks a descriptor without attaching it: unknown names, unknown
// ops or filter kinds, and missing options all throw ConfigError.
void validateDescriptor(const IterDescriptor& desc);

// Reads a degree table into a shared lookup map keyed by vertex row. The
// cap guards the broadcast join's memory; exceeding it is a ResourceError.
std::shared_ptr<const std::map<std::string, int64_t>> loadDegreeMap(
    TabletEngine& engine, const std::string& table,
    size_t maxVertices = 10'000'000);

// Descriptor builders for the stock iterators.
IterDescriptor combinerDesc(const std::string& op, bool keepZeros = false);
IterDescriptor applyDesc(const std::string& fn);
IterDescriptor applyScaleDesc(double factor);
IterDescriptor applyOffsetDesc(double delta);
IterDescriptor filterDesc(const std::string& kind);
IterDescriptor dropEvenDesc();
IterDescriptor trussThresholdDesc(int64_t k);
IterDescriptor columnRangeDesc(const std::vector<RowRange>& qualRanges);
IterDescriptor jaccardNormalizeDesc(const std::string& degreeTable);

// Folds all versions of each cell with op, newest first, keeping the newest
// timestamp. Zero-valued results are dropped unless keepZeros.
class CombinerStream : public EntryStream {
 public:
  CombinerStream(StreamPtr input, BinaryOp op, bool keepZeros);

  void seek(const RowRange& range) override;
  bool hasNext() override;
  const Entry& peek() override;
  Entry next() override;

 private:
  void fill();

  StreamPtr input_;
  BinaryOp op_;
  bool keepZeros_;
  bool filled_ = false;
  bool done_ = false;
  Entry pending_;
};

// Keeps only the newest version of each cell. Applied implicitly to scans of
// tables whose stack has no combining iterator.
class NewestVersionStream : public EntryStream {
 public:
  explicit NewestVersionStream(StreamPtr input);

  void seek(const RowRange& range) override;
  bool hasNext() override;
  const Entry& peek() override;
  Entry next() override;

 private:
  StreamPtr input_;
  bool haveLast_ = false;
  Key lastCell_;
};

// Per-entry value rewrite; fn sees the key so stateful applies can join
// against side data. Zero results are dropped unless keepZeros.
class ApplyStream : public EntryStream {
 public:
  using Fn = std::function<Numeric(const Key&, const Numeric&)>;
  ApplyStream(StreamPtr input, Fn fn, bool keepZeros = false);

  void seek(const RowRange& range) override;
  bool hasNext() override;
  const Entry& peek() override;
  Entry next() override;

 private:
  void fill();

  StreamPtr input_;
  Fn fn_;
  bool keepZeros_;
  bool filled_ = false;
  bool done_ = false;
  Entry pending_;
};

// Keeps entries matching a predicate over (key, value).
class FilterStream : public EntryStream {
 public:
  using Pred = std::function<bool(const Key&, const std::string&)>;
  FilterStream(StreamPtr input, Pred pred);

  void seek(const RowRange& range) override;
  bool hasNext() override;
  const Entry& peek() override;
  Entry next() override;

 private:
  void skip();

  StreamPtr input_;
  Pred pred_;
};

// Push-side counterpart of the pull streams, used to fuse per-entry
// iterators below a sort point: partial products flow through the chain the
// moment they are produced instead of being materialized.
using EmitFn = std::function<void(Entry&&)>;

// Composes descriptors into an emit chain ending at sink. Only per-entry
// stages are legal here; a combiner needs sorted input and is rejected with
// ConfigError.
EmitFn buildPushChain(const std::vector<IterDescriptor>& descs, EmitFn sink,
                      TabletEngine* engine);

}  // namespace graphbench
