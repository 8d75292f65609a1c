#include <doctest.h>

#include <algorithm>

#include "graphbench/errors.hpp"
#include "graphbench/iterators.hpp"
#include "graphbench/tablet_engine.hpp"
#include "helpers.hpp"

using namespace graphbench;
using graphbench::testutil::entry;

namespace {

StreamPtr vec(std::vector<Entry> es) {
  std::sort(es.begin(), es.end());
  return std::make_unique<VectorStream>(std::move(es));
}

std::vector<Entry> through(const IterDescriptor& d, std::vector<Entry> es,
                           TabletEngine* engine = nullptr) {
  auto s = IterRegistry::global().build(d, vec(std::move(es)), engine);
  return drain(*s);
}

}  // namespace

TEST_CASE("combiner folds all versions of a cell") {
  auto out = through(combinerDesc("sum"),
                     {entry("r1", "c1", "2", 1), entry("r1", "c1", "3", 2)});
  REQUIRE(out.size() == 1);
  CHECK(out[0].value == "5");
  CHECK(out[0].key.timestamp == 2);  // newest version's stamp survives
}

TEST_CASE("combiner leaves distinct cells alone") {
  auto out = through(combinerDesc("sum"),
                     {entry("r1", "c1", "2"), entry("r1", "c2", "3"),
                      entry("r2", "c1", "4")});
  REQUIRE(out.size() == 3);
  CHECK(out[0].value == "2");
  CHECK(out[1].value == "3");
  CHECK(out[2].value == "4");
}

TEST_CASE("combiner prunes zero results") {
  auto out = through(combinerDesc("sum"),
                     {entry("r1", "c1", "2", 1), entry("r1", "c1", "-2", 2)});
  CHECK(out.empty());
}

TEST_CASE("combiner keep_zeros retains the folded zero") {
  auto out =
      through(combinerDesc("sum", /*keepZeros=*/true),
              {entry("r1", "c1", "2", 1), entry("r1", "c1", "-2", 2)});
  REQUIRE(out.size() == 1);
  CHECK(out[0].value == "0");
}

TEST_CASE("combiner with max keeps the largest version") {
  auto out = through(combinerDesc("max"),
                     {entry("r1", "c1", "2", 1), entry("r1", "c1", "7", 2),
                      entry("r1", "c1", "-1", 3)});
  REQUIRE(out.size() == 1);
  CHECK(out[0].value == "7");
}

TEST_CASE("combiner is idempotent on already-folded streams") {
  std::vector<Entry> in{entry("a", "x", "4", 3), entry("b", "y", "-2", 1)};
  auto once = through(combinerDesc("sum"), in);
  auto twice = through(combinerDesc("sum"), once);
  REQUIRE(once.size() == twice.size());
  for (size_t i = 0; i < once.size(); ++i) {
    CHECK(once[i].key == twice[i].key);
    CHECK(once[i].value == twice[i].value);
  }
}

TEST_CASE("newest version stream collapses duplicates") {
  auto s = std::make_unique<NewestVersionStream>(
      vec({entry("r", "c", "old", 1), entry("r", "c", "new", 5),
           entry("s", "c", "only", 2)}));
  auto out = drain(*s);
  REQUIRE(out.size() == 2);
  CHECK(out[0].value == "new");
  CHECK(out[1].value == "only");
}

TEST_CASE("apply scales values") {
  auto out = through(applyScaleDesc(2), {entry("r", "c", "3")});
  REQUIRE(out.size() == 1);
  CHECK(out[0].value == "6");
}

TEST_CASE("apply identity is a no-op") {
  auto out = through(applyDesc("identity"),
                     {entry("r", "c", "3"), entry("r", "d", "-5")});
  REQUIRE(out.size() == 2);
  CHECK(out[0].value == "3");
  CHECK(out[1].value == "-5");
}

TEST_CASE("apply prunes results that land on zero") {
  auto out = through(applyOffsetDesc(-3),
                     {entry("r", "c", "3"), entry("r", "d", "5")});
  REQUIRE(out.size() == 1);
  CHECK(out[0].value == "2");
}

TEST_CASE("apply offset leaves zero alone so it stays a monoid map") {
  IterDescriptor d = applyOffsetDesc(10);
  d.options["keep_zeros"] = "true";
  auto out = through(d, {entry("r", "c", "0"), entry("r", "d", "1")});
  REQUIRE(out.size() == 2);
  CHECK(out[0].value == "0");
  CHECK(out[1].value == "11");
}

TEST_CASE("set_one maps every nonzero to 1") {
  auto out = through(applyDesc("set_one"),
                     {entry("r", "a", "7"), entry("r", "b", "-3")});
  REQUIRE(out.size() == 2);
  CHECK(out[0].value == "1");
  CHECK(out[1].value == "1");
}

TEST_CASE("strict upper filter keeps entries above the diagonal") {
  auto out = through(filterDesc("strict_upper"),
                     {entry("a", "a", "1"), entry("a", "b", "1"),
                      entry("b", "a", "1")});
  REQUIRE(out.size() == 1);
  CHECK(out[0].key.row == "a");
  CHECK(out[0].key.qualifier == "b");
}

TEST_CASE("strict lower filter keeps entries below the diagonal") {
  auto out = through(filterDesc("strict_lower"),
                     {entry("a", "a", "1"), entry("a", "b", "1"),
                      entry("b", "a", "1")});
  REQUIRE(out.size() == 1);
  CHECK(out[0].key.row == "b");
  CHECK(out[0].key.qualifier == "a");
}

TEST_CASE("no_diagonal drops self pairs only") {
  auto out = through(filterDesc("no_diagonal"),
                     {entry("a", "a", "1"), entry("a", "b", "1"),
                      entry("b", "a", "1")});
  CHECK(out.size() == 2);
}

TEST_CASE("drop_even keeps odd values") {
  auto out = through(dropEvenDesc(),
                     {entry("r", "a", "1"), entry("r", "b", "2"),
                      entry("r", "c", "3"), entry("r", "d", "4")});
  REQUIRE(out.size() == 2);
  CHECK(out[0].value == "1");
  CHECK(out[1].value == "3");
}

TEST_CASE("truss threshold keeps edges with enough support") {
  // encoded value 1 + 2*support, k = 3 needs support >= 1
  auto out = through(trussThresholdDesc(3),
                     {entry("r", "a", "1"), entry("r", "b", "3"),
                      entry("r", "c", "5")});
  REQUIRE(out.size() == 2);
  CHECK(out[0].value == "3");
  CHECK(out[1].value == "5");
}

TEST_CASE("column range filter restricts qualifiers") {
  auto out = through(columnRangeDesc({RowRange{"c2", "c4"}}),
                     {entry("r", "c1", "1"), entry("r", "c2", "2"),
                      entry("r", "c3", "3"), entry("r", "c4", "4")});
  REQUIRE(out.size() == 2);
  CHECK(out[0].key.qualifier == "c2");
  CHECK(out[1].key.qualifier == "c3");
}

TEST_CASE("filters compose like a conjunction") {
  std::vector<Entry> in{entry("a", "b", "2"), entry("a", "c", "3"),
                        entry("b", "a", "5"), entry("c", "c", "7")};
  auto upperOdd = through(dropEvenDesc(),
                          through(filterDesc("strict_upper"), in));
  REQUIRE(upperOdd.size() == 1);
  CHECK(upperOdd[0].key.qualifier == "c");
  auto oddUpper = through(filterDesc("strict_upper"),
                          through(dropEvenDesc(), in));
  REQUIRE(oddUpper.size() == 1);
  CHECK(oddUpper[0].key == upperOdd[0].key);
}

TEST_CASE("jaccard_normalize divides by the neighborhood union") {
  TabletEngine engine;
  engine.createTable("deg");
  std::vector<Update> degs{{"u", "", "deg", "3"}, {"v", "", "deg", "4"}};
  engine.write("deg", degs);
  // 2 common neighbors, union 3 + 4 - 2 = 5
  auto out = through(jaccardNormalizeDesc("deg"), {entry("u", "v", "2")},
                     &engine);
  REQUIRE(out.size() == 1);
  CHECK(Numeric::parse(out[0].value).asFloat() == doctest::Approx(0.4));
}

TEST_CASE("jaccard_normalize flags vertices without a degree entry") {
  TabletEngine engine;
  engine.createTable("deg");
  std::vector<Update> degs{{"u", "", "deg", "3"}};
  engine.write("deg", degs);
  auto s = IterRegistry::global().build(jaccardNormalizeDesc("deg"),
                                        vec({entry("u", "w", "1")}), &engine);
  CHECK_THROWS_AS(drain(*s), ConsistencyError);
}

TEST_CASE("loadDegreeMap enforces its broadcast cap") {
  TabletEngine engine;
  engine.createTable("deg");
  std::vector<Update> degs;
  for (int i = 0; i < 10; ++i)
    degs.push_back({"v" + std::to_string(i), "", "deg", "1"});
  engine.write("deg", degs);
  CHECK_THROWS_AS(loadDegreeMap(engine, "deg", 5), ResourceError);
  CHECK(loadDegreeMap(engine, "deg", 10)->size() == 10);
}

TEST_CASE("descriptors round-trip through json") {
  IterDescriptor d = trussThresholdDesc(4);
  auto back = IterDescriptor::fromJson(d.toJson());
  CHECK(back == d);
  IterDescriptor cr = columnRangeDesc({RowRange{"a", "b"}, RowRange{"m", std::nullopt}});
  CHECK(IterDescriptor::fromJson(cr.toJson()) == cr);
  CHECK_THROWS_AS(IterDescriptor::fromJson("not json"), ConfigError);
}

TEST_CASE("validateDescriptor rejects bad configs") {
  IterDescriptor unknown;
  unknown.name = "nonesuch";
  CHECK_THROWS_AS(validateDescriptor(unknown), ConfigError);

  CHECK_THROWS_AS(validateDescriptor(combinerDesc("nonesuch")), ConfigError);
  CHECK_THROWS_AS(validateDescriptor(filterDesc("nonesuch")), ConfigError);

  IterDescriptor missing;
  missing.name = "combiner";
  CHECK_THROWS_AS(validateDescriptor(missing), ConfigError);

  CHECK_NOTHROW(validateDescriptor(combinerDesc("sum")));
  CHECK_NOTHROW(validateDescriptor(dropEvenDesc()));
}

TEST_CASE("checkSumContract accepts folds and rejects non-monoids") {
  CHECK_NOTHROW(checkSumContract("sum"));
  CHECK_NOTHROW(checkSumContract("max"));
  OpRegistry::global().addBinary(
      "left_projection", [](const Numeric& a, const Numeric&) { return a; });
  CHECK_THROWS_AS(checkSumContract("left_projection"), ConfigError);
  CHECK_THROWS_AS(checkSumContract("no_such_op"), ConfigError);
}

TEST_CASE("push chain applies stages in list order") {
  std::vector<Entry> got;
  EmitFn sink = [&](Entry&& e) { got.push_back(std::move(e)); };
  auto chain = buildPushChain({filterDesc("strict_upper"), applyScaleDesc(3)},
                              std::move(sink), nullptr);
  chain(entry("a", "b", "2"));
  chain(entry("b", "a", "2"));
  chain(entry("a", "c", "0"));  // scaled to zero, pruned
  REQUIRE(got.size() == 1);
  CHECK(got[0].value == "6");
}

TEST_CASE("push chain refuses a combiner") {
  EmitFn sink = [](Entry&&) {};
  CHECK_THROWS_AS(buildPushChain({combinerDesc("sum")}, sink, nullptr),
                  ConfigError);
}
