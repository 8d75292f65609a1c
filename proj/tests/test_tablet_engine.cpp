#include <doctest.h>

#include <algorithm>
#include <random>

#include "graphbench/errors.hpp"
#include "graphbench/tablet_engine.hpp"
#include "helpers.hpp"

using namespace graphbench;

namespace {

void put(TabletEngine& e, const std::string& table, const std::string& row,
         const std::string& qual, const std::string& value) {
  std::vector<Update> batch{{row, "", qual, value}};
  e.write(table, batch);
}

std::vector<Entry> scanAll(TabletEngine& e, const std::string& table,
                           ScanOptions opts = {}) {
  auto s = e.scan(table, std::move(opts));
  return drain(*s);
}

ScanOptions rawOpts() {
  ScanOptions opts;
  opts.raw = true;
  return opts;
}

}  // namespace

TEST_CASE("table admin basics") {
  TabletEngine e;
  e.createTable("A");
  CHECK(e.hasTable("A"));
  CHECK(e.tabletCount("A") == 1);
  CHECK(e.splitPoints("A").empty());
  CHECK_THROWS_AS(e.createTable("A"), NameConflictError);
  CHECK_THROWS_AS(e.createTable(""), ConfigError);

  e.createTable("B", {"m"});
  CHECK(e.tabletCount("B") == 2);
  auto ranges = e.tabletRanges("B");
  REQUIRE(ranges.size() == 2);
  CHECK(ranges[0].begin == "");
  CHECK(ranges[0].end == "m");
  CHECK(ranges[1].begin == "m");
  CHECK(ranges[1].unbounded());

  CHECK_THROWS_AS(e.createTable("C", {"b", "b"}), ConfigError);
  CHECK_THROWS_AS(e.createTable("C", {"b", "a"}), ConfigError);
  CHECK_THROWS_AS(e.createTable("C", {""}), ConfigError);

  auto names = e.tables();
  CHECK(std::find(names.begin(), names.end(), "A") != names.end());
  CHECK_THROWS_AS(e.splitPoints("nope"), NotFoundError);
}

TEST_CASE("write stamps and scan reads back sorted") {
  TabletEngine e;
  e.createTable("t");
  std::vector<Update> batch{{"r2", "", "c1", "20"},
                            {"r1", "", "c2", "12"},
                            {"r1", "", "c1", "11"}};
  auto receipt = e.write("t", batch);
  CHECK(receipt.entriesWritten == 3);
  CHECK(e.entriesWritten() == 3);

  auto out = scanAll(e, "t");
  REQUIRE(out.size() == 3);
  CHECK(out[0].key.row == "r1");
  CHECK(out[0].key.qualifier == "c1");
  CHECK(out[1].key.qualifier == "c2");
  CHECK(out[2].key.row == "r2");
  CHECK(out[0].key.timestamp > 0);
}

TEST_CASE("write rejects empty rows and empty values") {
  TabletEngine e;
  e.createTable("t");
  std::vector<Update> noRow{{"", "", "c", "1"}};
  CHECK_THROWS_AS(e.write("t", noRow), DataFormatError);
  std::vector<Update> noValue{{"r", "", "c", ""}};
  CHECK_THROWS_AS(e.write("t", noValue), DataFormatError);
  CHECK_THROWS_AS(put(e, "missing", "r", "c", "1"), NotFoundError);
}

TEST_CASE("scan of an empty table is empty") {
  TabletEngine e;
  e.createTable("t", {"m"});
  CHECK(scanAll(e, "t").empty());
  CHECK_THROWS_AS(scanAll(e, "missing"), NotFoundError);
}

TEST_CASE("newest version wins without a combiner") {
  TabletEngine e;
  e.createTable("t");
  put(e, "t", "r1", "c1", "2");
  put(e, "t", "r1", "c1", "3");

  auto out = scanAll(e, "t");
  REQUIRE(out.size() == 1);
  CHECK(out[0].value == "3");

  auto raw = scanAll(e, "t", rawOpts());
  REQUIRE(raw.size() == 2);
  CHECK(raw[0].value == "3");  // newest first within the cell
  CHECK(raw[1].value == "2");
}

TEST_CASE("a scan combiner folds versions into a lazy sum") {
  TabletEngine e;
  e.createTable("t");
  e.attachIterator("t", IterScope::scan, 10, combinerDesc("sum"));
  put(e, "t", "r1", "c1", "2");
  put(e, "t", "r1", "c1", "3");
  auto out = scanAll(e, "t");
  REQUIRE(out.size() == 1);
  CHECK(out[0].value == "5");
}

TEST_CASE("rows route to their tablets") {
  TabletEngine e;
  e.createTable("t", {"m"});
  put(e, "t", "a", "c", "1");
  put(e, "t", "m", "c", "2");
  put(e, "t", "z", "c", "3");

  auto streams = e.scanTablets("t");
  REQUIRE(streams.size() == 2);
  auto first = drain(*streams[0]);
  auto second = drain(*streams[1]);
  REQUIRE(first.size() == 1);
  CHECK(first[0].key.row == "a");
  REQUIRE(second.size() == 2);
  CHECK(second[0].key.row == "m");
  CHECK(second[1].key.row == "z");
}

TEST_CASE("range scans skip rows outside the ranges") {
  TabletEngine e;
  e.createTable("t");
  for (std::string r : {"r1", "r2", "r3", "r4"}) put(e, "t", r, "c", r);
  ScanOptions opts;
  opts.ranges = {RowRange{"r2", "r3"}};
  auto out = scanAll(e, "t", std::move(opts));
  REQUIRE(out.size() == 1);
  CHECK(out[0].key.row == "r2");

  ScanOptions two;
  two.ranges = {RowRange::exact("r1"), RowRange::startingAt("r4")};
  out = scanAll(e, "t", std::move(two));
  REQUIRE(out.size() == 2);
  CHECK(out[0].key.row == "r1");
  CHECK(out[1].key.row == "r4");
}

TEST_CASE("scan-scope extra iterators stack above table iterators") {
  TabletEngine e;
  e.createTable("t");
  e.attachIterator("t", IterScope::scan, 10, combinerDesc("sum"));
  put(e, "t", "r1", "c1", "2");
  put(e, "t", "r1", "c1", "3");
  ScanOptions opts;
  opts.extraIterators = {applyScaleDesc(10)};
  auto out = scanAll(e, "t", std::move(opts));
  REQUIRE(out.size() == 1);
  CHECK(out[0].value == "50");  // combined first, then scaled
}

TEST_CASE("raw scans bypass iterators entirely") {
  TabletEngine e;
  e.createTable("t");
  e.attachIterator("t", IterScope::scan, 10, applyScaleDesc(100));
  put(e, "t", "r", "c", "7");
  auto cooked = scanAll(e, "t");
  auto raw = scanAll(e, "t", rawOpts());
  CHECK(cooked[0].value == "700");
  CHECK(raw[0].value == "7");
}

TEST_CASE("compaction folds through the compaction stack, durably") {
  TabletEngine e;
  e.createTable("t");
  e.attachIterator("t", IterScope::compaction, 10, combinerDesc("sum"));
  put(e, "t", "r1", "c1", "2");
  put(e, "t", "r1", "c1", "3");
  e.compact("t");
  auto raw = scanAll(e, "t", rawOpts());
  REQUIRE(raw.size() == 1);
  CHECK(raw[0].value == "5");

  // idempotent: compacting again changes nothing
  e.compact("t");
  auto again = scanAll(e, "t", rawOpts());
  REQUIRE(again.size() == 1);
  CHECK(again[0].value == "5");
  CHECK(again[0].key == raw[0].key);
}

TEST_CASE("compaction without iterators preserves every version") {
  TabletEngine e;
  e.createTable("t");
  put(e, "t", "r", "c", "1");
  put(e, "t", "r", "c", "2");
  e.compact("t");
  auto raw = scanAll(e, "t", rawOpts());
  CHECK(raw.size() == 2);
}

TEST_CASE("compaction filters drop entries for good") {
  TabletEngine e;
  e.createTable("t");
  e.attachIterator("t", IterScope::compaction, 20, dropEvenDesc());
  put(e, "t", "r", "a", "1");
  put(e, "t", "r", "b", "2");
  e.compact("t");
  e.removeIterator("t", IterScope::compaction, 20);
  auto out = scanAll(e, "t", rawOpts());
  REQUIRE(out.size() == 1);
  CHECK(out[0].value == "1");
}

TEST_CASE("iterator attach and remove bookkeeping") {
  TabletEngine e;
  e.createTable("t");
  e.attachIterator("t", IterScope::scan, 10, combinerDesc("sum"));
  CHECK_THROWS_AS(e.attachIterator("t", IterScope::scan, 10, dropEvenDesc()),
                  ConfigError);
  e.attachIterator("t", IterScope::compaction, 10, combinerDesc("sum"));
  CHECK(e.iterators("t", IterScope::scan).size() == 1);
  CHECK(e.iterators("t", IterScope::compaction).size() == 1);
  e.removeIterator("t", IterScope::scan, 10);
  CHECK(e.iterators("t", IterScope::scan).empty());
  CHECK_THROWS_AS(e.removeIterator("t", IterScope::scan, 10), ConfigError);
  IterDescriptor bogus;
  bogus.name = "nonesuch";
  CHECK_THROWS_AS(e.attachIterator("t", IterScope::scan, 30, bogus),
                  ConfigError);
}

TEST_CASE("clone shares content but not future writes or iterators") {
  TabletEngine e;
  e.createTable("src", {"m"});
  e.attachIterator("src", IterScope::scan, 10, applyScaleDesc(2));
  put(e, "src", "a", "c", "1");
  put(e, "src", "z", "c", "2");

  uint64_t before = e.entriesWritten();
  e.cloneTable("src", "dup");
  CHECK(e.entriesWritten() == before);  // structural copy, no rewrites
  CHECK(e.splitPoints("dup") == e.splitPoints("src"));

  // clone sees the data but not the scan-scope scale iterator
  auto dup = scanAll(e, "dup");
  REQUIRE(dup.size() == 2);
  CHECK(dup[0].value == "1");
  CHECK(e.iterators("dup", IterScope::scan).empty());

  // divergence after the clone point
  put(e, "src", "b", "c", "3");
  put(e, "dup", "y", "c", "4");
  CHECK(scanAll(e, "dup").size() == 3);
  CHECK(scanAll(e, "src", rawOpts()).size() == 3);

  CHECK_THROWS_AS(e.cloneTable("missing", "x"), NotFoundError);
  CHECK_THROWS_AS(e.cloneTable("src", "dup"), NameConflictError);
}

TEST_CASE("delete and rename") {
  TabletEngine e;
  e.createTable("t");
  e.attachIterator("t", IterScope::scan, 10, combinerDesc("sum"));
  put(e, "t", "r", "c", "2");
  put(e, "t", "r", "c", "3");

  e.renameTable("t", "u");
  CHECK_FALSE(e.hasTable("t"));
  CHECK(e.hasTable("u"));
  // rename keeps contents and iterator configs
  auto out = scanAll(e, "u");
  REQUIRE(out.size() == 1);
  CHECK(out[0].value == "5");
  CHECK(e.iterators("u", IterScope::scan).size() == 1);

  e.createTable("v");
  CHECK_THROWS_AS(e.renameTable("u", "v"), NameConflictError);
  CHECK_THROWS_AS(e.renameTable("ghost", "w"), NotFoundError);

  e.deleteTable("v");
  CHECK_FALSE(e.hasTable("v"));
  CHECK_THROWS_AS(e.deleteTable("v"), NotFoundError);
}

TEST_CASE("scans read a stable snapshot") {
  TabletEngine e;
  e.createTable("t");
  put(e, "t", "a", "c", "1");
  put(e, "t", "b", "c", "2");
  auto s = e.scan("t");
  put(e, "t", "c", "c", "3");
  CHECK(drain(*s).size() == 2);
  CHECK(scanAll(e, "t").size() == 3);
}

TEST_CASE("tiny flush thresholds exercise runs and fold-downs") {
  EngineConfig cfg;
  cfg.flushThreshold = 4;
  cfg.maxRuns = 2;
  TabletEngine e(cfg);
  e.createTable("t", {"50"});
  std::mt19937_64 rng(11);
  std::map<std::string, std::string> newest;
  for (int i = 0; i < 200; ++i) {
    std::string row = std::to_string(10 + rng() % 90);
    std::string val = std::to_string(i);
    put(e, "t", row, "c", val);
    newest[row] = val;
  }
  auto out = scanAll(e, "t");
  REQUIRE(out.size() == newest.size());
  for (const auto& entry : out) CHECK(newest.at(entry.key.row) == entry.value);
  CHECK(std::is_sorted(out.begin(), out.end(),
                       [](const Entry& a, const Entry& b) {
                         return a.key < b.key;
                       }));
}

TEST_CASE("split points do not change scan results") {
  std::mt19937_64 rng(7);
  std::vector<Update> batch;
  for (int i = 0; i < 120; ++i)
    batch.push_back({std::to_string(100 + rng() % 800), "",
                     std::to_string(rng() % 10), std::to_string(int(rng() % 19) - 9)});

  auto runWith = [&](std::vector<std::string> splits) {
    TabletEngine e;
    e.createTable("t", splits);
    e.attachIterator("t", IterScope::scan, 10, combinerDesc("sum"));
    e.write("t", batch);
    std::vector<std::pair<Key, std::string>> out;
    for (auto& en : scanAll(e, "t")) {
      en.key.timestamp = 0;  // stamps differ per engine instance
      out.emplace_back(en.key, en.value);
    }
    return out;
  };

  auto one = runWith({});
  auto two = runWith({"500"});
  auto four = runWith({"300", "500", "700"});
  CHECK(one == two);
  CHECK(one == four);
}

TEST_CASE("scanning with a combiner equals compacting then reading raw") {
  std::mt19937_64 rng(13);
  TabletEngine e;
  e.createTable("t", {"5"});
  e.attachIterator("t", IterScope::scan, 10, combinerDesc("sum"));
  e.attachIterator("t", IterScope::compaction, 10, combinerDesc("sum"));
  std::vector<Update> batch;
  for (int i = 0; i < 300; ++i)
    batch.push_back({std::to_string(rng() % 10), "", std::to_string(rng() % 5),
                     std::to_string(int(rng() % 19) - 9)});
  e.write("t", batch);

  auto lazy = scanAll(e, "t");
  e.compact("t");
  auto eager = scanAll(e, "t", rawOpts());
  REQUIRE(lazy.size() == eager.size());
  for (size_t i = 0; i < lazy.size(); ++i) {
    CHECK(sameCell(lazy[i].key, eager[i].key));
    CHECK(lazy[i].value == eager[i].value);
  }
}

TEST_CASE("scanMulti returns independent streams over one snapshot") {
  TabletEngine e;
  e.createTable("t");
  put(e, "t", "a", "c", "1");
  put(e, "t", "b", "c", "2");
  auto streams = e.scanMulti("t", 2);
  REQUIRE(streams.size() == 2);
  CHECK(streams[0]->next().key.row == "a");
  // the second stream is unaffected by the first's progress
  CHECK(streams[1]->peek().key.row == "a");
  streams[1]->seek(RowRange::startingAt("b"));
  CHECK(streams[1]->next().key.row == "b");
  CHECK(streams[0]->next().key.row == "b");
}
