#include "graphbench/bench.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "graphbench/algorithms.hpp"
#include "graphbench/errors.hpp"
#include "graphbench/kernels.hpp"
#include "graphbench/oracle.hpp"
#include "graphbench/tablet_engine.hpp"

namespace graphbench {

Algorithm parseAlgorithm(const std::string& name) {
  if (name == "jaccard") return Algorithm::jaccard;
  if (name == "ktruss") return Algorithm::ktruss;
  if (name == "mxm") return Algorithm::mxm;
  throw ParameterError("unknown algorithm: " + name);
}

EngineKind parseEngineKind(const std::string& name) {
  if (name == "graphulo") return EngineKind::graphulo;
  if (name == "oracle") return EngineKind::oracle;
  throw ParameterError("unknown engine: " + name);
}

std::string algorithmName(Algorithm alg) {
  switch (alg) {
    case Algorithm::jaccard:
      return "jaccard";
    case Algorithm::ktruss:
      return "ktruss";
    case Algorithm::mxm:
      return "mxm";
  }
  return "?";
}

std::string engineKindName(EngineKind kind) {
  return kind == EngineKind::graphulo ? "graphulo" : "oracle";
}

int maxScaleFor(Algorithm alg) {
  if (const char* env = std::getenv("GRAPHBENCH_MAX_SCALE")) {
    std::string s(env);
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
      throw ParameterError("GRAPHBENCH_MAX_SCALE must be an integer, got " + s);
    return v;
  }
  return alg == Algorithm::ktruss ? 13 : 14;
}

namespace {

using Clock = std::chrono::steady_clock;

int64_t millisSince(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

std::vector<std::string> medianSplit(const std::vector<Triple>& adj) {
  std::vector<std::string> rows;
  for (const auto& t : adj)
    if (rows.empty() || rows.back() != t.row) rows.push_back(t.row);
  if (rows.size() < 2) return {};
  return {rows[rows.size() / 2]};
}

void checkSpec(const ExperimentSpec& spec) {
  if (spec.tablets != 1 && spec.tablets != 2)
    throw ParameterError("tablets must be 1 or 2, got " +
                         std::to_string(spec.tablets));
  int ceiling = maxScaleFor(spec.alg);
  if (spec.gen.scale > ceiling)
    throw ParameterError(
        "scale " + std::to_string(spec.gen.scale) + " is over the " +
        algorithmName(spec.alg) + " ceiling of " + std::to_string(ceiling) +
        "; set GRAPHBENCH_MAX_SCALE to raise it");
  validateGenParams(spec.gen);
}

struct EngineOutcome {
  AlgoMetrics metrics;
  int64_t runtimeMillis = 0;
};

// Builds the inputs, runs the algorithm against the tablet engine, and
// leaves its result in engine table "out".
EngineOutcome runOnEngine(TabletEngine& engine, const ExperimentSpec& spec,
                          const std::vector<Triple>& adj) {
  auto splits = spec.tablets == 2 ? medianSplit(adj) : std::vector<std::string>{};
  buildMatrix(engine, "A", adj, "", splits);
  if (spec.alg == Algorithm::jaccard)
    computeDegrees(engine, "A", "Adeg", Strictness::strict);
  EngineOutcome out;
  auto start = Clock::now();
  switch (spec.alg) {
    case Algorithm::jaccard:
      out.metrics = jaccard(engine, "A", "Adeg", "out");
      break;
    case Algorithm::ktruss:
      out.metrics = ktruss(engine, "A", spec.k, "out");
      break;
    case Algorithm::mxm: {
      KernelMetrics km = tableMult(engine, "A", "A", plusTimes(), "out");
      out.metrics.partialProducts = km.partialProducts;
      out.metrics.entriesWritten = km.entriesWritten;
      out.metrics.nnzOutput = nnz(engine, "out");
      out.metrics.iterations = 1;
      break;
    }
  }
  out.runtimeMillis = millisSince(start);
  return out;
}

struct OracleOutcome {
  int64_t nnzOutput = 0;
  int64_t runtimeMillis = 0;
  // Result content, shape depending on the algorithm.
  std::map<std::pair<std::string, std::string>, double> jaccardResult;
  EdgeSet trussResult;
  SparseMatrix mxmResult;
};

OracleOutcome runOnOracle(const ExperimentSpec& spec,
                          const std::vector<Triple>& adj) {
  OracleOutcome out;
  auto start = Clock::now();
  switch (spec.alg) {
    case Algorithm::jaccard: {
      EdgeSet g = EdgeSet::fromAdjacencyTriples(adj);
      out.jaccardResult = bruteJaccard(g);
      out.nnzOutput = static_cast<int64_t>(out.jaccardResult.size());
      break;
    }
    case Algorithm::ktruss: {
      EdgeSet g = EdgeSet::fromAdjacencyTriples(adj);
      out.trussResult = bruteTruss(g, spec.k);
      out.nnzOutput = static_cast<int64_t>(out.trussResult.size()) * 2;
      break;
    }
    case Algorithm::mxm: {
      SparseMatrix a = SparseMatrix::fromTriples(adj);
      auto mul = [](const Numeric& x, const Numeric& y) { return x.times(y); };
      auto add = [](const Numeric& x, const Numeric& y) { return x.plus(y); };
      out.mxmResult = oMxM(oTranspose(a), a, mul, add);
      out.nnzOutput = out.mxmResult.nnz();
      break;
    }
  }
  out.runtimeMillis = millisSince(start);
  return out;
}

MetricsRow baseRow(const ExperimentSpec& spec, int64_t nnzInput) {
  MetricsRow row;
  row.algorithm = algorithmName(spec.alg);
  row.scale = spec.gen.scale;
  row.tablets = spec.tablets;
  row.engine = engineKindName(spec.engine);
  row.nnzInput = nnzInput;
  return row;
}

}  // namespace

MetricsRow runExperiment(const ExperimentSpec& spec) {
  checkSpec(spec);
  auto raw = generate(spec.gen);
  auto adj = symmetrize(raw);
  raw.clear();
  raw.shrink_to_fit();
  MetricsRow row = baseRow(spec, static_cast<int64_t>(adj.size()));
  try {
    if (spec.engine == EngineKind::oracle) {
      OracleOutcome o = runOnOracle(spec, adj);
      row.nnzOutput = o.nnzOutput;
      // The in-memory baseline writes exactly its final result.
      row.partialProducts = 0;
      row.entriesWritten = static_cast<uint64_t>(o.nnzOutput);
      row.iterations = 1;
      row.runtimeMillis = o.runtimeMillis;
      row.overhead = 1.0;
    } else {
      TabletEngine engine;
      EngineOutcome o = runOnEngine(engine, spec, adj);
      row.nnzOutput = o.metrics.nnzOutput;
      row.partialProducts = o.metrics.partialProducts;
      row.entriesWritten = o.metrics.entriesWritten;
      row.iterations = o.metrics.iterations;
      row.runtimeMillis = o.runtimeMillis;
      row.overhead = static_cast<double>(row.entriesWritten) /
                     static_cast<double>(row.nnzOutput);
    }
  } catch (const ResourceError& e) {
    throw ResourceError(std::string(e.what()) + " [" + row.algorithm +
                        " scale " + std::to_string(row.scale) + ", " +
                        std::to_string(row.nnzInput) + " input entries]");
  }
  return row;
}

std::string verifyExperiment(const ExperimentSpec& spec) {
  checkSpec(spec);
  auto raw = generate(spec.gen);
  auto adj = symmetrize(raw);
  raw.clear();
  raw.shrink_to_fit();

  TabletEngine engine;
  EngineOutcome eo = runOnEngine(engine, spec, adj);
  auto engineTriples = extracTuples(engine, "out");
  OracleOutcome oo = runOnOracle(spec, adj);

  if (eo.metrics.nnzOutput != oo.nnzOutput)
    return "nnzOutput mismatch: engine " + std::to_string(eo.metrics.nnzOutput) +
           " vs oracle " + std::to_string(oo.nnzOutput);

  switch (spec.alg) {
    case Algorithm::jaccard: {
      if (engineTriples.size() != oo.jaccardResult.size())
        return "jaccard entry count mismatch";
      for (const auto& t : engineTriples) {
        auto it = oo.jaccardResult.find({t.row, t.col});
        if (it == oo.jaccardResult.end())
          return "jaccard pair (" + t.row + "," + t.col +
                 ") absent from oracle";
        double got = Numeric::parse(t.value).asFloat();
        double want = it->second;
        if (std::abs(got - want) > 1e-9 * std::abs(want))
          return "jaccard value mismatch at (" + t.row + "," + t.col + "): " +
                 t.value + " vs " + std::to_string(want);
      }
      break;
    }
    case Algorithm::ktruss: {
      EdgeSet got = EdgeSet::fromAdjacencyTriples(engineTriples);
      if (!(got == oo.trussResult)) return "ktruss edge set mismatch";
      break;
    }
    case Algorithm::mxm: {
      auto want = oo.mxmResult.toTriples();
      if (!(engineTriples == want)) return "mxm triple mismatch";
      break;
    }
  }
  return "";
}

std::string formatOverhead(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, p);
  if (s.find_first_not_of("-0123456789") == std::string::npos) s += ".0";
  return s;
}

std::string renderMetricsCsv(std::span<const MetricsRow> rows) {
  std::string out =
      "algorithm,scale,tablets,engine,nnz_input,nnz_output,partial_products,"
      "entries_written,iterations,runtime_ms,overhead\n";
  for (const auto& r : rows) {
    out += r.algorithm + ',' + std::to_string(r.scale) + ',' +
           std::to_string(r.tablets) + ',' + r.engine + ',' +
           std::to_string(r.nnzInput) + ',' + std::to_string(r.nnzOutput) +
           ',' + std::to_string(r.partialProducts) + ',' +
           std::to_string(r.entriesWritten) + ',' +
           std::to_string(r.iterations) + ',' +
           std::to_string(r.runtimeMillis) + ',' + formatOverhead(r.overhead) +
           '\n';
  }
  return out;
}

void emitMetrics(std::span<const MetricsRow> rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << renderMetricsCsv(rows);
  out.flush();
  if (!out) throw IoError("write failed on " + path);
}

}  // namespace graphbench
