#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graphbench/generator.hpp"

namespace graphbench {

enum class Algorithm { jaccard, ktruss, mxm };
enum class EngineKind { graphulo, oracle };

Algorithm parseAlgorithm(const std::string& name);
EngineKind parseEngineKind(const std::string& name);
std::string algorithmName(Algorithm alg);
std::string engineKindName(EngineKind kind);

struct ExperimentSpec {
  Algorithm alg = Algorithm::jaccard;
  GenParams gen;
  int tablets = 1;  // 1 or 2; 2 pre-splits every table at the median row
  EngineKind engine = EngineKind::graphulo;
  int64_t k = 3;  // ktruss only
};

// One CSV row. overhead = entriesWritten / nnzOutput; the oracle engine
// writes exactly its final result, so its overhead is 1 by construction.
struct MetricsRow {
  std::string algorithm;
  int scale = 0;
  int tablets = 1;
  std::string engine;
  int64_t nnzInput = 0;
  int64_t nnzOutput = 0;
  uint64_t partialProducts = 0;
  uint64_t entriesWritten = 0;
  uint64_t iterations = 0;
  int64_t runtimeMillis = 0;
  double overhead = 0.0;
};

// Desk-scale ceiling per algorithm, overridable via GRAPHBENCH_MAX_SCALE.
int maxScaleFor(Algorithm alg);

// Generates the input, runs one algorithm on one engine, returns one row.
// Input preparation (generation, loading, degree counts) happens before the
// clock starts.
MetricsRow runExperiment(const ExperimentSpec& spec);

// Runs the experiment on both engines and compares the full result
// content, not just counts. Returns an empty string on agreement, else a
// description of the first mismatch.
std::string verifyExperiment(const ExperimentSpec& spec);

// Shortest decimal form, with ".0" appended to bare integers so a ratio
// column always looks like a ratio.
std::string formatOverhead(double x);

std::string renderMetricsCsv(std::span<const MetricsRow> rows);
void emitMetrics(std::span<const MetricsRow> rows, const std::string& path);

}  // namespace graphbench
