#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphbench/bench.hpp"
#include "graphbench/errors.hpp"
#include "graphbench/generator.hpp"
#include "graphbench/tsv.hpp"

namespace gb = graphbench;

int main(int argc, char** argv) {
  CLI::App app{"Tablet-engine graph algorithm benchmark"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand(
      "generate", "Emit raw power-law edge triples as TSV");
  int genScale = 10;
  int genEpv = 16;
  uint64_t genSeed = 1;
  std::string genOut;
  gen->add_option("--scale", genScale, "log2 of the vertex count")->required();
  gen->add_option("--epv", genEpv, "edges per vertex")->capture_default_str();
  gen->add_option("--seed", genSeed, "generator seed")->capture_default_str();
  gen->add_option("--out", genOut, "output TSV path")->required();

  // run
  auto* run = app.add_subcommand(
      "run", "Run one algorithm on one engine and append a metrics row");
  std::string runAlg;
  int64_t runK = 3;
  int runScale = 10;
  int runEpv = 16;
  uint64_t runSeed = 1;
  int runTablets = 1;
  std::string runEngine = "graphulo";
  std::string runMetrics;
  run->add_option("--alg", runAlg, "jaccard, ktruss, or mxm")->required();
  run->add_option("--k", runK, "truss order")->capture_default_str();
  run->add_option("--scale", runScale, "log2 of the vertex count")->required();
  run->add_option("--epv", runEpv, "edges per vertex")->capture_default_str();
  run->add_option("--seed", runSeed, "generator seed")->capture_default_str();
  run->add_option("--tablets", runTablets, "1 or 2")->capture_default_str();
  run->add_option("--engine", runEngine, "graphulo or oracle")
      ->capture_default_str();
  run->add_option("--metrics", runMetrics, "CSV output path");

  // verify
  auto* ver = app.add_subcommand(
      "verify", "Run both engines and assert result agreement");
  std::string verAlg;
  int64_t verK = 3;
  int verScale = 10;
  int verEpv = 16;
  uint64_t verSeed = 1;
  int verTablets = 1;
  ver->add_option("--alg", verAlg, "jaccard, ktruss, or mxm")->required();
  ver->add_option("--k", verK, "truss order")->capture_default_str();
  ver->add_option("--scale", verScale, "log2 of the vertex count")->required();
  ver->add_option("--epv", verEpv, "edges per vertex")->capture_default_str();
  ver->add_option("--seed", verSeed, "generator seed")->capture_default_str();
  ver->add_option("--tablets", verTablets, "1 or 2")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      gb::GenParams p;
      p.scale = genScale;
      p.edgesPerVertex = genEpv;
      p.seed = genSeed;
      auto raw = gb::generate(p);
      gb::writeTsvFile(genOut, raw);
      std::cout << "wrote " << raw.size() << " triples to " << genOut << "\n";
      return 0;
    }
    if (run->parsed()) {
      gb::ExperimentSpec spec;
      spec.alg = gb::parseAlgorithm(runAlg);
      spec.gen.scale = runScale;
      spec.gen.edgesPerVertex = runEpv;
      spec.gen.seed = runSeed;
      spec.tablets = runTablets;
      spec.engine = gb::parseEngineKind(runEngine);
      spec.k = runK;
      gb::MetricsRow row = gb::runExperiment(spec);
      std::vector<gb::MetricsRow> rows{row};
      std::string csv = gb::renderMetricsCsv(rows);
      if (!runMetrics.empty()) {
        std::error_code ec;
        if (std::filesystem::exists(runMetrics, ec) &&
            std::filesystem::file_size(runMetrics, ec) > 0) {
          std::ofstream out(runMetrics, std::ios::app);
          out << csv.substr(csv.find('\n') + 1);
          if (!out) {
            std::cerr << "error: cannot append to " << runMetrics << "\n";
            return 2;
          }
        } else {
          gb::emitMetrics(rows, runMetrics);
        }
      }
      std::cout << csv;
      return 0;
    }
    if (ver->parsed()) {
      gb::ExperimentSpec spec;
      spec.alg = gb::parseAlgorithm(verAlg);
      spec.gen.scale = verScale;
      spec.gen.edgesPerVertex = verEpv;
      spec.gen.seed = verSeed;
      spec.tablets = verTablets;
      spec.k = verK;
      std::string mismatch = gb::verifyExperiment(spec);
      if (mismatch.empty()) {
        std::cout << "engines agree\n";
        return 0;
      }
      std::cerr << "mismatch: " << mismatch << "\n";
      return 1;
    }
  } catch (const gb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
