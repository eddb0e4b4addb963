#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/classes.hpp"
#include "core/rng.hpp"
#include "core/samplers.hpp"
#include "experiments/stats.hpp"

namespace permstab::experiments {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

struct Report {
  Json json;
  std::string csv;  // empty when the command has no tabular output
  bool passed = true;
};

// Fills defaults and validates. The result is what every report embeds under "config".
Json resolve_config(const Json& raw);
// threads only changes scheduling; output is identical for every value.
Report run(const Json& config, int threads);

struct PairRun {
  ClassSpec spec;
  int n = 1;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = 4096;
  bool force_mcmc = false;
  McmcConfig mcmc;
  bool backward = false;  // histogram of BS instead of FS
};

// Chunk c draws its pairs from stream 2c (u) and 2c+1 (v).
Histogram run_pairs(const PairRun& run, int threads, bool* exact = nullptr);

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed;
  std::string detail;
};
const std::vector<std::string>& verify_suites();
std::vector<CheckResult> run_verify_suite(const std::string& suite, bool expensive);

}  // namespace permstab::experiments
