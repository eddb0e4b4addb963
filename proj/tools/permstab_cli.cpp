#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "permstab/permstab.h"

using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kVerificationFailed = 1, kUsage = 2, kBudget = 3 };

struct Flags {
  std::string cls = "uniform";
  int n = 0;
  std::uint64_t samples = 0;
  std::string statistic = "fs";
  std::string sampler = "auto";
  std::int64_t burn_in = -1;
  std::int64_t thinning = -1;
  std::uint64_t chunk_size = 0;
  bool timing = false;
  double ks_threshold = 0;
  std::string regime = "rsparse";
  std::vector<int> n_list;
  std::string suite = "all";
  bool expensive = false;
  std::string pi, sigma;
  std::vector<int> k_list;
  int n_max = 0;
  std::uint64_t count = 0;
  std::uint64_t stream = 0;
};

void add_sampling(CLI::App* sub, Flags& f, bool mcmc = true) {
  sub->add_option("--class", f.cls, "Permutation class (uniform, grassmannian, boolean, av:231, smooth, ...)");
  sub->add_option("--n", f.n, "Permutation size")->check(CLI::PositiveNumber);
  sub->add_option("--samples", f.samples, "Number of (u,v) pairs")->check(CLI::PositiveNumber);
  sub->add_option("--chunk-size", f.chunk_size, "Pairs per seed stream")->check(CLI::PositiveNumber);
  if (mcmc) {
    sub->add_option("--sampler", f.sampler, "auto (exact when available) or mcmc")->check(CLI::IsMember({"auto", "mcmc"}));
    sub->add_option("--burn-in", f.burn_in, "Metropolis burn-in steps (default 50 n^2)")->check(CLI::NonNegativeNumber);
    sub->add_option("--thinning", f.thinning, "Metropolis steps between samples (default n^2)")->check(CLI::PositiveNumber);
  }
}

void set_if(Json& j, const char* key, const CLI::App* sub, const char* flag, const Json& value) {
  if (sub->count(flag) > 0) j[key] = value;
}

void set_mcmc(Json& j, const CLI::App* sub, const Flags& f) {
  if (sub->count("--burn-in") || sub->count("--thinning")) {
    if (!j.contains("mcmc") || !j["mcmc"].is_object()) j["mcmc"] = Json::object();
    if (sub->count("--burn-in")) j["mcmc"]["burn_in"] = f.burn_in;
    if (sub->count("--thinning")) j["mcmc"]["thinning"] = f.thinning;
  }
}

int fail_with(ps_status s) {
  std::cerr << "permstab: " << ps_status_string(s) << ": " << ps_last_error_message() << "\n";
  if (s == PS_BUDGET_EXCEEDED) return kBudget;
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward and backward stability of permutation pairs: exact checks and Monte Carlo experiments"};
  app.set_version_flag("--version", std::string("permstab ") + ps_version());
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::uint64_t seed = 1;
  int threads = 0;
  std::string out_path, format, config_path;
  std::uint64_t budget = 0;
  app.add_option("--seed", seed, "Base seed");
  app.add_option("--threads", threads, "Worker threads (0 = all cores); never changes the output");
  app.add_option("--out", out_path, "Write the output here instead of stdout");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--budget", budget, "Work limit; exceeding it exits with status 3")->check(CLI::PositiveNumber);
  app.add_option("--config", config_path, "JSON config file (a bare config or a previous report)");

  Flags f;
  auto* verify = app.add_subcommand("verify", "Run exact-check suites");
  verify->add_option("--suite", f.suite, "core, classes, formulas, samplers, oracle or all")
      ->check(CLI::IsMember({"core", "classes", "formulas", "samplers", "oracle", "all"}));
  verify->add_flag("--expensive", f.expensive, "Extend exhaustive ranges");

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate of E[FS(u,v)]");
  add_sampling(estimate, f);
  estimate->add_option("--statistic", f.statistic, "fs or bs")->check(CLI::IsMember({"fs", "bs"}));
  estimate->add_flag("--timing", f.timing, "Include wall time in the report");

  auto* distribution = app.add_subcommand("distribution", "Histogram of FS(u,v) as value,count CSV");
  add_sampling(distribution, f);
  distribution->add_option("--statistic", f.statistic, "fs or bs")->check(CLI::IsMember({"fs", "bs"}));

  auto* clt = app.add_subcommand("clt-check", "KS distance of standardized FS to its limit law");
  add_sampling(clt, f, false);
  clt->add_option("--ks-threshold", f.ks_threshold, "Override the calibrated threshold");

  auto* conj = app.add_subcommand("conjectures", "Mean FS against the conjectured asymptotics");
  conj->add_option("--regime", f.regime, "rdense, rint or rsparse")->check(CLI::IsMember({"rdense", "rint", "rsparse"}));
  conj->add_option("--n-list", f.n_list, "Sizes")->delimiter(',');
  conj->add_option("--samples", f.samples, "Pairs per class and size")->check(CLI::PositiveNumber);
  conj->add_option("--burn-in", f.burn_in, "Metropolis burn-in steps")->check(CLI::NonNegativeNumber);
  conj->add_option("--thinning", f.thinning, "Metropolis steps between samples")->check(CLI::PositiveNumber);

  auto* equiv = app.add_subcommand("equivalence", "Record-equivalence of patterns and the recursive criterion");
  equiv->add_option("--pi", f.pi, "First pattern");
  equiv->add_option("--sigma", f.sigma, "Second pattern");
  equiv->add_option("--k-list", f.k_list, "Pattern sizes to scan when no pair is given")->delimiter(',');
  equiv->add_option("--n-max", f.n_max, "Largest class size compared")->check(CLI::PositiveNumber);

  auto* sample = app.add_subcommand("sample", "Draw permutations from a class");
  sample->add_option("--class", f.cls, "Permutation class");
  sample->add_option("--n", f.n, "Permutation size")->check(CLI::PositiveNumber);
  sample->add_option("--count", f.count, "How many")->check(CLI::PositiveNumber);
  sample->add_option("--stream", f.stream, "Seed stream index");
  sample->add_option("--sampler", f.sampler, "auto or mcmc")->check(CLI::IsMember({"auto", "mcmc"}));
  sample->add_option("--burn-in", f.burn_in, "Metropolis burn-in steps")->check(CLI::NonNegativeNumber);
  sample->add_option("--thinning", f.thinning, "Metropolis steps between samples")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Json config = Json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "permstab: cannot read config " << config_path << "\n";
      return kUsage;
    }
    try {
      config = Json::parse(in);
    } catch (const std::exception& e) {
      std::cerr << "permstab: bad config: " << e.what() << "\n";
      return kUsage;
    }
    if (config.contains("config") && config["config"].is_object()) config = config["config"];
  }

  CLI::App* sub = nullptr;
  for (auto* s : {verify, estimate, distribution, clt, conj, equiv, sample})
    if (s->parsed()) sub = s;
  if (sub) {
    std::string name = sub->get_name();
    if (config.contains("command") && config["command"] != name) {
      // A different command in the file: its keys do not apply.
      config = Json::object();
    }
    config["command"] = name;
  }
  if (!config.contains("command")) {
    std::cerr << app.help();
    return kUsage;
  }
  if (app.count("--seed")) config["seed"] = seed;
  if (app.count("--budget")) config["budget"] = budget;

  if (sub == verify) {
    set_if(config, "suite", sub, "--suite", f.suite);
    if (f.expensive) config["expensive"] = true;
  } else if (sub == estimate || sub == distribution || sub == clt) {
    set_if(config, "class", sub, "--class", f.cls);
    set_if(config, "n", sub, "--n", f.n);
    set_if(config, "samples", sub, "--samples", f.samples);
    set_if(config, "chunk_size", sub, "--chunk-size", f.chunk_size);
    if (sub != clt) {
      set_if(config, "sampler", sub, "--sampler", f.sampler);
      set_if(config, "statistic", sub, "--statistic", f.statistic);
      set_mcmc(config, sub, f);
    } else {
      set_if(config, "ks_threshold", sub, "--ks-threshold", f.ks_threshold);
    }
    if (sub == estimate && f.timing) config["include_timing"] = true;
  } else if (sub == conj) {
    set_if(config, "regime", sub, "--regime", f.regime);
    set_if(config, "n_list", sub, "--n-list", f.n_list);
    set_if(config, "samples", sub, "--samples", f.samples);
    set_mcmc(config, sub, f);
  } else if (sub == equiv) {
    set_if(config, "pi", sub, "--pi", f.pi);
    set_if(config, "sigma", sub, "--sigma", f.sigma);
    set_if(config, "k_list", sub, "--k-list", f.k_list);
    set_if(config, "n_max", sub, "--n-max", f.n_max);
  } else if (sub == sample) {
    set_if(config, "class", sub, "--class", f.cls);
    set_if(config, "n", sub, "--n", f.n);
    set_if(config, "count", sub, "--count", f.count);
    set_if(config, "stream", sub, "--stream", f.stream);
    set_if(config, "sampler", sub, "--sampler", f.sampler);
    set_mcmc(config, sub, f);
  }

  ps_report* report = nullptr;
  ps_status st = ps_experiment_run(config.dump().c_str(), threads, &report);
  if (st != PS_OK && st != PS_VERIFICATION_FAILED) return fail_with(st);

  if (format.empty()) format = config["command"] == "distribution" ? "csv" : "json";
  std::string text = format == "csv" ? ps_report_csv(report) : ps_report_json(report);
  int passed = ps_report_passed(report);
  ps_report_destroy(report);

  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "permstab: cannot write " << out_path << "\n";
      return kUsage;
    }
  }
  if (!passed) {
    std::cerr << "permstab: verification failed\n";
    return kVerificationFailed;
  }
  return kOk;
}
