#include "experiments/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "core/closed_forms.hpp"
#include "core/equivalence.hpp"
#include "core/error.hpp"
#include "core/stability.hpp"

namespace permstab::experiments {

namespace {

// Calibrated at n = 2000, 1e5 pairs, seeds 1..8: uniform 0.094..0.101 (lattice jumps of
// the integer statistic dominate), Grassmannian 0.054..0.057.
constexpr double kKsUniform = 0.11;
constexpr double kKsGrassmannian = 0.065;

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::InvalidArgument, what); }

void only_keys(const Json& j, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (auto* k : allowed) ok = ok || it.key() == k;
    if (!ok) bad("unknown config key: " + it.key());
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  try {
    return j[key].get<T>();
  } catch (const std::exception&) {
    bad(std::string("config key '") + key + "' has the wrong type");
  }
}

std::uint64_t positive(const Json& j, const char* key, std::uint64_t fallback) {
  if (j.contains(key) && j[key].is_number_integer() && j[key].get<std::int64_t>() < 1)
    bad(std::string(key) + " must be >= 1");
  auto v = get_or<std::uint64_t>(j, key, fallback);
  if (v < 1) bad(std::string(key) + " must be >= 1");
  return v;
}

Json resolve_mcmc(const Json& j) {
  Json m = j.contains("mcmc") && !j["mcmc"].is_null() ? j["mcmc"] : Json::object();
  only_keys(m, {"burn_in", "thinning"});
  Json out;
  out["burn_in"] = m.contains("burn_in") ? m["burn_in"] : Json(nullptr);
  out["thinning"] = m.contains("thinning") ? m["thinning"] : Json(nullptr);
  if (!out["burn_in"].is_null() && (!out["burn_in"].is_number_integer() || out["burn_in"].get<std::int64_t>() < 0))
    bad("mcmc.burn_in must be an integer >= 0");
  if (!out["thinning"].is_null() && (!out["thinning"].is_number_integer() || out["thinning"].get<std::int64_t>() < 1))
    bad("mcmc.thinning must be an integer >= 1");
  return out;
}

McmcConfig mcmc_of(const Json& m) {
  McmcConfig c;
  if (!m["burn_in"].is_null()) c.burn_in = m["burn_in"].get<std::int64_t>();
  if (!m["thinning"].is_null()) c.thinning = m["thinning"].get<std::int64_t>();
  return c;
}

Json budget_of(const Json& j) {
  if (!j.contains("budget") || j["budget"].is_null()) return nullptr;
  if (!j["budget"].is_number_integer() || j["budget"].get<std::int64_t>() < 1) bad("budget must be a positive integer");
  return j["budget"];
}

void check_budget(const Json& config, std::uint64_t work, const std::string& what) {
  if (config["budget"].is_null()) return;
  if (work > config["budget"].get<std::uint64_t>())
    fail(ErrorCode::BudgetExceeded, what + " needs " + std::to_string(work) + " units, budget is " +
                                        std::to_string(config["budget"].get<std::uint64_t>()));
}

std::uint64_t default_chunk(const ClassSpec& spec, bool force_mcmc, std::uint64_t samples) {
  if (!force_mcmc && has_exact_sampler(spec)) return 4096;
  return std::max<std::uint64_t>(1, (samples + 15) / 16);
}

Json resolve_sampling(const Json& raw, const char* default_class, int default_n, std::uint64_t default_samples) {
  Json c;
  c["command"] = raw["command"];
  std::string cls = get_or<std::string>(raw, "class", default_class);
  auto spec = ClassSpec::parse(cls);
  c["class"] = spec.name();
  int n = get_or<int>(raw, "n", default_n);
  if (n < 1) bad("n must be >= 1");
  c["n"] = n;
  c["samples"] = positive(raw, "samples", default_samples);
  c["seed"] = get_or<std::uint64_t>(raw, "seed", 1);
  std::string sampler = get_or<std::string>(raw, "sampler", "auto");
  if (sampler != "auto" && sampler != "mcmc") bad("sampler must be 'auto' or 'mcmc'");
  c["sampler"] = sampler;
  c["mcmc"] = resolve_mcmc(raw);
  c["chunk_size"] = positive(raw, "chunk_size", default_chunk(spec, sampler == "mcmc", c["samples"].get<std::uint64_t>()));
  return c;
}

PairRun pair_run_of(const Json& c) {
  PairRun r;
  r.spec = ClassSpec::parse(c["class"].get<std::string>());
  r.n = c["n"].get<int>();
  r.samples = c["samples"].get<std::uint64_t>();
  r.seed = c["seed"].get<std::uint64_t>();
  r.chunk_size = c["chunk_size"].get<std::uint64_t>();
  r.force_mcmc = c["sampler"] == "mcmc";
  r.mcmc = mcmc_of(c["mcmc"]);
  return r;
}

Json histogram_json(const Histogram& h) {
  Json j = Json::object();
  for (const auto& [v, c] : h.counts) j[std::to_string(v)] = c;
  return j;
}

Json sampler_json(bool exact) {
  Json s;
  s["kind"] = exact ? "exact" : "mcmc";
  s["exact"] = exact;
  if (!exact) s["caveat"] = "approximate sampler: Metropolis chain without a mixing-time guarantee";
  return s;
}

Json seed_json(std::uint64_t seed, std::uint64_t samples, std::uint64_t chunk) {
  Json s;
  s["base_seed"] = seed;
  s["chunks"] = (samples + chunk - 1) / chunk;
  s["chunk_size"] = chunk;
  s["stream_rule"] = "chunk c draws u from stream 2c and v from stream 2c+1";
  return s;
}

Json envelope(const Json& config) {
  Json j;
  j["tool"] = "permstab";
  j["version"] = kVersion;
  j["command"] = config["command"];
  j["config"] = config;
  return j;
}

Json moments_json(const Histogram& h) {
  auto m = moments(h);
  Json j;
  j["samples"] = h.total();
  j["mean"] = m.mean;
  j["variance"] = m.variance;
  j["stderr"] = m.stderr_mean;
  return j;
}

std::optional<Family> family_of(const ClassSpec& spec) {
  switch (spec.id) {
    case ClassId::Uniform: return Family::Uniform;
    case ClassId::Grassmannian:
    case ClassId::GrassmannianModified: return Family::Grassmannian;
    case ClassId::Boolean: return Family::Boolean;
    default: return std::nullopt;
  }
}

// ---- estimate / distribution ----

Json resolve_estimate(const Json& raw) {
  only_keys(raw, {"command", "class", "n", "samples", "seed", "sampler", "mcmc", "chunk_size", "statistic",
                  "include_timing", "budget"});
  Json c = resolve_sampling(raw, "uniform", 500, 100000);
  std::string stat = get_or<std::string>(raw, "statistic", "fs");
  if (stat != "fs" && stat != "bs") bad("statistic must be 'fs' or 'bs'");
  c["statistic"] = stat;
  c["include_timing"] = get_or<bool>(raw, "include_timing", false);
  c["budget"] = budget_of(raw);
  return c;
}

Report run_estimate(const Json& c, int threads) {
  auto start = std::chrono::steady_clock::now();
  PairRun r = pair_run_of(c);
  r.backward = c["statistic"] == "bs";
  check_budget(c, r.samples, "sampling");
  bool exact = true;
  Histogram h = run_pairs(r, threads, &exact);
  Report rep;
  rep.json = envelope(c);
  rep.json["seed"] = seed_json(r.seed, r.samples, r.chunk_size);
  rep.json["sampler"] = sampler_json(exact);
  Json res = moments_json(h);
  res["mode"] = h.mode();
  if (r.backward) res["negative_values"] = h.count_below(0);
  res["histogram"] = histogram_json(h);
  rep.json["result"] = res;
  auto fam = family_of(r.spec);
  if (fam && !r.backward && r.n >= 2) {
    auto p = asymptotic_mean(*fam, r.n);
    Json pred;
    pred["value"] = p.value;
    pred["lower"] = p.lower;
    pred["upper"] = p.upper;
    // o(1) slack around the asymptotic value; Boolean uses n - 1 .. n + 8 around n + O(1).
    double lo = p.lower - 0.5, hi = p.upper + 0.5;
    if (*fam == Family::Grassmannian) lo = p.value - 1.0, hi = p.value + 1.0;
    if (*fam == Family::Boolean) lo = r.n - 1.0, hi = r.n + 8.0;
    double mean = res["mean"].get<double>();
    pred["band"] = {lo, hi};
    pred["within_band"] = mean >= lo && mean <= hi;
    rep.json["prediction"] = pred;
  }
  if (c["include_timing"].get<bool>())
    rep.json["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.csv = histogram_csv(h);
  return rep;
}

// ---- clt-check ----

Json resolve_clt(const Json& raw) {
  only_keys(raw, {"command", "class", "n", "samples", "seed", "chunk_size", "ks_threshold", "budget"});
  Json r = raw;
  r.erase("ks_threshold");
  r.erase("budget");
  Json c = resolve_sampling(r, "uniform", 2000, 100000);
  auto spec = ClassSpec::parse(c["class"].get<std::string>());
  if (spec.id != ClassId::Uniform && spec.id != ClassId::Grassmannian) bad("clt-check supports uniform and grassmannian");
  if (c["n"].get<int>() < 2) bad("clt-check needs n >= 2");
  c.erase("sampler");
  c.erase("mcmc");
  c["ks_threshold"] = get_or<double>(raw, "ks_threshold", spec.id == ClassId::Uniform ? kKsUniform : kKsGrassmannian);
  c["budget"] = budget_of(raw);
  return c;
}

Report run_clt(const Json& c, int threads) {
  Json full = c;
  full["sampler"] = "auto";
  full["mcmc"] = resolve_mcmc(Json::object());
  PairRun r = pair_run_of(full);
  check_budget(c, r.samples, "sampling");
  Histogram h = run_pairs(r, threads);
  const double n = r.n;
  bool uniform = r.spec.id == ClassId::Uniform;
  double center = uniform ? 2 * n - 2 * std::log(n) : 1.5 * n;
  double scale = uniform ? std::sqrt(2 * std::log(n)) : std::sqrt(n);
  std::function<double(double)> cdf = uniform ? std::function<double(double)>(normal_cdf)
                                              : std::function<double(double)>(limit_cdf_grassmannian);
  double ks = ks_distance(h, center, scale, cdf);
  auto m = moments(h);
  double zmean = (m.mean - center) / scale, zerr = m.stderr_mean / scale;
  double limit_mean = uniform ? 0.0 : -1.0 / (2.0 * std::sqrt(kPi));
  auto pred = asymptotic_mean(uniform ? Family::Uniform : Family::Grassmannian, r.n);
  double lo = (pred.lower - center) / scale, hi = (pred.upper - center) / scale;

  Report rep;
  rep.json = envelope(c);
  rep.json["seed"] = seed_json(r.seed, r.samples, r.chunk_size);
  rep.json["sampler"] = sampler_json(true);
  Json res = moments_json(h);
  res["center"] = center;
  res["scale"] = scale;
  res["ks_distance"] = ks;
  res["ks_threshold"] = c["ks_threshold"];
  res["ks_pass"] = ks < c["ks_threshold"].get<double>();
  res["standardized_mean"] = zmean;
  res["standardized_stderr"] = zerr;
  res["limit_mean"] = limit_mean;
  res["limit_mean_z"] = zerr > 0 ? (zmean - limit_mean) / zerr : 0.0;
  Json fin;
  fin["lower"] = lo;
  fin["upper"] = hi;
  fin["contains_mean_within_5_stderr"] = zmean >= lo - 5 * zerr && zmean <= hi + 5 * zerr;
  res["finite_n_expectation"] = fin;
  res["histogram"] = histogram_json(h);
  rep.json["result"] = res;
  rep.passed = res["ks_pass"].get<bool>();
  rep.csv = histogram_csv(h);
  return rep;
}

// ---- conjectures ----

struct ConjectureTarget {
  const char* cls;
  const char* statement;
  std::function<void(double n, double& value, double& lo, double& hi)> predict;
};

std::vector<ConjectureTarget> targets(const std::string& regime) {
  auto point = [](std::function<double(double)> f) {
    return [f](double n, double& v, double& lo, double& hi) { v = lo = hi = f(n); };
  };
  if (regime == "rdense")
    return {
        {"boolean", "n + 3 + o(1)", point([](double n) { return n + 3; })},
        {"cograssmannian", "n + sqrt(n/pi) + O(1)", point([](double n) { return n + std::sqrt(n / kPi); })},
        {"av:321", "n + c sqrt(n) + O(1), c in [0.92, 0.94]",
         [](double n, double& v, double& lo, double& hi) {
           lo = n + 0.92 * std::sqrt(n);
           hi = n + 0.94 * std::sqrt(n);
           v = (lo + hi) / 2;
         }},
    };
  if (regime == "rint")
    return {
        {"smooth", "c n + o(n), c in [1.35, 1.40]",
         [](double n, double& v, double& lo, double& hi) {
           lo = 1.35 * n;
           hi = 1.40 * n;
           v = (lo + hi) / 2;
         }},
        {"levi-spherical", "5n/4 + O(1)", point([](double n) { return 1.25 * n; })},
    };
  if (regime == "rsparse")
    return {
        {"av:231", "2n - 5 + o(1)", point([](double n) { return 2 * n - 5; })},
        {"av:132", "2n - 5 + o(1)", point([](double n) { return 2 * n - 5; })},
        {"fireworks", "2n - 2n/(log n - log log n) + o(n/log n)",
         point([](double n) { return 2 * n - 2 * n / (std::log(n) - std::log(std::log(n))); })},
        {"vexillary", "2n - O(sqrt(n)); residual reported against 2n", point([](double n) { return 2 * n; })},
        {"covexillary", "2n - c - o(1), c in [6, 9]",
         [](double n, double& v, double& lo, double& hi) {
           lo = 2 * n - 9;
           hi = 2 * n - 6;
           v = (lo + hi) / 2;
         }},
    };
  bad("regime must be rdense, rint or rsparse");
}

Json resolve_conjectures(const Json& raw) {
  only_keys(raw, {"command", "regime", "n_list", "samples", "seed", "mcmc", "budget"});
  Json c;
  c["command"] = raw["command"];
  std::string regime = get_or<std::string>(raw, "regime", "rsparse");
  targets(regime);
  c["regime"] = regime;
  std::vector<int> ns = get_or<std::vector<int>>(raw, "n_list", std::vector<int>{25, 50, 100});
  if (ns.empty()) bad("n_list must not be empty");
  for (int n : ns)
    if (n < 3) bad("n_list entries must be >= 3");
  c["n_list"] = ns;
  c["samples"] = positive(raw, "samples", 400);
  c["seed"] = get_or<std::uint64_t>(raw, "seed", 1);
  c["mcmc"] = resolve_mcmc(raw);
  c["budget"] = budget_of(raw);
  return c;
}

Report run_conjectures(const Json& c, int threads) {
  Report rep;
  rep.json = envelope(c);
  auto ts = targets(c["regime"].get<std::string>());
  auto ns = c["n_list"].get<std::vector<int>>();
  check_budget(c, c["samples"].get<std::uint64_t>() * ts.size() * ns.size(), "sampling");
  Json rows = Json::array();
  std::string csv = "class,n,sampler,samples,mean,stderr,prediction,prediction_low,prediction_high,residual\n";
  std::map<int, std::pair<double, double>> av231, av132;
  std::uint64_t target_index = 0;
  for (const auto& t : ts) {
    for (int n : ns) {
      PairRun r;
      r.spec = ClassSpec::parse(t.cls);
      r.n = n;
      r.samples = c["samples"].get<std::uint64_t>();
      // Distinct class/size combinations get disjoint seeds.
      r.seed = c["seed"].get<std::uint64_t>() + 0x9e3779b97f4a7c15ULL * (++target_index);
      r.mcmc = mcmc_of(c["mcmc"]);
      r.chunk_size = default_chunk(r.spec, false, r.samples);
      bool exact = true;
      Histogram h = run_pairs(r, threads, &exact);
      auto m = moments(h);
      double v, lo, hi;
      t.predict(n, v, lo, hi);
      Json row;
      row["class"] = r.spec.name();
      row["n"] = n;
      row["sampler"] = exact ? "exact" : "mcmc";
      row["samples"] = r.samples;
      row["seed"] = r.seed;
      row["mean"] = m.mean;
      row["stderr"] = m.stderr_mean;
      row["statement"] = t.statement;
      row["prediction"] = v;
      row["prediction_low"] = lo;
      row["prediction_high"] = hi;
      row["residual"] = m.mean - v;
      if (!exact) row["caveat"] = "approximate sampler";
      if (r.spec.name() == "av:231") av231[n] = {m.mean, m.stderr_mean};
      if (r.spec.name() == "av:132") av132[n] = {m.mean, m.stderr_mean};
      rows.push_back(row);
      char buf[512];
      std::snprintf(buf, sizeof buf, "%s,%d,%s,%llu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", r.spec.name().c_str(), n,
                    exact ? "exact" : "mcmc", static_cast<unsigned long long>(r.samples), m.mean, m.stderr_mean, v, lo,
                    hi, m.mean - v);
      csv += buf;
    }
  }
  rep.json["rows"] = rows;
  if (!av231.empty() && !av132.empty()) {
    Json cmp = Json::array();
    for (const auto& [n, a] : av231) {
      auto b = av132[n];
      double joint = std::sqrt(a.second * a.second + b.second * b.second);
      Json e;
      e["n"] = n;
      e["difference"] = a.first - b.first;
      e["joint_stderr"] = joint;
      e["within_3_joint_stderr"] = std::abs(a.first - b.first) <= 3 * joint;
      cmp.push_back(e);
    }
    rep.json["av231_vs_av132"] = cmp;
  }
  rep.csv = csv;
  return rep;
}

// ---- equivalence ----

Json resolve_equivalence(const Json& raw) {
  only_keys(raw, {"command", "mode", "pi", "sigma", "k_list", "n_max", "budget"});
  Json c;
  c["command"] = raw["command"];
  bool pair = raw.contains("pi") || raw.contains("sigma");
  if (pair) {
    if (!raw.contains("pi") || !raw.contains("sigma")) bad("equivalence needs both pi and sigma");
    auto pi = Permutation::parse(get_or<std::string>(raw, "pi", ""));
    auto sigma = Permutation::parse(get_or<std::string>(raw, "sigma", ""));
    if (pi.size() != sigma.size()) bad("pi and sigma must have the same size");
    c["mode"] = "pair";
    c["pi"] = pi.to_string();
    c["sigma"] = sigma.to_string();
  } else {
    c["mode"] = "scan";
    auto ks = get_or<std::vector<int>>(raw, "k_list", std::vector<int>{2, 3, 4});
    for (int k : ks)
      if (k < 1 || k > 8) bad("k_list entries must be in 1..8");
    c["k_list"] = ks;
  }
  int n_max = get_or<int>(raw, "n_max", pair ? 9 : 10);
  if (n_max < 1 || n_max > 16) bad("n_max must be in 1..16");
  c["n_max"] = n_max;
  c["budget"] = budget_of(raw);
  return c;
}

Json clauses_json(const std::array<bool, 4>& cl) {
  Json j;
  j["record_sets_agree"] = cl[0];
  j["wilf_up_to_n_max"] = cl[1];
  j["minors_equivalent"] = cl[2];
  j["terminal_step"] = cl[3];
  return j;
}

Report run_equivalence(const Json& c) {
  Report rep;
  rep.json = envelope(c);
  int n_max = c["n_max"].get<int>();
  std::uint64_t budget = c["budget"].is_null() ? 2000000000ULL : c["budget"].get<std::uint64_t>();
  EquivalenceOracle oracle(n_max, budget);
  if (c["mode"] == "pair") {
    auto pi = Permutation::parse(c["pi"].get<std::string>());
    auto sigma = Permutation::parse(c["sigma"].get<std::string>());
    if (n_max < pi.size()) bad("n_max must be at least the pattern size");
    auto v = oracle.verdict(pi, sigma);
    Json r;
    r["pi"] = pi.to_string();
    r["sigma"] = sigma.to_string();
    r["n_max"] = n_max;
    r["equivalent_up_to_n_max"] = v.equivalent;
    if (v.first_failure) {
      r["first_failure"] = {{"n", v.first_failure->first}, {"record_set", v.first_failure->second}};
    } else {
      r["first_failure"] = nullptr;
    }
    r["clauses"] = clauses_json(v.clauses);
    r["criterion_prediction"] = v.criterion_prediction;
    r["criterion_agrees"] = v.criterion_prediction == v.equivalent;
    rep.json["result"] = r;
    return rep;
  }
  Json scans = Json::array();
  std::string csv = "k,pi,sigma,truth,prediction\n";
  for (int k : c["k_list"].get<std::vector<int>>()) {
    if (n_max < k) bad("n_max must be at least every k");
    auto s = conjecture_scan(k, n_max, &oracle);
    Json j;
    j["k"] = k;
    j["n_max"] = n_max;
    j["pairs"] = s.pairs.size();
    int tt = 0, tf = 0, ft = 0, ff = 0;
    Json equiv = Json::array(), disagree = Json::array();
    for (const auto& e : s.pairs) {
      (e.truth ? (e.prediction ? tt : tf) : (e.prediction ? ft : ff))++;
      if (e.truth) equiv.push_back({e.pi.to_string(), e.sigma.to_string()});
      if (e.truth != e.prediction) {
        Json d;
        d["pi"] = e.pi.to_string();
        d["sigma"] = e.sigma.to_string();
        d["truth"] = e.truth;
        d["prediction"] = e.prediction;
        d["clauses"] = clauses_json(e.clauses);
        disagree.push_back(d);
      }
      csv += std::to_string(k) + "," + e.pi.to_string() + "," + e.sigma.to_string() + "," +
             (e.truth ? "1" : "0") + "," + (e.prediction ? "1" : "0") + "\n";
    }
    j["agreement_matrix"] = {{"truth_equivalent", {{"predicted_equivalent", tt}, {"predicted_inequivalent", tf}}},
                             {"truth_inequivalent", {{"predicted_equivalent", ft}, {"predicted_inequivalent", ff}}}};
    j["agreements"] = s.agreements;
    j["disagreements"] = s.disagreements;
    j["equivalent_pairs"] = equiv;
    j["disagreement_list"] = disagree;
    if (s.disagreements) rep.passed = false;
    scans.push_back(j);
  }
  rep.json["scans"] = scans;
  rep.csv = csv;
  return rep;
}

// ---- verify ----

Json resolve_verify(const Json& raw) {
  only_keys(raw, {"command", "suite", "expensive", "budget"});
  Json c;
  c["command"] = raw["command"];
  std::string suite = get_or<std::string>(raw, "suite", "all");
  const auto& all = verify_suites();
  if (suite != "all" && std::find(all.begin(), all.end(), suite) == all.end()) bad("unknown suite: " + suite);
  c["suite"] = suite;
  c["expensive"] = get_or<bool>(raw, "expensive", false);
  c["budget"] = budget_of(raw);
  return c;
}

Report run_verify(const Json& c) {
  Report rep;
  rep.json = envelope(c);
  std::vector<std::string> suites;
  if (c["suite"] == "all") suites = verify_suites();
  else suites.push_back(c["suite"].get<std::string>());
  Json checks = Json::array(), failures = Json::array();
  std::string csv = "suite,check,passed\n";
  for (const auto& s : suites) {
    for (const auto& r : run_verify_suite(s, c["expensive"].get<bool>())) {
      Json j;
      j["suite"] = r.suite;
      j["check"] = r.name;
      j["passed"] = r.passed;
      if (!r.detail.empty()) j["detail"] = r.detail;
      checks.push_back(j);
      if (!r.passed) {
        failures.push_back(j);
        rep.passed = false;
      }
      csv += r.suite + "," + r.name + "," + (r.passed ? "1" : "0") + "\n";
    }
  }
  rep.json["checks"] = checks;
  rep.json["failures"] = failures;
  rep.json["passed"] = rep.passed;
  rep.csv = csv;
  return rep;
}

// ---- sample ----

Json resolve_sample(const Json& raw) {
  only_keys(raw, {"command", "class", "n", "count", "seed", "stream", "sampler", "mcmc", "budget"});
  Json c;
  c["command"] = raw["command"];
  auto spec = ClassSpec::parse(get_or<std::string>(raw, "class", "uniform"));
  c["class"] = spec.name();
  int n = get_or<int>(raw, "n", 10);
  if (n < 1) bad("n must be >= 1");
  c["n"] = n;
  c["count"] = positive(raw, "count", 10);
  c["seed"] = get_or<std::uint64_t>(raw, "seed", 1);
  c["stream"] = get_or<std::uint64_t>(raw, "stream", 0);
  std::string sampler = get_or<std::string>(raw, "sampler", "auto");
  if (sampler != "auto" && sampler != "mcmc") bad("sampler must be 'auto' or 'mcmc'");
  c["sampler"] = sampler;
  c["mcmc"] = resolve_mcmc(raw);
  c["budget"] = budget_of(raw);
  return c;
}

Report run_sample(const Json& c) {
  check_budget(c, c["count"].get<std::uint64_t>(), "sampling");
  auto spec = ClassSpec::parse(c["class"].get<std::string>());
  int n = c["n"].get<int>();
  auto sampler = make_sampler(spec, n, SeedSpec{c["seed"].get<std::uint64_t>(), c["stream"].get<std::uint64_t>()},
                              mcmc_of(c["mcmc"]), c["sampler"] == "mcmc");
  Report rep;
  rep.json = envelope(c);
  rep.json["sampler"] = sampler_json(sampler->exact());
  Json perms = Json::array();
  std::string csv = "index,permutation,fs,record_set\n";
  for (std::uint64_t i = 0; i < c["count"].get<std::uint64_t>(); ++i) {
    auto w = sampler->next();
    std::string rs;
    for (int j : record_set(w)) rs += (rs.empty() ? "" : " ") + std::to_string(j);
    Json e;
    e["permutation"] = w.to_string();
    e["fs"] = fs_of(w);
    e["record_set"] = record_set(w);
    if (spec.id == ClassId::Boolean) e["tags"] = tag_encode(w).to_string();
    perms.push_back(e);
    csv += std::to_string(i) + ",\"" + w.to_string() + "\"," + std::to_string(fs_of(w)) + "," + rs + "\n";
  }
  rep.json["samples"] = perms;
  rep.csv = csv;
  return rep;
}

}  // namespace

Histogram run_pairs(const PairRun& run, int threads, bool* exact_out) {
  if (run.samples == 0) return {};
  const std::uint64_t chunks = (run.samples + run.chunk_size - 1) / run.chunk_size;
  std::vector<Histogram> parts(chunks);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> exact{true};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    try {
      while (true) {
        std::uint64_t c = next.fetch_add(1);
        if (c >= chunks) return;
        std::uint64_t count = std::min(run.chunk_size, run.samples - c * run.chunk_size);
        auto su = make_sampler(run.spec, run.n, SeedSpec{run.seed, 2 * c}, run.mcmc, run.force_mcmc);
        auto sv = make_sampler(run.spec, run.n, SeedSpec{run.seed, 2 * c + 1}, run.mcmc, run.force_mcmc);
        if (!su->exact()) exact = false;
        Histogram& h = parts[c];
        for (std::uint64_t i = 0; i < count; ++i) {
          auto u = su->next();
          auto v = sv->next();
          if (run.backward) {
            h.add(bs_pair(u, v, run.n));
          } else {
            auto cu = chi_vector(u), cv = chi_vector(v);
            h.add(fs_from_chi(cu, fs_of(u), cv, fs_of(v)));
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next = chunks;
    }
  };
  int t = std::max(1, std::min<int>(threads, static_cast<int>(chunks)));
  if (t == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  Histogram total;
  for (const auto& p : parts) total.merge(p);
  if (exact_out) *exact_out = exact;
  return total;
}

Json resolve_config(const Json& raw) {
  if (!raw.is_object()) bad("config must be a JSON object");
  if (!raw.contains("command") || !raw["command"].is_string()) bad("config needs a string 'command'");
  std::string cmd = raw["command"].get<std::string>();
  if (cmd == "estimate" || cmd == "distribution") return resolve_estimate(raw);
  if (cmd == "clt-check") return resolve_clt(raw);
  if (cmd == "conjectures") return resolve_conjectures(raw);
  if (cmd == "equivalence") return resolve_equivalence(raw);
  if (cmd == "verify") return resolve_verify(raw);
  if (cmd == "sample") return resolve_sample(raw);
  bad("unknown command: " + cmd);
}

Report run(const Json& config, int threads) {
  Json c = resolve_config(config);
  std::string cmd = c["command"].get<std::string>();
  if (cmd == "estimate" || cmd == "distribution") return run_estimate(c, threads);
  if (cmd == "clt-check") return run_clt(c, threads);
  if (cmd == "conjectures") return run_conjectures(c, threads);
  if (cmd == "equivalence") return run_equivalence(c);
  if (cmd == "verify") return run_verify(c);
  return run_sample(c);
}

}  // namespace permstab::experiments
