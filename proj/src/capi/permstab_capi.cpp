#include "permstab/permstab.h"

#include <cstring>
#include <new>
#include <string>
#include <thread>

#include "core/classes.hpp"
#include "core/error.hpp"
#include "core/perm.hpp"
#include "core/samplers.hpp"
#include "core/stability.hpp"
#include "core/tags.hpp"
#include "experiments/runner.hpp"

using namespace permstab;

struct ps_perm {
  Permutation w;
};

struct ps_sampler {
  std::unique_ptr<Sampler> impl;
};

struct ps_report {
  std::string json;
  std::string csv;
  bool passed;
};

namespace {

thread_local std::string last_error;

ps_status code_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return PS_INVALID_ARGUMENT;
    case ErrorCode::NotAPermutation: return PS_NOT_A_PERMUTATION;
    case ErrorCode::OutOfRange: return PS_OUT_OF_RANGE;
    case ErrorCode::NonBoolean: return PS_NON_BOOLEAN;
    case ErrorCode::BudgetExceeded: return PS_BUDGET_EXCEEDED;
    case ErrorCode::Unsupported: return PS_UNSUPPORTED;
    case ErrorCode::Io: return PS_IO;
  }
  return PS_INTERNAL;
}

template <class F>
ps_status guard(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const Error& e) {
    last_error = e.what();
    return code_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return PS_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PS_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PS_INTERNAL;
  }
}

ps_status null_arg() {
  last_error = "null argument";
  return PS_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* ps_version(void) { return experiments::kVersion; }

const char* ps_status_string(ps_status status) {
  switch (status) {
    case PS_OK: return "ok";
    case PS_INVALID_ARGUMENT: return "invalid argument";
    case PS_NOT_A_PERMUTATION: return "not a permutation";
    case PS_OUT_OF_RANGE: return "out of range";
    case PS_NON_BOOLEAN: return "not Boolean";
    case PS_BUDGET_EXCEEDED: return "budget exceeded";
    case PS_UNSUPPORTED: return "unsupported";
    case PS_IO: return "i/o error";
    case PS_VERIFICATION_FAILED: return "verification failed";
    case PS_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ps_last_error_message(void) { return last_error.c_str(); }

ps_status ps_perm_create(const int32_t* values, size_t n, ps_perm** out) {
  if (!values || !out) return null_arg();
  return guard([&] {
    *out = new ps_perm{Permutation(std::vector<int>(values, values + n))};
    return PS_OK;
  });
}

ps_status ps_perm_parse(const char* text, ps_perm** out) {
  if (!text || !out) return null_arg();
  return guard([&] {
    *out = new ps_perm{Permutation::parse(text)};
    return PS_OK;
  });
}

void ps_perm_destroy(ps_perm* perm) { delete perm; }

size_t ps_perm_size(const ps_perm* perm) { return perm ? static_cast<size_t>(perm->w.size()) : 0; }

ps_status ps_perm_values(const ps_perm* perm, int32_t* out, size_t capacity) {
  if (!perm || (!out && capacity)) return null_arg();
  auto v = perm->w.values();
  if (capacity < v.size()) {
    last_error = "buffer too small";
    return PS_OUT_OF_RANGE;
  }
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return PS_OK;
}

ps_status ps_left_inversion_count(const ps_perm* w, int32_t j, int32_t* out) {
  if (!w || !out) return null_arg();
  return guard([&] {
    *out = left_inversion_count(w->w, j);
    return PS_OK;
  });
}

ps_status ps_record_indicators(const ps_perm* w, uint8_t* rec_out, size_t capacity) {
  if (!w || !rec_out) return null_arg();
  if (capacity < static_cast<size_t>(w->w.size())) {
    last_error = "buffer too small";
    return PS_OUT_OF_RANGE;
  }
  auto p = record_profile(w->w);
  std::memcpy(rec_out, p.rec.data(), p.rec.size());
  return PS_OK;
}

ps_status ps_perm_fs(const ps_perm* w, int32_t* out) {
  if (!w || !out) return null_arg();
  *out = fs_of(w->w);
  return PS_OK;
}

ps_status ps_lambda(const ps_perm* w, int32_t i, int32_t* out) {
  if (!w || !out) return null_arg();
  return guard([&] {
    *out = lambda(w->w, i);
    return PS_OK;
  });
}

ps_status ps_contains_pattern(const ps_perm* w, const ps_perm* pattern, int* out) {
  if (!w || !pattern || !out) return null_arg();
  *out = contains_pattern(w->w, pattern->w);
  return PS_OK;
}

ps_status ps_conjugate_by_w0(const ps_perm* w, ps_perm** out) {
  if (!w || !out) return null_arg();
  return guard([&] {
    *out = new ps_perm{conjugate_by_w0(w->w)};
    return PS_OK;
  });
}

ps_status ps_pair_fs(const ps_perm* u, const ps_perm* v, int32_t* out) {
  if (!u || !v || !out) return null_arg();
  *out = fs_pair(u->w, v->w);
  return PS_OK;
}

ps_status ps_pair_bs(const ps_perm* u, const ps_perm* v, int32_t n, int32_t* out) {
  if (!u || !v || !out) return null_arg();
  return guard([&] {
    *out = bs_pair(u->w, v->w, n);
    return PS_OK;
  });
}

ps_status ps_pair_walk(const ps_perm* u, const ps_perm* v, int32_t* y, size_t capacity, size_t* len) {
  if (!u || !v || !len || (!y && capacity)) return null_arg();
  return guard([&] {
    auto t = walk(u->w, v->w);
    *len = t.y.size();
    if (capacity < t.y.size()) fail(ErrorCode::OutOfRange, "buffer too small");
    for (size_t i = 0; i < t.y.size(); ++i) y[i] = t.y[i];
    return PS_OK;
  });
}

ps_status ps_class_contains(const char* cls, const ps_perm* w, int* out) {
  if (!cls || !w || !out) return null_arg();
  return guard([&] {
    *out = is_class_member(ClassSpec::parse(cls), w->w);
    return PS_OK;
  });
}

ps_status ps_class_count(const char* cls, int32_t n, uint64_t* out) {
  if (!cls || !out) return null_arg();
  return guard([&] {
    *out = count_class(ClassSpec::parse(cls), n);
    return PS_OK;
  });
}

ps_status ps_tag_encode(const ps_perm* w, char* buffer, size_t capacity) {
  if (!w || !buffer) return null_arg();
  return guard([&] {
    auto s = tag_encode(w->w).to_string();
    if (s.size() + 1 > capacity) fail(ErrorCode::OutOfRange, "buffer too small");
    std::memcpy(buffer, s.c_str(), s.size() + 1);
    return PS_OK;
  });
}

ps_status ps_tag_decode(const char* tags, ps_perm** out) {
  if (!tags || !out) return null_arg();
  return guard([&] {
    *out = new ps_perm{tag_decode(TagWord::parse(tags))};
    return PS_OK;
  });
}

ps_status ps_sampler_create(const char* cls, int32_t n, uint64_t seed, uint64_t stream, int force_mcmc,
                            int64_t burn_in, int64_t thinning, ps_sampler** out) {
  if (!cls || !out) return null_arg();
  return guard([&] {
    McmcConfig cfg;
    cfg.burn_in = burn_in < 0 ? -1 : burn_in;
    cfg.thinning = thinning < 1 ? -1 : thinning;
    *out = new ps_sampler{make_sampler(ClassSpec::parse(cls), n, SeedSpec{seed, stream}, cfg, force_mcmc != 0)};
    return PS_OK;
  });
}

ps_status ps_sampler_next(ps_sampler* sampler, ps_perm** out) {
  if (!sampler || !out) return null_arg();
  return guard([&] {
    *out = new ps_perm{sampler->impl->next()};
    return PS_OK;
  });
}

int ps_sampler_is_exact(const ps_sampler* sampler) { return sampler && sampler->impl->exact(); }

void ps_sampler_destroy(ps_sampler* sampler) { delete sampler; }

ps_status ps_experiment_run(const char* config_json, int threads, ps_report** out) {
  if (!config_json || !out) return null_arg();
  return guard([&] {
    auto config = experiments::Json::parse(config_json);
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    auto rep = experiments::run(config, threads);
    *out = new ps_report{rep.json.dump(2) + "\n", rep.csv, rep.passed};
    if (!rep.passed) {
      last_error = "verification failed";
      return PS_VERIFICATION_FAILED;
    }
    return PS_OK;
  });
}

ps_status ps_config_resolve(const char* config_json, char** out) {
  if (!config_json || !out) return null_arg();
  return guard([&] {
    auto s = experiments::resolve_config(experiments::Json::parse(config_json)).dump();
    *out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!*out) throw std::bad_alloc();
    std::memcpy(*out, s.c_str(), s.size() + 1);
    return PS_OK;
  });
}

const char* ps_report_json(const ps_report* report) { return report ? report->json.c_str() : ""; }
const char* ps_report_csv(const ps_report* report) { return report ? report->csv.c_str() : ""; }
int ps_report_passed(const ps_report* report) { return report && report->passed; }
void ps_report_destroy(ps_report* report) { delete report; }
void ps_string_free(char* s) { std::free(s); }

}  // extern "C"
