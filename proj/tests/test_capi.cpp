#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "permstab/permstab.h"

namespace {

ps_perm* parse(const char* s) {
  ps_perm* p = nullptr;
  REQUIRE(ps_perm_parse(s, &p) == PS_OK);
  return p;
}

}  // namespace

TEST_CASE("permutations through the C interface") {
  int32_t vals[] = {2, 3, 1};
  ps_perm* w = nullptr;
  REQUIRE(ps_perm_create(vals, 3, &w) == PS_OK);
  CHECK(ps_perm_size(w) == 3);
  int32_t out[3];
  CHECK(ps_perm_values(w, out, 3) == PS_OK);
  CHECK(std::memcmp(out, vals, sizeof vals) == 0);
  CHECK(ps_perm_values(w, out, 2) == PS_OUT_OF_RANGE);
  int32_t d = -1;
  CHECK(ps_left_inversion_count(w, 3, &d) == PS_OK);
  CHECK(d == 2);
  CHECK(ps_left_inversion_count(w, 4, &d) == PS_OUT_OF_RANGE);
  uint8_t rec[3];
  CHECK(ps_record_indicators(w, rec, 3) == PS_OK);
  CHECK((rec[0] == 1 && rec[1] == 1 && rec[2] == 0));
  int32_t fs = 0;
  CHECK(ps_perm_fs(w, &fs) == PS_OK);
  CHECK(fs == 3);
  ps_perm* pat = parse("21");
  int has = 0;
  CHECK(ps_contains_pattern(w, pat, &has) == PS_OK);
  CHECK(has == 1);
  ps_perm* c = nullptr;
  CHECK(ps_conjugate_by_w0(w, &c) == PS_OK);
  CHECK(ps_perm_values(c, out, 3) == PS_OK);
  CHECK((out[0] == 3 && out[1] == 1 && out[2] == 2));
  ps_perm_destroy(c);
  ps_perm_destroy(pat);
  ps_perm_destroy(w);

  int32_t bad[] = {1, 1};
  ps_perm* x = nullptr;
  CHECK(ps_perm_create(bad, 2, &x) == PS_NOT_A_PERMUTATION);
  CHECK(x == nullptr);
  CHECK(std::strlen(ps_last_error_message()) > 0);
  CHECK(ps_perm_parse(nullptr, &x) == PS_INVALID_ARGUMENT);
  CHECK(std::string(ps_status_string(PS_OK)) == "ok");
  CHECK(std::strlen(ps_version()) > 0);
}

TEST_CASE("pair statistics") {
  ps_perm* u = parse("213");
  int32_t fs = 0, bs = 0;
  CHECK(ps_pair_fs(u, u, &fs) == PS_OK);
  CHECK(fs == 3);
  CHECK(ps_pair_bs(u, u, 3, &bs) == PS_OK);
  CHECK(bs == 1);
  int32_t y[8];
  size_t len = 0;
  CHECK(ps_pair_walk(u, u, y, 8, &len) == PS_OK);
  REQUIRE(len == 3);
  CHECK((y[0] == 2 && y[1] == 3 && y[2] == 2));
  CHECK(ps_pair_walk(u, u, y, 2, &len) == PS_OUT_OF_RANGE);
  CHECK(len == 3);
  CHECK(ps_pair_bs(u, u, 2, &bs) == PS_OUT_OF_RANGE);
  int32_t lam = 0;
  CHECK(ps_lambda(u, 1, &lam) == PS_OK);
  CHECK(lam == 1);
  ps_perm_destroy(u);
}

TEST_CASE("classes and tags") {
  ps_perm* w = parse("312");
  int in = 0;
  CHECK(ps_class_contains("boolean", w, &in) == PS_OK);
  CHECK(in == 1);
  CHECK(ps_class_contains("av:312", w, &in) == PS_OK);
  CHECK(in == 0);
  CHECK(ps_class_contains("bogus", w, &in) == PS_INVALID_ARGUMENT);
  uint64_t count = 0;
  CHECK(ps_class_count("grassmannian", 5, &count) == PS_OK);
  CHECK(count == 27);
  CHECK(ps_class_count("smooth", 30, &count) == PS_BUDGET_EXCEEDED);
  char buf[8];
  CHECK(ps_tag_encode(w, buf, sizeof buf) == PS_OK);
  CHECK(std::string(buf) == "SC");
  CHECK(ps_tag_encode(w, buf, 2) == PS_OUT_OF_RANGE);
  ps_perm* d = nullptr;
  CHECK(ps_tag_decode("0S", &d) == PS_OK);
  int32_t out[3];
  CHECK(ps_perm_values(d, out, 3) == PS_OK);
  CHECK((out[0] == 1 && out[1] == 3 && out[2] == 2));
  ps_perm_destroy(d);
  ps_perm* r = parse("321");
  CHECK(ps_tag_encode(r, buf, sizeof buf) == PS_NON_BOOLEAN);
  ps_perm_destroy(r);
  ps_perm_destroy(w);
}

TEST_CASE("samplers") {
  ps_sampler* s = nullptr;
  REQUIRE(ps_sampler_create("av:231", 9, 4, 0, 0, -1, -1, &s) == PS_OK);
  CHECK(ps_sampler_is_exact(s) == 1);
  for (int i = 0; i < 20; ++i) {
    ps_perm* w = nullptr;
    REQUIRE(ps_sampler_next(s, &w) == PS_OK);
    int in = 0;
    CHECK(ps_class_contains("av:231", w, &in) == PS_OK);
    CHECK(in == 1);
    ps_perm_destroy(w);
  }
  ps_sampler_destroy(s);
  REQUIRE(ps_sampler_create("smooth", 7, 4, 0, 0, 100, 5, &s) == PS_OK);
  CHECK(ps_sampler_is_exact(s) == 0);
  ps_sampler_destroy(s);
  CHECK(ps_sampler_create("grassmannian-modified", 7, 4, 0, 1, 100, 5, &s) == PS_UNSUPPORTED);
}

TEST_CASE("experiments") {
  ps_report* r = nullptr;
  REQUIRE(ps_experiment_run(R"({"command":"distribution","class":"uniform","n":1,"samples":9})", 2, &r) == PS_OK);
  CHECK(std::string(ps_report_csv(r)) == "value,count\n1,9\n");
  CHECK(std::string(ps_report_json(r)).find("\"command\": \"distribution\"") != std::string::npos);
  CHECK(ps_report_passed(r) == 1);
  ps_report_destroy(r);

  r = nullptr;
  CHECK(ps_experiment_run(R"({"command":"clt-check","n":100,"samples":500,"ks_threshold":0})", 1, &r) ==
        PS_VERIFICATION_FAILED);
  REQUIRE(r != nullptr);
  CHECK(ps_report_passed(r) == 0);
  ps_report_destroy(r);

  r = nullptr;
  CHECK(ps_experiment_run("{not json", 1, &r) == PS_INVALID_ARGUMENT);
  CHECK(r == nullptr);
  CHECK(ps_experiment_run(R"({"command":"estimate","samples":100,"budget":1})", 1, &r) == PS_BUDGET_EXCEEDED);

  char* resolved = nullptr;
  REQUIRE(ps_config_resolve(R"({"command":"verify"})", &resolved) == PS_OK);
  CHECK(std::string(resolved).find("\"suite\"") != std::string::npos);
  ps_string_free(resolved);
}
