#include "mlab/mlab.h"

#include <doctest.h>

#include <string>
#include <vector>

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  mlab_string_free(s);
  return out;
}

struct Cat {
  mlab_catalog* c = nullptr;
  Cat() { REQUIRE(mlab_catalog_open(nullptr, &c) == MLAB_OK); }
  ~Cat() { mlab_catalog_free(c); }
};

}  // namespace

TEST_CASE("status names") {
  CHECK(std::string(mlab_status_name(MLAB_OK)) == "ok");
  CHECK(std::string(mlab_status_name(MLAB_E_LEDGER)) == "ledger");
  CHECK(std::string(mlab_status_name(static_cast<mlab_status>(99))) == "unknown");
}

TEST_CASE("catalog ids") {
  Cat cat;
  char* ids = nullptr;
  REQUIRE(mlab_catalog_ids(cat.c, &ids) == MLAB_OK);
  const auto s = take(ids);
  CHECK(s.find("Phi7_11111\n") != std::string::npos);
  CHECK(s.find("MainThm_xiv\n") != std::string::npos);
  mlab_catalog* bad = nullptr;
  CHECK(mlab_catalog_open("/nonexistent/dir", &bad) == MLAB_E_IO);
  CHECK(bad == nullptr);
}

TEST_CASE("groups and results") {
  mlab_group* g = nullptr;
  REQUIRE(mlab_group_from_dsl("gen a p\ngen b p\ngen c p\ncomm b a = c\n", 3, &g) == MLAB_OK);
  int n = 0;
  CHECK(mlab_group_order_exponent(g, &n) == MLAB_OK);
  CHECK(n == 3);
  char* text = nullptr;
  REQUIRE(mlab_group_check(g, &text) == MLAB_OK);
  const auto report = take(text);
  CHECK(report.find("consistent: yes") != std::string::npos);
  CHECK(report.find("class: 2") != std::string::npos);

  mlab_result* r = nullptr;
  REQUIRE(mlab_compute(g, "oracle", &r) == MLAB_OK);
  CHECK(mlab_result_multiplier(r, &text) == MLAB_OK);
  CHECK(take(text) == "[3^1,3^1]");
  int exps[4] = {};
  size_t count = 0;
  CHECK(mlab_result_exponents(r, exps, 4, &count) == MLAB_OK);
  CHECK(count == 2);
  CHECK(exps[0] == 1);
  CHECK(mlab_result_exponents(r, nullptr, 0, &count) == MLAB_OK);
  CHECK(mlab_result_method(r, &text) == MLAB_OK);
  CHECK(take(text) == "oracle");
  CHECK(mlab_result_trace(r, &text) == MLAB_OK);
  CHECK(take(text).find("oracle: ") == 0);
  int t = -1;
  CHECK(mlab_result_t(r, &t) == MLAB_OK);
  CHECK(t == 1);
  mlab_result_free(r);

  CHECK(mlab_compute(g, "wizard", &r) == MLAB_E_INVALID_ARGUMENT);
  CHECK(std::string(mlab_last_error()).find("wizard") != std::string::npos);
  mlab_group_free(g);
}

TEST_CASE("catalog groups keep their product recipe") {
  Cat cat;
  mlab_group* g = nullptr;
  REQUIRE(mlab_group_from_catalog(cat.c, "MainThm_i", 3, &g) == MLAB_OK);
  mlab_result* r = nullptr;
  REQUIRE(mlab_compute(g, nullptr, &r) == MLAB_OK);
  char* m = nullptr;
  mlab_result_method(r, &m);
  CHECK(take(m) == "kunneth");
  int t = 0;
  mlab_result_t(r, &t);
  CHECK(t == 6);
  mlab_result_free(r);
  mlab_group_free(g);
  CHECK(mlab_group_from_catalog(cat.c, "NoSuchGroup", 3, &g) == MLAB_E_INVALID_ARGUMENT);
  CHECK(mlab_group_from_catalog(cat.c, "D8", 3, &g) == MLAB_E_INVALID_ARGUMENT);
}

TEST_CASE("error codes") {
  mlab_group* g = nullptr;
  CHECK(mlab_group_from_dsl("gen a p\ncomm a = b\n", 3, &g) == MLAB_E_PARSE);
  CHECK(std::string(mlab_last_error()).size() > 0);
  CHECK(mlab_group_from_dsl("gen a p\ngen b p\ncomm b a = b\n", 2, &g) == MLAB_E_CONSISTENCY);
  CHECK(mlab_group_from_dsl(nullptr, 3, &g) == MLAB_E_INVALID_ARGUMENT);
  CHECK(mlab_group_from_dsl("gen a p\n", 3, nullptr) == MLAB_E_INVALID_ARGUMENT);
  REQUIRE(mlab_group_from_dsl("gen a p\ngen b p\ngen c p\ncomm b a = c\n", 2, &g) == MLAB_OK);
  mlab_result* r = nullptr;
  CHECK(mlab_compute(g, "be", &r) == MLAB_E_PRECONDITION);
  CHECK(r == nullptr);
  mlab_group_free(g);
  int n = 0;
  CHECK(mlab_group_order_exponent(nullptr, &n) == MLAB_E_INVALID_ARGUMENT);
}

TEST_CASE("suites through the C interface") {
  Cat cat;
  mlab_reports* rep = nullptr;
  REQUIRE(mlab_table24(cat.c, 5, 0, &rep) == MLAB_OK);
  size_t total = 0, failed = 1;
  CHECK(mlab_reports_count(rep, &total, &failed) == MLAB_OK);
  CHECK(total == 9);
  CHECK(failed == 0);
  char* out = nullptr;
  REQUIRE(mlab_reports_emit(rep, "jsonl", &out) == MLAB_OK);
  CHECK(take(out).find("\"p\":5") != std::string::npos);
  mlab_reports_free(rep);

  REQUIRE(mlab_check_entry(cat.c, "Q8", 2, nullptr, &rep) == MLAB_OK);
  CHECK(mlab_reports_emit(rep, "table", &out) == MLAB_OK);
  CHECK(take(out).find("Q8") != std::string::npos);
  CHECK(mlab_reports_emit(rep, "yaml", &out) == MLAB_E_INVALID_ARGUMENT);
  mlab_reports_free(rep);

  CHECK(mlab_verify_theorem(cat.c, 4, "odd", 1, &rep) == MLAB_E_INVALID_ARGUMENT);
}

TEST_CASE("replays through the C interface") {
  Cat cat;
  mlab_replay* r = nullptr;
  REQUIRE(mlab_replay_script(cat.c, "Phi7_11111.replay", 0, &r) == MLAB_OK);
  CHECK(mlab_replay_passed(r) == 1);
  CHECK(mlab_replay_assumed_count(r) == 1);
  CHECK(mlab_replay_failed_line(r) == 0);
  char* text = nullptr;
  REQUIRE(mlab_replay_trace(r, &text) == MLAB_OK);
  CHECK(take(text).find("rule squeeze") != std::string::npos);
  mlab_replay_free(r);

  REQUIRE(mlab_replay_script(cat.c, "D8_wrong_upper.replay", 0, &r) == MLAB_OK);
  CHECK(mlab_replay_passed(r) == 0);
  CHECK(mlab_replay_failed_line(r) == 5);
  REQUIRE(mlab_replay_failure(r, &text) == MLAB_OK);
  CHECK(take(text).find("line 5") == 0);
  mlab_replay_free(r);

  CHECK(mlab_replay_script(cat.c, "missing.replay", 0, &r) == MLAB_E_IO);
  CHECK(mlab_replay_passed(nullptr) == 0);
}
