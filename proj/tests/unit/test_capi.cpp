// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <string>
#include <thread>

#include "etnckit/etnckit.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  etnckit_string_free(s);
  return out;
}

const char* kConfig = "field f=15\np=3\nT=7\nk=2\n";

}  // namespace

TEST_CASE("fields") {
  etnckit_field* f = nullptr;
  REQUIRE(etnckit_field_create(4, nullptr, 0, &f) == ETNCKIT_OK);
  char* out = nullptr;
  REQUIRE(etnckit_field_info_json(f, &out) == ETNCKIT_OK);
  auto info = nlohmann::json::parse(take(out));
  CHECK(info["degree"] == 2);

  int64_t S[] = {0, 2};
  int64_t T[] = {3};
  REQUIRE(etnckit_theta_json(f, S, 2, T, 1, &out) == ETNCKIT_OK);
  auto th = nlohmann::json::parse(take(out));
  CHECK(th["minus"]["coeffs"][0] == "2");

  int holds = -1;
  CHECK(etnckit_dr_condition(f, T, 1, &holds) == ETNCKIT_OK);
  CHECK(holds == 1);
  CHECK(etnckit_theta_json(f, S, 2, S, 2, &out) != ETNCKIT_OK);
  CHECK(std::string(etnckit_last_error()).size() > 0);
  etnckit_field_destroy(f);

  int64_t H[] = {3};
  CHECK(etnckit_field_create(15, H, 1, &f) == ETNCKIT_E_INVALID_ARGUMENT);
  CHECK(etnckit_field_create(4, nullptr, 0, nullptr) == ETNCKIT_E_INVALID_ARGUMENT);
}

TEST_CASE("configs and reports") {
  etnckit_config* cfg = nullptr;
  REQUIRE(etnckit_config_parse(kConfig, 0, &cfg) == ETNCKIT_OK);

  etnckit_report* rep = nullptr;
  REQUIRE(etnckit_run_verify(cfg, "tnorm", 2, &rep) == ETNCKIT_OK);
  CHECK(etnckit_report_ok(rep) == 1);
  char* out = nullptr;
  REQUIRE(etnckit_report_render(rep, "json", 0, &out) == ETNCKIT_OK);
  auto j = nlohmann::json::parse(take(out));
  CHECK(j["command"] == "verify");
  CHECK(!j.contains("wall_time_seconds"));
  CHECK(j["checks"].size() > 0);
  REQUIRE(etnckit_report_render(rep, "csv", 1, &out) == ETNCKIT_OK);
  CHECK(take(out).rfind("name,status", 0) == 0);
  CHECK(etnckit_report_render(rep, "xml", 1, &out) == ETNCKIT_E_INVALID_ARGUMENT);
  etnckit_report_destroy(rep);

  CHECK(etnckit_run_verify(cfg, "everything", 1, &rep) == ETNCKIT_E_INVALID_ARGUMENT);

  REQUIRE(etnckit_run_lift(cfg, R"({"ztilde": ["1", "2", "3", "4"]})", 1, &rep) == ETNCKIT_OK);
  CHECK(etnckit_report_ok(rep) == 1);
  etnckit_report_destroy(rep);

  CHECK(etnckit_config_set_precision(cfg, 0) == ETNCKIT_E_INVALID_ARGUMENT);
  CHECK(etnckit_config_set_precision(cfg, 3) == ETNCKIT_OK);
  etnckit_config_destroy(cfg);

  CHECK(etnckit_config_parse("field f=15 H=[x]\np=3\n", 0, &cfg) == ETNCKIT_E_PARSE);
  CHECK(std::string(etnckit_last_error()).find("line 1") != std::string::npos);
}

TEST_CASE("errors are per thread") {
  etnckit_config* cfg = nullptr;
  CHECK(etnckit_config_parse("nonsense", 0, &cfg) == ETNCKIT_E_PARSE);
  std::string other;
  std::thread t([&] { other = etnckit_last_error(); });
  t.join();
  CHECK(other.empty());
  CHECK(std::string(etnckit_last_error()).size() > 0);
}

TEST_CASE("status strings") {
  CHECK(std::string(etnckit_status_string(ETNCKIT_OK)) == "ok");
  CHECK(std::string(etnckit_version()).size() > 0);
  etnckit_string_free(nullptr);
  etnckit_report_destroy(nullptr);
}
