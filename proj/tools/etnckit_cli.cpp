// etnckit command-line front end. Exit status: 0 when every check is ok,
// 1 when a check fails, 2 on usage, parse or validation errors.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "etnckit/etnckit.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report_error(etnckit_status st, const std::string& context) {
  std::cerr << "etnckit: " << context << ": " << etnckit_status_string(st);
  if (*etnckit_last_error()) std::cerr << ": " << etnckit_last_error();
  std::cerr << "\n";
  return kExitError;
}

std::int64_t max_conductor_from_env() {
  const char* env = std::getenv("ETNCKIT_MAX_CONDUCTOR");
  if (!env || !*env) return 0;
  char* end = nullptr;
  long long v = std::strtoll(env, &end, 10);
  if (*end != '\0' || v <= 0) {
    std::cerr << "etnckit: ignoring invalid ETNCKIT_MAX_CONDUCTOR='" << env << "'\n";
    return 0;
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant Stickelberger elements over abelian CM fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", etnckit_version());

  std::string config_path, out_path, format = "json", family_path, which;
  std::optional<int> precision;
  int jobs = 1;
  bool no_timing = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "tower config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--precision", precision, "override the config precision k");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--no-timing", no_timing, "omit the wall_time_seconds field");
  };
  auto* theta = app.add_subcommand("theta", "table of Theta_{S,T} over the lattice");
  common(theta);
  auto* verify = app.add_subcommand("verify", "run identity checks");
  common(verify);
  verify->add_option("which", which, "tnorm | st-conversion | lemma-tx | bs | all")
      ->required()
      ->check(CLI::IsMember({"tnorm", "st-conversion", "lemma-tx", "bs", "all"}));
  auto* lift = app.add_subcommand("lift", "lift a norm compatible family");
  common(lift);
  lift->add_option("--family", family_path, "family file (JSON)")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  auto text = slurp(config_path);
  if (!text) return report_error(ETNCKIT_E_IO, "cannot read " + config_path);
  etnckit_config* cfg = nullptr;
  if (auto st = etnckit_config_parse(text->c_str(), max_conductor_from_env(), &cfg); st != ETNCKIT_OK)
    return report_error(st, config_path);
  if (precision) {
    if (auto st = etnckit_config_set_precision(cfg, *precision); st != ETNCKIT_OK) {
      etnckit_config_destroy(cfg);
      return report_error(st, "--precision");
    }
  }

  etnckit_report* report = nullptr;
  etnckit_status st = ETNCKIT_OK;
  if (theta->parsed()) {
    st = etnckit_run_theta(cfg, jobs, &report);
  } else if (verify->parsed()) {
    st = etnckit_run_verify(cfg, which.c_str(), jobs, &report);
  } else {
    auto fam = slurp(family_path);
    if (!fam) {
      etnckit_config_destroy(cfg);
      return report_error(ETNCKIT_E_IO, "cannot read " + family_path);
    }
    st = etnckit_run_lift(cfg, fam->c_str(), jobs, &report);
  }
  etnckit_config_destroy(cfg);
  if (st != ETNCKIT_OK) return report_error(st, app.get_subcommands().front()->get_name());

  char* rendered = nullptr;
  st = etnckit_report_render(report, format.c_str(), no_timing ? 0 : 1, &rendered);
  const bool ok = etnckit_report_ok(report) != 0;
  etnckit_report_destroy(report);
  if (st != ETNCKIT_OK) return report_error(st, "render");

  int rc = ok ? 0 : kExitFail;
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << rendered;
    if (!out) rc = report_error(ETNCKIT_E_IO, "cannot write " + out_path);
  }
  etnckit_string_free(rendered);
  return rc;
}
