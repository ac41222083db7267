#pragma once

#include <string>
#include <vector>

#include "etnckit/config.hpp"
#include "etnckit/serialize.hpp"

namespace etnckit {

struct CheckRecord {
  std::string name;
  std::string status;  // "ok", "fail" or "error"
  Json details;
};

struct Report {
  std::string command;
  Json inputs;
  std::vector<CheckRecord> checks;
  double wall_seconds = 0;

  bool ok() const;
};

Report cmd_theta(const TowerConfig& cfg, int jobs = 1);
// which: tnorm | st-conversion | lemma-tx | bs | all
Report cmd_verify(const TowerConfig& cfg, const std::string& which, int jobs = 1);
Report cmd_lift(const TowerConfig& cfg, const std::string& family_text, int jobs = 1);

std::string render_json(const Report& r, bool include_timing);
// Theta table for cmd_theta, name/status rows otherwise.
std::string render_csv(const Report& r);

}  // namespace etnckit
