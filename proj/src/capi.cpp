#include "etnckit/etnckit.h"

#include <cstring>
#include <new>
#include <string>

#include "etnckit/commands.hpp"
#include "etnckit/config.hpp"
#include "etnckit/error.hpp"
#include "etnckit/galois.hpp"
#include "etnckit/lvalues.hpp"
#include "etnckit/serialize.hpp"

struct etnckit_field {
  etnckit::AbelianFieldQ field;
};

struct etnckit_config {
  etnckit::TowerConfig cfg;
  std::int64_t max_conductor;
};

struct etnckit_report {
  etnckit::Report report;
};

namespace {

thread_local std::string last_error;

etnckit_status status_of(etnckit::ErrorKind kind) {
  using etnckit::ErrorKind;
  switch (kind) {
    case ErrorKind::Structural: return ETNCKIT_E_STRUCTURAL;
    case ErrorKind::Input: return ETNCKIT_E_INVALID_ARGUMENT;
    case ErrorKind::Precondition: return ETNCKIT_E_PRECONDITION;
    case ErrorKind::Unsupported: return ETNCKIT_E_UNSUPPORTED;
    case ErrorKind::Precision: return ETNCKIT_E_PRECISION;
    case ErrorKind::Parse: return ETNCKIT_E_PARSE;
    case ErrorKind::Internal: return ETNCKIT_E_INTERNAL;
  }
  return ETNCKIT_E_INTERNAL;
}

template <class F>
etnckit_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return ETNCKIT_OK;
  } catch (const etnckit::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ETNCKIT_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ETNCKIT_E_INTERNAL;
  }
}

etnckit_status bad_argument(const char* what) {
  last_error = what;
  return ETNCKIT_E_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::int64_t> as_vector(const int64_t* a, size_t n) {
  return a ? std::vector<std::int64_t>(a, a + n) : std::vector<std::int64_t>{};
}

}  // namespace

extern "C" {

const char* etnckit_version(void) { return "0.1.0"; }

const char* etnckit_status_string(etnckit_status status) {
  switch (status) {
    case ETNCKIT_OK: return "ok";
    case ETNCKIT_E_INVALID_ARGUMENT: return "invalid argument";
    case ETNCKIT_E_PARSE: return "parse error";
    case ETNCKIT_E_PRECONDITION: return "precondition violated";
    case ETNCKIT_E_STRUCTURAL: return "structural mismatch";
    case ETNCKIT_E_UNSUPPORTED: return "unsupported";
    case ETNCKIT_E_PRECISION: return "insufficient precision";
    case ETNCKIT_E_INTERNAL: return "internal error";
    case ETNCKIT_E_IO: return "i/o error";
  }
  return "unknown status";
}

const char* etnckit_last_error(void) { return last_error.c_str(); }

void etnckit_string_free(char* s) { delete[] s; }

etnckit_status etnckit_field_create(int64_t f, const int64_t* H, size_t n_H, etnckit_field** out) {
  if (!out) return bad_argument("out is null");
  if (n_H && !H) return bad_argument("H is null");
  *out = nullptr;
  return guarded([&] { *out = new etnckit_field{etnckit::AbelianFieldQ::build(f, as_vector(H, n_H))}; });
}

void etnckit_field_destroy(etnckit_field* field) { delete field; }

etnckit_status etnckit_field_info_json(const etnckit_field* field, char** out) {
  if (!field || !out) return bad_argument("null argument");
  return guarded([&] { *out = dup_string(etnckit::to_json(field->field).dump()); });
}

etnckit_status etnckit_theta_json(const etnckit_field* field, const int64_t* S, size_t n_S, const int64_t* T,
                                  size_t n_T, char** out) {
  if (!field || !out) return bad_argument("null argument");
  if ((n_S && !S) || (n_T && !T)) return bad_argument("null place array");
  return guarded([&] {
    auto th = etnckit::theta(field->field, as_vector(S, n_S), as_vector(T, n_T));
    etnckit::Json j;
    j["field"] = th.field.descriptor();
    j["S"] = etnckit::places_json(th.S);
    j["T"] = etnckit::places_json(th.T);
    j["dr_condition"] = th.dr_condition;
    j["integral"] = th.integral;
    j["warning"] = th.warning;
    j["value"] = etnckit::to_json(th.value);
    j["minus"] = etnckit::to_json(th.minus);
    *out = dup_string(j.dump());
  });
}

etnckit_status etnckit_dr_condition(const etnckit_field* field, const int64_t* T, size_t n_T, int* holds) {
  if (!field || !holds) return bad_argument("null argument");
  if (n_T && !T) return bad_argument("T is null");
  return guarded([&] { *holds = etnckit::dr_condition_check(field->field, as_vector(T, n_T)) ? 1 : 0; });
}

etnckit_status etnckit_config_parse(const char* text, int64_t max_conductor, etnckit_config** out) {
  if (!text || !out) return bad_argument("null argument");
  *out = nullptr;
  const std::int64_t bound = max_conductor > 0 ? max_conductor : etnckit::kDefaultMaxConductor;
  return guarded([&] { *out = new etnckit_config{etnckit::parse_config(text, bound), bound}; });
}

etnckit_status etnckit_config_set_precision(etnckit_config* cfg, int k) {
  if (!cfg) return bad_argument("null config");
  return guarded([&] {
    auto copy = cfg->cfg;
    copy.k = k;
    etnckit::validate_config(copy, cfg->max_conductor);
    cfg->cfg = std::move(copy);
  });
}

void etnckit_config_destroy(etnckit_config* cfg) { delete cfg; }

etnckit_status etnckit_run_theta(const etnckit_config* cfg, int jobs, etnckit_report** out) {
  if (!cfg || !out) return bad_argument("null argument");
  return guarded([&] { *out = new etnckit_report{etnckit::cmd_theta(cfg->cfg, jobs)}; });
}

etnckit_status etnckit_run_verify(const etnckit_config* cfg, const char* which, int jobs, etnckit_report** out) {
  if (!cfg || !which || !out) return bad_argument("null argument");
  return guarded([&] { *out = new etnckit_report{etnckit::cmd_verify(cfg->cfg, which, jobs)}; });
}

etnckit_status etnckit_run_lift(const etnckit_config* cfg, const char* family_json, int jobs, etnckit_report** out) {
  if (!cfg || !family_json || !out) return bad_argument("null argument");
  return guarded([&] { *out = new etnckit_report{etnckit::cmd_lift(cfg->cfg, family_json, jobs)}; });
}

int etnckit_report_ok(const etnckit_report* report) { return report && report->report.ok() ? 1 : 0; }

etnckit_status etnckit_report_render(const etnckit_report* report, const char* format, int include_timing,
                                     char** out) {
  if (!report || !format || !out) return bad_argument("null argument");
  std::string fmt = format;
  if (fmt != "json" && fmt != "csv") return bad_argument("format must be json or csv");
  return guarded([&] {
    *out = dup_string(fmt == "json" ? etnckit::render_json(report->report, include_timing != 0)
                                    : etnckit::render_csv(report->report));
  });
}

void etnckit_report_destroy(etnckit_report* report) { delete report; }

}  // extern "C"
