/* etnckit C API.
 *
 * All objects are opaque handles. Functions return an etnckit_status; on
 * failure etnckit_last_error() describes the problem (per thread). Strings
 * returned through char** are owned by the caller and released with
 * etnckit_string_free. Places are encoded as integers, 0 is the infinite
 * place.
 */
#ifndef ETNCKIT_H
#define ETNCKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(ETNCKIT_BUILDING_LIBRARY)
#define ETNCKIT_API __attribute__((visibility("default")))
#else
#define ETNCKIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum etnckit_status {
  ETNCKIT_OK = 0,
  ETNCKIT_E_INVALID_ARGUMENT = 1,
  ETNCKIT_E_PARSE = 2,
  ETNCKIT_E_PRECONDITION = 3,
  ETNCKIT_E_STRUCTURAL = 4,
  ETNCKIT_E_UNSUPPORTED = 5,
  ETNCKIT_E_PRECISION = 6,
  ETNCKIT_E_INTERNAL = 7,
  ETNCKIT_E_IO = 8
} etnckit_status;

typedef struct etnckit_field etnckit_field;
typedef struct etnckit_config etnckit_config;
typedef struct etnckit_report etnckit_report;

ETNCKIT_API const char* etnckit_version(void);
ETNCKIT_API const char* etnckit_status_string(etnckit_status status);
ETNCKIT_API const char* etnckit_last_error(void);
ETNCKIT_API void etnckit_string_free(char* s);

/* Fixed field of <H> in Q(zeta_f); must be CM. */
ETNCKIT_API etnckit_status etnckit_field_create(int64_t f, const int64_t* H, size_t n_H, etnckit_field** out);
ETNCKIT_API void etnckit_field_destroy(etnckit_field* field);
ETNCKIT_API etnckit_status etnckit_field_info_json(const etnckit_field* field, char** out);
ETNCKIT_API etnckit_status etnckit_theta_json(const etnckit_field* field, const int64_t* S, size_t n_S,
                                              const int64_t* T, size_t n_T, char** out);
ETNCKIT_API etnckit_status etnckit_dr_condition(const etnckit_field* field, const int64_t* T, size_t n_T,
                                                int* holds);

/* Tower configs; max_conductor <= 0 selects the default bound. */
ETNCKIT_API etnckit_status etnckit_config_parse(const char* text, int64_t max_conductor, etnckit_config** out);
ETNCKIT_API etnckit_status etnckit_config_set_precision(etnckit_config* cfg, int k);
ETNCKIT_API void etnckit_config_destroy(etnckit_config* cfg);

ETNCKIT_API etnckit_status etnckit_run_theta(const etnckit_config* cfg, int jobs, etnckit_report** out);
/* which: "tnorm", "st-conversion", "lemma-tx", "bs" or "all". */
ETNCKIT_API etnckit_status etnckit_run_verify(const etnckit_config* cfg, const char* which, int jobs,
                                              etnckit_report** out);
ETNCKIT_API etnckit_status etnckit_run_lift(const etnckit_config* cfg, const char* family_json, int jobs,
                                            etnckit_report** out);

/* 1 when every check has status ok. */
ETNCKIT_API int etnckit_report_ok(const etnckit_report* report);
/* format: "json" or "csv". */
ETNCKIT_API etnckit_status etnckit_report_render(const etnckit_report* report, const char* format,
                                                 int include_timing, char** out);
ETNCKIT_API void etnckit_report_destroy(etnckit_report* report);

#ifdef __cplusplus
}
#endif

#endif
