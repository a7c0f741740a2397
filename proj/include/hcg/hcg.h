#ifndef HCG_HCG_H
#define HCG_HCG_H
/* C interface: every analysis is a command name plus a JSON request, answered by a report */
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(HCG_BUILDING)
#define HCG_API __attribute__((visibility("default")))
#else
#define HCG_API
#endif

typedef struct hcg_context hcg_context;
typedef struct hcg_report hcg_report;

/* the first five double as process exit codes */
typedef enum {
  HCG_OK = 0,
  HCG_MISMATCH = 2,
  HCG_VALIDATION = 3,
  HCG_PRECISION = 4,
  HCG_BAD_ARGUMENT = 10, /* null handle or pointer, unknown setting */
  HCG_INTERNAL = 11
} hcg_status;

HCG_API hcg_status hcg_context_new(hcg_context** out);
HCG_API void hcg_context_free(hcg_context* ctx);

HCG_API hcg_status hcg_set_seed(hcg_context* ctx, uint64_t seed);
HCG_API hcg_status hcg_set_precision(hcg_context* ctx, unsigned digits);
HCG_API hcg_status hcg_set_prime_bound(hcg_context* ctx, uint64_t bound);
HCG_API hcg_status hcg_set_jobs(hcg_context* ctx, unsigned jobs);

/* Runs `command` (verify-example, run-suite, volume, zeta2, sset, repequiv, classify,
   certify-noniso, count, regconst, brauer, lattice-lll, lattice-box) on a JSON object.
   On return *out holds a report even when the analysis failed; the status is its exit code. */
HCG_API hcg_status hcg_run_json(hcg_context* ctx, const char* command, const char* request_json, hcg_report** out);

/* owned by the report */
HCG_API const char* hcg_report_json(const hcg_report* r);
HCG_API const char* hcg_report_summary(const hcg_report* r);
HCG_API int hcg_report_exit_code(const hcg_report* r);
HCG_API void hcg_report_free(hcg_report* r);

/* message for the last HCG_BAD_ARGUMENT / HCG_INTERNAL on this context */
HCG_API const char* hcg_last_error(const hcg_context* ctx);
HCG_API const char* hcg_status_name(hcg_status s);
HCG_API const char* hcg_version(void);

#ifdef __cplusplus
}
#endif

#endif
