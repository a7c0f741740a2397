#include "hcg/hcg.h"

#include <new>
#include <string>

#include "harness/commands.hpp"

struct hcg_context {
  hcg::Config cfg;
  std::string last_error;
};

struct hcg_report {
  std::string json, summary;
  int exit_code = 0;
};

extern "C" {

hcg_status hcg_context_new(hcg_context** out) {
  if (!out) return HCG_BAD_ARGUMENT;
  *out = new (std::nothrow) hcg_context();
  return *out ? HCG_OK : HCG_INTERNAL;
}

void hcg_context_free(hcg_context* ctx) { delete ctx; }

hcg_status hcg_set_seed(hcg_context* ctx, uint64_t seed) {
  if (!ctx) return HCG_BAD_ARGUMENT;
  ctx->cfg.seed = seed;
  return HCG_OK;
}

hcg_status hcg_set_precision(hcg_context* ctx, unsigned digits) {
  if (!ctx) return HCG_BAD_ARGUMENT;
  if (digits < 16 || digits > 10000) {
    ctx->last_error = "precision must be between 16 and 10000 digits";
    return HCG_BAD_ARGUMENT;
  }
  ctx->cfg.precision = digits;
  return HCG_OK;
}

hcg_status hcg_set_prime_bound(hcg_context* ctx, uint64_t bound) {
  if (!ctx) return HCG_BAD_ARGUMENT;
  if (bound < 100 || bound > (uint64_t(1) << 32)) {
    ctx->last_error = "prime bound must be between 100 and 2^32";
    return HCG_BAD_ARGUMENT;
  }
  ctx->cfg.prime_bound = bound;
  return HCG_OK;
}

hcg_status hcg_set_jobs(hcg_context* ctx, unsigned jobs) {
  if (!ctx) return HCG_BAD_ARGUMENT;
  ctx->cfg.jobs = jobs;
  return HCG_OK;
}

hcg_status hcg_run_json(hcg_context* ctx, const char* command, const char* request_json, hcg_report** out) {
  if (!ctx || !command || !out) return HCG_BAD_ARGUMENT;
  *out = nullptr;
  try {
    hcg::json req = request_json && *request_json ? hcg::json::parse(request_json, nullptr, false) : hcg::json::object();
    auto* r = new hcg_report();
    if (req.is_discarded() || !req.is_object()) {
      hcg::json rep = {{"schema", "hcg-report-1"},
                       {"command", {{"name", command}}},
                       {"status", "validation"},
                       {"error", {{"code", "validation"}, {"message", "request is not a JSON object"}}},
                       {"exit_code", 3}};
      r->json = rep.dump(1);
      r->summary = std::string(command) + ": validation: request is not a JSON object\n";
      r->exit_code = 3;
    } else {
      auto o = hcg::run_command(command, req, ctx->cfg);
      r->json = o.report.dump(1);
      r->summary = o.summary;
      r->exit_code = o.exit_code;
    }
    *out = r;
    return static_cast<hcg_status>(r->exit_code);
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return HCG_INTERNAL;
  } catch (...) {
    ctx->last_error = "unknown failure";
    return HCG_INTERNAL;
  }
}

const char* hcg_report_json(const hcg_report* r) { return r ? r->json.c_str() : ""; }
const char* hcg_report_summary(const hcg_report* r) { return r ? r->summary.c_str() : ""; }
int hcg_report_exit_code(const hcg_report* r) { return r ? r->exit_code : int(HCG_BAD_ARGUMENT); }
void hcg_report_free(hcg_report* r) { delete r; }

const char* hcg_last_error(const hcg_context* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

const char* hcg_status_name(hcg_status s) {
  switch (s) {
    case HCG_OK: return "ok";
    case HCG_MISMATCH: return "mismatch";
    case HCG_VALIDATION: return "validation";
    case HCG_PRECISION: return "precision";
    case HCG_BAD_ARGUMENT: return "bad-argument";
    case HCG_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* hcg_version(void) { return "1.0.0"; }

}  // extern "C"
