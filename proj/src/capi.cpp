#include "bubblekit.h"

#include <cstdio>
#include <cstring>
#include <string>

#include "bubblekit/blowup_predictor.hpp"
#include "bubblekit/constants.hpp"
#include "bubblekit/scenario_io.hpp"
#include "bubblekit/verify.hpp"
#include "bubblekit/vortex.hpp"

namespace {

thread_local std::string g_last_error;

bk_status fail(bk_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
bk_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const bubblekit::ParseError& e) {
    return fail(BK_ERR_PARSE, e.what());
  } catch (const bubblekit::DomainError& e) {
    return fail(BK_ERR_DOMAIN, e.what());
  } catch (const bubblekit::NumericError& e) {
    return fail(BK_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(BK_ERR_INTERNAL, e.what());
  }
}

}  // namespace

struct bk_vortex_result {
  bubblekit::VortexSearchResult result;
  int n = 0, m = 0;
};

struct bk_scenario {
  bubblekit::BlowupScenario scenario;
  bubblekit::ConstantsTable table;
};

struct bk_prediction {
  bubblekit::Prediction prediction;
};

struct bk_report {
  bubblekit::ResidualReport report;
};

struct bk_verify_result {
  std::vector<bubblekit::VerifyCheck> checks;
};

extern "C" {

const char* bk_version(void) { return "bubblekit 1.0.0"; }

const char* bk_last_error(void) { return g_last_error.c_str(); }

bk_status bk_constants_compute(int n, double tol, double values[9], double errors[9]) {
  if (values == nullptr || errors == nullptr)
    return fail(BK_ERR_INVALID_ARGUMENT, "null output buffer");
  if (tol <= 0.0) return fail(BK_ERR_INVALID_ARGUMENT, "tol must be > 0");
  return guarded([&]() {
    const bubblekit::ConstantsTable t = bubblekit::compute_constants(n, tol);
    const double v[9] = {t.c0, t.c2, t.c3, t.c4, t.c5, t.c6,
                         t.kappa1, t.kappa2, t.kappa3};
    const double e[9] = {0.0, t.err_c2, t.err_c3, t.err_c4, t.err_c5, t.err_c6,
                         0.0, 0.0, 0.0};
    std::memcpy(values, v, sizeof v);
    std::memcpy(errors, e, sizeof e);
    if (!t.converged)
      return fail(BK_ERR_NUMERIC, "quadrature did not reach the requested tolerance");
    return BK_OK;
  });
}

bk_status bk_vortex_solve(int n, int m, const double* Q, int starts,
                          unsigned long long seed, bk_vortex_result** out) {
  if (Q == nullptr || out == nullptr)
    return fail(BK_ERR_INVALID_ARGUMENT, "null argument");
  if (starts < 1) return fail(BK_ERR_INVALID_ARGUMENT, "starts must be >= 1");
  return guarded([&]() {
    const int d = n - 1;
    if (d < 1) return fail(BK_ERR_INVALID_ARGUMENT, "n must be >= 5");
    Eigen::MatrixXd q(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) q(r, c) = Q[r * d + c];
    auto* handle = new bk_vortex_result{
        bubblekit::find_critical_points(q, m, n, starts, seed), n, m};
    *out = handle;
    return BK_OK;
  });
}

int bk_vortex_count(const bk_vortex_result* r) {
  return r ? int(r->result.points.size()) : 0;
}

bk_status bk_vortex_get(const bk_vortex_result* r, int idx, double* energy,
                        double* virial, int* morse_index, double* xi) {
  if (r == nullptr) return fail(BK_ERR_INVALID_ARGUMENT, "null handle");
  if (idx < 0 || idx >= int(r->result.points.size()))
    return fail(BK_ERR_INVALID_ARGUMENT, "index out of range");
  const auto& p = r->result.points[size_t(idx)];
  if (energy) *energy = p.energy;
  if (virial) *virial = p.virial;
  if (morse_index) *morse_index = p.morse_index;
  if (xi) {
    const int d = r->n - 1;
    for (int i = 0; i < r->m; ++i)
      for (int k = 0; k < d; ++k) xi[i * d + k] = p.config.xi[size_t(i)][k];
  }
  return BK_OK;
}

void bk_vortex_diagnostics(const bk_vortex_result* r, int* converged, int* diverged,
                           int* virial_rejected, int* separation_rejected,
                           int* obstructed) {
  if (r == nullptr) return;
  if (converged) *converged = r->result.diag.converged;
  if (diverged) *diverged = r->result.diag.diverged;
  if (virial_rejected) *virial_rejected = r->result.diag.virial_rejected;
  if (separation_rejected) *separation_rejected = r->result.diag.separation_rejected;
  if (obstructed) *obstructed = r->result.diag.obstructed ? 1 : 0;
}

void bk_vortex_free(bk_vortex_result* r) { delete r; }

bk_status bk_scenario_parse(const char* json_text, bk_scenario** out) {
  if (json_text == nullptr || out == nullptr)
    return fail(BK_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    bubblekit::BlowupScenario s = bubblekit::scenario_from_json(json_text);
    const bubblekit::ConstantsTable t = bubblekit::compute_constants(s.field.n());
    *out = new bk_scenario{std::move(s), t};
    return BK_OK;
  });
}

int bk_scenario_dim(const bk_scenario* s) { return s ? s->scenario.field.n() : 0; }

void bk_scenario_free(bk_scenario* s) { delete s; }

bk_status bk_predict(const bk_scenario* s, double eps, bk_prediction** out) {
  if (s == nullptr || out == nullptr)
    return fail(BK_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out = new bk_prediction{bubblekit::predict(s->scenario, eps, s->table)};
    return BK_OK;
  });
}

int bk_prediction_count(const bk_prediction* p) {
  return p ? int(p->prediction.bubbles.size()) : 0;
}

bk_status bk_prediction_get(const bk_prediction* p, int idx, int* type, double* a,
                            double* lambda, double* alpha, double* mu,
                            double* chart_correction) {
  if (p == nullptr) return fail(BK_ERR_INVALID_ARGUMENT, "null handle");
  if (idx < 0 || idx >= int(p->prediction.bubbles.size()))
    return fail(BK_ERR_INVALID_ARGUMENT, "index out of range");
  const auto& b = p->prediction.bubbles[size_t(idx)];
  if (type) *type = int(b.type);
  if (a)
    for (long k = 0; k < b.param.a.coords().size(); ++k) a[k] = b.param.a.coords()[k];
  if (lambda) *lambda = b.param.lambda;
  if (alpha) *alpha = b.param.alpha;
  if (mu) *mu = b.mu;
  if (chart_correction) *chart_correction = b.chart_correction;
  return BK_OK;
}

void bk_prediction_free(bk_prediction* p) { delete p; }

bk_status bk_residual_report(const bk_scenario* s, double eps, bk_report** out) {
  if (s == nullptr || out == nullptr)
    return fail(BK_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    const bubblekit::Prediction p = bubblekit::predict(s->scenario, eps, s->table);
    *out = new bk_report{bubblekit::balancing_residual(s->scenario, p, s->table)};
    return BK_OK;
  });
}

int bk_report_count(const bk_report* r) { return r ? int(r->report.rows.size()) : 0; }

bk_status bk_report_get(const bk_report* r, int idx, int* index, int* type,
                        double* lambda, double* leading, double* residual_E,
                        double* residual_F, double* ratio_E, double* ratio_F,
                        double* defining_ratio, double* remainder, double* pairing,
                        double* pairing_scale) {
  if (r == nullptr) return fail(BK_ERR_INVALID_ARGUMENT, "null handle");
  if (idx < 0 || idx >= int(r->report.rows.size()))
    return fail(BK_ERR_INVALID_ARGUMENT, "index out of range");
  const auto& row = r->report.rows[size_t(idx)];
  if (index) *index = row.index;
  if (type) *type = int(row.type);
  if (lambda) *lambda = row.lambda;
  if (leading) *leading = row.leading;
  if (residual_E) *residual_E = row.residual_E;
  if (residual_F) *residual_F = row.residual_F;
  if (ratio_E) *ratio_E = row.ratio_E;
  if (ratio_F) *ratio_F = row.ratio_F;
  if (defining_ratio) *defining_ratio = row.defining_ratio;
  if (remainder) *remainder = row.theoretical_remainder;
  if (pairing) *pairing = row.pairing;
  if (pairing_scale) *pairing_scale = row.pairing_scale;
  return BK_OK;
}

void bk_report_free(bk_report* r) { delete r; }

bk_status bk_verify_run(unsigned long long seed, bk_verify_result** out) {
  if (out == nullptr) return fail(BK_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    bubblekit::VerifyOptions opt;
    opt.seed = seed;
    *out = new bk_verify_result{bubblekit::run_verification(opt)};
    return BK_OK;
  });
}

int bk_verify_count(const bk_verify_result* v) {
  return v ? int(v->checks.size()) : 0;
}

int bk_verify_failures(const bk_verify_result* v) {
  return v ? bubblekit::count_failures(v->checks) : 0;
}

bk_status bk_verify_get(const bk_verify_result* v, int idx, int* criterion,
                        char* name_buf, int name_buf_len, int* pass, double* measured,
                        double* bound) {
  if (v == nullptr) return fail(BK_ERR_INVALID_ARGUMENT, "null handle");
  if (idx < 0 || idx >= int(v->checks.size()))
    return fail(BK_ERR_INVALID_ARGUMENT, "index out of range");
  const auto& c = v->checks[size_t(idx)];
  if (criterion) *criterion = c.criterion;
  if (name_buf && name_buf_len > 0) {
    std::snprintf(name_buf, size_t(name_buf_len), "%s", c.name.c_str());
  }
  if (pass) *pass = c.pass ? 1 : 0;
  if (measured) *measured = c.measured;
  if (bound) *bound = c.bound;
  return BK_OK;
}

void bk_verify_free(bk_verify_result* v) { delete v; }

}  // extern "C"
