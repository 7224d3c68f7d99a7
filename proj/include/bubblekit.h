/* bubblekit C API: opaque handles and error codes over the numerical core.
 *
 * Conventions:
 *   - every function that can fail returns a bk_status; BK_OK is 0
 *   - on failure, bk_last_error() returns a thread-local message
 *   - out-parameters are written only on BK_OK
 *   - handles are freed with their matching *_free function
 */
#ifndef BUBBLEKIT_H
#define BUBBLEKIT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bk_status {
  BK_OK = 0,
  BK_ERR_INVALID_ARGUMENT = 1,
  BK_ERR_PARSE = 2,
  BK_ERR_DOMAIN = 3,
  BK_ERR_NUMERIC = 4,
  BK_ERR_INTERNAL = 5
} bk_status;

const char* bk_version(void);

/* thread-local message describing the most recent failure */
const char* bk_last_error(void);

/* ---- dimensional constants ------------------------------------------- */

/* values[9] and errors[9] are filled in the order
 *   c0, c2, c3, c4, c5, c6, kappa1, kappa2, kappa3.
 * errors carries the propagated quadrature error estimates (0 for c0 and the
 * kappas). tol is the absolute quadrature tolerance per radial integral. */
bk_status bk_constants_compute(int n, double tol, double values[9], double errors[9]);

/* ---- Kirchhoff-Routh vortex solver ------------------------------------ */

typedef struct bk_vortex_result bk_vortex_result;

/* Q is (n-1) x (n-1) row-major. */
bk_status bk_vortex_solve(int n, int m, const double* Q, int starts,
                          unsigned long long seed, bk_vortex_result** out);
int bk_vortex_count(const bk_vortex_result* r);
/* xi must hold m*(n-1) doubles (row-major: point index major). */
bk_status bk_vortex_get(const bk_vortex_result* r, int idx, double* energy,
                        double* virial, int* morse_index, double* xi);
void bk_vortex_diagnostics(const bk_vortex_result* r, int* converged, int* diverged,
                           int* virial_rejected, int* separation_rejected,
                           int* obstructed);
void bk_vortex_free(bk_vortex_result* r);

/* ---- blow-up scenarios ------------------------------------------------ */

typedef struct bk_scenario bk_scenario;
typedef struct bk_prediction bk_prediction;
typedef struct bk_report bk_report;

bk_status bk_scenario_parse(const char* json_text, bk_scenario** out);
int bk_scenario_dim(const bk_scenario* s); /* sphere dimension n */
void bk_scenario_free(bk_scenario* s);

bk_status bk_predict(const bk_scenario* s, double eps, bk_prediction** out);
int bk_prediction_count(const bk_prediction* p);
/* type: 0 interior, 1 simple boundary, 2 cluster member.
 * a must hold n+1 doubles. chart_correction is 0 for non-cluster bubbles. */
bk_status bk_prediction_get(const bk_prediction* p, int idx, int* type, double* a,
                            double* lambda, double* alpha, double* mu,
                            double* chart_correction);
void bk_prediction_free(bk_prediction* p);

bk_status bk_residual_report(const bk_scenario* s, double eps, bk_report** out);
int bk_report_count(const bk_report* r);
bk_status bk_report_get(const bk_report* r, int idx, int* index, int* type,
                        double* lambda, double* leading, double* residual_E,
                        double* residual_F, double* ratio_E, double* ratio_F,
                        double* defining_ratio, double* remainder, double* pairing,
                        double* pairing_scale);
void bk_report_free(bk_report* r);

/* ---- verification suite ------------------------------------------------ */

typedef struct bk_verify_result bk_verify_result;

bk_status bk_verify_run(unsigned long long seed, bk_verify_result** out);
int bk_verify_count(const bk_verify_result* v);
int bk_verify_failures(const bk_verify_result* v);
/* name_buf is truncated to name_buf_len (including the terminator) */
bk_status bk_verify_get(const bk_verify_result* v, int idx, int* criterion,
                        char* name_buf, int name_buf_len, int* pass,
                        double* measured, double* bound);
void bk_verify_free(bk_verify_result* v);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BUBBLEKIT_H */
