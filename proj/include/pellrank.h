#ifndef PELLRANK_H
#define PELLRANK_H

/*
 * pellrank - 2-primary invariants of narrow class groups of real quadratic
 * fields: negative-Pell solvability, Redei symbols, rk4/rk8 extraction, and
 * the density / random-matrix models, behind a C ABI.
 *
 * Conventions: every function returns PR_OK (0) on success and an error code
 * otherwise; results travel through out-parameters. A failing call stores a
 * message retrievable with pr_last_error(). Strings returned through char**
 * are owned by the caller and released with pr_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pr_ctx pr_ctx;

enum {
    PR_OK = 0,
    PR_EDOMAIN = 1,   /* invalid argument or precondition violated */
    PR_EIO = 2,       /* file could not be read or written */
    PR_ELIMIT = 3,    /* configured resource bound exceeded */
    PR_EINTERNAL = 4, /* internal invariant failed */
    PR_EVERIFY = 5    /* a verification suite found a violation */
};

pr_ctx* pr_ctx_new(void);
void pr_ctx_free(pr_ctx* ctx);
const char* pr_last_error(const pr_ctx* ctx);

/* ---- elementary arithmetic ---- */

int pr_kronecker(pr_ctx* ctx, int64_t a, int64_t n, int* out);
/* place: an odd prime, 2, or -1 for the real place */
int pr_hilbert(pr_ctx* ctx, int64_t a, int64_t b, int64_t place, int* out);
int pr_is_fundamental_discriminant(pr_ctx* ctx, int64_t d, int* out);
int pr_in_pell_family(pr_ctx* ctx, int64_t d, int* out);

/* ---- negative Pell ---- */

enum { PR_PELL_PERIOD = 0, PR_PELL_UNIT = 1, PR_PELL_FUNDAMENTAL = 2 };
int pr_neg_pell_solvable(pr_ctx* ctx, int64_t d, int method, int* out);
/* minimal witness of x^2 - d y^2 = -1 as decimal strings (method PERIOD) */
int pr_neg_pell_witness(pr_ctx* ctx, int64_t d, char** x_out, char** y_out);

/* ---- Redei symbols and ranks ---- */

int pr_is_acceptable(pr_ctx* ctx, int64_t a, int64_t b, int* out);
int pr_is_admissible(pr_ctx* ctx, int64_t a, int64_t b, int64_t c, int* out);
int pr_redei_symbol(pr_ctx* ctx, int64_t a, int64_t b, int64_t c, int* out);
int pr_artin_pairing(pr_ctx* ctx, int64_t d, int64_t a, int64_t b, int* out);
int pr_rk4(pr_ctx* ctx, int64_t d, int* out);
int pr_rk8(pr_ctx* ctx, int64_t d, int* out);

/* ---- class-group oracle ---- */

int pr_oracle_profile(pr_ctx* ctx, int64_t d, int64_t oracle_bound, int* rk2, int* rk4_narrow,
                      int* rk8_narrow, int* rk4_ordinary, int* neg_pell, int64_t* h_plus);

/* ---- densities and the random-matrix model ---- */

int pr_alpha(pr_ctx* ctx, double* out);
int pr_beta(pr_ctx* ctx, double* out);
int pr_theorem2_density(pr_ctx* ctx, int n, int m, double* out);
int pr_q_prob(pr_ctx* ctx, int n2, int n3, double* out);
/* out[k] = P(corank = k), k = 0..n; len must be at least n+1 */
int pr_corank_dist(pr_ctx* ctx, int n, double* out, size_t len);
int pr_markov_stationary(pr_ctx* ctx, int n_top, double* out, size_t len);

/* ---- batch commands ---- */

typedef struct pr_run_config {
    int64_t max_d;
    int threads;
    uint64_t seed;
    int64_t oracle_bound;   /* 0 disables oracle cross-checks */
    const char* cache_path; /* NULL for no cache */
    const char* format;     /* "csv" or "json" */
} pr_run_config;

/* sweep Pell-family discriminants, write/extend the cache, return a summary */
int pr_cmd_analyze(pr_ctx* ctx, const pr_run_config* cfg, char** summary_out);
/* empirical vs theoretical density report from the cache (built on demand
 * when cfg->max_d > 0; otherwise the cache must exist) */
int pr_cmd_density(pr_ctx* ctx, const pr_run_config* cfg, char** report_out);
/* suite: redei | reflection | combinatorics | markov | oracle */
int pr_cmd_verify(pr_ctx* ctx, const char* suite, uint64_t trials, uint64_t seed, int64_t max_d,
                  int threads, char** report_out, int* violation);
int pr_cmd_spacing(pr_ctx* ctx, int64_t x, double y1, double eta, const char* format,
                   char** report_out);

void pr_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* PELLRANK_H */
