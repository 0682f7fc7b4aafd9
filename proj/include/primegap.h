/* primegap — exact-oracle verification of prime-count estimates, gap bounds
 * and endpoint formulas.
 *
 * C API over the C++ core: opaque handles, status-code returns, out
 * parameters. Handles are freed with their pg_*_free function; strings
 * returned through char** with pg_string_free. All query functions on a
 * built oracle are thread-safe; handles themselves are not synchronized.
 */
#ifndef PRIMEGAP_H
#define PRIMEGAP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PG_API __declspec(dllexport)
#else
#define PG_API __attribute__((visibility("default")))
#endif

typedef enum pg_status {
  PG_OK = 0,
  PG_NOT_APPLICABLE = 1, /* value outside every rule's preconditions */
  PG_ERROR_DOMAIN = 2,   /* bad argument for the requested computation */
  PG_ERROR_RANGE = 3,    /* query beyond the oracle's built limit */
  PG_ERROR_RESOURCE = 4, /* memory budget exceeded */
  PG_ERROR_BRACKET = 5,  /* root finder found no sign change */
  PG_ERROR_INVALID = 6,  /* null handle / out pointer */
  PG_ERROR_INTERNAL = 7
} pg_status;

PG_API const char* pg_version(void);
/* Message for the most recent failure on this thread; empty if none. */
PG_API const char* pg_last_error(void);

/* ---------------------------------------------------------------- oracle */

typedef struct pg_oracle pg_oracle;

/* Builds the segmented sieve up to `limit` (>= 2).
 * segment_size 0 -> default window (65536 odd elements); otherwise >= 64.
 * memory_budget_bytes 0 -> PRIMEGAP_MEMORY_BUDGET env var, else 512 MiB. */
PG_API pg_status pg_oracle_create(uint64_t limit, uint64_t segment_size,
                                  uint64_t memory_budget_bytes,
                                  pg_oracle** out);
PG_API void pg_oracle_free(pg_oracle* oracle);
PG_API uint64_t pg_oracle_limit(const pg_oracle* oracle);

PG_API pg_status pg_oracle_is_prime(const pg_oracle* oracle, uint64_t k,
                                    int* out);
/* Count of primes p <= n; real n counts p <= floor(n). */
PG_API pg_status pg_oracle_pi(const pg_oracle* oracle, double n, uint64_t* out);
/* Count of primes strictly between lo and hi (both endpoints excluded). */
PG_API pg_status pg_oracle_pi_open(const pg_oracle* oracle, double lo,
                                   double hi, uint64_t* out);
/* n-th prime strictly after a / strictly before b (n >= 1). */
PG_API pg_status pg_oracle_nth_prime_after(const pg_oracle* oracle, double a,
                                           uint64_t n, uint64_t* out);
PG_API pg_status pg_oracle_nth_prime_before(const pg_oracle* oracle, double b,
                                            uint64_t n, uint64_t* out);
/* Smallest prime > p; PG_ERROR_RANGE when none exists <= limit. */
PG_API pg_status pg_oracle_next_prime(const pg_oracle* oracle, uint64_t p,
                                      uint64_t* out);

/* ------------------------------------------------------ bounds/estimates */

typedef enum pg_rule {
  PG_RULE_LOWER_PI = 0,
  PG_RULE_LEGENDRE_C1 = 1,
  PG_RULE_RANGE_C2 = 2,
  PG_RULE_RANGE_C3 = 3
} pg_rule;

/* A conjectural lower bound. When no rule's preconditions hold the call
 * still returns PG_OK with applicable == 0 (coverage gaps are data, not
 * errors); raw is NaN in that case. */
typedef struct pg_bound {
  double raw;
  int64_t floor_value;
  pg_rule rule;
  int applicable;
  double window_lo;
  double window_hi;
} pg_bound;

/* n / ln n (n > 1). */
PG_API pg_status pg_pnt_estimate(double n, double* out);
/* floor(n / log2 n) as a lower bound for pi(n); applicable for n >= 4. */
PG_API pg_status pg_lower_bound_pi(double n, pg_bound* out);
/* floor((2a+1)/(2 log2(2a+1))) on (a^2, (a+1)^2); applicable for a >= 1/2. */
PG_API pg_status pg_legendre_lower_bound(double a, pg_bound* out);
/* (b-a)/(2 ln(sqrt b + sqrt a)); PG_NOT_APPLICABLE unless
 * sqrt(b)-sqrt(a) >= 1. */
PG_API pg_status pg_c2_estimate(double a, double b, double* out);
/* floor((b-a)/(2 log2(sqrt b + sqrt a))); needs b-a >= 4, sqrt b - sqrt a >= 1. */
PG_API pg_status pg_c2_lower_bound(double a, double b, pg_bound* out);
/* floor((b-a)(sqrt b - sqrt a)^2/(2 log2(b-a))); needs b-a >= 2,
 * sqrt b - sqrt a <= 1. */
PG_API pg_status pg_c3_lower_bound(double a, double b, pg_bound* out);
/* RANGE_C2 when it applies, else RANGE_C3, else applicable == 0. */
PG_API pg_status pg_lower_bound_auto(double a, double b, pg_bound* out);
/* c2 bound of (a^2, (a+2)^2); raw simplifies to (2a+2)/log2(2a+2). */
PG_API pg_status pg_brocard_lower_bound(double a, pg_bound* out);

typedef struct pg_legendre_estimate {
  double half_pi_exact;    /* pi(2a+1)/2 */
  int64_t half_pi_display; /* floored */
  double pnt_form;         /* (2a+1)/(2 ln(2a+1)) */
} pg_legendre_estimate;

PG_API pg_status pg_legendre_estimate_eval(const pg_oracle* oracle, double a,
                                           pg_legendre_estimate* out);

typedef enum pg_anchor_variant {
  PG_ANCHOR_LEGENDRE_C1 = 0,
  PG_ANCHOR_BROCARD = 1
} pg_anchor_variant;

/* Smallest anchor whose raw bound reaches target (bisection, abs 1e-6). */
PG_API pg_status pg_min_anchor_for_bound(int64_t target,
                                         pg_anchor_variant variant,
                                         double* out);

/* ----------------------------------------------------------- gap solver */

typedef enum pg_gap_case {
  PG_CASE_CLOSED_FORM = 0,
  PG_CASE_ITER_WIDE = 1,
  PG_CASE_ITER_LOG = 2
} pg_gap_case;

typedef enum pg_solution_kind {
  PG_SOLVE_FORWARD = 0,
  PG_SOLVE_BACKWARD = 1,
  PG_SOLVE_T = 2
} pg_solution_kind;

typedef struct pg_solver_options {
  double tolerance;   /* 0 -> 1e-9 */
  int max_iterations; /* 0 -> 500 */
} pg_solver_options;

/* Solver result handle: final value, integer answer, case tag and the full
 * iterate trace. For PG_SOLVE_T the value is t and pg_solution_s gives
 * s = t/a + 1. */
typedef struct pg_solution pg_solution;

PG_API pg_status pg_forward_gap(double a, uint64_t n,
                                const pg_solver_options* opts,
                                pg_solution** out);
PG_API pg_status pg_backward_gap(double b, uint64_t n,
                                 const pg_solver_options* opts,
                                 pg_solution** out);
PG_API pg_status pg_solve_t(double a, const pg_solver_options* opts,
                            pg_solution** out);
PG_API void pg_solution_free(pg_solution* sol);

PG_API pg_solution_kind pg_solution_get_kind(const pg_solution* sol);
PG_API pg_gap_case pg_solution_get_case(const pg_solution* sol);
PG_API double pg_solution_value(const pg_solution* sol); /* x_raw or t */
PG_API int64_t pg_solution_value_ceil(const pg_solution* sol);
PG_API double pg_solution_anchor(const pg_solution* sol);
PG_API uint64_t pg_solution_n(const pg_solution* sol);
PG_API double pg_solution_s(const pg_solution* sol); /* NaN unless T */
PG_API int pg_solution_converged(const pg_solution* sol);
PG_API double pg_solution_residual(const pg_solution* sol);
PG_API int pg_solution_steps(const pg_solution* sol);
PG_API size_t pg_solution_iterate_count(const pg_solution* sol);
PG_API pg_status pg_solution_iterate(const pg_solution* sol, size_t i,
                                     double* out);

/* Window endpoints from a gap x and count n. PG_NOT_APPLICABLE when
 * n > x/log2 x (no closed form covers it). end - start == x identically. */
PG_API pg_status pg_start_from_gap(double x, uint64_t n, double* out);
PG_API pg_status pg_end_from_gap(double x, uint64_t n, double* out);
/* n = 1 envelope curves (x >= 4); at least one prime claimed between. */
PG_API pg_status pg_fg_curves(double x, double* f_out, double* g_out);

/* Consecutive-primality criterion for p < q, p > 2, q - p > 1:
 * possible <=> sqrt q - sqrt p < sqrt(2 log2(q-p)/(q-p)) <=> c3_raw < 1. */
typedef struct pg_andrica {
  double lhs;
  double rhs;
  double c3_raw;
  int possible;
} pg_andrica;

PG_API pg_status pg_andrica_check(double p, double q, pg_andrica* out);

typedef enum pg_equation {
  PG_EQ_T = 0,
  PG_EQ_GAP_WIDE = 1,
  PG_EQ_GAP_LOG = 2,
  PG_EQ_GAP_WIDE_BACK = 3,
  PG_EQ_GAP_LOG_BACK = 4
} pg_equation;

/* Independent bisection root of the chosen implicit equation (abs 1e-9);
 * n is ignored for PG_EQ_T. */
PG_API pg_status pg_bisection_root(pg_equation eq, double anchor, uint64_t n,
                                   double* out);

/* ------------------------------------------------------------- verifier */

typedef struct pg_table pg_table;

typedef struct pg_table_row {
  double a;
  double window_lo;
  double window_hi;
  int64_t actual;
  int64_t half_pi_display;
  double pnt_form;
  int has_reference;
  int64_t ref_actual;
  int64_t ref_half;
  int matches;
} pg_table_row;

/* Recompute the square-window estimate table. a_values == NULL uses the
 * 11 built-in desk-scale anchors; extended != 0 appends the 7 large ones
 * (those need a sieve toward 10^12). */
PG_API pg_status pg_verify_table1(const pg_oracle* oracle,
                                  const double* a_values, size_t count,
                                  int extended, pg_table** out);
PG_API void pg_table_free(pg_table* table);
PG_API size_t pg_table_row_count(const pg_table* table);
PG_API pg_status pg_table_get_row(const pg_table* table, size_t i,
                                  pg_table_row* out);
PG_API int pg_table_all_match(const pg_table* table);
PG_API pg_status pg_table_to_json(const pg_table* table, char** out);
PG_API pg_status pg_table_to_csv(const pg_table* table, char** out);

typedef enum pg_sweep_variant {
  PG_SWEEP_C1 = 0,
  PG_SWEEP_C2 = 1,
  PG_SWEEP_C3 = 2,
  PG_SWEEP_AUTO = 3,
  PG_SWEEP_GAP_FWD = 4,
  PG_SWEEP_GAP_BWD = 5,
  PG_SWEEP_ANDRICA = 6,
  PG_SWEEP_LOWER_PI = 7,
  PG_SWEEP_CROSSCHECK = 8
} pg_sweep_variant;

/* Window grid: systematic steps, or `samples` seeded random draws when
 * samples > 0. width_max <= 0 selects the variant's default width policy
 * (C2: 4*ceil(sqrt(lo)); C3: 2..50; AUTO: 2..80). */
typedef struct pg_window_spec {
  double lo_min, lo_max, lo_step;
  double width_min, width_max, width_step;
  uint64_t samples;
  uint64_t seed;
} pg_window_spec;

typedef struct pg_report pg_report;

typedef struct pg_violation {
  const char* tag; /* owned by the report */
  double lo;
  double hi;
  uint64_t n;
  double bound_or_claim;
  int64_t exact;
} pg_violation;

/* Lower-bound soundness over a window grid (C1/C2/C3/AUTO/LOWER_PI). */
PG_API pg_status pg_sweep_soundness(const pg_oracle* oracle,
                                    pg_sweep_variant variant,
                                    const pg_window_spec* spec,
                                    pg_report** out);
/* "Never farther than x" check, direction PG_SWEEP_GAP_FWD or _GAP_BWD. */
PG_API pg_status pg_sweep_gaps(const pg_oracle* oracle,
                               pg_sweep_variant direction, double a_min,
                               double a_max, double a_step, uint64_t n_min,
                               uint64_t n_max, pg_report** out);
/* Criterion over every consecutive-prime pair with p > 2, q <= limit. */
PG_API pg_status pg_sweep_andrica(const pg_oracle* oracle, uint64_t limit,
                                  pg_report** out);
/* Fixed point vs bisection on the built-in grid (covers all 5 equations). */
PG_API pg_status pg_sweep_crosscheck(pg_report** out);

PG_API void pg_report_free(pg_report* report);
PG_API pg_sweep_variant pg_report_variant(const pg_report* report);
PG_API uint64_t pg_report_windows_checked(const pg_report* report);
PG_API uint64_t pg_report_skipped(const pg_report* report);
PG_API uint64_t pg_report_solver_failures(const pg_report* report);
PG_API size_t pg_report_violation_count(const pg_report* report);
PG_API pg_status pg_report_get_violation(const pg_report* report, size_t i,
                                         pg_violation* out);
PG_API double pg_report_elapsed_seconds(const pg_report* report);
/* include_timing == 0 drops elapsed_seconds (byte-stable output). */
PG_API pg_status pg_report_to_json(const pg_report* report, int include_timing,
                                   char** out);
PG_API pg_status pg_report_to_csv(const pg_report* report, char** out);

typedef struct pg_s_limit_result {
  double s;
  double a; /* (sqrt(s)+1)^(2/(s-2)) */
  uint64_t count_in;
  uint64_t count_pi;
  double relative_gap;
  int pass;
} pg_s_limit_result;

/* s slightly above 2: compares the count in (a, a*s) against pi(a). */
PG_API pg_status pg_s_limit_check(const pg_oracle* oracle, double s,
                                  double tolerance, pg_s_limit_result* out);

PG_API void pg_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PRIMEGAP_H */
