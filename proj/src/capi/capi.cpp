#include "primegap.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "core/bounds.hpp"
#include "core/oracle.hpp"
#include "core/solver.hpp"
#include "core/verifier.hpp"

namespace {

thread_local std::string g_last_error;

pg_status fail(pg_status code, const char* what) {
  g_last_error = what ? what : "";
  return code;
}

// Maps core exceptions onto status codes; runs fn() inside the net.
template <class Fn>
pg_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const primegap::DomainError& e) {
    return fail(PG_ERROR_DOMAIN, e.what());
  } catch (const primegap::RangeError& e) {
    return fail(PG_ERROR_RANGE, e.what());
  } catch (const primegap::ResourceError& e) {
    return fail(PG_ERROR_RESOURCE, e.what());
  } catch (const primegap::BracketError& e) {
    return fail(PG_ERROR_BRACKET, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PG_ERROR_RESOURCE, "allocation failed");
  } catch (const std::exception& e) {
    return fail(PG_ERROR_INTERNAL, e.what());
  }
}

primegap::SolverOptions make_options(const pg_solver_options* opts) {
  primegap::SolverOptions o;
  if (opts) {
    if (opts->tolerance > 0.0) o.tolerance = opts->tolerance;
    if (opts->max_iterations > 0) o.max_iterations = opts->max_iterations;
  }
  return o;
}

void copy_bound(const primegap::BoundResult& in, pg_bound* out) {
  out->raw = in.raw;
  out->floor_value = in.floor_value;
  out->rule = static_cast<pg_rule>(in.rule);
  out->applicable = in.applicable ? 1 : 0;
  out->window_lo = in.window_lo;
  out->window_hi = in.window_hi;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct pg_oracle {
  primegap::PrimeOracle impl;
};

struct pg_solution {
  pg_solution_kind kind;
  primegap::GapCase gap_case;
  double value;
  std::int64_t value_ceil;
  double anchor;
  std::uint64_t n;
  double s;  // NaN unless kind == PG_SOLVE_T
  primegap::IterationTrace trace;
};

struct pg_table {
  std::vector<primegap::Table1Row> rows;
};

struct pg_report {
  primegap::SweepReport impl;
};

extern "C" {

const char* pg_version(void) { return "0.1.0"; }

const char* pg_last_error(void) { return g_last_error.c_str(); }

/* oracle ---------------------------------------------------------------- */

pg_status pg_oracle_create(uint64_t limit, uint64_t segment_size,
                           uint64_t memory_budget_bytes, pg_oracle** out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  *out = nullptr;
  return guarded([&] {
    const uint64_t seg = segment_size
                             ? segment_size
                             : primegap::PrimeOracle::kDefaultSegmentSize;
    *out = new pg_oracle{primegap::PrimeOracle(limit, seg, memory_budget_bytes)};
    return PG_OK;
  });
}

void pg_oracle_free(pg_oracle* oracle) { delete oracle; }

uint64_t pg_oracle_limit(const pg_oracle* oracle) {
  return oracle ? oracle->impl.limit() : 0;
}

pg_status pg_oracle_is_prime(const pg_oracle* oracle, uint64_t k, int* out) {
  if (!oracle || !out) return fail(PG_ERROR_INVALID, "null argument");
  return guarded([&] {
    *out = oracle->impl.is_prime(k) ? 1 : 0;
    return PG_OK;
  });
}

pg_status pg_oracle_pi(const pg_oracle* oracle, double n, uint64_t* out) {
  if (!oracle || !out) return fail(PG_ERROR_INVALID, "null argument");
  return guarded([&] {
    *out = oracle->impl.pi(n);
    return PG_OK;
  });
}

pg_status pg_oracle_pi_open(const pg_oracle* oracle, double lo, double hi,
                            uint64_t* out) {
  if (!oracle || !out) return fail(PG_ERROR_INVALID, "null argument");
  return guarded([&] {
    *out = oracle->impl.pi_open(lo, hi);
    return PG_OK;
  });
}

pg_status pg_oracle_nth_prime_after(const pg_oracle* oracle, double a,
                                    uint64_t n, uint64_t* out) {
  if (!oracle || !out) return fail(PG_ERROR_INVALID, "null argument");
  return guarded([&] {
    *out = oracle->impl.nth_prime_after(a, n);
    return PG_OK;
  });
}

pg_status pg_oracle_nth_prime_before(const pg_oracle* oracle, double b,
                                     uint64_t n, uint64_t* out) {
  if (!oracle || !out) return fail(PG_ERROR_INVALID, "null argument");
  return guarded([&] {
    *out = oracle->impl.nth_prime_before(b, n);
    return PG_OK;
  });
}

pg_status pg_oracle_next_prime(const pg_oracle* oracle, uint64_t p,
                               uint64_t* out) {
  if (!oracle || !out) return fail(PG_ERROR_INVALID, "null argument");
  return guarded([&] {
    auto q = oracle->impl.next_prime(p);
    if (!q) return fail(PG_ERROR_RANGE, "no further prime below sieve limit");
    *out = *q;
    return PG_OK;
  });
}

/* bounds ----------------------------------------------------------------- */

pg_status pg_pnt_estimate(double n, double* out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    *out = primegap::pnt_estimate(n);
    return PG_OK;
  });
}

pg_status pg_lower_bound_pi(double n, pg_bound* out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    copy_bound(primegap::lower_bound_pi(n), out);
    return PG_OK;
  });
}

pg_status pg_legendre_lower_bound(double a, pg_bound* out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    copy_bound(primegap::legendre_lower_bound(a), out);
    return PG_OK;
  });
}

pg_status pg_c2_estimate(double a, double b, double* out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    auto v = primegap::c2_estimate(a, b);
    if (!v) return fail(PG_NOT_APPLICABLE, "sqrt(b) - sqrt(a) < 1");
    *out = *v;
    return PG_OK;
  });
}

pg_status pg_c2_lower_bound(double a, double b, pg_bound* out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    copy_bound(primegap::c2_lower_bound(a, b), out);
    return PG_OK;
  });
}

pg_status pg_c3_lower_bound(double a, double b, pg_bound* out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    copy_bound(primegap::c3_lower_bound(a, b), out);
    return PG_OK;
  });
}

pg_status pg_lower_bound_auto(double a, double b, pg_bound* out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    copy_bound(primegap::lower_bound_auto(a, b), out);
    return PG_OK;
  });
}

pg_status pg_brocard_lower_bound(double a, pg_bound* out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    copy_bound(primegap::brocard_lower_bound(a), out);
    return PG_OK;
  });
}

pg_status pg_legendre_estimate_eval(const pg_oracle* oracle, double a,
                                    pg_legendre_estimate* out) {
  if (!oracle || !out) return fail(PG_ERROR_INVALID, "null argument");
  return guarded([&] {
    const auto e = primegap::legendre_estimate(oracle->impl, a);
    out->half_pi_exact = e.half_pi_exact;
    out->half_pi_display = e.half_pi_display;
    out->pnt_form = e.pnt_form;
    return PG_OK;
  });
}

pg_status pg_min_anchor_for_bound(int64_t target, pg_anchor_variant variant,
                                  double* out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    const auto v = variant == PG_ANCHOR_BROCARD
                       ? primegap::AnchorVariant::Brocard
                       : primegap::AnchorVariant::LegendreC1;
    *out = primegap::min_anchor_for_bound(target, v);
    return PG_OK;
  });
}

/* solver ----------------------------------------------------------------- */

pg_status pg_forward_gap(double a, uint64_t n, const pg_solver_options* opts,
                         pg_solution** out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  *out = nullptr;
  return guarded([&] {
    auto sol = primegap::forward_gap(a, n, make_options(opts));
    *out = new pg_solution{PG_SOLVE_FORWARD,
                           sol.gap_case,
                           sol.x_raw,
                           sol.x_int,
                           sol.anchor,
                           sol.n,
                           std::nan(""),
                           std::move(sol.trace)};
    return PG_OK;
  });
}

pg_status pg_backward_gap(double b, uint64_t n, const pg_solver_options* opts,
                          pg_solution** out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  *out = nullptr;
  return guarded([&] {
    auto sol = primegap::backward_gap(b, n, make_options(opts));
    *out = new pg_solution{PG_SOLVE_BACKWARD,
                           sol.gap_case,
                           sol.x_raw,
                           sol.x_int,
                           sol.anchor,
                           sol.n,
                           std::nan(""),
                           std::move(sol.trace)};
    return PG_OK;
  });
}

pg_status pg_solve_t(double a, const pg_solver_options* opts,
                     pg_solution** out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  *out = nullptr;
  return guarded([&] {
    auto t = primegap::solve_t(a, make_options(opts));
    *out = new pg_solution{PG_SOLVE_T,
                           primegap::GapCase::IterLog,
                           t.t,
                           static_cast<std::int64_t>(std::ceil(t.t)),
                           t.a,
                           0,
                           t.s,
                           std::move(t.trace)};
    return PG_OK;
  });
}

void pg_solution_free(pg_solution* sol) { delete sol; }

pg_solution_kind pg_solution_get_kind(const pg_solution* sol) {
  return sol ? sol->kind : PG_SOLVE_FORWARD;
}

pg_gap_case pg_solution_get_case(const pg_solution* sol) {
  return sol ? static_cast<pg_gap_case>(sol->gap_case) : PG_CASE_CLOSED_FORM;
}

double pg_solution_value(const pg_solution* sol) {
  return sol ? sol->value : std::nan("");
}

int64_t pg_solution_value_ceil(const pg_solution* sol) {
  return sol ? sol->value_ceil : 0;
}

double pg_solution_anchor(const pg_solution* sol) {
  return sol ? sol->anchor : std::nan("");
}

uint64_t pg_solution_n(const pg_solution* sol) { return sol ? sol->n : 0; }

double pg_solution_s(const pg_solution* sol) {
  return sol ? sol->s : std::nan("");
}

int pg_solution_converged(const pg_solution* sol) {
  return sol && sol->trace.converged ? 1 : 0;
}

double pg_solution_residual(const pg_solution* sol) {
  return sol ? sol->trace.residual : std::nan("");
}

int pg_solution_steps(const pg_solution* sol) {
  return sol ? sol->trace.steps : 0;
}

size_t pg_solution_iterate_count(const pg_solution* sol) {
  return sol ? sol->trace.iterates.size() : 0;
}

pg_status pg_solution_iterate(const pg_solution* sol, size_t i, double* out) {
  if (!sol || !out) return fail(PG_ERROR_INVALID, "null argument");
  if (i >= sol->trace.iterates.size())
    return fail(PG_ERROR_RANGE, "iterate index out of range");
  *out = sol->trace.iterates[i];
  return PG_OK;
}

pg_status pg_start_from_gap(double x, uint64_t n, double* out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    auto v = primegap::start_from_gap(x, n);
    if (!v) return fail(PG_NOT_APPLICABLE, "n > x / log2 x");
    *out = *v;
    return PG_OK;
  });
}

pg_status pg_end_from_gap(double x, uint64_t n, double* out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    auto v = primegap::end_from_gap(x, n);
    if (!v) return fail(PG_NOT_APPLICABLE, "n > x / log2 x");
    *out = *v;
    return PG_OK;
  });
}

pg_status pg_fg_curves(double x, double* f_out, double* g_out) {
  if (!f_out || !g_out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    auto [f, g] = primegap::fg_curves(x);
    *f_out = f;
    *g_out = g;
    return PG_OK;
  });
}

pg_status pg_andrica_check(double p, double q, pg_andrica* out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    const auto v = primegap::andrica_check(p, q);
    out->lhs = v.lhs;
    out->rhs = v.rhs;
    out->c3_raw = v.c3_raw;
    out->possible = v.possible ? 1 : 0;
    return PG_OK;
  });
}

pg_status pg_bisection_root(pg_equation eq, double anchor, uint64_t n,
                            double* out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  return guarded([&] {
    *out = primegap::bisection_root(static_cast<primegap::Equation>(eq),
                                    anchor, n);
    return PG_OK;
  });
}

/* verifier --------------------------------------------------------------- */

pg_status pg_verify_table1(const pg_oracle* oracle, const double* a_values,
                           size_t count, int extended, pg_table** out) {
  if (!oracle || !out) return fail(PG_ERROR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::vector<double> anchors;
    if (a_values && count > 0)
      anchors.assign(a_values, a_values + count);
    else
      anchors = extended ? primegap::table1_extended_anchors()
                         : primegap::table1_default_anchors();
    *out = new pg_table{primegap::verify_table1(oracle->impl, anchors)};
    return PG_OK;
  });
}

void pg_table_free(pg_table* table) { delete table; }

size_t pg_table_row_count(const pg_table* table) {
  return table ? table->rows.size() : 0;
}

pg_status pg_table_get_row(const pg_table* table, size_t i, pg_table_row* out) {
  if (!table || !out) return fail(PG_ERROR_INVALID, "null argument");
  if (i >= table->rows.size())
    return fail(PG_ERROR_RANGE, "row index out of range");
  const auto& r = table->rows[i];
  out->a = r.a;
  out->window_lo = r.window_lo;
  out->window_hi = r.window_hi;
  out->actual = r.actual;
  out->half_pi_display = r.half_pi_display;
  out->pnt_form = r.pnt_form;
  out->has_reference = r.has_reference ? 1 : 0;
  out->ref_actual = r.ref_actual;
  out->ref_half = r.ref_half;
  out->matches = r.matches ? 1 : 0;
  return PG_OK;
}

int pg_table_all_match(const pg_table* table) {
  if (!table) return 0;
  for (const auto& r : table->rows)
    if (!r.matches) return 0;
  return 1;
}

pg_status pg_table_to_json(const pg_table* table, char** out) {
  if (!table || !out) return fail(PG_ERROR_INVALID, "null argument");
  return guarded([&] {
    *out = dup_string(primegap::table1_to_json(table->rows));
    return PG_OK;
  });
}

pg_status pg_table_to_csv(const pg_table* table, char** out) {
  if (!table || !out) return fail(PG_ERROR_INVALID, "null argument");
  return guarded([&] {
    *out = dup_string(primegap::table1_to_csv(table->rows));
    return PG_OK;
  });
}

pg_status pg_sweep_soundness(const pg_oracle* oracle, pg_sweep_variant variant,
                             const pg_window_spec* spec, pg_report** out) {
  if (!oracle || !spec || !out) return fail(PG_ERROR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    primegap::WindowSpec w;
    w.lo_min = spec->lo_min;
    w.lo_max = spec->lo_max;
    w.lo_step = spec->lo_step;
    w.width_min = spec->width_min;
    w.width_max = spec->width_max;
    w.width_step = spec->width_step;
    w.samples = spec->samples;
    w.seed = spec->seed;
    *out = new pg_report{primegap::soundness_sweep(
        oracle->impl, static_cast<primegap::SweepVariant>(variant), w)};
    return PG_OK;
  });
}

pg_status pg_sweep_gaps(const pg_oracle* oracle, pg_sweep_variant direction,
                        double a_min, double a_max, double a_step,
                        uint64_t n_min, uint64_t n_max, pg_report** out) {
  if (!oracle || !out) return fail(PG_ERROR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new pg_report{primegap::gap_soundness_sweep(
        oracle->impl, static_cast<primegap::SweepVariant>(direction), a_min,
        a_max, a_step, n_min, n_max)};
    return PG_OK;
  });
}

pg_status pg_sweep_andrica(const pg_oracle* oracle, uint64_t limit,
                           pg_report** out) {
  if (!oracle || !out) return fail(PG_ERROR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new pg_report{primegap::andrica_sweep(oracle->impl, limit)};
    return PG_OK;
  });
}

pg_status pg_sweep_crosscheck(pg_report** out) {
  if (!out) return fail(PG_ERROR_INVALID, "null out pointer");
  *out = nullptr;
  return guarded([&] {
    *out = new pg_report{
        primegap::fixedpoint_vs_bisection(primegap::default_crosscheck_grid())};
    return PG_OK;
  });
}

void pg_report_free(pg_report* report) { delete report; }

pg_sweep_variant pg_report_variant(const pg_report* report) {
  return report ? static_cast<pg_sweep_variant>(report->impl.variant)
                : PG_SWEEP_C1;
}

uint64_t pg_report_windows_checked(const pg_report* report) {
  return report ? report->impl.windows_checked : 0;
}

uint64_t pg_report_skipped(const pg_report* report) {
  return report ? report->impl.skipped_not_applicable : 0;
}

uint64_t pg_report_solver_failures(const pg_report* report) {
  return report ? report->impl.solver_failures : 0;
}

size_t pg_report_violation_count(const pg_report* report) {
  return report ? report->impl.violations.size() : 0;
}

pg_status pg_report_get_violation(const pg_report* report, size_t i,
                                  pg_violation* out) {
  if (!report || !out) return fail(PG_ERROR_INVALID, "null argument");
  if (i >= report->impl.violations.size())
    return fail(PG_ERROR_RANGE, "violation index out of range");
  const auto& v = report->impl.violations[i];
  out->tag = v.tag.c_str();
  out->lo = v.lo;
  out->hi = v.hi;
  out->n = v.n;
  out->bound_or_claim = v.bound_or_claim;
  out->exact = v.exact;
  return PG_OK;
}

double pg_report_elapsed_seconds(const pg_report* report) {
  return report ? report->impl.elapsed_seconds : 0.0;
}

pg_status pg_report_to_json(const pg_report* report, int include_timing,
                            char** out) {
  if (!report || !out) return fail(PG_ERROR_INVALID, "null argument");
  return guarded([&] {
    *out = dup_string(primegap::report_to_json(report->impl, include_timing != 0));
    return PG_OK;
  });
}

pg_status pg_report_to_csv(const pg_report* report, char** out) {
  if (!report || !out) return fail(PG_ERROR_INVALID, "null argument");
  return guarded([&] {
    *out = dup_string(primegap::report_to_csv(report->impl));
    return PG_OK;
  });
}

pg_status pg_s_limit_check(const pg_oracle* oracle, double s, double tolerance,
                           pg_s_limit_result* out) {
  if (!oracle || !out) return fail(PG_ERROR_INVALID, "null argument");
  return guarded([&] {
    const auto r = primegap::s_limit_check(oracle->impl, s, tolerance);
    out->s = r.s;
    out->a = r.a;
    out->count_in = r.count_in;
    out->count_pi = r.count_pi;
    out->relative_gap = r.relative_gap;
    out->pass = r.pass ? 1 : 0;
    return PG_OK;
  });
}

void pg_string_free(char* s) { delete[] s; }

} /* extern "C" */
