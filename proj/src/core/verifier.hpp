#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/oracle.hpp"
#include "core/solver.hpp"

namespace primegap {

enum class SweepVariant {
  C1,
  C2,
  C3,
  Auto,
  GapFwd,
  GapBwd,
  Andrica,
  LowerPi,
  Crosscheck
};

const char* sweep_variant_name(SweepVariant v);

/// One bound-vs-exact-count failure, with everything needed to re-check it
/// standalone.
struct Violation {
  std::string tag;          // equation/direction label where relevant
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t n = 0;
  double bound_or_claim = 0.0;
  std::int64_t exact = 0;
};

struct SweepReport {
  SweepVariant variant = SweepVariant::C1;
  std::uint64_t windows_checked = 0;        // applicable + skipped
  std::uint64_t skipped_not_applicable = 0;
  std::uint64_t solver_failures = 0;        // unconverged / bracket failures
  std::vector<Violation> violations;
  double elapsed_seconds = 0.0;
};

struct Table1Row {
  double a = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::int64_t actual = 0;            // exact open-window count
  std::int64_t half_pi_display = 0;   // floor(pi(2a+1)/2)
  double pnt_form = 0.0;
  bool has_reference = false;
  std::int64_t ref_actual = 0;
  std::int64_t ref_half = 0;
  bool matches = true;
};

/// Recomputes the square-window estimate table for the given anchors and
/// attaches the built-in reference columns where an anchor carries them.
std::vector<Table1Row> verify_table1(const PrimeOracle& oracle,
                                     const std::vector<double>& a_values);
std::vector<double> table1_default_anchors();   // the 11 desk-scale anchors
std::vector<double> table1_extended_anchors();  // adds the 7 large anchors

/// Window grid for soundness sweeps. Systematic grids step lo (and width)
/// through their ranges; samples > 0 switches to seeded random draws.
/// width_max <= 0 asks for the variant's default width policy.
struct WindowSpec {
  double lo_min = 0.0;
  double lo_max = 0.0;
  double lo_step = 1.0;
  double width_min = 0.0;
  double width_max = 0.0;
  double width_step = 1.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Evaluates the variant's lower bound over every window in the grid and
/// compares against the oracle; violations are recorded, never asserted.
SweepReport soundness_sweep(const PrimeOracle& oracle, SweepVariant variant,
                            const WindowSpec& spec);

/// For each anchor/n pair, checks that the solved maximum distance really
/// covers the n-th prime past (direction Fwd) or before (Bwd) the anchor.
SweepReport gap_soundness_sweep(const PrimeOracle& oracle, SweepVariant direction,
                                double a_min, double a_max, double a_step,
                                std::uint64_t n_min, std::uint64_t n_max,
                                const SolverOptions& opts = {});

/// Runs the consecutive-pair criterion over every pair (p, q) with p > 2,
/// q <= limit; a pair judged impossible would falsify the criterion.
SweepReport andrica_sweep(const PrimeOracle& oracle, std::uint64_t limit);

struct SLimitResult {
  double s = 0.0;
  double a = 0.0;
  std::uint64_t count_in = 0;
  std::uint64_t count_pi = 0;
  double relative_gap = 0.0;
  bool pass = false;
};

/// s near 2: a = (sqrt(s)+1)^(2/(s-2)); compares the count inside (a, a*s)
/// against pi(a).
SLimitResult s_limit_check(const PrimeOracle& oracle, double s, double tolerance);

struct CrosscheckPoint {
  Equation eq = Equation::TEq;
  double anchor = 0.0;
  std::uint64_t n = 0;
};

/// Fixed-point answer vs independent bisection root on each grid point;
/// violation beyond 1e-6 (relative for magnitudes above 1).
SweepReport fixedpoint_vs_bisection(const std::vector<CrosscheckPoint>& grid,
                                    const SolverOptions& opts = {});
std::vector<CrosscheckPoint> default_crosscheck_grid();

struct RosserSchoenfeldResult {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t first_violation = 0;  // 0 when none
};

/// Empirical pi(N) > N/ln N over integer N in [max(lo,17), hi].
RosserSchoenfeldResult rosser_schoenfeld_check(const PrimeOracle& oracle,
                                               std::uint64_t lo, std::uint64_t hi);

// Machine-readable report forms. CSV always starts with its header row and
// uses '.' as decimal separator; reals carry 12 significant digits.
// include_timing=false drops elapsed_seconds for byte-stable comparison.
std::string report_to_json(const SweepReport& report, bool include_timing = true);
std::string report_to_csv(const SweepReport& report);
std::string table1_to_json(const std::vector<Table1Row>& rows);
std::string table1_to_csv(const std::vector<Table1Row>& rows);

/// Nearest double with 12 significant decimal digits; machine formats print
/// reals through this so JSON and CSV carry identical values.
double round12(double v);
std::string format12(double v);

}  // namespace primegap
