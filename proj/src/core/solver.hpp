#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "core/errors.hpp"

namespace primegap {

/// Record of one fixed-point run: every iterate in order, whether the run
/// converged, and the absolute defect |F(x)-x| at the final iterate.
struct IterationTrace {
  std::vector<double> iterates;
  bool converged = false;
  double residual = 0.0;
  int steps = 0;  // iterates.size() - 1
};

enum class GapCase { ClosedForm, IterWide, IterLog };

/// Solved maximum distance x between an anchor and the n-th prime past it.
/// x_int = ceil(x_raw) is the integer answer callers quote.
struct GapSolution {
  double x_raw = 0.0;
  std::int64_t x_int = 0;
  GapCase gap_case = GapCase::ClosedForm;
  IterationTrace trace;
  double anchor = 0.0;
  std::uint64_t n = 0;
};

/// Fixed point of t = 2a ln(sqrt(a+t)+sqrt(a)) / ln a, with s = t/a + 1.
/// At the fixed point a = (sqrt(s)+1)^(2/(s-2)) holds exactly.
struct TParameter {
  double a = 0.0;
  double t = 0.0;
  double s = 0.0;
  IterationTrace trace;
};

/// Consecutive-primality criterion for a pair p < q: they can only be
/// consecutive primes if sqrt(q)-sqrt(p) < sqrt(2 log2(q-p)/(q-p)),
/// equivalently iff the RangeC3 raw value of (p, q) is below 1.
struct AndricaVerdict {
  double p = 0.0;
  double q = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double c3_raw = 0.0;
  bool possible = false;
};

struct SolverOptions {
  double tolerance = 1e-9;  // relative step tolerance; also the residual
                            // target (x1000 for the oscillating wide case)
  int max_iterations = 500;
};

TParameter solve_t(double a, const SolverOptions& opts = {});

/// Max distance from a to the n-th prime after it. Case dispatch on
/// r = (2 sqrt(a)+1) / (2 log2(2 sqrt(a)+1)) against n:
///   |r-n| <= 1e-9  closed form x = 2 sqrt(a)+1
///   r > n          x = (sqrt(a+x)+sqrt(a)) sqrt(2 n x log2 x) / x
///   r < n          x = 2 n log2(sqrt(a+x)+sqrt(a))
GapSolution forward_gap(double a, std::uint64_t n, const SolverOptions& opts = {});

/// Mirror of forward_gap for the n-th prime before b; iterates must keep
/// b - x > 0 (DomainError otherwise).
GapSolution backward_gap(double b, std::uint64_t n, const SolverOptions& opts = {});

/// Window start with exactly distance x to the n-th prime bound:
///   polynomial regime  x/(2 log2 x) >= n:
///       a = (x^2 - 2n log2 x)^2 / (8 n x log2 x)
///   exponential regime x/log2 x >= n >= x/(2 log2 x):
///       a = (2^(x/n) - x)^2 / (4 * 2^(x/n))
/// nullopt when n > x/log2 x (no formula covers it).
std::optional<double> start_from_gap(double x, std::uint64_t n);

/// Window end; satisfies end - start = x identically in both regimes.
std::optional<double> end_from_gap(double x, std::uint64_t n);

/// The n = 1 envelope (f(x), g(x)); at least one prime is claimed between
/// them for x >= 4.
std::pair<double, double> fg_curves(double x);

AndricaVerdict andrica_check(double p, double q);

/// Implicit equations solved by the iterations above, for independent
/// cross-checking by bisection.
enum class Equation { TEq, GapWide, GapLog, GapWideBack, GapLogBack };

/// Root of the chosen equation to absolute 1e-9, bracketing geometrically
/// from the iteration's own seed. BracketError when no sign change is found.
double bisection_root(Equation eq, double anchor, std::uint64_t n = 0);

/// Runs the fixed-point iteration matching `eq` directly (no case
/// dispatch); value is the final iterate.
std::pair<double, IterationTrace> fixed_point_for_equation(
    Equation eq, double anchor, std::uint64_t n, const SolverOptions& opts = {});

}  // namespace primegap
