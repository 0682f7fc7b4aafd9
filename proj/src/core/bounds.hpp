#pragma once

#include <cstdint>
#include <optional>

#include "core/oracle.hpp"

namespace primegap {

enum class BoundRule { LowerPi, LegendreC1, RangeC2, RangeC3 };

/// A conjectural lower bound on a prime count: the raw formula value, its
/// floor, which rule produced it, and the window it talks about. A result
/// whose preconditions fail comes back with applicable = false instead of
/// throwing, so sweeps can tabulate coverage gaps.
struct BoundResult {
  double raw = 0.0;
  std::int64_t floor_value = 0;
  BoundRule rule = BoundRule::RangeC2;
  bool applicable = false;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

/// n / ln n. DomainError for n <= 1.
double pnt_estimate(double n);

/// floor(n / log2 n) as a lower bound for pi(n); applicable for n >= 4.
BoundResult lower_bound_pi(double n);

/// Estimate for the count of primes in (a^2, (a+1)^2): half of pi(2a+1),
/// both the exact half and its floored display value, plus the pure
/// (2a+1)/(2 ln(2a+1)) form.
struct LegendreEstimate {
  double half_pi_exact = 0.0;
  std::int64_t half_pi_display = 0;
  double pnt_form = 0.0;
};
LegendreEstimate legendre_estimate(const PrimeOracle& oracle, double a);

/// floor((2a+1) / (2 log2(2a+1))) on the window (a^2, (a+1)^2); a >= 1/2.
BoundResult legendre_lower_bound(double a);

/// (b-a) / (2 ln(sqrt(b)+sqrt(a))); needs sqrt(b)-sqrt(a) >= 1, else nullopt.
std::optional<double> c2_estimate(double a, double b);

/// floor((b-a) / (2 log2(sqrt(b)+sqrt(a)))); needs b-a >= 4 and
/// sqrt(b)-sqrt(a) >= 1.
BoundResult c2_lower_bound(double a, double b);

/// floor((b-a) (sqrt(b)-sqrt(a))^2 / (2 log2(b-a))); needs b-a >= 2 and
/// sqrt(b)-sqrt(a) <= 1.
BoundResult c3_lower_bound(double a, double b);

/// Dispatches to RangeC2 when it applies, else RangeC3, else a
/// not-applicable result. The exact boundary sqrt(b)-sqrt(a) = 1 reports
/// RangeC2 (the two raw values coincide there).
BoundResult lower_bound_auto(double a, double b);

/// c2_lower_bound on (a^2, (a+2)^2); raw simplifies to (2a+2)/log2(2a+2).
BoundResult brocard_lower_bound(double a);

enum class AnchorVariant { LegendreC1, Brocard };

/// Smallest anchor a whose raw bound value reaches `target`, by bisection to
/// absolute 1e-6. Monotonicity of the raw value over the bracket is checked
/// first (InternalError if it fails).
double min_anchor_for_bound(std::int64_t target, AnchorVariant variant);

}  // namespace primegap
