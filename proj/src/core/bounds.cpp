#include "core/bounds.hpp"

#include <cmath>
#include <limits>

namespace primegap {

namespace {

std::int64_t floor_i64(double v) {
  return static_cast<std::int64_t>(std::floor(v));
}

BoundResult not_applicable(BoundRule rule, double lo, double hi) {
  BoundResult r;
  r.rule = rule;
  r.applicable = false;
  r.raw = std::numeric_limits<double>::quiet_NaN();
  r.floor_value = 0;
  r.window_lo = lo;
  r.window_hi = hi;
  return r;
}

BoundResult applicable(BoundRule rule, double raw, double lo, double hi) {
  BoundResult r;
  r.rule = rule;
  r.applicable = true;
  r.raw = raw;
  r.floor_value = floor_i64(raw);
  r.window_lo = lo;
  r.window_hi = hi;
  return r;
}

}  // namespace

double pnt_estimate(double n) {
  if (!(n > 1.0)) throw DomainError("pnt_estimate requires n > 1");
  return n / std::log(n);
}

BoundResult lower_bound_pi(double n) {
  if (!(n >= 4.0)) return not_applicable(BoundRule::LowerPi, 0.0, n);
  return applicable(BoundRule::LowerPi, n / std::log2(n), 0.0, n);
}

LegendreEstimate legendre_estimate(const PrimeOracle& oracle, double a) {
  if (!(a > 0.0)) throw DomainError("legendre_estimate requires a > 0");
  const double w = 2.0 * a + 1.0;
  LegendreEstimate e;
  e.half_pi_exact = static_cast<double>(oracle.pi(w)) / 2.0;
  e.half_pi_display = floor_i64(e.half_pi_exact);
  e.pnt_form = w / (2.0 * std::log(w));
  return e;
}

BoundResult legendre_lower_bound(double a) {
  const double lo = a * a;
  const double hi = (a + 1.0) * (a + 1.0);
  if (!(a >= 0.5)) return not_applicable(BoundRule::LegendreC1, lo, hi);
  const double w = 2.0 * a + 1.0;
  return applicable(BoundRule::LegendreC1, w / (2.0 * std::log2(w)), lo, hi);
}

std::optional<double> c2_estimate(double a, double b) {
  if (!(a >= 0.0) || !(b > a)) throw DomainError("c2_estimate requires b > a >= 0");
  const double sa = std::sqrt(a), sb = std::sqrt(b);
  if (!(sb - sa >= 1.0)) return std::nullopt;
  return (b - a) / (2.0 * std::log(sb + sa));
}

BoundResult c2_lower_bound(double a, double b) {
  const double sa = std::sqrt(a), sb = std::sqrt(b);
  if (!(a >= 0.0) || !(b - a >= 4.0) || !(sb - sa >= 1.0))
    return not_applicable(BoundRule::RangeC2, a, b);
  const double raw = (b - a) / (2.0 * std::log2(sb + sa));
  return applicable(BoundRule::RangeC2, raw, a, b);
}

BoundResult c3_lower_bound(double a, double b) {
  const double sa = std::sqrt(a), sb = std::sqrt(b);
  if (!(a >= 0.0) || !(b - a >= 2.0) || !(sb - sa <= 1.0))
    return not_applicable(BoundRule::RangeC3, a, b);
  const double x = b - a;
  const double diff = x / (sb + sa);  // sqrt(b)-sqrt(a), stable for b near a
  const double raw = x * diff * diff / (2.0 * std::log2(x));
  return applicable(BoundRule::RangeC3, raw, a, b);
}

BoundResult lower_bound_auto(double a, double b) {
  if (!(a >= 0.0) || !(b > a))
    throw DomainError("lower_bound_auto requires b > a >= 0");
  const double gap = b - a;
  const double diff = std::sqrt(b) - std::sqrt(a);
  if (gap >= 4.0 && diff >= 1.0) return c2_lower_bound(a, b);
  if (gap >= 2.0 && diff <= 1.0) return c3_lower_bound(a, b);
  return not_applicable(BoundRule::RangeC2, a, b);
}

BoundResult brocard_lower_bound(double a) {
  if (!(a > 0.0)) throw DomainError("brocard_lower_bound requires a > 0");
  return c2_lower_bound(a * a, (a + 2.0) * (a + 2.0));
}

namespace {

double anchor_raw(AnchorVariant variant, double a) {
  if (variant == AnchorVariant::LegendreC1) {
    const double w = 2.0 * a + 1.0;
    return w / (2.0 * std::log2(w));
  }
  const double w = 2.0 * a + 2.0;
  return w / std::log2(w);
}

}  // namespace

double min_anchor_for_bound(std::int64_t target, AnchorVariant variant) {
  if (target < 1) throw DomainError("min_anchor_for_bound requires target >= 1");
  const double t = static_cast<double>(target);
  const double domain_min =
      (variant == AnchorVariant::LegendreC1) ? 0.5 : 1e-6;
  if (anchor_raw(variant, domain_min) >= t) return domain_min;

  // grow an upper end until the raw value crosses the target
  double lo = domain_min;
  double hi = std::max(1.0, 2.0 * domain_min);
  int guard = 0;
  while (anchor_raw(variant, hi) < t) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 200) throw BracketError("anchor target not reachable");
  }

  // the raw value must be nondecreasing across the bracket
  double prev = anchor_raw(variant, lo);
  for (int i = 1; i <= 32; ++i) {
    const double s = lo + (hi - lo) * i / 32.0;
    const double v = anchor_raw(variant, s);
    if (v < prev - 1e-12 * std::max(1.0, std::fabs(prev)))
      throw InternalError("anchor raw value not monotone over bracket");
    prev = v;
  }

  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (anchor_raw(variant, mid) >= t)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace primegap
