#include "core/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace primegap {

namespace {

constexpr double kCaseTolerance = 1e-9;

double sqrt_diff(double hi, double lo) {
  // sqrt(hi) - sqrt(lo) without cancellation
  return (hi - lo) / (std::sqrt(hi) + std::sqrt(lo));
}

// Iteration maps. Each throws DomainError if an iterate leaves the domain.
struct Maps {
  static double t_eq(double a, double t) {
    return 2.0 * a * std::log(std::sqrt(a + t) + std::sqrt(a)) / std::log(a);
  }
  static double gap_wide(double a, double n, double x) {
    if (!(x > 1.0)) throw DomainError("wide iterate left domain (x <= 1)");
    return (std::sqrt(a + x) + std::sqrt(a)) *
           std::sqrt(2.0 * n * x * std::log2(x)) / x;
  }
  static double gap_log(double a, double n, double x) {
    return 2.0 * n * std::log2(std::sqrt(a + x) + std::sqrt(a));
  }
  static double gap_wide_back(double b, double n, double x) {
    if (!(x > 1.0)) throw DomainError("wide iterate left domain (x <= 1)");
    if (!(b - x > 0.0)) throw DomainError("iterate drove b - x <= 0");
    return (std::sqrt(b - x) + std::sqrt(b)) *
           std::sqrt(2.0 * n * x * std::log2(x)) / x;
  }
  static double gap_log_back(double b, double n, double x) {
    if (!(b - x > 0.0)) throw DomainError("iterate drove b - x <= 0");
    return 2.0 * n * std::log2(std::sqrt(b - x) + std::sqrt(b));
  }
};

// Plain substitution until the step and the defect are small. The wide maps
// oscillate around their fixed point; after three successive delta sign
// alternations the update switches to the midpoint of iterate and image.
IterationTrace run_fixed_point(const std::function<double(double)>& map,
                               double seed, double residual_target,
                               const SolverOptions& opts) {
  IterationTrace trace;
  trace.iterates.push_back(seed);
  const double step_tol = opts.tolerance;
  int alternations = 0;
  int last_sign = 0;
  bool averaged = false;

  for (int step = 0; step < opts.max_iterations; ++step) {
    const double x = trace.iterates.back();
    const double fx = map(x);
    const double next = averaged ? 0.5 * (x + fx) : fx;
    const double delta = next - x;
    const int sign = (delta > 0.0) - (delta < 0.0);
    if (!averaged && sign != 0 && last_sign != 0) {
      if (sign == -last_sign) {
        if (++alternations >= 3) averaged = true;
      } else {
        alternations = 0;
      }
    }
    last_sign = sign;
    trace.iterates.push_back(next);
    const double resid = std::fabs(map(next) - next);
    trace.residual = resid;
    if (resid <= residual_target &&
        std::fabs(delta) <= step_tol * std::max(1.0, std::fabs(next))) {
      trace.converged = true;
      break;
    }
  }
  trace.steps = static_cast<int>(trace.iterates.size()) - 1;
  return trace;
}

double dispatch_ratio(double edge) {
  // edge = 2 sqrt(a)+1 forward, 2 sqrt(b)-1 backward
  return edge / (2.0 * std::log2(edge));
}

GapSolution make_solution(double anchor, std::uint64_t n, GapCase gap_case,
                          IterationTrace trace) {
  GapSolution s;
  s.anchor = anchor;
  s.n = n;
  s.gap_case = gap_case;
  s.x_raw = trace.iterates.back();
  s.x_int = static_cast<std::int64_t>(std::ceil(s.x_raw));
  s.trace = std::move(trace);
  return s;
}

IterationTrace closed_form_trace(double x, double defect) {
  IterationTrace t;
  t.iterates.push_back(x);
  t.converged = true;
  t.residual = std::fabs(defect);
  t.steps = 0;
  return t;
}

}  // namespace

TParameter solve_t(double a, const SolverOptions& opts) {
  if (!(a > 1.0)) throw DomainError("solve_t requires a > 1");
  const double seed =
      2.0 * a * std::log(2.0 * std::sqrt(a) + 1.0) / std::log(a);
  auto map = [a](double t) { return Maps::t_eq(a, t); };
  TParameter out;
  out.a = a;
  out.trace = run_fixed_point(map, seed, opts.tolerance, opts);
  out.t = out.trace.iterates.back();
  out.s = out.t / a + 1.0;
  return out;
}

GapSolution forward_gap(double a, std::uint64_t n, const SolverOptions& opts) {
  if (!(a >= 1.0)) throw DomainError("forward_gap requires a >= 1");
  if (n < 1) throw DomainError("forward_gap requires n >= 1");
  const double nd = static_cast<double>(n);
  const double edge = 2.0 * std::sqrt(a) + 1.0;
  const double r = dispatch_ratio(edge);

  if (std::fabs(r - nd) <= kCaseTolerance) {
    const double defect = Maps::gap_log(a, nd, edge) - edge;
    return make_solution(a, n, GapCase::ClosedForm,
                         closed_form_trace(edge, defect));
  }
  if (r > nd) {
    const double seed = std::sqrt(2.0 * nd * edge * std::log2(edge));
    auto map = [a, nd](double x) { return Maps::gap_wide(a, nd, x); };
    auto trace = run_fixed_point(map, seed, 1000.0 * opts.tolerance, opts);
    return make_solution(a, n, GapCase::IterWide, std::move(trace));
  }
  const double seed = 2.0 * nd * std::log2(edge);
  auto map = [a, nd](double x) { return Maps::gap_log(a, nd, x); };
  auto trace = run_fixed_point(map, seed, opts.tolerance, opts);
  return make_solution(a, n, GapCase::IterLog, std::move(trace));
}

GapSolution backward_gap(double b, std::uint64_t n, const SolverOptions& opts) {
  if (!(b > 1.0)) throw DomainError("backward_gap requires b > 1");
  if (n < 1) throw DomainError("backward_gap requires n >= 1");
  const double nd = static_cast<double>(n);
  const double edge = 2.0 * std::sqrt(b) - 1.0;
  const double r = dispatch_ratio(edge);

  if (std::fabs(r - nd) <= kCaseTolerance) {
    const double defect = Maps::gap_log_back(b, nd, edge) - edge;
    return make_solution(b, n, GapCase::ClosedForm,
                         closed_form_trace(edge, defect));
  }
  if (r > nd) {
    const double seed = std::sqrt(2.0 * nd * edge * std::log2(edge));
    auto map = [b, nd](double x) { return Maps::gap_wide_back(b, nd, x); };
    auto trace = run_fixed_point(map, seed, 1000.0 * opts.tolerance, opts);
    return make_solution(b, n, GapCase::IterWide, std::move(trace));
  }
  const double seed = 2.0 * nd * std::log2(edge);
  auto map = [b, nd](double x) { return Maps::gap_log_back(b, nd, x); };
  auto trace = run_fixed_point(map, seed, opts.tolerance, opts);
  return make_solution(b, n, GapCase::IterLog, std::move(trace));
}

namespace {

enum class GapRegime { Polynomial, Exponential, None };

GapRegime regime_for(double x, double n) {
  const double l = std::log2(x);
  if (x / (2.0 * l) >= n) return GapRegime::Polynomial;
  if (x / l >= n) return GapRegime::Exponential;
  return GapRegime::None;
}

}  // namespace

std::optional<double> start_from_gap(double x, std::uint64_t n) {
  if (!(x > 1.0)) throw DomainError("start_from_gap requires x > 1");
  if (n < 1) throw DomainError("start_from_gap requires n >= 1");
  const double nd = static_cast<double>(n);
  const double l = std::log2(x);
  switch (regime_for(x, nd)) {
    case GapRegime::Polynomial: {
      const double num = x * x - 2.0 * nd * l;
      return num * num / (8.0 * nd * x * l);
    }
    case GapRegime::Exponential: {
      const double e = std::exp2(x / nd);
      return (e - x) * (e - x) / (4.0 * e);
    }
    case GapRegime::None:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> end_from_gap(double x, std::uint64_t n) {
  if (!(x > 1.0)) throw DomainError("end_from_gap requires x > 1");
  if (n < 1) throw DomainError("end_from_gap requires n >= 1");
  const double nd = static_cast<double>(n);
  const double l = std::log2(x);
  switch (regime_for(x, nd)) {
    case GapRegime::Polynomial: {
      const double num = x * x + 2.0 * nd * l;
      return num * num / (8.0 * nd * x * l);
    }
    case GapRegime::Exponential: {
      const double e = std::exp2(x / nd);
      return (e + x) * (e + x) / (4.0 * e);
    }
    case GapRegime::None:
      return std::nullopt;
  }
  return std::nullopt;
}

std::pair<double, double> fg_curves(double x) {
  if (!(x >= 4.0)) throw DomainError("fg_curves requires x >= 4");
  const double l = std::log2(x);
  const double fm = x * x - 2.0 * l;
  const double gm = x * x + 2.0 * l;
  const double den = 8.0 * x * l;
  return {fm * fm / den, gm * gm / den};
}

AndricaVerdict andrica_check(double p, double q) {
  if (!(p > 2.0)) throw DomainError("andrica_check requires p > 2");
  if (!(q > p)) throw DomainError("andrica_check requires q > p");
  const double gap = q - p;
  if (!(gap > 1.0)) throw DomainError("andrica_check requires q - p > 1");
  AndricaVerdict v;
  v.p = p;
  v.q = q;
  v.lhs = sqrt_diff(q, p);
  v.rhs = std::sqrt(2.0 * std::log2(gap) / gap);
  v.c3_raw = gap * v.lhs * v.lhs / (2.0 * std::log2(gap));
  v.possible = v.lhs < v.rhs;
  return v;
}

namespace {

struct EquationSpec {
  std::function<double(double)> defect;
  std::function<double(double)> map;
  double seed;
  double domain_lo;
  double domain_hi;
};

EquationSpec equation_spec(Equation eq, double anchor, double n) {
  EquationSpec s;
  const double inf = std::numeric_limits<double>::infinity();
  switch (eq) {
    case Equation::TEq: {
      if (!(anchor > 1.0)) throw DomainError("t equation requires a > 1");
      const double a = anchor;
      s.defect = [a](double t) { return t - Maps::t_eq(a, t); };
      s.map = [a](double t) { return Maps::t_eq(a, t); };
      s.seed = 2.0 * a * std::log(2.0 * std::sqrt(a) + 1.0) / std::log(a);
      s.domain_lo = 0.0;
      s.domain_hi = inf;
      return s;
    }
    case Equation::GapWide: {
      if (!(anchor >= 1.0)) throw DomainError("wide equation requires a >= 1");
      const double a = anchor;
      s.defect = [a, n](double x) {
        const double d = sqrt_diff(a + x, a);
        return x * d * d / (2.0 * std::log2(x)) - n;
      };
      s.map = [a, n](double x) { return Maps::gap_wide(a, n, x); };
      const double edge = 2.0 * std::sqrt(a) + 1.0;
      s.seed = std::sqrt(2.0 * n * edge * std::log2(edge));
      s.domain_lo = 1.0;
      s.domain_hi = inf;
      return s;
    }
    case Equation::GapLog: {
      if (!(anchor >= 1.0)) throw DomainError("log equation requires a >= 1");
      const double a = anchor;
      s.defect = [a, n](double x) { return x - Maps::gap_log(a, n, x); };
      s.map = [a, n](double x) { return Maps::gap_log(a, n, x); };
      s.seed = 2.0 * n * std::log2(2.0 * std::sqrt(a) + 1.0);
      s.domain_lo = 0.0;
      s.domain_hi = inf;
      return s;
    }
    case Equation::GapWideBack: {
      if (!(anchor > 1.0)) throw DomainError("back equation requires b > 1");
      const double b = anchor;
      s.defect = [b, n](double x) {
        const double d = sqrt_diff(b, b - x);
        return x * d * d / (2.0 * std::log2(x)) - n;
      };
      s.map = [b, n](double x) { return Maps::gap_wide_back(b, n, x); };
      const double edge = 2.0 * std::sqrt(b) - 1.0;
      s.seed = std::sqrt(2.0 * n * edge * std::log2(edge));
      s.domain_lo = 1.0;
      s.domain_hi = b;
      return s;
    }
    case Equation::GapLogBack: {
      if (!(anchor > 1.0)) throw DomainError("back equation requires b > 1");
      const double b = anchor;
      s.defect = [b, n](double x) { return x - Maps::gap_log_back(b, n, x); };
      s.map = [b, n](double x) { return Maps::gap_log_back(b, n, x); };
      s.seed = 2.0 * n * std::log2(2.0 * std::sqrt(b) - 1.0);
      s.domain_lo = 0.0;
      s.domain_hi = b;
      return s;
    }
  }
  throw InternalError("unknown equation");
}

}  // namespace

double bisection_root(Equation eq, double anchor, std::uint64_t n) {
  const auto spec = equation_spec(eq, anchor, static_cast<double>(n));
  const double eps = 1e-9;
  auto clamp = [&](double v) {
    const double hi_edge = std::isinf(spec.domain_hi)
                               ? std::numeric_limits<double>::max()
                               : spec.domain_hi - eps;
    return std::min(std::max(v, spec.domain_lo + eps), hi_edge);
  };
  const double seed = clamp(spec.seed);

  // All five defects increase through the root of interest, so grow the
  // bracket away from the seed in the direction the sign demands.
  double lo = seed, hi = seed;
  double f_lo = spec.defect(lo), f_hi = f_lo;
  int guard = 0;
  while (f_lo > 0.0 || f_hi < 0.0) {
    if (++guard > 200)
      throw BracketError("no sign change within bracket growth budget");
    if (f_lo > 0.0) {
      const double next = clamp(lo / 1.6);
      if (next == lo) throw BracketError("defect positive down to domain edge");
      lo = next;
      f_lo = spec.defect(lo);
    }
    if (f_hi < 0.0) {
      double next = hi * 1.6;
      if (!std::isinf(spec.domain_hi)) next = std::min(next, spec.domain_hi - eps);
      if (next == hi) throw BracketError("defect negative up to domain edge");
      hi = next;
      f_hi = spec.defect(hi);
    }
  }

  for (int i = 0; i < 300 && hi - lo > 1e-9; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (spec.defect(mid) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::pair<double, IterationTrace> fixed_point_for_equation(
    Equation eq, double anchor, std::uint64_t n, const SolverOptions& opts) {
  const auto spec = equation_spec(eq, anchor, static_cast<double>(n));
  const bool wide = (eq == Equation::GapWide || eq == Equation::GapWideBack);
  auto trace = run_fixed_point(spec.map, spec.seed,
                               (wide ? 1000.0 : 1.0) * opts.tolerance, opts);
  return {trace.iterates.back(), std::move(trace)};
}

}  // namespace primegap
