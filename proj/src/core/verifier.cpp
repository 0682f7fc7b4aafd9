#include "core/verifier.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "json.hpp"

namespace primegap {

using nlohmann::json;

const char* sweep_variant_name(SweepVariant v) {
  switch (v) {
    case SweepVariant::C1: return "C1";
    case SweepVariant::C2: return "C2";
    case SweepVariant::C3: return "C3";
    case SweepVariant::Auto: return "AUTO";
    case SweepVariant::GapFwd: return "GAP_FWD";
    case SweepVariant::GapBwd: return "GAP_BWD";
    case SweepVariant::Andrica: return "ANDRICA";
    case SweepVariant::LowerPi: return "LOWER_PI";
    case SweepVariant::Crosscheck: return "CROSSCHECK";
  }
  return "?";
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string format12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct ReferenceRow {
  double a;
  std::int64_t actual;
  std::int64_t half;
};

const std::vector<ReferenceRow>& reference_rows() {
  static const std::vector<ReferenceRow> rows = {
      {10.0, 5, 4},
      {20.0, 7, 6},
      {std::sqrt(1000.0), 11, 9},
      {100.0, 23, 23},
      {213.48, 37, 41},
      {500.0, 71, 84},
      {1000.0, 152, 151},
      {2000.0, 267, 275},
      {5000.0, 613, 614},
      {10000.0, 1081, 1131},
      {20000.0, 2020, 2101},
      {50000.0, 4605, 4796},
      {100000.0, 8668, 8992},
      {200000.0, 16473, 16930},
      {300000.0, 23965, 24549},
      {500000.0, 38250, 39249},
      {800000.0, 59091, 60563},
      {1000000.0, 72413, 74466},
  };
  return rows;
}

const ReferenceRow* find_reference(double a) {
  for (const auto& r : reference_rows())
    if (std::fabs(r.a - a) <= 1e-9 * std::max(1.0, std::fabs(a))) return &r;
  return nullptr;
}

// deterministic uniform draw in [lo, hi)
double uniform_draw(std::uint64_t& state, double lo, double hi) {
  // splitmix64 step
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  const double unit = static_cast<double>(z >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

}  // namespace

std::vector<double> table1_default_anchors() {
  std::vector<double> a;
  for (std::size_t i = 0; i < 11; ++i) a.push_back(reference_rows()[i].a);
  return a;
}

std::vector<double> table1_extended_anchors() {
  std::vector<double> a;
  for (const auto& r : reference_rows()) a.push_back(r.a);
  return a;
}

std::vector<Table1Row> verify_table1(const PrimeOracle& oracle,
                                     const std::vector<double>& a_values) {
  std::vector<Table1Row> rows;
  rows.reserve(a_values.size());
  for (double a : a_values) {
    Table1Row row;
    row.a = a;
    row.window_lo = a * a;
    row.window_hi = (a + 1.0) * (a + 1.0);
    try {
      row.actual =
          static_cast<std::int64_t>(oracle.pi_open(row.window_lo, row.window_hi));
      const auto est = legendre_estimate(oracle, a);
      row.half_pi_display = est.half_pi_display;
      row.pnt_form = est.pnt_form;
    } catch (const RangeError&) {
      throw RangeError("table row a=" + format12(a) + " needs a sieve past " +
                       format12(row.window_hi));
    }
    if (const ReferenceRow* ref = find_reference(a)) {
      row.has_reference = true;
      row.ref_actual = ref->actual;
      row.ref_half = ref->half;
      row.matches =
          row.actual == ref->actual && row.half_pi_display == ref->half;
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

struct DefaultWidths {
  double min, max, step;
};

DefaultWidths default_widths(SweepVariant variant) {
  switch (variant) {
    case SweepVariant::C3: return {2.0, 50.0, 1.0};
    case SweepVariant::Auto: return {2.0, 80.0, 1.0};
    default: return {0.0, 0.0, 1.0};  // C2 width policy is per-window
  }
}

}  // namespace

SweepReport soundness_sweep(const PrimeOracle& oracle, SweepVariant variant,
                            const WindowSpec& spec) {
  if (variant != SweepVariant::C1 && variant != SweepVariant::C2 &&
      variant != SweepVariant::C3 && variant != SweepVariant::Auto &&
      variant != SweepVariant::LowerPi)
    throw DomainError("soundness_sweep handles C1/C2/C3/AUTO/LOWER_PI");
  Stopwatch watch;
  SweepReport report;
  report.variant = variant;

  const bool windowed =
      variant == SweepVariant::C2 || variant == SweepVariant::C3 ||
      variant == SweepVariant::Auto;
  const bool c2_auto_width = windowed && spec.width_max <= 0.0 &&
                             variant == SweepVariant::C2;
  DefaultWidths dw = default_widths(variant);
  const double wmin = spec.width_max > 0.0 ? spec.width_min : dw.min;
  const double wmax = spec.width_max > 0.0 ? spec.width_max : dw.max;
  const double wstep = spec.width_max > 0.0 ? spec.width_step : dw.step;

  auto evaluate = [&](double lo, double width) {
    ++report.windows_checked;
    BoundResult bound;
    std::int64_t exact = 0;
    if (variant == SweepVariant::C1) {
      bound = legendre_lower_bound(lo);  // lo is the anchor a here
      if (bound.applicable)
        exact = static_cast<std::int64_t>(
            oracle.pi_open(bound.window_lo, bound.window_hi));
    } else if (variant == SweepVariant::LowerPi) {
      bound = lower_bound_pi(lo);
      if (bound.applicable) exact = static_cast<std::int64_t>(oracle.pi(lo));
    } else {
      const double hi = lo + width;
      if (!(width > 0.0) || !(hi > lo)) {
        ++report.skipped_not_applicable;
        return;
      }
      bound = (variant == SweepVariant::C2)   ? c2_lower_bound(lo, hi)
              : (variant == SweepVariant::C3) ? c3_lower_bound(lo, hi)
                                              : lower_bound_auto(lo, hi);
      if (bound.applicable)
        exact = static_cast<std::int64_t>(oracle.pi_open(lo, hi));
    }
    if (!bound.applicable) {
      ++report.skipped_not_applicable;
      return;
    }
    if (bound.floor_value > exact) {
      Violation v;
      v.lo = bound.window_lo;
      v.hi = bound.window_hi;
      v.bound_or_claim = static_cast<double>(bound.floor_value);
      v.exact = exact;
      report.violations.push_back(v);
    }
  };

  if (spec.samples > 0) {
    std::uint64_t state = spec.seed;
    for (std::uint64_t i = 0; i < spec.samples; ++i) {
      const double lo = uniform_draw(state, spec.lo_min, spec.lo_max);
      double width = 0.0;
      if (windowed)
        width = c2_auto_width ? 4.0 * std::ceil(std::sqrt(lo))
                              : uniform_draw(state, wmin, wmax);
      evaluate(lo, width);
    }
  } else {
    if (!(spec.lo_step > 0.0)) throw DomainError("lo_step must be positive");
    const auto lo_count = static_cast<std::uint64_t>(
        std::floor((spec.lo_max - spec.lo_min) / spec.lo_step)) + 1;
    for (std::uint64_t i = 0; i < lo_count; ++i) {
      const double lo = spec.lo_min + static_cast<double>(i) * spec.lo_step;
      if (!windowed) {
        evaluate(lo, 0.0);
      } else if (c2_auto_width) {
        evaluate(lo, 4.0 * std::ceil(std::sqrt(lo)));
      } else {
        if (!(wstep > 0.0)) throw DomainError("width_step must be positive");
        const auto w_count = static_cast<std::uint64_t>(
            std::floor((wmax - wmin) / wstep)) + 1;
        for (std::uint64_t k = 0; k < w_count; ++k)
          evaluate(lo, wmin + static_cast<double>(k) * wstep);
      }
    }
  }

  report.elapsed_seconds = watch.seconds();
  return report;
}

SweepReport gap_soundness_sweep(const PrimeOracle& oracle, SweepVariant direction,
                                double a_min, double a_max, double a_step,
                                std::uint64_t n_min, std::uint64_t n_max,
                                const SolverOptions& opts) {
  if (direction != SweepVariant::GapFwd && direction != SweepVariant::GapBwd)
    throw DomainError("gap sweep direction must be GAP_FWD or GAP_BWD");
  if (!(a_step > 0.0)) throw DomainError("a_step must be positive");
  const bool forward = direction == SweepVariant::GapFwd;
  Stopwatch watch;
  SweepReport report;
  report.variant = direction;

  const auto a_count = static_cast<std::uint64_t>(
      std::floor((a_max - a_min) / a_step)) + 1;
  for (std::uint64_t i = 0; i < a_count; ++i) {
    const double anchor = a_min + static_cast<double>(i) * a_step;
    for (std::uint64_t n = n_min; n <= n_max; ++n) {
      ++report.windows_checked;
      GapSolution sol;
      try {
        sol = forward ? forward_gap(anchor, n, opts)
                      : backward_gap(anchor, n, opts);
      } catch (const DomainError&) {
        ++report.skipped_not_applicable;
        continue;
      }
      if (!sol.trace.converged) {
        ++report.solver_failures;
        continue;
      }
      double dist = 0.0;
      double prime = 0.0;
      if (forward) {
        const std::uint64_t p = oracle.nth_prime_after(anchor, n);
        prime = static_cast<double>(p);
        dist = prime - anchor;
      } else {
        std::uint64_t q = 0;
        try {
          q = oracle.nth_prime_before(anchor, n);
        } catch (const DomainError&) {
          ++report.skipped_not_applicable;  // fewer than n primes below
          continue;
        }
        prime = static_cast<double>(q);
        dist = anchor - prime;
      }
      if (dist > static_cast<double>(sol.x_int)) {
        Violation v;
        v.tag = forward ? "fwd" : "bwd";
        v.lo = forward ? anchor : prime;
        v.hi = forward ? prime : anchor;
        v.n = n;
        v.bound_or_claim = static_cast<double>(sol.x_int);
        v.exact = static_cast<std::int64_t>(std::ceil(dist));
        report.violations.push_back(v);
      }
    }
  }

  report.elapsed_seconds = watch.seconds();
  return report;
}

SweepReport andrica_sweep(const PrimeOracle& oracle, std::uint64_t limit) {
  Stopwatch watch;
  SweepReport report;
  report.variant = SweepVariant::Andrica;
  auto pairs = oracle.consecutive_pairs(limit);
  while (auto pq = pairs.next()) {
    const auto [p, q] = *pq;
    if (p <= 2) continue;  // criterion holds for p > 2 only
    ++report.windows_checked;
    const auto verdict =
        andrica_check(static_cast<double>(p), static_cast<double>(q));
    if (!verdict.possible) {
      Violation v;
      v.lo = static_cast<double>(p);
      v.hi = static_cast<double>(q);
      v.n = 1;
      v.bound_or_claim = verdict.c3_raw;
      v.exact = static_cast<std::int64_t>(
          oracle.pi_open(static_cast<double>(p), static_cast<double>(q)));
      report.violations.push_back(v);
    }
  }
  report.elapsed_seconds = watch.seconds();
  return report;
}

SLimitResult s_limit_check(const PrimeOracle& oracle, double s, double tolerance) {
  if (!(s > 2.0)) throw DomainError("s_limit_check requires s > 2");
  SLimitResult r;
  r.s = s;
  r.a = std::pow(std::sqrt(s) + 1.0, 2.0 / (s - 2.0));
  const double hi = r.a * s;
  if (hi > static_cast<double>(oracle.limit()))
    throw RangeError("s_limit_check window beyond sieve limit (a*s = " +
                     format12(hi) + ")");
  r.count_in = oracle.pi_open(r.a, hi);
  r.count_pi = oracle.pi(r.a);
  r.relative_gap =
      r.count_pi == 0
          ? std::numeric_limits<double>::infinity()
          : std::fabs(static_cast<double>(r.count_in) -
                      static_cast<double>(r.count_pi)) /
                static_cast<double>(r.count_pi);
  r.pass = r.relative_gap <= tolerance;
  return r;
}

namespace {

const char* equation_name(Equation eq) {
  switch (eq) {
    case Equation::TEq: return "T_EQ";
    case Equation::GapWide: return "GAP_WIDE";
    case Equation::GapLog: return "GAP_LOG";
    case Equation::GapWideBack: return "GAP_WIDE_BACK";
    case Equation::GapLogBack: return "GAP_LOG_BACK";
  }
  return "?";
}

double forward_dispatch_ratio(double a) {
  const double edge = 2.0 * std::sqrt(a) + 1.0;
  return edge / (2.0 * std::log2(edge));
}

double backward_dispatch_ratio(double b) {
  const double edge = 2.0 * std::sqrt(b) - 1.0;
  return edge / (2.0 * std::log2(edge));
}

}  // namespace

SweepReport fixedpoint_vs_bisection(const std::vector<CrosscheckPoint>& grid,
                                    const SolverOptions& opts) {
  Stopwatch watch;
  SweepReport report;
  report.variant = SweepVariant::Crosscheck;
  for (const auto& pt : grid) {
    ++report.windows_checked;
    double fixed = 0.0;
    try {
      auto [value, trace] = fixed_point_for_equation(pt.eq, pt.anchor, pt.n, opts);
      if (!trace.converged) {
        ++report.solver_failures;
        continue;
      }
      fixed = value;
    } catch (const DomainError&) {
      ++report.skipped_not_applicable;
      continue;
    }
    double root = 0.0;
    try {
      root = bisection_root(pt.eq, pt.anchor, pt.n);
    } catch (const BracketError&) {
      ++report.solver_failures;
      continue;
    }
    const double diff =
        std::fabs(fixed - root) / std::max(1.0, std::fabs(root));
    if (diff > 1e-6) {
      Violation v;
      v.tag = equation_name(pt.eq);
      v.lo = pt.anchor;
      v.hi = fixed;
      v.n = pt.n;
      v.bound_or_claim = root;
      v.exact = 0;
      report.violations.push_back(v);
    }
  }
  report.elapsed_seconds = watch.seconds();
  return report;
}

std::vector<CrosscheckPoint> default_crosscheck_grid() {
  std::vector<CrosscheckPoint> grid;
  const std::vector<double> t_anchors = {
      2.5,    3.0,     5.0,     10.0,       16.0,    25.0,    50.0,
      100.0,  213.48,  500.0,   1000.0,     2000.0,  5000.0,  8930.0,
      10000.0, 16256.25, 50000.0, 100000.0, 1000000.0, 10000000.0, 100000000.0};
  for (double a : t_anchors) grid.push_back({Equation::TEq, a, 0});

  const std::vector<double> fwd_anchors = {100.0,     1024.0,   5000.0,
                                           10000.0,   16256.25, 100000.0,
                                           1000000.0, 10000000.0};
  const std::vector<std::uint64_t> wide_n = {1, 2, 3, 5, 8, 13};
  const std::vector<std::uint64_t> log_n = {20, 36, 60, 100, 200};
  for (double a : fwd_anchors) {
    const double r = forward_dispatch_ratio(a);
    for (std::uint64_t n : wide_n)
      if (r > static_cast<double>(n) + 0.5)
        grid.push_back({Equation::GapWide, a, n});
    for (std::uint64_t n : log_n)
      if (r < static_cast<double>(n) - 0.5)
        grid.push_back({Equation::GapLog, a, n});
  }

  const std::vector<double> bwd_anchors = {1070.0,   10552.0,   16512.25,
                                           100000.0, 1000000.0, 10000000.0};
  for (double b : bwd_anchors) {
    const double r = backward_dispatch_ratio(b);
    for (std::uint64_t n : wide_n)
      if (r > static_cast<double>(n) + 0.5)
        grid.push_back({Equation::GapWideBack, b, n});
    for (std::uint64_t n : log_n) {
      const double seed =
          2.0 * static_cast<double>(n) * std::log2(2.0 * std::sqrt(b) - 1.0);
      if (r < static_cast<double>(n) - 0.5 && seed < 0.8 * b)
        grid.push_back({Equation::GapLogBack, b, n});
    }
  }
  return grid;
}

RosserSchoenfeldResult rosser_schoenfeld_check(const PrimeOracle& oracle,
                                               std::uint64_t lo,
                                               std::uint64_t hi) {
  RosserSchoenfeldResult r;
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 17); n <= hi; ++n) {
    ++r.checked;
    const double nd = static_cast<double>(n);
    if (!(static_cast<double>(oracle.pi(nd)) > nd / std::log(nd))) {
      ++r.violations;
      if (r.first_violation == 0) r.first_violation = n;
    }
  }
  return r;
}

namespace {

json violation_to_json(const Violation& v) {
  json j;
  if (!v.tag.empty()) j["tag"] = v.tag;
  j["lo"] = round12(v.lo);
  j["hi"] = round12(v.hi);
  if (v.n != 0) j["n"] = v.n;
  j["bound_or_claim"] = round12(v.bound_or_claim);
  j["exact"] = v.exact;
  return j;
}

}  // namespace

std::string report_to_json(const SweepReport& report, bool include_timing) {
  json j;
  j["variant"] = sweep_variant_name(report.variant);
  j["windows_checked"] = report.windows_checked;
  j["skipped_not_applicable"] = report.skipped_not_applicable;
  j["solver_failures"] = report.solver_failures;
  j["violations"] = json::array();
  for (const auto& v : report.violations)
    j["violations"].push_back(violation_to_json(v));
  if (include_timing) j["elapsed_seconds"] = round12(report.elapsed_seconds);
  return j.dump(2);
}

std::string report_to_csv(const SweepReport& report) {
  std::string out = "variant,tag,lo,hi,n,bound_or_claim,exact\n";
  for (const auto& v : report.violations) {
    out += sweep_variant_name(report.variant);
    out += ',';
    out += v.tag;
    out += ',';
    out += format12(v.lo);
    out += ',';
    out += format12(v.hi);
    out += ',';
    out += std::to_string(v.n);
    out += ',';
    out += format12(v.bound_or_claim);
    out += ',';
    out += std::to_string(v.exact);
    out += '\n';
  }
  return out;
}

std::string table1_to_json(const std::vector<Table1Row>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["a"] = round12(r.a);
    j["window_lo"] = round12(r.window_lo);
    j["window_hi"] = round12(r.window_hi);
    j["actual"] = r.actual;
    j["half_pi_display"] = r.half_pi_display;
    j["pnt_form"] = round12(r.pnt_form);
    if (r.has_reference) {
      j["ref_actual"] = r.ref_actual;
      j["ref_half"] = r.ref_half;
    } else {
      j["ref_actual"] = nullptr;
      j["ref_half"] = nullptr;
    }
    j["matches"] = r.matches;
    arr.push_back(j);
  }
  json top;
  top["rows"] = arr;
  return top.dump(2);
}

std::string table1_to_csv(const std::vector<Table1Row>& rows) {
  std::string out =
      "a,window_lo,window_hi,actual,half_pi_display,pnt_form,ref_actual,"
      "ref_half,matches\n";
  for (const auto& r : rows) {
    out += format12(r.a);
    out += ',';
    out += format12(r.window_lo);
    out += ',';
    out += format12(r.window_hi);
    out += ',';
    out += std::to_string(r.actual);
    out += ',';
    out += std::to_string(r.half_pi_display);
    out += ',';
    out += format12(r.pnt_form);
    out += ',';
    if (r.has_reference) {
      out += std::to_string(r.ref_actual);
      out += ',';
      out += std::to_string(r.ref_half);
    } else {
      out += ',';
    }
    out += ',';
    out += r.matches ? "true" : "false";
    out += '\n';
  }
  return out;
}

}  // namespace primegap
