#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "core/verifier.hpp"
#include "json.hpp"
#include "test_support.hpp"

using namespace primegap;
using nlohmann::json;

namespace {

const PrimeOracle& oracle() {
  static const PrimeOracle o(200000);
  return o;
}

}  // namespace

TEST_CASE("table reproduction at desk scale") {
  const std::vector<double> anchors = {10, 20, std::sqrt(1000.0), 100, 213.48};
  const auto rows = verify_table1(oracle(), anchors);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) {
    CHECK(r.has_reference);
    CHECK(r.matches);
  }
  CHECK(rows[0].actual == 5);
  CHECK(rows[0].half_pi_display == 4);
  CHECK(rows[0].window_lo == doctest::Approx(100.0));
  CHECK(rows[0].window_hi == doctest::Approx(121.0));
  CHECK(rows[2].actual == 11);  // the sqrt(1000) row
  CHECK(rows[2].half_pi_display == 9);
  CHECK(rows[4].actual == 37);
  CHECK(rows[4].half_pi_display == 41);
}

TEST_CASE("anchors without built-in reference columns") {
  const auto rows = verify_table1(oracle(), {12.5});
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].has_reference);
  CHECK(rows[0].matches);  // vacuously
  CHECK(rows[0].actual ==
        static_cast<std::int64_t>(oracle().pi_open(156.25, 182.25)));
}

TEST_CASE("a range error identifies the offending row") {
  PrimeOracle small(10000);
  try {
    verify_table1(small, {213.48});
    FAIL("expected a range error");
  } catch (const RangeError& e) {
    CHECK(std::string(e.what()).find("213.48") != std::string::npos);
  }
}

TEST_CASE("anchor lists") {
  CHECK(table1_default_anchors().size() == 11);
  CHECK(table1_extended_anchors().size() == 18);
  CHECK(table1_default_anchors()[2] == doctest::Approx(std::sqrt(1000.0)));
}

TEST_CASE("c3 soundness sweep over integer windows") {
  WindowSpec spec;
  spec.lo_min = 10;
  spec.lo_max = 500;
  spec.lo_step = 1;
  spec.width_min = 2;
  spec.width_max = 20;
  spec.width_step = 1;
  const auto report = soundness_sweep(oracle(), SweepVariant::C3, spec);
  CHECK(report.variant == SweepVariant::C3);
  CHECK(report.windows_checked == 491 * 19);
  CHECK(report.violations.empty());
  CHECK(report.skipped_not_applicable > 0);  // wide windows at small lo
  CHECK(report.skipped_not_applicable < report.windows_checked);
}

TEST_CASE("c2 soundness sweep with the default width policy") {
  WindowSpec spec;
  spec.lo_min = 0;
  spec.lo_max = 2000;
  spec.lo_step = 1;
  const auto report = soundness_sweep(oracle(), SweepVariant::C2, spec);
  CHECK(report.windows_checked == 2001);
  CHECK(report.violations.empty());
  CHECK(report.skipped_not_applicable >= 1);  // lo = 0 has width 0
}

TEST_CASE("c1 soundness sweep") {
  WindowSpec spec;
  spec.lo_min = 0.5;
  spec.lo_max = 300;
  spec.lo_step = 0.5;
  const auto report = soundness_sweep(oracle(), SweepVariant::C1, spec);
  CHECK(report.windows_checked == 600);
  CHECK(report.violations.empty());
  CHECK(report.skipped_not_applicable == 0);
}

TEST_CASE("lower-pi soundness sweep") {
  WindowSpec spec;
  spec.lo_min = 4;
  spec.lo_max = 100000;
  spec.lo_step = 1;
  const auto report = soundness_sweep(oracle(), SweepVariant::LowerPi, spec);
  CHECK(report.windows_checked == 99997);
  CHECK(report.violations.empty());
}

TEST_CASE("auto soundness sweep covers both rules and tracks skips") {
  WindowSpec spec;
  spec.lo_min = 10;
  spec.lo_max = 2000;
  spec.lo_step = 7;
  spec.width_min = 2;
  spec.width_max = 80;
  spec.width_step = 3;
  const auto report = soundness_sweep(oracle(), SweepVariant::Auto, spec);
  CHECK(report.violations.empty());
  CHECK(report.windows_checked > 0);
}

TEST_CASE("sampled sweeps are deterministic per seed") {
  WindowSpec spec;
  spec.lo_min = 10;
  spec.lo_max = 100000;
  spec.width_min = 2;
  spec.width_max = 50;
  spec.samples = 5000;
  spec.seed = 42;
  const auto a = soundness_sweep(oracle(), SweepVariant::C3, spec);
  const auto b = soundness_sweep(oracle(), SweepVariant::C3, spec);
  CHECK(a.windows_checked == 5000);
  CHECK(report_to_json(a, false) == report_to_json(b, false));
  CHECK(report_to_csv(a) == report_to_csv(b));
  CHECK(a.violations.empty());
}

TEST_CASE("gap soundness sweep, both directions") {
  PrimeOracle o(20000);
  const auto fwd = gap_soundness_sweep(o, SweepVariant::GapFwd, 100, 5000, 97,
                                       1, 10);
  CHECK(fwd.variant == SweepVariant::GapFwd);
  CHECK(fwd.windows_checked == 51 * 10);
  CHECK(fwd.violations.empty());
  CHECK(fwd.solver_failures == 0);

  const auto bwd = gap_soundness_sweep(o, SweepVariant::GapBwd, 100, 5000, 97,
                                       1, 10);
  CHECK(bwd.variant == SweepVariant::GapBwd);
  CHECK(bwd.violations.empty());

  // anchors with too few primes below are skipped, not failed
  const auto skim = gap_soundness_sweep(o, SweepVariant::GapBwd, 5, 5, 1, 3, 3);
  CHECK(skim.windows_checked == 1);
  CHECK(skim.skipped_not_applicable == 1);

  CHECK_THROWS_AS(
      gap_soundness_sweep(o, SweepVariant::C1, 100, 200, 1, 1, 2),
      DomainError);
}

TEST_CASE("consecutive-pair sweep finds no impossible true pairs") {
  PrimeOracle o(10000);
  const auto report = andrica_sweep(o, 10000);
  CHECK(report.variant == SweepVariant::Andrica);
  CHECK(report.windows_checked == 1227);  // pi(1e4) - 2 pairs with p > 2
  CHECK(report.violations.empty());
}

TEST_CASE("s limit check") {
  const auto r = s_limit_check(oracle(), 2.5, 0.08);
  CHECK(r.a == doctest::Approx(44.3859436212).epsilon(1e-10));
  CHECK(r.count_in == 15);
  CHECK(r.count_pi == 14);
  CHECK(r.relative_gap == doctest::Approx(1.0 / 14.0));
  CHECK(r.pass);
  CHECK_FALSE(s_limit_check(oracle(), 2.5, 0.05).pass);
  CHECK_THROWS_AS(s_limit_check(oracle(), 2.0, 0.05), DomainError);
  // s close to 2 explodes the anchor beyond the sieve
  CHECK_THROWS_AS(s_limit_check(oracle(), 2.05, 0.05), RangeError);
}

TEST_CASE("s limit check at 2.1 under an extended sieve limit") {
  // the anchor lands near 6e7 and the window end near 1.27e8
  PrimeOracle big(126614451ull);
  const auto r = s_limit_check(big, 2.1, 0.05);
  CHECK(r.a == doctest::Approx(60292595.58).epsilon(1e-8));
  CHECK(r.count_pi == 3578407);
  CHECK(r.count_in == 3618393);
  CHECK(r.pass);
  CHECK(r.relative_gap == doctest::Approx(0.01117424597).epsilon(1e-6));
}

TEST_CASE("the solved gap covers the worked anchor example") {
  PrimeOracle o(20000);
  const auto rep = gap_soundness_sweep(o, SweepVariant::GapFwd, 1024, 1024, 1,
                                       2, 2);
  CHECK(rep.windows_checked == 1);
  CHECK(rep.violations.empty());
  // second prime after 1024 is 1033, distance 9, versus the bound 46
  CHECK(o.nth_prime_after(1024, 2) == 1033);
  CHECK(1033 - 1024 <= 46);
}

TEST_CASE("crosscheck grid spans every equation and stays tight") {
  const auto grid = default_crosscheck_grid();
  CHECK(grid.size() >= 100);
  std::set<Equation> kinds;
  for (const auto& pt : grid) kinds.insert(pt.eq);
  CHECK(kinds.size() == 5);

  const auto report = fixedpoint_vs_bisection(grid);
  CHECK(report.variant == SweepVariant::Crosscheck);
  CHECK(report.windows_checked == grid.size());
  CHECK(report.violations.empty());
  CHECK(report.solver_failures == 0);
  CHECK(report.skipped_not_applicable == 0);
}

TEST_CASE("empirical strict lower bound holds to 1e5") {
  const auto r = rosser_schoenfeld_check(oracle(), 17, 100000);
  CHECK(r.checked == 100000 - 16);
  CHECK(r.violations == 0);
  CHECK(r.first_violation == 0);
}

TEST_CASE("report serialization carries the full schema") {
  SweepReport report;
  report.variant = SweepVariant::C3;
  report.windows_checked = 7;
  report.skipped_not_applicable = 2;
  report.elapsed_seconds = 1.25;
  Violation v;
  v.lo = 100;
  v.hi = 121;
  v.bound_or_claim = 7;
  v.exact = 5;
  report.violations.push_back(v);

  const auto parsed = json::parse(report_to_json(report, true));
  CHECK(parsed["variant"] == "C3");
  CHECK(parsed["windows_checked"] == 7);
  CHECK(parsed["skipped_not_applicable"] == 2);
  CHECK(parsed["elapsed_seconds"] == 1.25);
  REQUIRE(parsed["violations"].size() == 1);
  CHECK(parsed["violations"][0]["lo"] == 100.0);
  CHECK(parsed["violations"][0]["hi"] == 121.0);
  CHECK(parsed["violations"][0]["bound_or_claim"] == 7.0);
  CHECK(parsed["violations"][0]["exact"] == 5);

  // the stored violation re-checks standalone against the oracle
  CHECK(static_cast<std::int64_t>(oracle().pi_open(
            parsed["violations"][0]["lo"].get<double>(),
            parsed["violations"][0]["hi"].get<double>())) ==
        parsed["violations"][0]["exact"].get<std::int64_t>());

  const auto without_timing = json::parse(report_to_json(report, false));
  CHECK_FALSE(without_timing.contains("elapsed_seconds"));

  const auto csv = report_to_csv(report);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "variant,tag,lo,hi,n,bound_or_claim,exact");
  CHECK(csv.find("C3,,100,121,0,7,5") != std::string::npos);
}

TEST_CASE("csv always starts with its header even when clean") {
  SweepReport report;
  report.variant = SweepVariant::Andrica;
  const auto csv = report_to_csv(report);
  CHECK(csv == "variant,tag,lo,hi,n,bound_or_claim,exact\n");
}

TEST_CASE("table serialization") {
  const auto rows = verify_table1(oracle(), {10, 12.5});
  const auto parsed = json::parse(table1_to_json(rows));
  REQUIRE(parsed["rows"].size() == 2);
  CHECK(parsed["rows"][0]["a"] == 10.0);
  CHECK(parsed["rows"][0]["actual"] == 5);
  CHECK(parsed["rows"][0]["ref_actual"] == 5);
  CHECK(parsed["rows"][0]["matches"] == true);
  CHECK(parsed["rows"][1]["ref_actual"].is_null());

  const auto csv = table1_to_csv(rows);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "a,window_lo,window_hi,actual,half_pi_display,pnt_form,ref_actual,"
        "ref_half,matches");
  CHECK(csv.find("10,100,121,5,4,") != std::string::npos);
}

TEST_CASE("round12 pins machine formats to 12 significant digits") {
  CHECK(round12(3.0780488351307891) == 3.07804883513);
  CHECK(format12(round12(3.0780488351307891)) == "3.07804883513");
  CHECK(round12(0.0) == 0.0);
}
