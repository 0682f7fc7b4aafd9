// primegap CLI: oracle queries, bound/estimate evaluation, gap solvers and
// the verification sweeps, with text/json/csv output. All computation goes
// through the C API in primegap.h.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "primegap.h"

using nlohmann::json;

namespace {

// exit codes: 0 ok, 1 domain/range error, 2 usage, 3 violations found
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolations = 3;

struct CliError {
  int code;
  std::string message;
};

void check(pg_status st) {
  if (st == PG_OK || st == PG_NOT_APPLICABLE) return;
  throw CliError{kExitError, pg_last_error()};
}

struct Config {
  std::uint64_t sieve_limit = 100000000ull;
  bool sieve_limit_set = false;  // explicit flag/env wins over auto-sizing
  std::uint64_t segment_size = 0;
  std::uint64_t memory_budget = 0;
  double tolerance = 1e-9;
  int max_iterations = 500;
  std::string format = "text";
  std::uint64_t seed = 0;

  pg_solver_options solver() const { return {tolerance, max_iterations}; }
};

struct OracleDeleter {
  void operator()(pg_oracle* o) const { pg_oracle_free(o); }
};
using OraclePtr = std::unique_ptr<pg_oracle, OracleDeleter>;

// Sieve to the configured limit, grown to what the command needs unless the
// user pinned the limit explicitly (out-of-range queries then fail hard).
OraclePtr build_oracle(const Config& cfg, std::uint64_t required) {
  std::uint64_t limit = cfg.sieve_limit;
  if (!cfg.sieve_limit_set && required > limit) limit = required;
  pg_oracle* o = nullptr;
  check(pg_oracle_create(limit, cfg.segment_size, cfg.memory_budget, &o));
  return OraclePtr(o);
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string csv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  if (v.is_number_float()) return fmt12(v.get<double>());
  return v.dump();
}

// Scalar-record output: one json object -> text lines / json / one csv row.
// Arrays and nested objects stay in json/text only.
void emit_record(const Config& cfg, const json& j,
                 const std::vector<std::pair<std::string, std::string>>& text) {
  if (cfg.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    std::string header, row;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_array() || it.value().is_object()) continue;
      if (!first) {
        header += ',';
        row += ',';
      }
      first = false;
      header += it.key();
      row += csv_cell(it.value());
    }
    std::cout << header << "\n" << row << "\n";
  } else {
    for (const auto& [k, v] : text) {
      if (k.empty())
        std::cout << v << "\n";
      else
        std::cout << k << ": " << v << "\n";
    }
  }
}

const char* case_name(pg_gap_case c) {
  switch (c) {
    case PG_CASE_CLOSED_FORM: return "CLOSED_FORM";
    case PG_CASE_ITER_WIDE: return "ITER_WIDE";
    case PG_CASE_ITER_LOG: return "ITER_LOG";
  }
  return "?";
}

const char* rule_name(pg_rule r) {
  switch (r) {
    case PG_RULE_LOWER_PI: return "LOWER_PI";
    case PG_RULE_LEGENDRE_C1: return "LEGENDRE_C1";
    case PG_RULE_RANGE_C2: return "RANGE_C2";
    case PG_RULE_RANGE_C3: return "RANGE_C3";
  }
  return "?";
}

json bound_json(const char* command, const pg_bound& b) {
  json j;
  j["command"] = command;
  j["rule"] = rule_name(b.rule);
  j["applicable"] = b.applicable != 0;
  j["window_lo"] = round12(b.window_lo);
  j["window_hi"] = round12(b.window_hi);
  if (b.applicable) {
    j["raw"] = round12(b.raw);
    j["lower_bound"] = b.floor_value;
  } else {
    j["raw"] = nullptr;
    j["lower_bound"] = nullptr;
  }
  return j;
}

int emit_bound(const Config& cfg, const char* command, const pg_bound& b) {
  std::vector<std::pair<std::string, std::string>> text;
  text.push_back({"rule", rule_name(b.rule)});
  text.push_back(
      {"window", "(" + fmt6(b.window_lo) + ", " + fmt6(b.window_hi) + ")"});
  if (b.applicable) {
    text.push_back({"raw", fmt6(b.raw)});
    text.push_back({"lower bound", std::to_string(b.floor_value)});
  } else {
    text.push_back({"", "not applicable: no rule covers this window"});
  }
  emit_record(cfg, bound_json(command, b), text);
  return kExitOk;
}

struct SolutionDeleter {
  void operator()(pg_solution* s) const { pg_solution_free(s); }
};
using SolutionPtr = std::unique_ptr<pg_solution, SolutionDeleter>;

json solution_json(const char* command, const pg_solution* s) {
  json j;
  j["command"] = command;
  j["anchor"] = round12(pg_solution_anchor(s));
  if (pg_solution_get_kind(s) != PG_SOLVE_T) {
    j["n"] = pg_solution_n(s);
    j["case"] = case_name(pg_solution_get_case(s));
    j["x_raw"] = round12(pg_solution_value(s));
    j["x"] = pg_solution_value_ceil(s);
  } else {
    j["t"] = round12(pg_solution_value(s));
    j["s"] = round12(pg_solution_s(s));
  }
  j["converged"] = pg_solution_converged(s) != 0;
  j["residual"] = round12(pg_solution_residual(s));
  j["steps"] = pg_solution_steps(s);
  json iters = json::array();
  for (size_t i = 0; i < pg_solution_iterate_count(s); ++i) {
    double v = 0;
    pg_solution_iterate(s, i, &v);
    iters.push_back(round12(v));
  }
  j["iterates"] = iters;
  return j;
}

std::string trace_text(const pg_solution* s) {
  std::string out;
  for (size_t i = 0; i < pg_solution_iterate_count(s); ++i) {
    double v = 0;
    pg_solution_iterate(s, i, &v);
    if (i) out += ", ";
    out += fmt6(v);
  }
  return out;
}

int emit_solution(const Config& cfg, const char* command, const pg_solution* s) {
  std::vector<std::pair<std::string, std::string>> text;
  if (pg_solution_get_kind(s) != PG_SOLVE_T) {
    text.push_back({"case", case_name(pg_solution_get_case(s))});
    text.push_back({"x", std::to_string(pg_solution_value_ceil(s)) +
                             "   (raw " + fmt6(pg_solution_value(s)) + ")"});
  } else {
    text.push_back({"t", fmt6(pg_solution_value(s))});
    text.push_back({"s", fmt6(pg_solution_s(s))});
  }
  text.push_back({"converged", pg_solution_converged(s) ? "yes" : "NO"});
  text.push_back({"steps", std::to_string(pg_solution_steps(s))});
  text.push_back({"residual", fmt6(pg_solution_residual(s))});
  text.push_back({"trace", trace_text(s)});
  emit_record(cfg, solution_json(command, s), text);
  return pg_solution_converged(s) ? kExitOk : kExitError;
}

struct ReportDeleter {
  void operator()(pg_report* r) const { pg_report_free(r); }
};
using ReportPtr = std::unique_ptr<pg_report, ReportDeleter>;

const char* variant_name(pg_sweep_variant v) {
  switch (v) {
    case PG_SWEEP_C1: return "C1";
    case PG_SWEEP_C2: return "C2";
    case PG_SWEEP_C3: return "C3";
    case PG_SWEEP_AUTO: return "AUTO";
    case PG_SWEEP_GAP_FWD: return "GAP_FWD";
    case PG_SWEEP_GAP_BWD: return "GAP_BWD";
    case PG_SWEEP_ANDRICA: return "ANDRICA";
    case PG_SWEEP_LOWER_PI: return "LOWER_PI";
    case PG_SWEEP_CROSSCHECK: return "CROSSCHECK";
  }
  return "?";
}

void report_text(const pg_report* r) {
  std::cout << "variant: " << variant_name(pg_report_variant(r)) << "\n"
            << "windows checked: " << pg_report_windows_checked(r) << "\n"
            << "skipped (not applicable): " << pg_report_skipped(r) << "\n"
            << "solver failures: " << pg_report_solver_failures(r) << "\n"
            << "violations: " << pg_report_violation_count(r) << "\n";
  for (size_t i = 0; i < pg_report_violation_count(r) && i < 50; ++i) {
    pg_violation v;
    pg_report_get_violation(r, i, &v);
    std::cout << "  violation "
              << (v.tag && *v.tag ? std::string(v.tag) + " " : "") << "("
              << fmt6(v.lo) << ", " << fmt6(v.hi) << ")";
    if (v.n) std::cout << " n=" << v.n;
    std::cout << " claimed " << fmt6(v.bound_or_claim) << ", exact " << v.exact
              << "\n";
  }
  std::cout << "elapsed: " << fmt6(pg_report_elapsed_seconds(r)) << " s\n";
}

int emit_reports(const Config& cfg, const std::vector<pg_report*>& reports) {
  size_t total_violations = 0;
  for (auto* r : reports) total_violations += pg_report_violation_count(r);
  if (cfg.format == "json") {
    if (reports.size() == 1) {
      char* s = nullptr;
      check(pg_report_to_json(reports[0], 1, &s));
      std::cout << s << "\n";
      pg_string_free(s);
    } else {
      std::string out = "[\n";
      for (size_t i = 0; i < reports.size(); ++i) {
        char* s = nullptr;
        check(pg_report_to_json(reports[i], 1, &s));
        out += s;
        pg_string_free(s);
        if (i + 1 < reports.size()) out += ",";
        out += "\n";
      }
      out += "]";
      std::cout << out << "\n";
    }
  } else if (cfg.format == "csv") {
    for (size_t i = 0; i < reports.size(); ++i) {
      char* s = nullptr;
      check(pg_report_to_csv(reports[i], &s));
      std::string body(s);
      pg_string_free(s);
      if (i > 0) {  // keep a single header row
        auto nl = body.find('\n');
        body = (nl == std::string::npos) ? "" : body.substr(nl + 1);
      }
      std::cout << body;
    }
  } else {
    for (size_t i = 0; i < reports.size(); ++i) {
      if (i) std::cout << "\n";
      report_text(reports[i]);
    }
  }
  return total_violations > 0 ? kExitViolations : kExitOk;
}

std::uint64_t ceil_u64(double v) {
  return v <= 0 ? 0 : static_cast<std::uint64_t>(std::ceil(v));
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{
      "exact-oracle verification of prime-count estimates, conjectural lower "
      "bounds, and prime-gap solvers"};
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--limit", cfg.sieve_limit, "sieve limit (default 1e8)")
      ->envname("PRIMEGAP_SIEVE_LIMIT");
  app.add_option("--segment-size", cfg.segment_size,
                 "sieve window size in odd elements")
      ->envname("PRIMEGAP_SEGMENT_SIZE");
  app.add_option("--memory-budget", cfg.memory_budget,
                 "memory budget in bytes for the sieve")
      ->envname("PRIMEGAP_MEMORY_BUDGET");
  app.add_option("--tolerance", cfg.tolerance, "solver step tolerance")
      ->envname("PRIMEGAP_TOLERANCE");
  app.add_option("--max-iterations", cfg.max_iterations, "solver iteration cap")
      ->envname("PRIMEGAP_MAX_ITERATIONS");
  app.add_option("--format", cfg.format, "output format: text, json or csv")
      ->envname("PRIMEGAP_FORMAT")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--seed", cfg.seed, "seed for sampled sweeps")
      ->envname("PRIMEGAP_SEED");

  double pi_n = 0;
  auto* cmd_pi = app.add_subcommand("pi", "count primes <= N");
  cmd_pi->add_option("N", pi_n, "upper end (real)")->required();

  double pr_a = 0, pr_b = 0;
  auto* cmd_pr =
      app.add_subcommand("pi-range", "count primes strictly between A and B");
  cmd_pr->add_option("A", pr_a)->required();
  cmd_pr->add_option("B", pr_b)->required();

  auto* cmd_bound = app.add_subcommand("bound", "conjectural lower bounds");
  cmd_bound->require_subcommand(1);
  double bl_a = 0, bl_b = 0;
  std::string bl_rule = "auto";
  auto* cmd_bl = cmd_bound->add_subcommand("lower", "window lower bound");
  cmd_bl->add_option("A", bl_a)->required();
  cmd_bl->add_option("B", bl_b)->required();
  cmd_bl->add_option("--rule", bl_rule, "auto, c2 or c3")
      ->check(CLI::IsMember({"auto", "c2", "c3"}));
  double bleg_a = 0;
  auto* cmd_bleg =
      cmd_bound->add_subcommand("legendre", "bound for (a^2, (a+1)^2)");
  cmd_bleg->add_option("A", bleg_a)->required();
  double bpi_n = 0;
  auto* cmd_bpi = cmd_bound->add_subcommand("pi", "lower bound for pi(N)");
  cmd_bpi->add_option("N", bpi_n)->required();
  double bbro_a = 0;
  auto* cmd_bbro =
      cmd_bound->add_subcommand("brocard", "bound for (a^2, (a+2)^2)");
  cmd_bbro->add_option("A", bbro_a)->required();

  std::int64_t th_target = 0;
  std::string th_variant;
  auto* cmd_th = app.add_subcommand(
      "threshold", "smallest anchor whose raw bound reaches a target");
  cmd_th->add_option("--target", th_target)->required();
  cmd_th->add_option("--variant", th_variant)
      ->required()
      ->check(CLI::IsMember({"legendre", "brocard"}));

  auto* cmd_est = app.add_subcommand("estimate", "count estimates");
  cmd_est->require_subcommand(1);
  double er_a = 0, er_b = 0;
  auto* cmd_er = cmd_est->add_subcommand("range", "estimate for (A, B)");
  cmd_er->add_option("A", er_a)->required();
  cmd_er->add_option("B", er_b)->required();
  double el_a = 0;
  auto* cmd_el =
      cmd_est->add_subcommand("legendre", "estimate for (a^2, (a+1)^2)");
  cmd_el->add_option("A", el_a)->required();

  auto* cmd_gap = app.add_subcommand("gap", "max distance to the n-th prime");
  cmd_gap->require_subcommand(1);
  double gf_a = 0;
  std::uint64_t gf_n = 0;
  auto* cmd_gf = cmd_gap->add_subcommand("forward", "n-th prime after a");
  cmd_gf->add_option("--a", gf_a)->required();
  cmd_gf->add_option("--n", gf_n)->required();
  double gb_b = 0;
  std::uint64_t gb_n = 0;
  auto* cmd_gb = cmd_gap->add_subcommand("backward", "n-th prime before b");
  cmd_gb->add_option("--b", gb_b)->required();
  cmd_gb->add_option("--n", gb_n)->required();

  auto* cmd_iv = app.add_subcommand("interval", "window endpoints from a gap");
  cmd_iv->require_subcommand(1);
  double iv_x = 0;
  std::uint64_t iv_n = 0;
  std::string iv_anchor;
  auto* cmd_ivfg = cmd_iv->add_subcommand(
      "from-gap", "endpoint of the width-x window holding n primes");
  cmd_ivfg->add_option("--x", iv_x)->required();
  cmd_ivfg->add_option("--n", iv_n)->required();
  cmd_ivfg->add_option("--anchor", iv_anchor)
      ->required()
      ->check(CLI::IsMember({"start", "end"}));

  double st_a = 0;
  auto* cmd_st =
      app.add_subcommand("solve-t", "t with pi(a, a(t/a+1)) matching pi(a)");
  cmd_st->add_option("A", st_a)->required();

  double cc_p = 0, cc_q = 0;
  auto* cmd_cc = app.add_subcommand("check-consecutive",
                                    "can P and Q be consecutive primes?");
  cmd_cc->add_option("P", cc_p)->required();
  cmd_cc->add_option("Q", cc_q)->required();

  auto* cmd_curve = app.add_subcommand("curve", "curve data for plotting");
  cmd_curve->require_subcommand(1);
  double cf_min = 4, cf_max = 20, cf_step = 1;
  auto* cmd_cf = cmd_curve->add_subcommand("fg", "f/g envelope samples");
  cmd_cf->add_option("--min", cf_min);
  cmd_cf->add_option("--max", cf_max);
  cmd_cf->add_option("--step", cf_step);

  auto* cmd_verify = app.add_subcommand("verify", "reference reproductions");
  cmd_verify->require_subcommand(1);
  bool vt_extended = false;
  auto* cmd_vt = cmd_verify->add_subcommand(
      "table1", "recompute the square-window estimate table");
  cmd_vt->add_flag("--extended", vt_extended,
                   "include the large anchors (sieve toward 1e12)");

  auto* cmd_sweep = app.add_subcommand("sweep", "systematic verification runs");
  cmd_sweep->require_subcommand(1);
  std::string sw_variant = "c3";
  double sw_lo_min = 0, sw_lo_max = 0, sw_lo_step = 0;
  double sw_w_min = 0, sw_w_max = 0, sw_w_step = 0;
  std::uint64_t sw_samples = 0;
  auto* cmd_sws = cmd_sweep->add_subcommand(
      "soundness", "lower bound vs exact count over a window grid");
  cmd_sws->add_option("--variant", sw_variant)
      ->check(CLI::IsMember({"c1", "c2", "c3", "auto", "lower-pi"}));
  cmd_sws->add_option("--lo-min", sw_lo_min);
  cmd_sws->add_option("--lo-max", sw_lo_max);
  cmd_sws->add_option("--lo-step", sw_lo_step);
  cmd_sws->add_option("--width-min", sw_w_min);
  cmd_sws->add_option("--width-max", sw_w_max);
  cmd_sws->add_option("--width-step", sw_w_step);
  cmd_sws->add_option("--samples", sw_samples,
                      "random windows instead of the systematic grid");

  double gg_a_min = 100, gg_a_max = 1000000, gg_a_step = 97;
  std::uint64_t gg_n_min = 1, gg_n_max = 50;
  auto* cmd_swg = cmd_sweep->add_subcommand(
      "gaps", "never-farther-than-x check, forward and backward");
  cmd_swg->add_option("--a-min", gg_a_min);
  cmd_swg->add_option("--a-max", gg_a_max);
  cmd_swg->add_option("--a-step", gg_a_step);
  cmd_swg->add_option("--n-min", gg_n_min);
  cmd_swg->add_option("--n-max", gg_n_max);

  std::uint64_t an_limit = 1000000;
  auto* cmd_swa = cmd_sweep->add_subcommand(
      "andrica", "criterion over all consecutive-prime pairs");
  cmd_swa->add_option("--pair-limit", an_limit);

  auto* cmd_swc = cmd_sweep->add_subcommand(
      "crosscheck", "fixed-point vs bisection on the built-in grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  cfg.sieve_limit_set = app.count("--limit") > 0;

  try {
    if (cmd_pi->parsed()) {
      auto oracle = build_oracle(cfg, ceil_u64(pi_n));
      std::uint64_t count = 0;
      check(pg_oracle_pi(oracle.get(), pi_n, &count));
      json j{{"command", "pi"}, {"n", round12(pi_n)}, {"count", count}};
      emit_record(cfg, j, {{"", std::to_string(count)}});
      return kExitOk;
    }

    if (cmd_pr->parsed()) {
      auto oracle = build_oracle(cfg, ceil_u64(pr_b));
      std::uint64_t count = 0;
      check(pg_oracle_pi_open(oracle.get(), pr_a, pr_b, &count));
      json j{{"command", "pi-range"},
             {"lo", round12(pr_a)},
             {"hi", round12(pr_b)},
             {"count", count}};
      emit_record(cfg, j, {{"", std::to_string(count)}});
      return kExitOk;
    }

    if (cmd_bl->parsed()) {
      pg_bound b;
      if (bl_rule == "c2")
        check(pg_c2_lower_bound(bl_a, bl_b, &b));
      else if (bl_rule == "c3")
        check(pg_c3_lower_bound(bl_a, bl_b, &b));
      else
        check(pg_lower_bound_auto(bl_a, bl_b, &b));
      return emit_bound(cfg, "bound-lower", b);
    }

    if (cmd_bleg->parsed()) {
      pg_bound b;
      check(pg_legendre_lower_bound(bleg_a, &b));
      return emit_bound(cfg, "bound-legendre", b);
    }

    if (cmd_bpi->parsed()) {
      pg_bound b;
      check(pg_lower_bound_pi(bpi_n, &b));
      return emit_bound(cfg, "bound-pi", b);
    }

    if (cmd_bbro->parsed()) {
      pg_bound b;
      check(pg_brocard_lower_bound(bbro_a, &b));
      return emit_bound(cfg, "bound-brocard", b);
    }

    if (cmd_th->parsed()) {
      double anchor = 0;
      check(pg_min_anchor_for_bound(
          th_target,
          th_variant == "brocard" ? PG_ANCHOR_BROCARD : PG_ANCHOR_LEGENDRE_C1,
          &anchor));
      json j{{"command", "threshold"},
             {"variant", th_variant},
             {"target", th_target},
             {"anchor", round12(anchor)}};
      emit_record(cfg, j, {{"anchor", fmt6(anchor)}});
      return kExitOk;
    }

    if (cmd_er->parsed()) {
      double est = 0;
      pg_status st = pg_c2_estimate(er_a, er_b, &est);
      check(st);
      json j{{"command", "estimate-range"},
             {"lo", round12(er_a)},
             {"hi", round12(er_b)}};
      if (st == PG_NOT_APPLICABLE) {
        j["applicable"] = false;
        j["estimate"] = nullptr;
        emit_record(cfg, j, {{"", "not applicable: sqrt(B) - sqrt(A) < 1"}});
      } else {
        j["applicable"] = true;
        j["estimate"] = round12(est);
        emit_record(cfg, j, {{"estimate", fmt6(est)}});
      }
      return kExitOk;
    }

    if (cmd_el->parsed()) {
      auto oracle = build_oracle(cfg, ceil_u64(2 * el_a + 1));
      pg_legendre_estimate e;
      check(pg_legendre_estimate_eval(oracle.get(), el_a, &e));
      json j{{"command", "estimate-legendre"},
             {"a", round12(el_a)},
             {"half_pi_exact", round12(e.half_pi_exact)},
             {"half_pi_display", e.half_pi_display},
             {"pnt_form", round12(e.pnt_form)}};
      emit_record(cfg, j,
                  {{"half of pi(2a+1)", fmt6(e.half_pi_exact)},
                   {"display value", std::to_string(e.half_pi_display)},
                   {"pnt form", fmt6(e.pnt_form)}});
      return kExitOk;
    }

    if (cmd_gf->parsed()) {
      pg_solution* s = nullptr;
      auto opts = cfg.solver();
      check(pg_forward_gap(gf_a, gf_n, &opts, &s));
      SolutionPtr sol(s);
      return emit_solution(cfg, "gap-forward", sol.get());
    }

    if (cmd_gb->parsed()) {
      pg_solution* s = nullptr;
      auto opts = cfg.solver();
      check(pg_backward_gap(gb_b, gb_n, &opts, &s));
      SolutionPtr sol(s);
      return emit_solution(cfg, "gap-backward", sol.get());
    }

    if (cmd_ivfg->parsed()) {
      double start = 0, end = 0;
      pg_status st1 = pg_start_from_gap(iv_x, iv_n, &start);
      check(st1);
      json j{{"command", "interval-from-gap"},
             {"x", round12(iv_x)},
             {"n", iv_n},
             {"anchor", iv_anchor}};
      if (st1 == PG_NOT_APPLICABLE) {
        j["applicable"] = false;
        j["value"] = nullptr;
        emit_record(cfg, j, {{"", "not applicable: n > x / log2(x)"}});
        return kExitOk;
      }
      check(pg_end_from_gap(iv_x, iv_n, &end));
      const double value = iv_anchor == "start" ? start : end;
      j["applicable"] = true;
      j["start"] = round12(start);
      j["end"] = round12(end);
      j["value"] = round12(value);
      j["floor"] = static_cast<std::int64_t>(std::floor(value));
      emit_record(cfg, j,
                  {{"window", "(" + fmt6(start) + ", " + fmt6(end) + ")"},
                   {iv_anchor, fmt6(value)},
                   {"floor", std::to_string(static_cast<long long>(
                                 std::floor(value)))}});
      return kExitOk;
    }

    if (cmd_st->parsed()) {
      pg_solution* s = nullptr;
      auto opts = cfg.solver();
      check(pg_solve_t(st_a, &opts, &s));
      SolutionPtr sol(s);
      return emit_solution(cfg, "solve-t", sol.get());
    }

    if (cmd_cc->parsed()) {
      pg_andrica a;
      check(pg_andrica_check(cc_p, cc_q, &a));
      json j{{"command", "check-consecutive"},
             {"p", round12(cc_p)},
             {"q", round12(cc_q)},
             {"lhs", round12(a.lhs)},
             {"rhs", round12(a.rhs)},
             {"c3_raw", round12(a.c3_raw)},
             {"possible", a.possible != 0}};
      std::string verdict =
          a.possible ? "possible; consecutivity not excluded"
                     : "impossible; at least one prime strictly between";
      emit_record(cfg, j,
                  {{"", verdict},
                   {"lhs sqrt(q)-sqrt(p)", fmt6(a.lhs)},
                   {"rhs sqrt(2 log2(q-p)/(q-p))", fmt6(a.rhs)},
                   {"c3 raw", fmt6(a.c3_raw)}});
      return kExitOk;
    }

    if (cmd_cf->parsed()) {
      if (!(cf_step > 0) || !(cf_max >= cf_min))
        throw CliError{kExitError, "curve fg needs min <= max and step > 0"};
      json rows = json::array();
      std::string csv = "x,f,g\n";
      std::vector<std::pair<std::string, std::string>> text;
      const auto count =
          static_cast<std::uint64_t>(std::floor((cf_max - cf_min) / cf_step)) +
          1;
      for (std::uint64_t i = 0; i < count; ++i) {
        const double x = cf_min + static_cast<double>(i) * cf_step;
        double f = 0, g = 0;
        check(pg_fg_curves(x, &f, &g));
        rows.push_back(
            {{"x", round12(x)}, {"f", round12(f)}, {"g", round12(g)}});
        csv += fmt12(x) + "," + fmt12(f) + "," + fmt12(g) + "\n";
        text.push_back({"x " + fmt6(x), "f " + fmt6(f) + "  g " + fmt6(g)});
      }
      if (cfg.format == "json") {
        json j{{"command", "curve-fg"}, {"rows", rows}};
        std::cout << j.dump(2) << "\n";
      } else if (cfg.format == "csv") {
        std::cout << csv;
      } else {
        for (const auto& [k, v] : text) std::cout << k << ":  " << v << "\n";
      }
      return kExitOk;
    }

    if (cmd_vt->parsed()) {
      // the largest default anchor is 20000 -> window end (20001)^2
      const double max_anchor = vt_extended ? 1000000.0 : 20000.0;
      const std::uint64_t required =
          ceil_u64((max_anchor + 1.0) * (max_anchor + 1.0));
      auto oracle = build_oracle(cfg, required);
      pg_table* t = nullptr;
      check(pg_verify_table1(oracle.get(), nullptr, 0, vt_extended ? 1 : 0, &t));
      std::unique_ptr<pg_table, decltype(&pg_table_free)> table(t,
                                                                &pg_table_free);
      const bool all_match = pg_table_all_match(t) != 0;
      if (cfg.format == "json") {
        char* s = nullptr;
        check(pg_table_to_json(t, &s));
        std::cout << s << "\n";
        pg_string_free(s);
      } else if (cfg.format == "csv") {
        char* s = nullptr;
        check(pg_table_to_csv(t, &s));
        std::cout << s;
        pg_string_free(s);
      } else {
        std::printf("%12s %8s %8s %10s %10s %s\n", "a", "actual", "half",
                    "ref_act", "ref_half", "match");
        size_t matched = 0, with_ref = 0;
        for (size_t i = 0; i < pg_table_row_count(t); ++i) {
          pg_table_row row;
          pg_table_get_row(t, i, &row);
          std::printf("%12s %8lld %8lld", fmt6(row.a).c_str(),
                      static_cast<long long>(row.actual),
                      static_cast<long long>(row.half_pi_display));
          if (row.has_reference) {
            ++with_ref;
            if (row.matches) ++matched;
            std::printf(" %10lld %10lld %s\n",
                        static_cast<long long>(row.ref_actual),
                        static_cast<long long>(row.ref_half),
                        row.matches ? "yes" : "NO");
          } else {
            std::printf(" %10s %10s -\n", "-", "-");
          }
        }
        std::cout << matched << "/" << with_ref << " reference rows match\n";
      }
      return all_match ? kExitOk : kExitViolations;
    }

    if (cmd_sws->parsed()) {
      pg_window_spec spec{};
      pg_sweep_variant variant = PG_SWEEP_C3;
      // defaults mirror the documented verification grids
      if (sw_variant == "c1") {
        variant = PG_SWEEP_C1;
        spec = {0.5, 2000.0, 0.5, 0, 0, 1, 0, 0};
      } else if (sw_variant == "c2") {
        variant = PG_SWEEP_C2;
        spec = {0.0, 100000.0, 1.0, 0, 0, 1, 0, 0};
      } else if (sw_variant == "c3") {
        variant = PG_SWEEP_C3;
        spec = {10.0, 10000.0, 1.0, 2, 50, 1, 0, 0};
      } else if (sw_variant == "auto") {
        variant = PG_SWEEP_AUTO;
        spec = {10.0, 10000.0, 1.0, 2, 80, 1, 0, 0};
      } else {
        variant = PG_SWEEP_LOWER_PI;
        spec = {4.0, 1000000.0, 1.0, 0, 0, 1, 0, 0};
      }
      if (cmd_sws->count("--lo-min")) spec.lo_min = sw_lo_min;
      if (cmd_sws->count("--lo-max")) spec.lo_max = sw_lo_max;
      if (cmd_sws->count("--lo-step")) spec.lo_step = sw_lo_step;
      if (cmd_sws->count("--width-min")) spec.width_min = sw_w_min;
      if (cmd_sws->count("--width-max")) spec.width_max = sw_w_max;
      if (cmd_sws->count("--width-step")) spec.width_step = sw_w_step;
      spec.samples = sw_samples;
      spec.seed = cfg.seed;

      std::uint64_t required = 0;
      const double max_width =
          spec.width_max > 0 ? spec.width_max
                             : 4.0 * std::ceil(std::sqrt(spec.lo_max)) + 80.0;
      if (variant == PG_SWEEP_C1)
        required = ceil_u64((spec.lo_max + 1.0) * (spec.lo_max + 1.0));
      else if (variant == PG_SWEEP_LOWER_PI)
        required = ceil_u64(spec.lo_max);
      else
        required = ceil_u64(spec.lo_max + max_width);
      auto oracle = build_oracle(cfg, required);
      pg_report* r = nullptr;
      check(pg_sweep_soundness(oracle.get(), variant, &spec, &r));
      ReportPtr report(r);
      return emit_reports(cfg, {report.get()});
    }

    if (cmd_swg->parsed()) {
      // size the sieve for the farthest solved distance
      pg_solution* probe = nullptr;
      auto opts = cfg.solver();
      check(pg_forward_gap(gg_a_max, gg_n_max, &opts, &probe));
      SolutionPtr probe_sol(probe);
      const std::uint64_t required =
          ceil_u64(gg_a_max) +
          static_cast<std::uint64_t>(pg_solution_value_ceil(probe)) + 1000;
      auto oracle = build_oracle(cfg, required);
      pg_report *fwd = nullptr, *bwd = nullptr;
      check(pg_sweep_gaps(oracle.get(), PG_SWEEP_GAP_FWD, gg_a_min, gg_a_max,
                          gg_a_step, gg_n_min, gg_n_max, &fwd));
      ReportPtr fwd_r(fwd);
      check(pg_sweep_gaps(oracle.get(), PG_SWEEP_GAP_BWD, gg_a_min, gg_a_max,
                          gg_a_step, gg_n_min, gg_n_max, &bwd));
      ReportPtr bwd_r(bwd);
      return emit_reports(cfg, {fwd_r.get(), bwd_r.get()});
    }

    if (cmd_swa->parsed()) {
      auto oracle = build_oracle(cfg, an_limit);
      pg_report* r = nullptr;
      check(pg_sweep_andrica(oracle.get(), an_limit, &r));
      ReportPtr report(r);
      return emit_reports(cfg, {report.get()});
    }

    if (cmd_swc->parsed()) {
      pg_report* r = nullptr;
      check(pg_sweep_crosscheck(&r));
      ReportPtr report(r);
      return emit_reports(cfg, {report.get()});
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  }

  std::cerr << "no subcommand executed\n";
  return kExitUsage;
}
