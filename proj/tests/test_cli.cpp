#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// Black-box tests of the installed CLI: spawns the real binary and checks
// stdout plus exit codes.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + " " + std::string(PRIMEGAP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("pi prints the exact count") {
  const auto r = run_cli("pi 1001 --limit 2000");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "168\n");
}

TEST_CASE("pi-range") {
  const auto r = run_cli("pi-range 70 100 --limit 2000");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "6\n");
}

TEST_CASE("gap forward emits the answer with its trace") {
  const auto r = run_cli("gap forward --a 1024 --n 2 --format json");
  CHECK(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["x"] == 46);
  CHECK(j["case"] == "ITER_WIDE");
  CHECK(j["converged"] == true);
  CHECK(j["iterates"][0].get<double>() == doctest::Approx(39.570388));
  CHECK(j["iterates"][1].get<double>() == doctest::Approx(47.321533).epsilon(1e-4));

  const auto text = run_cli("gap forward --a 1024 --n 2");
  CHECK(contains(text.out, "x: 46"));
  CHECK(contains(text.out, "trace:"));
}

TEST_CASE("check-consecutive verdict phrasing") {
  const auto no = run_cli("check-consecutive 199 223");
  CHECK(no.exit_code == 0);
  CHECK(contains(no.out, "impossible; at least one prime strictly between"));

  const auto yes = run_cli("check-consecutive 113 127");
  CHECK(yes.exit_code == 0);
  CHECK(contains(yes.out, "possible"));
}

TEST_CASE("bound subcommands") {
  const auto r = run_cli("bound lower 200 230");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "RANGE_C2"));
  CHECK(contains(r.out, "lower bound: 3"));

  const auto c3 = run_cli("bound lower 113.3 129 --rule c3 --format json");
  CHECK(json::parse(c3.out)["lower_bound"] == 1);

  const auto na = run_cli("bound lower 0.25 3");
  CHECK(na.exit_code == 0);
  CHECK(contains(na.out, "not applicable"));

  const auto pi = run_cli("bound pi 1024 --format json");
  CHECK(json::parse(pi.out)["lower_bound"] == 102);

  const auto brocard = run_cli("bound brocard 127 --format json");
  CHECK(json::parse(brocard.out)["lower_bound"] == 32);

  const auto legendre = run_cli("bound legendre 14.2 --format json");
  CHECK(json::parse(legendre.out)["lower_bound"] == 3);
}

TEST_CASE("threshold reproduces the published anchors") {
  const auto r = run_cli("threshold --target 5 --variant brocard --format json");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out)["anchor"].get<double>() ==
        doctest::Approx(10.23).epsilon(0.001));
}

TEST_CASE("estimate subcommands") {
  const auto range = run_cli("estimate range 70 100 --format json");
  CHECK(json::parse(range.out)["estimate"].get<double>() ==
        doctest::Approx(5.15369377854));

  const auto legendre = run_cli("estimate legendre 100 --limit 300 --format json");
  const auto j = json::parse(legendre.out);
  CHECK(j["half_pi_display"] == 23);
}

TEST_CASE("interval from-gap") {
  const auto r = run_cli("interval from-gap --x 200 --n 3 --anchor start --format json");
  const auto j = json::parse(r.out);
  CHECK(j["floor"] == 43508);
  CHECK(j["end"].get<double>() - j["start"].get<double>() ==
        doctest::Approx(200.0));

  const auto na = run_cli("interval from-gap --x 10 --n 4 --anchor start");
  CHECK(na.exit_code == 0);
  CHECK(contains(na.out, "not applicable"));
}

TEST_CASE("solve-t") {
  const auto r = run_cli("solve-t 100 --format json");
  const auto j = json::parse(r.out);
  CHECK(j["t"].get<double>() == doctest::Approx(140.677487066));
  CHECK(j["s"].get<double>() == doctest::Approx(2.40677487066));
}

TEST_CASE("curve fg emits rows in every format") {
  const auto csv = run_cli("curve fg --min 4 --max 6 --step 1 --format csv");
  CHECK(csv.out.rfind("x,f,g\n", 0) == 0);
  CHECK(contains(csv.out, "4,2.25,6.25"));

  const auto j = json::parse(run_cli("curve fg --min 4 --max 6 --step 1 --format json").out);
  CHECK(j["rows"].size() == 3);
  CHECK(j["rows"][0]["f"] == 2.25);
}

TEST_CASE("verify table1 on a pinned small sieve fails loudly") {
  const auto r = run_cli("verify table1 --limit 11000");
  CHECK(r.exit_code == 1);  // explicit limit is honored, range error
}

TEST_CASE("verify table1 reproduces every reference row") {
  const auto r = run_cli("verify table1");  // sieves to (20001)^2
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "11/11 reference rows match"));

  const auto j = json::parse(run_cli("verify table1 --format json").out);
  REQUIRE(j["rows"].size() == 11);
  CHECK(j["rows"][10]["actual"] == 2020);
  CHECK(j["rows"][10]["ref_half"] == 2101);
  for (const auto& row : j["rows"]) CHECK(row["matches"] == true);
}

TEST_CASE("extended table mode is guarded by the memory budget") {
  // the large anchors need a sieve toward 1e12, far past any default budget
  const auto r = run_cli("verify table1 --extended");
  CHECK(r.exit_code == 1);
}

TEST_CASE("estimate range outside the rule's domain is a value") {
  const auto r = run_cli("estimate range 100 110");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "not applicable"));
}

TEST_CASE("sweep soundness c3 exits clean") {
  const auto r = run_cli(
      "sweep soundness --variant c3 --lo-min 10 --lo-max 300 "
      "--width-min 2 --width-max 20 --format json");
  CHECK(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["variant"] == "C3");
  CHECK(j["violations"].empty());
  CHECK(j.contains("elapsed_seconds"));
  CHECK(j.contains("windows_checked"));
}

TEST_CASE("sweep gaps runs both directions") {
  const auto r = run_cli(
      "sweep gaps --a-min 100 --a-max 1000 --a-step 97 --n-max 5 "
      "--format json");
  CHECK(r.exit_code == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["variant"] == "GAP_FWD");
  CHECK(j[1]["variant"] == "GAP_BWD");
  CHECK(j[0]["violations"].empty());
  CHECK(j[1]["violations"].empty());

  const auto csv = run_cli(
      "sweep gaps --a-min 100 --a-max 1000 --a-step 97 --n-max 5 "
      "--format csv");
  CHECK(csv.out == "variant,tag,lo,hi,n,bound_or_claim,exact\n");
}

TEST_CASE("sweep crosscheck agrees everywhere") {
  const auto r = run_cli("sweep crosscheck --format json");
  CHECK(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["variant"] == "CROSSCHECK");
  CHECK(j["violations"].empty());
  CHECK(j["windows_checked"].get<int>() >= 100);
}

TEST_CASE("sweep andrica small run") {
  const auto r = run_cli("sweep andrica --pair-limit 10000 --format json");
  CHECK(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["windows_checked"] == 1227);
  CHECK(j["violations"].empty());
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("definitely-not-a-command").exit_code == 2);
  CHECK(run_cli("pi").exit_code == 2);           // missing argument
  CHECK(run_cli("bound").exit_code == 2);        // missing subcommand
  CHECK(run_cli("gap forward --a 10").exit_code == 2);  // missing --n
  CHECK(run_cli("--format yaml pi 10").exit_code == 2);
}

TEST_CASE("pi accepts real arguments") {
  const auto r = run_cli("pi 2.5 --limit 100");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1\n");
}

TEST_CASE("solver knobs flow through") {
  // starving the iteration flags non-convergence and exits nonzero
  const auto starved = run_cli("gap forward --a 1024 --n 2 --max-iterations 1 --format json");
  CHECK(starved.exit_code == 1);
  CHECK(json::parse(starved.out)["converged"] == false);

  // a loose tolerance converges in fewer steps than the default
  const auto loose = run_cli("gap forward --a 10000 --n 36 --tolerance 1e-3 --format json");
  const auto tight = run_cli("gap forward --a 10000 --n 36 --format json");
  CHECK(loose.exit_code == 0);
  CHECK(json::parse(loose.out)["steps"].get<int>() <
        json::parse(tight.out)["steps"].get<int>());

  // a custom sieve window changes nothing about the answers
  const auto seg = run_cli("pi 1001 --limit 2000 --segment-size 64");
  CHECK(seg.out == "168\n");
}

TEST_CASE("domain errors exit 1") {
  CHECK(run_cli("solve-t 1").exit_code == 1);
  CHECK(run_cli("pi-range 5 3 --limit 100").exit_code == 1);
  CHECK(run_cli("pi 300 --limit 200").exit_code == 1);  // beyond pinned sieve
  CHECK(run_cli("check-consecutive 199 200").exit_code == 1);
}

TEST_CASE("environment variables configure the run, flags win") {
  const auto env_json = run_cli("pi 100 --limit 200", "PRIMEGAP_FORMAT=json");
  const auto j = json::parse(env_json.out);
  CHECK(j["count"] == 25);

  const auto flag_wins =
      run_cli("pi 100 --limit 200 --format text", "PRIMEGAP_FORMAT=json");
  CHECK(flag_wins.out == "25\n");

  const auto env_limit =
      run_cli("pi 300", "PRIMEGAP_SIEVE_LIMIT=200");  // env pins like a flag
  CHECK(env_limit.exit_code == 1);
}

TEST_CASE("json round-trips and csv carries the same numbers") {
  for (const std::string cmd :
       {std::string("bound lower 200 230"), std::string("solve-t 100"),
        std::string("gap backward --b 10552 --n 36"),
        std::string("check-consecutive 199 223"),
        std::string("interval from-gap --x 100 --n 8 --anchor end")}) {
    const auto jr = run_cli(cmd + " --format json");
    REQUIRE(jr.exit_code == 0);
    json parsed;
    REQUIRE_NOTHROW(parsed = json::parse(jr.out));
    // round trip: dump -> parse -> dump is a fixed point
    CHECK(json::parse(parsed.dump()) == parsed);

    const auto cr = run_cli(cmd + " --format csv");
    REQUIRE(cr.exit_code == 0);
    const auto nl1 = cr.out.find('\n');
    const std::string header = cr.out.substr(0, nl1);
    const std::string row =
        cr.out.substr(nl1 + 1, cr.out.find('\n', nl1 + 1) - nl1 - 1);
    // csv cells reparse to the very values the json carries
    size_t hpos = 0, rpos = 0;
    while (hpos != std::string::npos) {
      const auto hend = header.find(',', hpos);
      const auto rend = row.find(',', rpos);
      const std::string key = header.substr(
          hpos, hend == std::string::npos ? std::string::npos : hend - hpos);
      const std::string cell = row.substr(
          rpos, rend == std::string::npos ? std::string::npos : rend - rpos);
      REQUIRE(parsed.contains(key));
      const auto& jv = parsed[key];
      if (jv.is_number_float()) {
        CHECK(std::strtod(cell.c_str(), nullptr) == jv.get<double>());
      } else if (jv.is_number_integer()) {
        CHECK(std::stoll(cell) == jv.get<long long>());
      } else if (jv.is_boolean()) {
        CHECK(cell == (jv.get<bool>() ? "true" : "false"));
      }
      hpos = hend == std::string::npos ? hend : hend + 1;
      rpos = rend == std::string::npos ? rend : rend + 1;
    }
  }
}
