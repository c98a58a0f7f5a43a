#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "fuzzygb/sweep.hpp"
#include "json.hpp"

using namespace fuzzygb;

namespace {

const RealPolynomial kQuartic{1.0, 0.0, 0.0, 0.0, -1.0};

SweepConfig config(SurfaceSpec surface, std::vector<int> ns) {
  SweepConfig cfg;
  cfg.surface = std::move(surface);
  cfg.n_list = std::move(ns);
  return cfg;
}

}  // namespace

TEST_CASE("hbar choice parsing") {
  CHECK(HbarChoice::parse("rule").mode == HbarMode::Rule);
  CHECK(HbarChoice::parse("calibrate").mode == HbarMode::Calibrate);
  const auto v = HbarChoice::parse("0.125");
  CHECK(v.mode == HbarMode::Explicit);
  CHECK(v.value == 0.125);
  for (const char* bad : {"", "-1", "0", "nan", "inf", "fast", "0.1x"}) {
    CHECK_THROWS_AS(HbarChoice::parse(bad), ConfigError);
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(config(SurfaceSpec::round_sphere(), {}).validate(), ConfigError);
  CHECK_THROWS_AS(config(SurfaceSpec::round_sphere(), {1, 4}).validate(), ConfigError);
  CHECK_THROWS_AS(config(SurfaceSpec::round_sphere(), {4, 4}).validate(), ConfigError);
  CHECK_THROWS_AS(config(SurfaceSpec::round_sphere(), {8, 4}).validate(), ConfigError);
  auto cfg = config(SurfaceSpec::clifford_torus(), {4});
  cfg.hbar = HbarChoice::parse("0.1");
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
  CHECK_NOTHROW(config(SurfaceSpec::round_sphere(), {2, 3}).validate());
}

TEST_CASE("sphere sweep") {
  const auto t = run_sweep(config(SurfaceSpec::round_sphere(), {2, 10, 100}));
  REQUIRE(t.rows.size() == 3);
  CHECK(t.all_ok());
  CHECK(t.chi_classical == 2.0);
  CHECK(t.rows[0].chi_hat == doctest::Approx(2.3094).epsilon(1e-5));
  CHECK(t.rows[1].chi_hat == doctest::Approx(2.01008).epsilon(1e-5));
  CHECK(t.rows[2].chi_hat == doctest::Approx(200.0 / std::sqrt(9999.0)).epsilon(1e-14));
  for (const auto& r : t.rows) CHECK(r.abs_err == doctest::Approx(r.chi_hat - 2.0));
  REQUIRE(t.fitted_rate);
  CHECK(*t.fitted_rate == doctest::Approx(-2.0).epsilon(0.05));
}

TEST_CASE("torus sweep") {
  const auto t = run_sweep(config(SurfaceSpec::clifford_torus(), {3, 8, 17}));
  CHECK(t.chi_classical == 0.0);
  for (const auto& r : t.rows) {
    CHECK(std::abs(r.chi_hat) < 1e-10);
    CHECK(r.abs_err < 1e-10);
  }
}

TEST_CASE("axisymmetric sweep with each hbar mode") {
  auto cfg = config(SurfaceSpec::axisymmetric(kQuartic), {8, 16, 32, 64});
  const auto rule = run_sweep(cfg);
  REQUIRE(rule.rows.size() == 4);
  for (std::size_t k = 1; k < rule.rows.size(); ++k) CHECK(rule.rows[k].abs_err < rule.rows[k - 1].abs_err);
  CHECK(rule.rows[0].hbar == HbarRule::sphere().value(8));

  cfg.hbar = HbarChoice::parse("calibrate");
  const auto cal = run_sweep(cfg);
  CHECK(cal.all_ok());
  CHECK(std::abs(cal.rows.back().chi_hat - 2.0) < 0.05);

  cfg.hbar = HbarChoice::parse("0.01");
  const auto fixed = run_sweep(cfg);
  for (const auto& r : fixed.rows) CHECK(r.hbar == 0.01);
}

TEST_CASE("failed rows are recorded and the sweep continues") {
  const auto pinched = SurfaceSpec::axisymmetric(RealPolynomial{0.02, 0.0, 2.0, 0.0, -2.02});
  const auto t = run_sweep(config(pinched, {4, 32}));
  CHECK_FALSE(t.all_ok());
  REQUIRE(t.failures.size() == 1);
  CHECK(t.failures[0].N == 4);
  CHECK(t.failures[0].exit_code == 3);
  CHECK_FALSE(t.failures[0].reason.empty());
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].N == 32);
  CHECK_FALSE(t.fitted_rate);
}

TEST_CASE("fit rate needs three nonzero errors") {
  std::vector<SweepRow> rows{{8, 0.1, 2.1, 0.1, 0}, {16, 0.05, 2.025, 0.025, 0}};
  CHECK_FALSE(fit_rate(rows));
  rows.push_back({32, 0.025, 2.00625, 0.00625, 0});
  CHECK(*fit_rate(rows) == doctest::Approx(-2.0));
  rows.push_back({64, 0.01, 2.0, 0.0, 0});
  CHECK(*fit_rate(rows) == doctest::Approx(-2.0));
}

TEST_CASE("csv layout and round trip") {
  auto cfg = config(SurfaceSpec::axisymmetric(kQuartic), {8, 16, 32});
  const auto t = run_sweep(cfg);
  const std::string csv = to_csv(t);
  CHECK(csv.rfind("N,hbar,chi_hat,abs_err,runtime_ms\n", 0) == 0);
  const auto back = parse_csv(csv);
  CHECK(back.rows == t.rows);
  CHECK(back.fitted_rate == t.fitted_rate);
  CHECK_THROWS_AS(parse_csv("N,chi\n"), ConfigError);
  CHECK_THROWS_AS(parse_csv("N,hbar,chi_hat,abs_err,runtime_ms\n1,2,3\n"), ConfigError);
  CHECK_THROWS_AS(parse_csv("N,hbar,chi_hat,abs_err,runtime_ms\n1,2,3,4,x\n"), ConfigError);
}

TEST_CASE("output is deterministic without timing") {
  auto cfg = config(SurfaceSpec::axisymmetric(kQuartic), {8, 16, 32});
  cfg.record_runtime = false;
  const std::string a = to_csv(run_sweep(cfg));
  const std::string b = to_csv(run_sweep(cfg));
  CHECK(a == b);
  CHECK(to_json(run_sweep(cfg)) == to_json(run_sweep(cfg)));
}

TEST_CASE("json report carries diagnostics and failures") {
  const auto pinched = SurfaceSpec::axisymmetric(RealPolynomial{0.02, 0.0, 2.0, 0.0, -2.02});
  const auto doc = nlohmann::json::parse(to_json(run_sweep(config(pinched, {4, 32}))));
  CHECK(doc["rows"].size() == 1);
  CHECK(doc["rows"][0].contains("diagnostics"));
  CHECK(doc["rows"][0]["diagnostics"].contains("gamma_sq_min_eigenvalue"));
  CHECK(doc["failures"].size() == 1);
  CHECK(doc["fitted_rate"].is_null());
}

TEST_CASE("axiom check") {
  const std::vector<int> ns{8, 16, 32};
  const auto r = run_axiom_check(ns, 2);
  REQUIRE(r.reports.size() == 3);
  CHECK(r.mode_cutoff == 2);
  for (const auto& rep : r.reports) CHECK(rep.unitality_defect == 0.0);
  CHECK(r.reports[0].bracket_defect >= torus_bracket_defect({2, 0}, {0, 1}, 8));
  CHECK(r.reports[2].bracket_defect < r.reports[1].bracket_defect);
  REQUIRE(r.trace_rate);
  CHECK(*r.trace_rate == doctest::Approx(-2.0).epsilon(0.02));

  const auto zero = run_axiom_check(ns, 0);
  for (const auto& rep : zero.reports) {
    CHECK(rep.bracket_defect == 0.0);
    CHECK(rep.product_defect == 0.0);
  }
  CHECK_THROWS_AS(run_axiom_check(ns, -1), ConfigError);
  CHECK_THROWS_AS(run_axiom_check(std::vector<int>{1}, 2), ConfigError);
  CHECK_THROWS_AS(run_axiom_check(std::vector<int>{}, 2), ConfigError);

  const std::string csv = to_csv(r);
  CHECK(csv.rfind("N,product_defect,bracket_defect,trace_defect,unitality_defect\n", 0) == 0);
  const auto doc = nlohmann::json::parse(to_json(r));
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["rates"].contains("bracket"));
}
