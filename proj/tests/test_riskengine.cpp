// Copyright 2026 The QCR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcr/errors.hpp"
#include "qcr/chebyshev.hpp"
#include "qcr/phase_cache.hpp"
#include "qcr/qsp.hpp"
#include "qcr/risk_engine.hpp"
#include "support.hpp"

using namespace qcr;

namespace {

const double kMu = std::sin(std::numbers::pi / 4);

const ThresholdFilter& filter_k(double k) {
  static const ThresholdFilter f9 = build_threshold_filter(kMu, 0.9, 0.01, 1000);
  static const ThresholdFilter f8 = build_threshold_filter(kMu, 0.8, 0.01, 1000);
  return k == 0.9 ? f9 : f8;
}

EstimationSettings exact(double eps = 0.01) {
  EstimationSettings s;
  s.mode = EstimationMode::kExact;
  s.eps = eps;
  return s;
}

PortfolioModel coin(double lgd) {
  PortfolioModel m;
  m.default_probabilities = {0.5};
  m.sensitivities = {0.0};
  m.lgd = {lgd};
  m.loadings = {{0.0}};
  m.qubits_per_factor = 1;
  return m;
}

}  // namespace

TEST_CASE("safe points sit between consecutive losses") {
  const RiskEngine e(qcr::testing::table_one(), exact());
  CHECK(e.losses().size() == 16);
  CHECK(e.min_gap() == doctest::Approx(1554.54).epsilon(1e-9));
  CHECK(e.safe_point(0.0) == doctest::Approx(13719.59 / 2).epsilon(1e-12));
  CHECK(e.safe_point(54807.94) == doctest::Approx((54807.94 + 68527.53) / 2).epsilon(1e-12));
  CHECK(e.safe_point(54000.0) == doctest::Approx((53253.40 + 54807.94) / 2).epsilon(1e-12));
  CHECK(e.safe_point(108061.34) > 108061.34);
}

TEST_CASE("exact-mode CDF equals the polynomial-filtered oracle") {
  const RiskEngine e(qcr::testing::table_one(), exact());
  const ScenarioTable table = enumerate(qcr::testing::table_one());
  const ThresholdFilter& f = filter_k(0.9);
  for (double loss : e.losses()) {
    const double probe = e.safe_point(loss);
    const RiskEstimate r = e.estimate_cdf(probe, f);
    const double filtered = filtered_oracle_cdf(table, e.probe_theta(probe, kMu, {}), f.poly);
    CHECK(std::abs(r.value - filtered) <= 1e-6);
    CHECK(std::abs(r.value - cdf(table, loss)) <= 2e-3);
    CHECK(r.lower <= r.value);
    CHECK(r.value <= r.upper);
    CHECK(r.iqae_eps == doctest::Approx(0.01 * 0.81).epsilon(1e-15));
  }
}

TEST_CASE("CDF near zero loss and at the VaR level") {
  const RiskEngine e(qcr::testing::table_one(), exact());
  const RiskEstimate low = e.estimate_cdf(13719.59 - 777.27, filter_k(0.9));
  // published benchmark 0.5752; see the portfolio tests for the model gap
  CHECK(std::abs(low.value - 0.5752) <= 0.012);
  CHECK(std::abs(low.value - 0.5798271624258895) <= 2e-3);
  const RiskEstimate at_var = e.estimate_cdf(e.safe_point(54807.94), filter_k(0.9));
  CHECK(std::abs(at_var.value - 0.9692) <= 0.02);
}

TEST_CASE("shot-mode CDF is monotone within twice eps") {
  EstimationSettings s;
  s.seed = 5;
  const RiskEngine e(qcr::testing::table_one(), s);
  double prev = -1.0;
  for (double loss : e.losses()) {
    const RiskEstimate r = e.estimate_cdf(e.safe_point(loss), filter_k(0.9));
    CHECK(r.value + 2 * s.eps >= prev);
    prev = r.value;
  }
}

TEST_CASE("inverted calibration estimates the same CDF") {
  const RiskEngine e(qcr::testing::table_one(), exact());
  const ScenarioTable table = enumerate(qcr::testing::table_one());
  CalibrationOptions inv;
  inv.inverted = true;
  for (double loss : {13719.59, 39533.81, 73214.50}) {
    const RiskEstimate r = e.estimate_cdf(e.safe_point(loss), filter_k(0.9), inv);
    CHECK(std::abs(r.value - cdf(table, loss)) <= 3e-3);
  }
}

TEST_CASE("exact bisection finds the oracle VaR with a narrowing bracket") {
  const RiskEngine e(qcr::testing::table_one(), exact());
  const RiskEstimate r = e.var_bisection(0.05, filter_k(0.9));
  CHECK(r.value == 54807.94);
  REQUIRE(!r.trace.empty());
  double width = std::numeric_limits<double>::infinity();
  for (const auto& step : r.trace) {
    CHECK(step.lo < 54807.94);
    CHECK(54807.94 <= step.hi);
    CHECK(step.hi - step.lo < width);
    width = step.hi - step.lo;
    CHECK(step.lo < step.probe);
    CHECK(step.probe < step.hi);
  }
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    if (r.trace[i - 1].decision == "accept") {
      const double before = r.trace[i - 1].hi - r.trace[i - 1].lo;
      CHECK(r.trace[i].hi - r.trace[i].lo <= 0.5 * before + 1e-9);
    }
  }
  CHECK(r.lower < r.value);
  CHECK(r.value <= r.upper);
  CHECK(r.iqae_runs >= r.trace.size());
}

TEST_CASE("bisection decisions do not depend on k in exact mode") {
  const RiskEngine e(qcr::testing::table_one(), exact());
  const RiskEstimate a = e.var_bisection(0.05, filter_k(0.9));
  const RiskEstimate b = e.var_bisection(0.05, filter_k(0.8));
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].probe == b.trace[i].probe);
    CHECK(a.trace[i].decision == b.trace[i].decision);
  }
  CHECK(a.value == b.value);
}

TEST_CASE("bisection edge cases") {
  const RiskEngine e(qcr::testing::table_one(), exact());
  CHECK(e.var_bisection(0.99, filter_k(0.9)).value == 0.0);
  const RiskEngine c(coin(250.0), exact());
  CHECK(c.var_bisection(0.25, filter_k(0.9)).value == 250.0);
  CHECK_THROWS_AS(e.var_bisection(0.0, filter_k(0.9)), ValidationError);
}

TEST_CASE("a filter that under-reports the CDF cannot bracket the VaR") {
  // Half-height polynomial labelled with k = 0.9: every estimate is ~0.25.
  ThresholdFilter f;
  f.poly = approximate(threshold_target(kMu, 0.45, 0.05), 100);
  f.phases = solve_phases(f.poly);
  f.poly.k = 0.9;
  const RiskEngine e(qcr::testing::table_one(), exact());
  CHECK_THROWS_AS(e.var_bisection(0.05, f), BracketingError);
}

TEST_CASE("shot-mode bisection on the reference portfolio") {
  for (std::uint64_t seed : {1, 2, 3}) {
    EstimationSettings s;
    s.seed = seed;
    const RiskEngine e(qcr::testing::table_one(), s);
    CHECK(e.var_bisection(0.05, filter_k(0.9)).value == 54807.94);
  }
}

TEST_CASE("mismatched phases are refused") {
  ThresholdFilter f = filter_k(0.9);
  f.phases.polynomial_digest = "0000000000000000";
  const RiskEngine e(qcr::testing::table_one(), exact());
  CHECK_THROWS_AS(e.estimate_cdf(30000.0, f), CacheMismatchError);
}

TEST_CASE("expected loss within the Taylor bound") {
  const RiskEngine e(qcr::testing::table_one(), exact());
  const double oracle = oracle_metrics(enumerate(qcr::testing::table_one()), 0.05).expected_loss;
  const RiskEstimate r = e.expected_loss(0.05);
  const double lm = 108061.34;
  const double cubic = (lm / 0.05) * (2.0 / 3.0) * std::pow(0.025, 3);
  CHECK(std::abs(r.value - oracle) <= cubic + 1e-6);
  CHECK(std::abs(r.value - oracle) <= r.error_bound);
  CHECK(r.error_bound == doctest::Approx(expected_loss_bias_bound(lm, 0.05)).epsilon(1e-15));
  CHECK(r.lower <= r.value);
  CHECK(r.value <= r.upper);
}

TEST_CASE("expected-loss bias is second order in c") {
  const RiskEngine e(qcr::testing::table_one(), exact());
  const double oracle = oracle_metrics(enumerate(qcr::testing::table_one()), 0.05).expected_loss;
  const double b1 = std::abs(e.expected_loss(0.1).value - oracle);
  const double b2 = std::abs(e.expected_loss(0.05).value - oracle);
  const double b3 = std::abs(e.expected_loss(0.025).value - oracle);
  CHECK(b1 / b2 == doctest::Approx(4.0).epsilon(0.01));
  CHECK(b2 / b3 == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("a distribution symmetric about L_M/2 has no expected-loss bias") {
  const RiskEngine e(coin(1000.0), exact());
  for (double c : {0.05, 0.2, 0.5}) CHECK(std::abs(e.expected_loss(c).value - 500.0) <= 1e-8);
}

TEST_CASE("lower-tail partial expectation within the certified error") {
  const RiskEngine e(qcr::testing::table_one(), exact());
  const OracleMetrics m = oracle_metrics(enumerate(qcr::testing::table_one()), 0.05);
  const RiskEstimate r = e.estimate_cvar(54807.94, 0.05, 0.9, 1000, filter_k(0.9));
  CHECK(std::abs(r.value - m.lower_tail_partial_expectation) <= r.error_bound);
  CHECK(r.iqae_runs == 2);
  const RiskEstimate zero = e.estimate_cvar(0.0, 0.05, 0.9, 1000, filter_k(0.9));
  CHECK(std::abs(zero.value) <= zero.error_bound);
  CHECK_THROWS_AS(e.estimate_cvar(108061.34, 0.05, 0.9, 1000, filter_k(0.9)), ValidationError);
}

TEST_CASE("halving c shrinks the tail-expectation deviation fourfold" * doctest::test_suite("c_sensitivity")) {
  const RiskEngine e(qcr::testing::table_one(), exact());
  const double oracle = oracle_metrics(enumerate(qcr::testing::table_one()), 0.05).lower_tail_partial_expectation;
  const double d1 = std::abs(e.estimate_cvar(54807.94, 0.05, 0.9, 1000, filter_k(0.9)).value - oracle);
  const double d2 = std::abs(e.estimate_cvar(54807.94, 0.025, 0.9, 1000, filter_k(0.9)).value - oracle);
  MESSAGE("deviation at c=0.05: " << d1 << ", at c=0.025: " << d2);
  CHECK(d1 >= 4.0 * d2);
}

TEST_CASE("free-function wrappers agree with the engine") {
  const PortfolioModel m = qcr::testing::table_one();
  const RiskEngine e(m, exact());
  CHECK(estimate_cdf(m, 30000.0, filter_k(0.9), exact()).value == e.estimate_cdf(30000.0, filter_k(0.9)).value);
  CHECK(expected_loss(m, 0.05, exact()).value == e.expected_loss(0.05).value);
}
