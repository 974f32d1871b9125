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

#include <numbers>

#include "qcr/errors.hpp"
#include "qcr/loading.hpp"
#include "qcr/portfolio.hpp"
#include "qcr/statevector.hpp"
#include "qcr/uncertainty.hpp"
#include "support.hpp"

using namespace qcr;
using std::numbers::pi;

namespace {

const double kMu = std::sin(pi / 4);

PortfolioModel random_model(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 0.3);
  PortfolioModel m;
  for (std::size_t i = 0; i < n; ++i) {
    m.default_probabilities.push_back(u(rng));
    m.sensitivities.push_back(u(rng));
    m.lgd.push_back(10000.0 * u(rng));
    m.loadings.push_back({u(rng)});
  }
  m.qubits_per_factor = 1;
  return m;
}

// Amplitude of |1>_T after A on |j>_C|0>_T, read from the statevector.
double loaded_amplitude(const LoadingCircuit& a, std::uint64_t j) {
  const Register& c = a.layout.get(kCounterpartyRegister);
  Statevector s = Statevector::basis(a.layout, j << c.first);
  s.apply(a.op);
  return s.amplitude((j << c.first) | (std::uint64_t{1} << a.loss_qubit)).real();
}

}  // namespace

TEST_CASE("symmetric midpoint calibration has zero offset") {
  const double lm = 108061.34;
  const ThetaMap t = calibrate_theta(lm / 2, lm, kMu);
  CHECK(std::abs(t.offset) < 1e-15);
  CHECK(t.slope == doctest::Approx((pi / 4) / (lm / 2)).epsilon(1e-14));
}

TEST_CASE("safest calibration at the reference VaR level") {
  const double lm = 108061.34;
  const double lt = 54807.94;
  const ThetaMap t = calibrate_theta(lt, lm, kMu, 0.0, pi / 2);
  // Both constraints bound the offset from below; the balance point is
  // negative here, so the lower window edge binds.
  const double balance = (lm * std::asin(kMu) - lt * pi / 2) / (lm - lt);
  CHECK(balance < 0.0);
  CHECK(t.offset == 0.0);
  CHECK(t.slope == doctest::Approx(std::asin(kMu) / lt).epsilon(1e-14));
  CHECK(t.rotation(lm) <= pi / 2);
}

TEST_CASE("calibrated map hits mu at the target and stays in the window") {
  const double lm = 1000.0;
  for (double lt : {50.0, 200.0, 500.0, 700.0, 950.0}) {
    for (double mu : {0.3, kMu, 0.9}) {
      const ThetaMap t = calibrate_theta(lt, lm, mu, 0.0, pi / 2);
      CHECK(std::sin(t.rotation(lt)) == doctest::Approx(mu).epsilon(1e-13));
      CHECK(t.rotation(0.0) >= -1e-15);
      CHECK(t.rotation(lm) <= pi / 2 + 1e-12);
      for (double x = 0.0; x <= lm; x += 7.0) {
        if (std::abs(x - lt) < 1e-9) continue;
        CHECK((std::sin(t.rotation(x)) <= mu) == (x < lt));
      }
      CHECK(t.angle(123.0 + 456.0) == doctest::Approx(t.angle(123.0) + t.angle(456.0)).epsilon(1e-15));
    }
  }
}

TEST_CASE("inverted calibration selects the upper side") {
  const double lm = 1000.0;
  const ThetaMap t = calibrate_theta(300.0, lm, kMu, 0.0, pi / 2, true);
  CHECK(t.slope < 0.0);
  CHECK(std::sin(t.rotation(300.0)) == doctest::Approx(kMu).epsilon(1e-13));
  CHECK(t.rotation(0.0) <= pi / 2 + 1e-12);
  CHECK(t.rotation(lm) >= -1e-12);
  for (double x = 0.0; x <= lm; x += 10.0) {
    if (x == 300.0) continue;
    CHECK(separates(t, x));
  }
}

TEST_CASE("calibration input validation") {
  CHECK_THROWS_AS(calibrate_theta(0.0, 10.0, kMu), ValidationError);
  CHECK_THROWS_AS(calibrate_theta(10.0, 10.0, kMu), ValidationError);
  CHECK_THROWS_AS(calibrate_theta(5.0, 10.0, 1.0), ValidationError);
  CHECK_THROWS_AS(calibrate_theta(5.0, 10.0, kMu, -1.0, pi / 2), ValidationError);
  CHECK_THROWS_AS(calibrate_theta(5.0, 10.0, kMu, 0.0, 0.5), ValidationError);
  CHECK_THROWS_AS(calibrate_theta(5.0, 10.0, kMu, 0.0, 3.0), ValidationError);
}

TEST_CASE("loading encodes sin(offset + slope L_j) for every scenario") {
  const PortfolioModel m = qcr::testing::table_one();
  const ScenarioTable table = enumerate(m);
  const ThetaMap t = calibrate_theta(54807.94, table.max_loss, kMu);
  const LoadingCircuit a = build_loading(m, t);
  CHECK(loaded_amplitude(a, 0) == doctest::Approx(std::sin(t.offset)).epsilon(1e-12));
  CHECK(std::abs(loaded_amplitude(a, 15) - std::sin(t.rotation(table.max_loss))) <= 1e-10);
  for (std::uint64_t j = 0; j < 16; ++j) {
    CHECK(std::abs(loaded_amplitude(a, j) - std::sin(t.rotation(scenario_loss(m, j)))) <= 1e-10);
  }
}

TEST_CASE("additivity holds exhaustively up to eight counterparties") {
  for (std::size_t n = 1; n <= 8; ++n) {
    const PortfolioModel m = random_model(n, 100 + n);
    double lm = 0.0;
    for (double l : m.lgd) lm += l;
    const ThetaMap t = calibrate_theta(0.4 * lm, lm, kMu);
    const LoadingCircuit a = build_loading(m, t);
    double worst = 0.0;
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) {
      worst = std::max(worst, std::abs(loaded_amplitude(a, j) - std::sin(t.rotation(scenario_loss(m, j)))));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("loading depth is one rotation plus one controlled rotation per counterparty") {
  for (std::size_t n = 1; n <= 10; ++n) {
    const PortfolioModel m = random_model(n, n);
    double lm = 0.0;
    for (double l : m.lgd) lm += l;
    const GateCounts c = build_loading(m, calibrate_theta(lm / 3, lm, kMu)).op.counts();
    CHECK(c.controlled_rotations == n);
    CHECK(c.rotations == 1);
    CHECK(c.total() == n + 1);
  }
}

TEST_CASE("loading rejects maps that leave the calibrated window") {
  const PortfolioModel m = qcr::testing::table_one();
  ThetaMap t = calibrate_theta(54807.94, 108061.34, kMu);
  t.slope *= 1.2;
  CHECK_THROWS_AS(build_loading(m, t), CalibrationError);
}

TEST_CASE("expected-loss map spans pi/4 -+ c/2") {
  const ThetaMap t = expected_loss_theta(200.0, 0.1);
  CHECK(t.rotation(0.0) == doctest::Approx(pi / 4 - 0.05).epsilon(1e-15));
  CHECK(t.rotation(200.0) == doctest::Approx(pi / 4 + 0.05).epsilon(1e-15));
  CHECK_THROWS_AS(expected_loss_theta(200.0, 0.0), ValidationError);
  CHECK_THROWS_AS(expected_loss_theta(200.0, 0.6), ValidationError);
}
