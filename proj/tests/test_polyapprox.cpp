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
#include <random>

#include "qcr/chebyshev.hpp"
#include "qcr/errors.hpp"

using namespace qcr;

namespace {

TargetFunction custom(std::function<double(double)> f) {
  TargetFunction t;
  t.smooth = f;
  t.ideal = f;
  return t;
}

}  // namespace

TEST_CASE("threshold target values") {
  const TargetFunction f = threshold_target(0.5, 0.9, 0.01);
  CHECK(f(0.0) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(std::abs(f(0.99)) < 1e-15);
  CHECK(f(0.5) == doctest::Approx(0.45).epsilon(1e-15));
  CHECK(f(-0.3) == f(0.3));
}

TEST_CASE("threshold target is monotone inside the bands") {
  const TargetFunction f = threshold_target(0.7, 0.9, 0.01);
  double prev = f(0.69);
  for (double x = 0.69; x <= 0.71; x += 1e-4) {
    CHECK(f(x) <= prev + 1e-15);
    prev = f(x);
  }
}

TEST_CASE("threshold target matches k tau outside the bands") {
  // The kernel width keeps the off-band deviation below 1e-8; see the
  // design notes in the README for the trade-off with degree 1000.
  const TargetFunction f = threshold_target(std::sin(std::numbers::pi / 4), 0.9, 0.01);
  double worst = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double x = -1.0 + 2.0 * i / 20000.0;
    if (std::abs(std::abs(x) - f.mu) <= f.delta) continue;
    worst = std::max(worst, std::abs(f(x) - f.ideal(x)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("tail-loss target values") {
  const double mu = 0.6;
  const TargetFunction f = cvar_target(mu, 0.9);
  CHECK(f(0.0) == doctest::Approx(0.9 * mu).epsilon(1e-15));
  CHECK(f(mu) == 0.0);
  CHECK(f(0.8) == 0.0);
  CHECK(cvar_target(mu, 1.0)(mu / std::sqrt(2.0)) == doctest::Approx(mu / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(f(-0.2) == f(0.2));
}

TEST_CASE("constant target yields a single coefficient") {
  const ChebyshevPolynomial p = approximate(custom([](double) { return 0.9; }), 8);
  CHECK(p.coefficients[0] == doctest::Approx(0.9).epsilon(1e-14));
  for (std::size_t n = 1; n < p.coefficients.size(); ++n) CHECK(std::abs(p.coefficients[n]) < 1e-15);
  CHECK(p.scale == 1.0);
  CHECK(evaluate(p, 0.0) == doctest::Approx(0.9).epsilon(1e-14));
}

TEST_CASE("x squared is reproduced at Chebyshev nodes") {
  const ChebyshevPolynomial p = approximate(custom([](double x) { return 0.5 * x * x; }), 16);
  for (int k = 0; k < 64; ++k) {
    const double x = std::cos((2 * k + 1) * std::numbers::pi / 128);
    CHECK(std::abs(evaluate(p, x) - 0.5 * x * x) < 1e-10);
  }
}

TEST_CASE("odd targets are rejected and odd degrees refused") {
  CHECK_THROWS_AS(approximate(custom([](double x) { return 0.5 * x; }), 8), ValidationError);
  CHECK_THROWS_AS(approximate(custom([](double x) { return 0.2 * x * x; }), 7), ValidationError);
  CHECK_THROWS_AS(approximate(custom([](double x) { return 0.2 * x * x; }), 2), ValidationError);
}

TEST_CASE("degree 1000 threshold polynomial certificate") {
  const double mu = std::sin(std::numbers::pi / 4);
  const ChebyshevPolynomial p = approximate(threshold_target(mu, 0.9, 0.01), 1000);
  CHECK(p.degree() == 1000);
  CHECK(p.max_deviation < 1e-3);
  CHECK(p.sup_norm <= 1.0);
  CHECK(p.band_deviation <= std::max(p.k, 1.0) / 2 + p.max_deviation);
  CHECK(p.odd_mass < 1e-10);
  for (std::size_t n = 1; n < p.coefficients.size(); n += 2) CHECK(p.coefficients[n] == 0.0);

  double sup = 0.0;
  double off_band = 0.0;
  for (std::size_t i = 0; i < kCertificationGrid; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / (kCertificationGrid - 1);
    const double v = evaluate(p, x);
    CHECK(v == evaluate(p, -x));
    sup = std::max(sup, std::abs(v));
    if (std::abs(std::abs(x) - mu) > 0.01) {
      off_band = std::max(off_band, std::abs(v - (std::abs(x) <= mu ? 0.9 : 0.0)));
    }
  }
  CHECK(sup <= 1.0);
  CHECK(off_band < 1e-3);
}

TEST_CASE("post-scaling keeps the sup-norm under the ceiling") {
  // k close to 1 overshoots near the plateau edges before scaling.
  const ChebyshevPolynomial p = approximate(threshold_target(0.5, 0.999, 0.01), 200);
  CHECK(p.sup_norm <= kSupNormCeiling + 1e-15);
  CHECK(p.scale <= 1.0);
}

TEST_CASE("Clenshaw evaluation agrees with monomial expansion") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t d = 4; d <= 20; d += 2) {
    std::vector<double> c(d + 1, 0.0);
    for (std::size_t n = 0; n <= d; n += 2) c[n] = u(rng) / static_cast<double>(d);
    const ChebyshevPolynomial p = ChebyshevPolynomial::from_coefficients(c);
    // T_n via the three-term recurrence on monomial coefficient vectors, in
    // extended precision: the monomial form cancels heavily near |x| = 1.
    using Wide = long double;
    std::vector<std::vector<Wide>> t = {{1.0L}, {0.0L, 1.0L}};
    for (std::size_t n = 2; n <= d; ++n) {
      std::vector<Wide> next(n + 1, 0.0L);
      for (std::size_t i = 0; i < t[n - 1].size(); ++i) next[i + 1] += 2.0L * t[n - 1][i];
      for (std::size_t i = 0; i < t[n - 2].size(); ++i) next[i] -= t[n - 2][i];
      t.push_back(next);
    }
    std::vector<Wide> mono(d + 1, 0.0L);
    for (std::size_t n = 0; n <= d; ++n) {
      for (std::size_t i = 0; i < t[n].size(); ++i) mono[i] += c[n] * t[n][i];
    }
    for (int s = 0; s < 20; ++s) {
      const double x = u(rng);
      Wide w = 0.0L;
      for (std::size_t i = d + 1; i-- > 0;) w = w * x + mono[i];
      const double v = static_cast<double>(w);
      CHECK(std::abs(evaluate(p, x) - v) < 1e-12);
      CHECK(evaluate(p, x) == evaluate(p, -x));
    }
  }
  CHECK_THROWS_AS(ChebyshevPolynomial::from_coefficients({0.1, 0.2}), ValidationError);
}

TEST_CASE("evaluation domain and sampling") {
  const ChebyshevPolynomial p = ChebyshevPolynomial::from_coefficients({0.9, 0.0, 0.0});
  CHECK(evaluate(p, 0.0) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK_THROWS_AS(evaluate(p, 1.01), ValidationError);
  const auto samples = sample_polynomial(p, 11);
  CHECK(samples.size() == 11);
  CHECK(samples.front().first == -1.0);
  CHECK(samples.back().first == 1.0);
}

TEST_CASE("coefficient digest is stable and sensitive") {
  const std::vector<double> a = {0.5, 0.0, 0.25};
  std::vector<double> b = a;
  b[2] = std::nextafter(b[2], 1.0);
  CHECK(coefficient_digest(a) == coefficient_digest(a));
  CHECK(coefficient_digest(a) != coefficient_digest(b));
  CHECK(coefficient_digest(a).size() == 16);
}
