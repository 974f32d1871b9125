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

#include "qcr/chebyshev.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>

#include "qcr/errors.hpp"

namespace qcr {

TargetFunction threshold_target(double mu, double k, double delta) {
  if (!(mu > 0.0 && mu < 1.0)) throw ValidationError("threshold_target: mu must lie in (0, 1)");
  if (!(k > 0.0 && k < 1.0)) throw ValidationError("threshold_target: k must lie in (0, 1)");
  if (!(delta > 0.0)) throw ValidationError("threshold_target: delta must be positive");
  TargetFunction t;
  t.kind = TargetKind::kThreshold;
  t.mu = mu;
  t.k = k;
  t.delta = delta;
  // A ramp of width delta/4 leaves ~1e-8 of the plateau outside the bands,
  // which keeps the degree-1000 projection within 1e-3 there.
  const double width = delta / 4.0;
  t.smooth = [mu, k, width](double x) { return 0.5 * k * std::erfc((std::abs(x) - mu) / width); };
  t.ideal = [mu, k](double x) { return std::abs(x) <= mu ? k : 0.0; };
  return t;
}

TargetFunction cvar_target(double mu, double k) {
  if (!(mu > 0.0 && mu < 1.0)) throw ValidationError("cvar_target: mu must lie in (0, 1)");
  if (!(k > 0.0 && k <= 1.0)) throw ValidationError("cvar_target: k must lie in (0, 1]");
  TargetFunction t;
  t.kind = TargetKind::kTailLoss;
  t.mu = mu;
  t.k = k;
  t.smooth = [mu, k](double x) { return k * std::sqrt(std::max(mu * mu - x * x, 0.0)); };
  t.ideal = t.smooth;
  return t;
}

ChebyshevPolynomial ChebyshevPolynomial::from_coefficients(std::vector<double> coefficients) {
  if (coefficients.empty()) throw ValidationError("polynomial needs at least one coefficient");
  for (std::size_t n = 1; n < coefficients.size(); n += 2) {
    if (coefficients[n] != 0.0) throw ValidationError("polynomial must be even");
  }
  if (coefficients.size() % 2 == 0) coefficients.pop_back();  // trailing odd slot
  ChebyshevPolynomial p;
  p.coefficients = std::move(coefficients);
  double sup = 0.0;
  for (std::size_t i = 0; i <= kCertificationGrid; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / kCertificationGrid;
    sup = std::max(sup, std::abs(evaluate(p, x)));
  }
  p.sup_norm = sup;
  return p;
}

namespace {

bool in_band(const TargetFunction& target, double x) {
  return target.delta > 0.0 && std::abs(std::abs(x) - target.mu) <= target.delta;
}

}  // namespace

ChebyshevPolynomial approximate(const TargetFunction& target, std::size_t degree,
                                const ApproximationOptions& options) {
  if (degree < 4 || degree % 2 != 0) {
    throw ValidationError("approximate: degree must be even and at least 4");
  }
  if (!target.smooth) throw ValidationError("approximate: empty target");
  std::size_t nodes = options.quadrature_nodes == 0 ? 4 * degree : options.quadrature_nodes;
  nodes = std::max(nodes, 2 * degree);

  const double pi = std::numbers::pi;
  std::vector<double> fvals(nodes);
  std::vector<double> angle(nodes);
  for (std::size_t m = 0; m < nodes; ++m) {
    angle[m] = (static_cast<double>(m) + 0.5) * pi / static_cast<double>(nodes);
    fvals[m] = target.smooth(std::cos(angle[m]));
  }
  std::vector<double> coeffs(degree + 1, 0.0);
  for (std::size_t n = 0; n <= degree; ++n) {
    double sum = 0.0;
    for (std::size_t m = 0; m < nodes; ++m) {
      sum += fvals[m] * std::cos(static_cast<double>(n) * angle[m]);
    }
    coeffs[n] = 2.0 * sum / static_cast<double>(nodes);
  }
  coeffs[0] /= 2.0;

  ChebyshevPolynomial p;
  for (std::size_t n = 1; n <= degree; n += 2) {
    p.odd_mass += std::abs(coeffs[n]);
    coeffs[n] = 0.0;
  }
  if (p.odd_mass > 1e-10) {
    throw ValidationError("approximate: target is not even (odd Chebyshev mass " +
                          std::to_string(p.odd_mass) + ")");
  }
  p.coefficients = std::move(coeffs);
  p.kind = target.kind;
  p.k = target.k;
  p.mu = target.mu;
  p.delta = target.delta;

  const std::size_t points = std::max<std::size_t>(options.certification_points, 2);
  auto grid_x = [points](std::size_t i) {
    return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(points);
  };
  double sup = 0.0;
  for (std::size_t i = 0; i <= points; ++i) sup = std::max(sup, std::abs(evaluate(p, grid_x(i))));
  if (sup > kSupNormCeiling) {
    p.scale = kSupNormCeiling / sup;
    for (auto& c : p.coefficients) c *= p.scale;
  }

  const auto& ideal = target.ideal ? target.ideal : target.smooth;
  p.sup_norm = 0.0;
  for (std::size_t i = 0; i <= points; ++i) {
    const double x = grid_x(i);
    const double v = evaluate(p, x);
    p.sup_norm = std::max(p.sup_norm, std::abs(v));
    const double dev = std::abs(v - ideal(x));
    if (in_band(target, x)) {
      p.band_deviation = std::max(p.band_deviation, dev);
    } else {
      p.max_deviation = std::max(p.max_deviation, dev);
    }
  }
  return p;
}

double evaluate(const ChebyshevPolynomial& poly, double x) {
  if (!(std::abs(x) <= 1.0 + 1e-12)) throw ValidationError("evaluate: x outside [-1, 1]");
  const auto& c = poly.coefficients;
  if (c.empty()) return 0.0;
  // Even part only: sum_m c_{2m} T_{2m}(x) = sum_m c_{2m} T_m(2 x^2 - 1).
  const double y = 2.0 * x * x - 1.0;
  double b1 = 0.0;
  double b2 = 0.0;
  const std::size_t top = (c.size() - 1) / 2;
  for (std::size_t m = top; m >= 1; --m) {
    const double b0 = c[2 * m] + 2.0 * y * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + y * b1 - b2;
}

std::vector<std::pair<double, double>> sample_polynomial(const ChebyshevPolynomial& poly,
                                                         std::size_t count) {
  if (count < 2) throw ValidationError("sample_polynomial: need at least two points");
  std::vector<std::pair<double, double>> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(count - 1);
    out[i] = {x, evaluate(poly, x)};
  }
  return out;
}

std::string coefficient_digest(const std::vector<double>& coefficients) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (double c : coefficients) {
    auto bits = std::bit_cast<std::uint64_t>(c);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qcr
