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

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace qcr {

enum class TargetKind { kThreshold, kTailLoss, kCustom };

/**
 * Function to approximate. `smooth` is what the quadrature samples; `ideal`
 * is what the certificate compares against. They differ only for the
 * threshold, whose jump at |x| = mu is replaced by an erfc ramp.
 */
struct TargetFunction {
  TargetKind kind = TargetKind::kCustom;
  double mu = 0.0;
  double k = 1.0;
  double delta = 0.0;  // half-width of the excluded bands around +-mu
  std::function<double(double)> smooth;
  std::function<double(double)> ideal;

  double operator()(double x) const { return smooth(x); }
};

/// k * 1{|x| <= mu}, smoothed as (k/2) erfc((|x| - mu) / (delta / 4)).
TargetFunction threshold_target(double mu, double k, double delta);

/// k * sqrt(mu^2 - x^2) on |x| <= mu, zero outside.
TargetFunction cvar_target(double mu, double k);

/// Even polynomial in the Chebyshev basis with its approximation record.
struct ChebyshevPolynomial {
  std::vector<double> coefficients;  // T_0 .. T_d, odd entries exactly zero
  TargetKind kind = TargetKind::kCustom;
  double k = 1.0;
  double mu = 0.0;
  double delta = 0.0;
  double scale = 1.0;           // factor applied to keep the sup-norm below 1
  double sup_norm = 0.0;        // max |P| on the certification grid
  double max_deviation = 0.0;   // max |P - ideal| off the bands
  double band_deviation = 0.0;  // max |P - ideal| inside the bands
  double odd_mass = 0.0;        // sum |c_odd| before they were zeroed

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }

  /// Wraps explicit coefficients (odd entries must be zero).
  static ChebyshevPolynomial from_coefficients(std::vector<double> coefficients);
};

inline constexpr std::size_t kCertificationGrid = 10000;
inline constexpr double kSupNormCeiling = 1.0 - 1e-4;

struct ApproximationOptions {
  std::size_t quadrature_nodes = 0;  // 0 means 4 d; never fewer than 2 d
  std::size_t certification_points = kCertificationGrid;
};

/// Chebyshev-Gauss projection of `target` onto degree d, then forced even,
/// rescaled if needed, and certified on an equispaced grid over [-1, 1].
ChebyshevPolynomial approximate(const TargetFunction& target, std::size_t degree,
                                const ApproximationOptions& options = {});

/// Clenshaw recurrence in y = 2 x^2 - 1, so P(x) == P(-x) bit for bit.
double evaluate(const ChebyshevPolynomial& poly, double x);

/// (x, P(x)) on `count` equispaced points of [-1, 1].
std::vector<std::pair<double, double>> sample_polynomial(const ChebyshevPolynomial& poly,
                                                         std::size_t count);

/// Stable 64-bit digest of the coefficient bits, as 16 hex digits.
std::string coefficient_digest(const std::vector<double>& coefficients);

}  // namespace qcr
