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

#include "qcr/qsp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "qcr/errors.hpp"

namespace qcr {

namespace {

using cd = std::complex<double>;

// Row vector (a, b) times e^{i t Z} W(x), with s = sqrt(1 - x^2).
inline void step_right(cd& a, cd& b, double t, double x, double s) {
  const cd ea = a * std::polar(1.0, t);
  const cd eb = b * std::polar(1.0, -t);
  a = ea * x + eb * cd(0.0, s);
  b = ea * cd(0.0, s) + eb * x;
}

// Top-left entry of the full product at x.
cd top_left(std::span<const double> t, double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  cd a = 1.0;
  cd b = 0.0;
  const std::size_t d = t.size() - 1;
  for (std::size_t m = 0; m < d; ++m) step_right(a, b, t[m], x, s);
  return a * std::polar(1.0, t[d]);
}

std::vector<double> expand(const Eigen::VectorXd& reduced, std::size_t d) {
  std::vector<double> t(d + 1);
  for (std::size_t m = 0; m <= d; ++m) t[m] = reduced(static_cast<Eigen::Index>(std::min(m, d - m)));
  return t;
}

double max_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

Eigen::Matrix2cd signal_unitary(double theta, std::span<const double> signal) {
  if (signal.empty()) throw ValidationError("signal_unitary: need at least one phase");
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2cd w;
  w << x, cd(0.0, s), cd(0.0, s), x;
  auto zphase = [](double t) {
    Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
    z(0, 0) = std::polar(1.0, t);
    z(1, 1) = std::polar(1.0, -t);
    return z;
  };
  Eigen::Matrix2cd u = zphase(signal[0]);
  for (std::size_t m = 1; m < signal.size(); ++m) u = u * w * zphase(signal[m]);
  return u;
}

double verify_phases(std::span<const double> signal, const ChebyshevPolynomial& poly,
                     std::size_t grid) {
  if (signal.empty()) throw ValidationError("verify_phases: empty phase sequence");
  if (grid < 2) throw ValidationError("verify_phases: grid too small");
  double worst = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double theta = std::numbers::pi * static_cast<double>(i) / static_cast<double>(grid - 1);
    const double x = std::cos(theta);
    worst = std::max(worst, std::abs(top_left(signal, x).real() - evaluate(poly, x)));
  }
  return worst;
}

std::vector<double> to_projector_phases(std::span<const double> signal) {
  const std::size_t d = signal.size() - 1;
  if (signal.empty() || d < 2 || d % 2 != 0) {
    throw ValidationError("to_projector_phases: need an even degree >= 2");
  }
  const double half_pi = std::numbers::pi / 2;
  std::vector<double> phi(d);  // phi[j - 1] = phi_j
  phi[d - 1] = signal[0] + signal[d] - half_pi + ((d / 2) % 2 == 1 ? std::numbers::pi : 0.0);
  for (std::size_t m = 1; m < d; ++m) phi[d - m - 1] = signal[m] - half_pi;
  return phi;
}

PhaseSequence solve_phases(const ChebyshevPolynomial& poly, const QspSolverOptions& options) {
  const std::size_t d = poly.degree();
  if (d % 2 != 0) throw ValidationError("solve_phases: polynomial degree must be even");
  if (!(poly.sup_norm <= 1.0)) throw ValidationError("solve_phases: polynomial exceeds 1 in sup-norm");
  const std::size_t nd = d / 2 + 1;
  const auto ndi = static_cast<Eigen::Index>(nd);

  std::vector<double> nodes(nd);
  Eigen::VectorXd target(ndi);
  for (std::size_t k = 0; k < nd; ++k) {
    nodes[k] = std::cos((2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi /
                        (4.0 * static_cast<double>(nd)));
    target(static_cast<Eigen::Index>(k)) = evaluate(poly, nodes[k]);
  }

  auto residual = [&](const Eigen::VectorXd& reduced) {
    const auto t = expand(reduced, d);
    Eigen::VectorXd f(ndi);
    for (std::size_t k = 0; k < nd; ++k) {
      f(static_cast<Eigen::Index>(k)) = top_left(t, nodes[k]).real() - target(static_cast<Eigen::Index>(k));
    }
    return f;
  };

  // With U = L_m e^{i t_m Z} R_m, where L_m ends in the W before t_m and R_m
  // starts with the W after it, dU_00/dt_m = (row 0 of L_m) iZ e^{i t_m Z}
  // (column 0 of R_m). Columns accumulate into the reduced unknown min(m, d - m).
  auto jacobian = [&](const Eigen::VectorXd& reduced) {
    const auto t = expand(reduced, d);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(ndi, ndi);
    std::vector<cd> right0(d + 1);
    std::vector<cd> right1(d + 1);
    for (std::size_t k = 0; k < nd; ++k) {
      const double x = nodes[k];
      const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
      right0[d] = 1.0;
      right1[d] = 0.0;
      for (std::size_t m = d; m-- > 0;) {
        const cd v0 = std::polar(1.0, t[m + 1]) * right0[m + 1];
        const cd v1 = std::polar(1.0, -t[m + 1]) * right1[m + 1];
        right0[m] = x * v0 + cd(0.0, s) * v1;
        right1[m] = cd(0.0, s) * v0 + x * v1;
      }
      cd a = 1.0;
      cd b = 0.0;
      const auto row = static_cast<Eigen::Index>(k);
      for (std::size_t m = 0; m <= d; ++m) {
        const cd deriv = cd(0.0, 1.0) * (a * std::polar(1.0, t[m]) * right0[m] -
                                         b * std::polar(1.0, -t[m]) * right1[m]);
        jac(row, static_cast<Eigen::Index>(std::min(m, d - m))) += deriv.real();
        if (m < d) step_right(a, b, t[m], x, s);
      }
    }
    return jac;
  };

  Eigen::VectorXd reduced = Eigen::VectorXd::Zero(ndi);
  reduced(0) = std::numbers::pi / 4;

  Eigen::VectorXd f = residual(reduced);
  double err = max_abs(f);
  std::size_t it = 0;
  for (; it < options.max_iterations; ++it) {
    if (err < options.tolerance * 1e-4) break;
    const Eigen::MatrixXd jac = jacobian(reduced);
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(f);
    double lambda = 1.0;
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries, lambda *= 0.5) {
      Eigen::VectorXd trial = reduced - lambda * step;
      Eigen::VectorXd ft = residual(trial);
      const double et = max_abs(ft);
      if (std::isfinite(et) && et < err) {
        reduced = std::move(trial);
        f = std::move(ft);
        improved = err - et > 1e-3 * err;
        err = et;
        break;
      }
    }
    if (!improved) break;
  }

  PhaseSequence out;
  out.signal = expand(reduced, d);
  out.residual = err;
  out.iterations = it;
  out.polynomial_digest = coefficient_digest(poly.coefficients);
  out.verification_error =
      verify_phases(out.signal, poly, std::max(options.verify_points, d));
  if (err > options.tolerance) {
    throw ConvergenceError("solve_phases: node residual " + std::to_string(err) +
                               " above tolerance after " + std::to_string(it) + " iterations",
                           err);
  }
  if (out.verification_error > options.verify_tolerance) {
    throw ConvergenceError("solve_phases: verification error " +
                               std::to_string(out.verification_error) + " above tolerance",
                           out.verification_error);
  }
  if (d >= 2) out.phases = to_projector_phases(out.signal);
  return out;
}

}  // namespace qcr
