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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcr/chebyshev.hpp"

namespace qcr {

/**
 * Phase factors for one even polynomial, in two conventions.
 *
 * `signal` holds d + 1 angles t_0..t_d of the product
 *   e^{i t_0 Z} W(x) e^{i t_1 Z} W(x) ... W(x) e^{i t_d Z},
 *   W(x) = [[x, i sqrt(1 - x^2)], [i sqrt(1 - x^2), x]],
 * whose top-left entry has real part P(x).
 * `phases` holds the d angles phi_1..phi_d consumed by the projector-rotation
 * circuit in the qsvt module (see to_projector_phases).
 */
struct PhaseSequence {
  std::vector<double> signal;
  std::vector<double> phases;
  std::string polynomial_digest;
  double residual = 0.0;            // max node error reached by the solver
  double verification_error = 0.0;  // verify_phases on the default grid
  std::size_t iterations = 0;

  std::size_t degree() const { return signal.empty() ? 0 : signal.size() - 1; }
};

/// x = cos(theta).
Eigen::Matrix2cd signal_unitary(double theta, std::span<const double> signal);

struct QspSolverOptions {
  double tolerance = 1e-8;           // max node residual
  double verify_tolerance = 1e-6;    // max error on the verification grid
  std::size_t verify_points = 1000;  // raised to the degree when smaller
  std::size_t max_iterations = 60;
};

/**
 * Newton iteration on the d/2 + 1 symmetric unknowns t_m = t_{d-m}, solving
 * Re U_00(x_k) = P(x_k) on x_k = cos((2k - 1) pi / (4 (d/2 + 1))). Starts from
 * (pi/4, 0, ..., 0, pi/4); steps are halved while they increase the residual.
 * Throws ConvergenceError (carrying the best residual) when either tolerance
 * is missed.
 */
PhaseSequence solve_phases(const ChebyshevPolynomial& poly, const QspSolverOptions& options = {});

/// max |Re U_00(cos theta) - P(cos theta)| over `grid` equispaced theta in [0, pi].
double verify_phases(std::span<const double> signal, const ChebyshevPolynomial& poly,
                     std::size_t grid);

/**
 * Signal-convention angles to the projector-rotation phases phi_1..phi_d:
 *   phi_{d-m} = t_m - pi/2              (0 < m < d)
 *   phi_d     = t_0 + t_d - pi/2 (+ pi when d/2 is odd)
 * The circuit of build_qsvt then realizes P on its (T=0, B=0) block.
 */
std::vector<double> to_projector_phases(std::span<const double> signal);

}  // namespace qcr
