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
#include <numbers>
#include <vector>

#include "qcr/circuit.hpp"
#include "qcr/portfolio.hpp"
#include "qcr/register_layout.hpp"

namespace qcr {

/// Linear loss-to-angle map. Scenario j rotates T by offset + slope * L_j.
struct ThetaMap {
  double offset = 0.0;  // radians
  double slope = 0.0;   // radians per currency unit
  double target_loss = 0.0;
  double max_loss = 0.0;
  double mu = 0.0;
  double beta_min = 0.0;
  double beta_max = std::numbers::pi / 2;
  /// Negative slope: the polynomial then selects losses >= target_loss and
  /// the caller must complement.
  bool inverted = false;

  double angle(double loss) const { return slope * loss; }
  double rotation(double loss) const { return offset + slope * loss; }
};

/**
 * Chooses offset and slope so that sin(rotation(L)) <= mu exactly when
 * L <= target_loss and every rotation stays inside [beta_min, beta_max].
 *
 * Both window constraints bound the offset from below, so the smallest
 * admissible offset (largest slope) is
 *   max{beta_min, (L_M asin(mu) - L_T beta_max) / (L_M - L_T)}.
 * With `inverted` the window is traversed downwards from beta_max and the
 * offset is the largest admissible value instead.
 */
ThetaMap calibrate_theta(double target_loss, double max_loss, double mu,
                         double beta_min = 0.0, double beta_max = std::numbers::pi / 2,
                         bool inverted = false);

/// offset = pi/4 - c/2, slope = c / L_M: rotations span [pi/4 - c/2, pi/4 + c/2].
ThetaMap expected_loss_theta(double max_loss, double c);

/// True when the map sends L to the side of mu that matches L vs target_loss.
bool separates(const ThetaMap& theta, double loss);

struct LoadingCircuit {
  CircuitOp op;
  RegisterLayout layout;  // credit_layout(model)
  ThetaMap theta;
  std::size_t loss_qubit = 0;
  std::vector<std::size_t> counterparty_qubits;
};

/// RY(2 offset) on T, then one RY(2 slope l_i) on T controlled by C_i per
/// counterparty. Qubit indices come from credit_layout(model).
LoadingCircuit build_loading(const PortfolioModel& model, const ThetaMap& theta);

}  // namespace qcr
