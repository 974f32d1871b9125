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

#include "qcr/loading.hpp"

#include <algorithm>
#include <cmath>

#include "qcr/errors.hpp"
#include "qcr/uncertainty.hpp"

namespace qcr {

ThetaMap calibrate_theta(double target_loss, double max_loss, double mu, double beta_min,
                         double beta_max, bool inverted) {
  if (!(max_loss > 0.0) || !(target_loss > 0.0 && target_loss < max_loss)) {
    throw ValidationError("calibrate_theta: need 0 < target_loss < max_loss");
  }
  if (!(mu > 0.0 && mu < 1.0)) throw ValidationError("calibrate_theta: mu must lie in (0, 1)");
  const double a = std::asin(mu);
  if (!(beta_min > -a && beta_min < a)) {
    throw ValidationError("calibrate_theta: beta_min must lie in (-asin(mu), asin(mu))");
  }
  if (!(beta_max > a && beta_max < std::numbers::pi - a)) {
    throw ValidationError("calibrate_theta: beta_max must lie in (asin(mu), pi - asin(mu))");
  }
  const double lt = target_loss;
  const double lm = max_loss;

  ThetaMap t;
  t.target_loss = lt;
  t.max_loss = lm;
  t.mu = mu;
  t.beta_min = beta_min;
  t.beta_max = beta_max;
  t.inverted = inverted;
  if (!inverted) {
    t.offset = std::max(beta_min, (lm * a - lt * beta_max) / (lm - lt));
  } else {
    t.offset = std::min(beta_max, (lm * a - lt * beta_min) / (lm - lt));
  }
  t.slope = (a - t.offset) / lt;
  if (!std::isfinite(t.slope) || t.slope == 0.0) {
    throw CalibrationError("calibrate_theta: degenerate slope");
  }
  return t;
}

ThetaMap expected_loss_theta(double max_loss, double c) {
  if (!(c > 0.0 && c <= 0.5)) throw ValidationError("expected-loss c must lie in (0, 0.5]");
  if (!(max_loss > 0.0)) throw ValidationError("max_loss must be positive");
  ThetaMap t;
  t.offset = std::numbers::pi / 4 - c / 2;
  t.slope = c / max_loss;
  t.max_loss = max_loss;
  t.target_loss = max_loss / 2;
  t.mu = std::sin(std::numbers::pi / 4);
  t.beta_min = t.offset;
  t.beta_max = std::numbers::pi / 4 + c / 2;
  return t;
}

bool separates(const ThetaMap& theta, double loss) {
  const double s = std::sin(theta.rotation(loss));
  const bool below = loss <= theta.target_loss;
  return theta.inverted ? (below == (s >= theta.mu)) : (below == (s <= theta.mu));
}

LoadingCircuit build_loading(const PortfolioModel& model, const ThetaMap& theta) {
  model.validate();
  const RegisterLayout layout = credit_layout(model);
  double total = 0.0;
  for (double l : model.lgd) total += l;
  const double lo = std::min(theta.beta_min, theta.beta_max);
  const double hi = std::max(theta.beta_min, theta.beta_max);
  const double first = theta.rotation(0.0);
  const double last = theta.rotation(total);
  if (std::min(first, last) < lo - 1e-9 || std::max(first, last) > hi + 1e-9) {
    throw CalibrationError("build_loading: rotation angles leave the calibrated window");
  }

  const std::size_t loss_qubit = layout.qubit(kLossQubit, 0);
  std::vector<std::size_t> counterparties = layout.qubits(kCounterpartyRegister);
  std::vector<CircuitOp> ops;
  ops.push_back(CircuitOp::ry(loss_qubit, 2.0 * theta.offset));
  for (std::size_t i = 0; i < model.num_counterparties(); ++i) {
    ops.push_back(CircuitOp::ry(loss_qubit, 2.0 * theta.angle(model.lgd[i]))
                      .controlled({Control{counterparties[i], true}}));
  }
  return LoadingCircuit{CircuitOp::sequence(std::move(ops), "A"), layout, theta, loss_qubit,
                        std::move(counterparties)};
}

}  // namespace qcr
