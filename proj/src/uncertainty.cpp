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

#include "qcr/uncertainty.hpp"

#include <cmath>

#include "qcr/errors.hpp"
#include "qcr/statevector.hpp"

namespace qcr {

RegisterLayout credit_layout(const PortfolioModel& model) {
  return RegisterLayout({{kFactorRegister, model.num_factors() * model.qubits_per_factor},
                         {kCounterpartyRegister, model.num_counterparties()},
                         {kLossQubit, 1},
                         {kAncillaQubit, 1}});
}

RegisterLayout uncertainty_layout(const PortfolioModel& model) {
  return RegisterLayout({{kFactorRegister, model.num_factors() * model.qubits_per_factor},
                         {kCounterpartyRegister, model.num_counterparties()}});
}

CircuitOp amplitude_tree(std::span<const std::size_t> qubits, std::span<const double> weights) {
  const std::size_t m = qubits.size();
  if (m == 0 || weights.size() != (std::size_t{1} << m)) {
    throw ValidationError("amplitude_tree: need 2^(#qubits) weights");
  }
  std::vector<CircuitOp> ops;
  // Bit b is prepared after the higher bits b+1..m-1, which act as controls.
  for (std::size_t b = m; b-- > 0;) {
    std::vector<std::size_t> controls(qubits.begin() + static_cast<std::ptrdiff_t>(b + 1),
                                      qubits.end());
    const std::size_t prefixes = std::size_t{1} << controls.size();
    std::vector<double> angles(prefixes, 0.0);
    const std::size_t block = std::size_t{1} << b;
    for (std::size_t g = 0; g < prefixes; ++g) {
      double low = 0.0;
      double high = 0.0;
      const std::size_t base = g << (b + 1);
      for (std::size_t r = 0; r < block; ++r) {
        low += weights[base + r];
        high += weights[base + block + r];
      }
      if (low < 0.0 || high < 0.0) throw ValidationError("amplitude_tree: negative weight");
      angles[g] = 2.0 * std::atan2(std::sqrt(high), std::sqrt(low));
    }
    ops.push_back(CircuitOp::uniform_ry(qubits[b], std::move(controls), std::move(angles)));
  }
  return CircuitOp::sequence(std::move(ops), "amplitude_tree");
}

UncertaintyCircuit build_uncertainty(const PortfolioModel& model) {
  model.validate();
  RegisterLayout layout = uncertainty_layout(model);
  if (layout.num_qubits() + 2 > kMaxQubits) {
    throw ValidationError("portfolio too large for dense simulation");
  }
  const FactorGrid grid = factor_grid(model);
  const auto z_qubits = layout.qubits(kFactorRegister);
  const auto c_qubits = layout.qubits(kCounterpartyRegister);

  std::vector<CircuitOp> ops;
  const std::size_t z = model.qubits_per_factor;
  for (std::size_t r = 0; r < model.num_factors(); ++r) {
    std::span<const std::size_t> factor(z_qubits.data() + r * z, z);
    ops.push_back(amplitude_tree(factor, grid.weights));
  }

  const std::size_t grid_size = std::size_t{1} << z_qubits.size();
  for (std::size_t i = 0; i < model.num_counterparties(); ++i) {
    std::vector<double> angles(grid_size);
    for (std::size_t g = 0; g < grid_size; ++g) {
      const auto point = grid_point(model, grid, g);
      angles[g] = 2.0 * std::asin(std::sqrt(conditional_pd(model, i, point)));
    }
    ops.push_back(CircuitOp::uniform_ry(c_qubits[i], z_qubits, std::move(angles)));
  }
  return {CircuitOp::sequence(std::move(ops), "U"), std::move(layout), model};
}

}  // namespace qcr
