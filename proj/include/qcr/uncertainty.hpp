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

#include <span>
#include <vector>

#include "qcr/circuit.hpp"
#include "qcr/portfolio.hpp"
#include "qcr/register_layout.hpp"

namespace qcr {

/// Register names shared by every credit-risk circuit.
inline constexpr const char* kFactorRegister = "Z";
inline constexpr const char* kCounterpartyRegister = "C";
inline constexpr const char* kLossQubit = "T";
inline constexpr const char* kAncillaQubit = "B";

/// Z (factors), C (counterparties), T (loss flag), B (QSVT ancilla), in that
/// order. Circuits built over a prefix of this layout act unchanged on it.
RegisterLayout credit_layout(const PortfolioModel& model);

/// Z and C only.
RegisterLayout uncertainty_layout(const PortfolioModel& model);

struct UncertaintyCircuit {
  CircuitOp op;
  RegisterLayout layout;
  PortfolioModel model;
};

/**
 * Loads sum_j sqrt(p_j) |psi_j>_Z |j>_C.
 *
 * Each factor register gets the discretized normal weights by recursive
 * Y-rotations (most significant qubit first). Each counterparty qubit then
 * receives a uniformly-controlled RY over every Z qubit with angle
 * 2 asin(sqrt(pd_i(z_g))).
 */
UncertaintyCircuit build_uncertainty(const PortfolioModel& model);

/// Y-rotation tree preparing sum_k sqrt(weights[k]) |k> on `qubits`
/// (qubits[0] is the least-significant bit of k).
CircuitOp amplitude_tree(std::span<const std::size_t> qubits, std::span<const double> weights);

}  // namespace qcr
