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
#include <vector>

#include "qcr/circuit.hpp"
#include "qcr/loading.hpp"
#include "qcr/register_layout.hpp"
#include "qcr/statevector.hpp"

namespace qcr {

struct QsvtCircuit {
  CircuitOp op;
  RegisterLayout layout;
  std::size_t degree = 0;
  std::size_t loss_qubit = 0;
  std::size_t ancilla_qubit = 0;
  std::vector<double> phases;
};

/**
 * H_B, then for j = 1..d
 *   odd j:  A,  X_B controlled on T = 0, RZ_B(-2 phi_j), X_B controlled on T = 0
 *   even j: A+, X_B controlled on T = 1, RZ_B(-2 phi_j), X_B controlled on T = 1
 * and a closing H_B. With the projector phases of an even polynomial P,
 * <j, T=0, B=0| Q |j, T=0, B=0> = P(sin(offset + slope L_j)).
 */
QsvtCircuit build_qsvt(const LoadingCircuit& loading, std::span<const double> phases);

/// <j, 0_T, 0_B| Q |j, 0_T, 0_B> for every scenario j (Z held at 0).
std::vector<Amplitude> diagonal_amplitudes(const QsvtCircuit& qsvt);

/// Real parts of diagonal_amplitudes.
std::vector<double> diagonal_action(const QsvtCircuit& qsvt);

/**
 * Dense check that the projector-controlled rotation
 *   (Pi X_B + Pi_perp) RZ_B(2 phi) (Pi X_B + Pi_perp)
 * equals RZ_B(-2 phi) Pi + RZ_B(2 phi) Pi_perp. `projector` is the diagonal of
 * Pi on the system space (at most 4 qubits). Returns the max entry deviation.
 */
double ej_equivalence_check(double phi, std::span<const bool> projector);

}  // namespace qcr
