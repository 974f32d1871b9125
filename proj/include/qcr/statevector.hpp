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

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qcr/circuit.hpp"
#include "qcr/register_layout.hpp"

namespace qcr {

using Amplitude = std::complex<double>;

/// Dense simulation is capped here; the credit-risk circuits need ~10 qubits.
inline constexpr std::size_t kMaxQubits = 24;

/// Register R must hold `value` (read little-endian, see RegisterLayout).
struct RegisterConstraint {
  std::string reg;
  std::uint64_t value = 0;
};

class Statevector {
 public:
  /// |0...0> over `layout`.
  explicit Statevector(RegisterLayout layout);

  static Statevector basis(RegisterLayout layout, std::uint64_t index);

  /// Takes ownership of `amplitudes`; they must have unit norm within 1e-10.
  static Statevector from_amplitudes(RegisterLayout layout,
                                     std::vector<Amplitude> amplitudes);

  const RegisterLayout& layout() const { return layout_; }
  std::size_t num_qubits() const { return layout_.num_qubits(); }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude amplitude(std::uint64_t index) const;

  double norm() const;

  /// In-place application. Throws ValidationError on out-of-range qubits.
  void apply(const CircuitOp& op);
  void apply_adjoint(const CircuitOp& op);

 private:
  void apply_unchecked(const CircuitOp& op, bool dagger);
  void apply_matrix(std::size_t target, const std::vector<Control>& controls,
                    const Amplitude m[4]);
  void apply_uniform_ry(const CircuitOp& op, bool dagger);
  void apply_phase_flip(const std::vector<Control>& pattern);

  RegisterLayout layout_;
  std::vector<Amplitude> amps_;
};

/// Value-returning application.
Statevector apply(Statevector state, const CircuitOp& op);

/// Probability that every constrained register reads its given value.
double probability_of(const Statevector& state,
                      std::span<const RegisterConstraint> constraints);

/// Joint outcome -> count. The key packs the listed registers' values with
/// registers[0] in the least-significant bits.
using Histogram = std::map<std::uint64_t, std::size_t>;

Histogram sample(const Statevector& state, std::span<const std::string> registers,
                 std::size_t shots, std::uint64_t seed);

}  // namespace qcr
