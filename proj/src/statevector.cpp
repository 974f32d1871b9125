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

#include "qcr/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qcr/errors.hpp"

namespace qcr {

namespace {

std::uint64_t dimension_for(const RegisterLayout& layout) {
  if (layout.num_qubits() > kMaxQubits) {
    throw ValidationError("statevector: " + std::to_string(layout.num_qubits()) +
                          " qubits exceeds the dense simulation limit of " +
                          std::to_string(kMaxQubits));
  }
  return std::uint64_t{1} << layout.num_qubits();
}

// Control mask and required value for a list of controls.
std::pair<std::uint64_t, std::uint64_t> control_bits(const std::vector<Control>& controls) {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
  for (const auto& c : controls) {
    mask |= std::uint64_t{1} << c.qubit;
    if (c.on_one) value |= std::uint64_t{1} << c.qubit;
  }
  return {mask, value};
}

}  // namespace

Statevector::Statevector(RegisterLayout layout)
    : layout_(std::move(layout)), amps_(dimension_for(layout_), Amplitude{0.0, 0.0}) {
  amps_[0] = 1.0;
}

Statevector Statevector::basis(RegisterLayout layout, std::uint64_t index) {
  Statevector s(std::move(layout));
  if (index >= s.amps_.size()) throw ValidationError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

Statevector Statevector::from_amplitudes(RegisterLayout layout,
                                         std::vector<Amplitude> amplitudes) {
  Statevector s(std::move(layout));
  if (amplitudes.size() != s.amps_.size()) {
    throw ValidationError("amplitude vector length does not match layout");
  }
  s.amps_ = std::move(amplitudes);
  if (std::abs(s.norm() - 1.0) > 1e-10) throw ValidationError("state is not normalized");
  return s;
}

Amplitude Statevector::amplitude(std::uint64_t index) const {
  if (index >= amps_.size()) throw ValidationError("basis index out of range");
  return amps_[index];
}

double Statevector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

void Statevector::apply(const CircuitOp& op) {
  if (op.max_qubit() >= num_qubits()) {
    throw ValidationError("operation touches qubit " + std::to_string(op.max_qubit()) +
                          " but the state has " + std::to_string(num_qubits()));
  }
  apply_unchecked(op, false);
}

void Statevector::apply_adjoint(const CircuitOp& op) {
  if (op.max_qubit() >= num_qubits()) {
    throw ValidationError("operation touches qubit " + std::to_string(op.max_qubit()) +
                          " but the state has " + std::to_string(num_qubits()));
  }
  apply_unchecked(op, true);
}

void Statevector::apply_unchecked(const CircuitOp& op, bool dagger) {
  using std::numbers::sqrt2;
  switch (op.kind()) {
    case OpKind::kH: {
      const Amplitude m[4] = {1.0 / sqrt2, 1.0 / sqrt2, 1.0 / sqrt2, -1.0 / sqrt2};
      apply_matrix(op.target(), op.controls(), m);
      return;
    }
    case OpKind::kX: {
      const Amplitude m[4] = {0.0, 1.0, 1.0, 0.0};
      apply_matrix(op.target(), op.controls(), m);
      return;
    }
    case OpKind::kZ: {
      const Amplitude m[4] = {1.0, 0.0, 0.0, -1.0};
      apply_matrix(op.target(), op.controls(), m);
      return;
    }
    case OpKind::kRY: {
      const double half = (dagger ? -op.angle() : op.angle()) / 2.0;
      const double c = std::cos(half);
      const double s = std::sin(half);
      const Amplitude m[4] = {c, -s, s, c};
      apply_matrix(op.target(), op.controls(), m);
      return;
    }
    case OpKind::kRZ: {
      const double half = (dagger ? -op.angle() : op.angle()) / 2.0;
      const Amplitude m[4] = {std::polar(1.0, -half), 0.0, 0.0, std::polar(1.0, half)};
      apply_matrix(op.target(), op.controls(), m);
      return;
    }
    case OpKind::kUniformRY:
      apply_uniform_ry(op, dagger);
      return;
    case OpKind::kPhaseFlip:
      apply_phase_flip(op.controls());
      return;
    case OpKind::kSequence: {
      const auto& children = op.children();
      const bool reverse = dagger != op.is_adjoint();
      if (reverse) {
        for (auto it = children.rbegin(); it != children.rend(); ++it) {
          apply_unchecked(*it, true);
        }
      } else {
        for (const auto& child : children) apply_unchecked(child, false);
      }
      return;
    }
  }
}

// m is row-major [[m0, m1], [m2, m3]] acting on (|0>, |1>) of `target`.
void Statevector::apply_matrix(std::size_t target, const std::vector<Control>& controls,
                               const Amplitude m[4]) {
  const auto [mask, value] = control_bits(controls);
  const std::uint64_t bit = std::uint64_t{1} << target;
  const std::uint64_t dim = amps_.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & bit) || (i & mask) != value) continue;
    const Amplitude a0 = amps_[i];
    const Amplitude a1 = amps_[i | bit];
    amps_[i] = m[0] * a0 + m[1] * a1;
    amps_[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

void Statevector::apply_uniform_ry(const CircuitOp& op, bool dagger) {
  const auto& controls = op.uniform_controls();
  const auto& angles = op.uniform_angles();
  std::vector<double> cs(angles.size());
  std::vector<double> sn(angles.size());
  for (std::size_t g = 0; g < angles.size(); ++g) {
    const double half = (dagger ? -angles[g] : angles[g]) / 2.0;
    cs[g] = std::cos(half);
    sn[g] = std::sin(half);
  }
  const std::uint64_t bit = std::uint64_t{1} << op.target();
  const std::uint64_t dim = amps_.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    std::size_t g = 0;
    for (std::size_t k = 0; k < controls.size(); ++k) {
      g |= static_cast<std::size_t>((i >> controls[k]) & 1U) << k;
    }
    const Amplitude a0 = amps_[i];
    const Amplitude a1 = amps_[i | bit];
    amps_[i] = cs[g] * a0 - sn[g] * a1;
    amps_[i | bit] = sn[g] * a0 + cs[g] * a1;
  }
}

void Statevector::apply_phase_flip(const std::vector<Control>& pattern) {
  const auto [mask, value] = control_bits(pattern);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == value) amps_[i] = -amps_[i];
  }
}

Statevector apply(Statevector state, const CircuitOp& op) {
  state.apply(op);
  return state;
}

double probability_of(const Statevector& state,
                      std::span<const RegisterConstraint> constraints) {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
  for (const auto& c : constraints) {
    const auto& reg = state.layout().get(c.reg);
    if (reg.size < 64 && c.value >= (std::uint64_t{1} << reg.size)) {
      throw ValidationError("constraint value " + std::to_string(c.value) +
                            " exceeds the capacity of register '" + reg.name + "'");
    }
    const std::uint64_t reg_mask = ((std::uint64_t{1} << reg.size) - 1) << reg.first;
    if (mask & reg_mask) {
      throw ValidationError("register '" + reg.name + "' constrained twice");
    }
    mask |= reg_mask;
    value |= c.value << reg.first;
  }
  double p = 0.0;
  const auto amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & mask) == value) p += std::norm(amps[i]);
  }
  return std::min(1.0, p);
}

Histogram sample(const Statevector& state, std::span<const std::string> registers,
                 std::size_t shots, std::uint64_t seed) {
  if (shots == 0) throw ValidationError("sample: shots must be at least 1");
  std::vector<const Register*> regs;
  for (const auto& name : registers) regs.push_back(&state.layout().get(name));

  const auto amps = state.amplitudes();
  std::vector<double> weights(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) weights[i] = std::norm(amps[i]);

  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::uint64_t> dist(weights.begin(), weights.end());
  Histogram hist;
  for (std::size_t s = 0; s < shots; ++s) {
    const std::uint64_t outcome = dist(rng);
    std::uint64_t key = 0;
    std::size_t shift = 0;
    for (const auto* r : regs) {
      const std::uint64_t v = (outcome >> r->first) & ((std::uint64_t{1} << r->size) - 1);
      key |= v << shift;
      shift += r->size;
    }
    ++hist[key];
  }
  return hist;
}

}  // namespace qcr
