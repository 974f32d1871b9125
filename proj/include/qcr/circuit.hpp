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
#include <memory>
#include <string>
#include <vector>

namespace qcr {

/// A control qubit. `on_one == false` is an open control (fires on |0>).
struct Control {
  std::size_t qubit = 0;
  bool on_one = true;

  bool operator==(const Control&) const = default;
};

enum class OpKind {
  kH,
  kX,
  kZ,
  kRY,
  kRZ,
  kUniformRY,
  kPhaseFlip,
  kSequence,
};

/// Gate tallies. A uniformly-controlled RY over m controls counts as 2^m
/// controlled rotations (1 plain rotation when m == 0).
struct GateCounts {
  std::size_t single_qubit = 0;  // uncontrolled H, X, Z
  std::size_t rotations = 0;     // uncontrolled RY, RZ
  std::size_t controlled_rotations = 0;
  std::size_t controlled_x = 0;
  std::size_t controlled_other = 0;  // controlled H or Z
  std::size_t phase_flips = 0;

  std::size_t total() const {
    return single_qubit + rotations + controlled_rotations + controlled_x +
           controlled_other + phase_flips;
  }
  GateCounts& operator+=(const GateCounts& o);
  bool operator==(const GateCounts&) const = default;
};

/**
 * Immutable unitary operation on a statevector.
 *
 * Primitive gates (H, X, Z, RY, RZ) optionally carry a control set with
 * per-control polarity. Sequences share their body, so nesting a large
 * sub-circuit many times (or taking its adjoint) is cheap.
 *
 * Rotation convention: RY(a) = exp(-i a Y / 2), RZ(a) = exp(-i a Z / 2).
 */
class CircuitOp {
 public:
  /// The identity: an empty sequence.
  CircuitOp();

  static CircuitOp h(std::size_t qubit);
  static CircuitOp x(std::size_t qubit);
  static CircuitOp z(std::size_t qubit);
  static CircuitOp ry(std::size_t qubit, double angle);
  static CircuitOp rz(std::size_t qubit, double angle);

  /// RY(angles[g]) on `target`, where g is the value of the control qubits
  /// read with controls[0] as the least-significant bit.
  static CircuitOp uniform_ry(std::size_t target, std::vector<std::size_t> controls,
                              std::vector<double> angles);

  /// Multiplies by -1 every basis state whose qubits match all of `pattern`.
  static CircuitOp phase_flip(std::vector<Control> pattern);

  static CircuitOp sequence(std::vector<CircuitOp> ops, std::string label = {});

  /// Adds controls to a primitive H/X/Z/RY/RZ gate.
  CircuitOp controlled(std::vector<Control> controls) const;

  CircuitOp adjoint() const;

  OpKind kind() const { return kind_; }
  std::size_t target() const { return target_; }
  double angle() const { return angle_; }
  const std::vector<Control>& controls() const { return controls_; }
  const std::vector<std::size_t>& uniform_controls() const { return uniform_controls_; }
  const std::vector<double>& uniform_angles() const { return angles_; }
  bool is_adjoint() const { return adjoint_; }
  const std::string& label() const;

  /// Children of a sequence in application order (not adjusted for adjoint).
  const std::vector<CircuitOp>& children() const;

  GateCounts counts() const;

  /// Largest qubit index touched, for range validation.
  std::size_t max_qubit() const;

 private:
  struct Body {
    std::vector<CircuitOp> ops;
    std::string label;
    GateCounts counts;
    std::size_t max_qubit = 0;
  };

  struct Raw {};
  explicit CircuitOp(Raw) {}

  OpKind kind_ = OpKind::kX;
  std::size_t target_ = 0;
  double angle_ = 0.0;
  std::vector<Control> controls_;
  std::vector<std::size_t> uniform_controls_;
  std::vector<double> angles_;
  std::shared_ptr<const Body> body_;
  bool adjoint_ = false;
};

}  // namespace qcr
