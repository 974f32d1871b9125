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

#include "qcr/circuit.hpp"

#include <algorithm>
#include <set>

#include "qcr/errors.hpp"

namespace qcr {

GateCounts& GateCounts::operator+=(const GateCounts& o) {
  single_qubit += o.single_qubit;
  rotations += o.rotations;
  controlled_rotations += o.controlled_rotations;
  controlled_x += o.controlled_x;
  controlled_other += o.controlled_other;
  phase_flips += o.phase_flips;
  return *this;
}

CircuitOp::CircuitOp() : kind_(OpKind::kSequence), body_(std::make_shared<Body>()) {}

CircuitOp CircuitOp::h(std::size_t qubit) {
  CircuitOp op{Raw{}};
  op.kind_ = OpKind::kH;
  op.target_ = qubit;
  return op;
}

CircuitOp CircuitOp::x(std::size_t qubit) {
  CircuitOp op{Raw{}};
  op.kind_ = OpKind::kX;
  op.target_ = qubit;
  return op;
}

CircuitOp CircuitOp::z(std::size_t qubit) {
  CircuitOp op{Raw{}};
  op.kind_ = OpKind::kZ;
  op.target_ = qubit;
  return op;
}

CircuitOp CircuitOp::ry(std::size_t qubit, double angle) {
  CircuitOp op{Raw{}};
  op.kind_ = OpKind::kRY;
  op.target_ = qubit;
  op.angle_ = angle;
  return op;
}

CircuitOp CircuitOp::rz(std::size_t qubit, double angle) {
  CircuitOp op{Raw{}};
  op.kind_ = OpKind::kRZ;
  op.target_ = qubit;
  op.angle_ = angle;
  return op;
}

CircuitOp CircuitOp::uniform_ry(std::size_t target, std::vector<std::size_t> controls,
                                std::vector<double> angles) {
  if (controls.size() >= 8 * sizeof(std::size_t) ||
      angles.size() != (std::size_t{1} << controls.size())) {
    throw ValidationError("uniform_ry: need exactly 2^(#controls) angles");
  }
  std::set<std::size_t> seen(controls.begin(), controls.end());
  if (seen.size() != controls.size()) {
    throw ValidationError("uniform_ry: duplicate control qubit");
  }
  if (seen.count(target)) {
    throw ValidationError("uniform_ry: control qubit equals target");
  }
  CircuitOp op{Raw{}};
  op.kind_ = OpKind::kUniformRY;
  op.target_ = target;
  op.uniform_controls_ = std::move(controls);
  op.angles_ = std::move(angles);
  return op;
}

CircuitOp CircuitOp::phase_flip(std::vector<Control> pattern) {
  if (pattern.empty()) throw ValidationError("phase_flip: empty pattern");
  std::set<std::size_t> seen;
  for (const auto& c : pattern) {
    if (!seen.insert(c.qubit).second) {
      throw ValidationError("phase_flip: qubit listed twice");
    }
  }
  CircuitOp op{Raw{}};
  op.kind_ = OpKind::kPhaseFlip;
  op.controls_ = std::move(pattern);
  return op;
}

CircuitOp CircuitOp::sequence(std::vector<CircuitOp> ops, std::string label) {
  auto body = std::make_shared<Body>();
  for (const auto& child : ops) {
    body->counts += child.counts();
    body->max_qubit = std::max(body->max_qubit, child.max_qubit());
  }
  body->ops = std::move(ops);
  body->label = std::move(label);
  CircuitOp op{Raw{}};
  op.kind_ = OpKind::kSequence;
  op.body_ = std::move(body);
  return op;
}

CircuitOp CircuitOp::controlled(std::vector<Control> controls) const {
  switch (kind_) {
    case OpKind::kH:
    case OpKind::kX:
    case OpKind::kZ:
    case OpKind::kRY:
    case OpKind::kRZ:
      break;
    default:
      throw ValidationError("controlled: only primitive single-qubit gates take controls");
  }
  CircuitOp op = *this;
  std::set<std::size_t> seen;
  for (const auto& c : op.controls_) seen.insert(c.qubit);
  for (const auto& c : controls) {
    if (c.qubit == target_) throw ValidationError("controlled: control qubit equals target");
    if (!seen.insert(c.qubit).second) throw ValidationError("controlled: duplicate control");
    op.controls_.push_back(c);
  }
  return op;
}

CircuitOp CircuitOp::adjoint() const {
  CircuitOp op = *this;
  switch (kind_) {
    case OpKind::kRY:
    case OpKind::kRZ:
      op.angle_ = -angle_;
      break;
    case OpKind::kUniformRY:
      for (auto& a : op.angles_) a = -a;
      break;
    case OpKind::kSequence:
      op.adjoint_ = !adjoint_;
      break;
    default:
      break;  // H, X, Z, phase flips are self-inverse
  }
  return op;
}

const std::string& CircuitOp::label() const {
  static const std::string empty;
  return body_ ? body_->label : empty;
}

const std::vector<CircuitOp>& CircuitOp::children() const {
  static const std::vector<CircuitOp> none;
  return body_ ? body_->ops : none;
}

GateCounts CircuitOp::counts() const {
  GateCounts c;
  const bool has_controls = !controls_.empty();
  switch (kind_) {
    case OpKind::kH:
    case OpKind::kZ:
      (has_controls ? c.controlled_other : c.single_qubit) = 1;
      break;
    case OpKind::kX:
      (has_controls ? c.controlled_x : c.single_qubit) = 1;
      break;
    case OpKind::kRY:
    case OpKind::kRZ:
      (has_controls ? c.controlled_rotations : c.rotations) = 1;
      break;
    case OpKind::kUniformRY:
      if (uniform_controls_.empty()) {
        c.rotations = 1;
      } else {
        c.controlled_rotations = angles_.size();
      }
      break;
    case OpKind::kPhaseFlip:
      c.phase_flips = 1;
      break;
    case OpKind::kSequence:
      c = body_->counts;
      break;
  }
  return c;
}

std::size_t CircuitOp::max_qubit() const {
  std::size_t m = target_;
  switch (kind_) {
    case OpKind::kSequence:
      return body_->max_qubit;
    case OpKind::kPhaseFlip:
      m = 0;
      break;
    default:
      break;
  }
  for (const auto& c : controls_) m = std::max(m, c.qubit);
  for (auto q : uniform_controls_) m = std::max(m, q);
  return m;
}

}  // namespace qcr
