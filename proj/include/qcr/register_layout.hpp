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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcr {

struct Register {
  std::string name;
  std::size_t first = 0;  // global index of the register's qubit 0
  std::size_t size = 0;
};

/**
 * Ordered list of named qubit registers.
 *
 * Bit-endianness (used everywhere in this library): global qubit q is bit q
 * of the basis-state index, and registers occupy consecutive qubits in the
 * order they are declared. Inside a register, offset i is bit i of the
 * register value, so the value of register R in basis state b is
 * (b >> R.first) & (2^R.size - 1). For the counterparty register this means
 * qubit offset i carries the default bit of counterparty i + 1.
 */
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(
      const std::vector<std::pair<std::string, std::size_t>>& registers);

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<Register>& registers() const { return registers_; }

  bool contains(std::string_view name) const;
  const Register& get(std::string_view name) const;

  /// Global qubit index of (register, offset).
  std::size_t qubit(std::string_view name, std::size_t offset) const;
  std::vector<std::size_t> qubits(std::string_view name) const;

  /// Inverse of qubit(): which register and offset a global index belongs to.
  std::pair<std::string_view, std::size_t> locate(std::size_t qubit) const;

  bool operator==(const RegisterLayout& other) const;

 private:
  std::vector<Register> registers_;
  std::size_t num_qubits_ = 0;
};

}  // namespace qcr
