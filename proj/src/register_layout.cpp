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

#include "qcr/register_layout.hpp"

#include <algorithm>

#include "qcr/errors.hpp"

namespace qcr {

RegisterLayout::RegisterLayout(
    const std::vector<std::pair<std::string, std::size_t>>& registers) {
  for (const auto& [name, size] : registers) {
    if (name.empty()) throw ValidationError("register name must not be empty");
    if (size == 0) {
      throw ValidationError("register '" + name + "' must have at least one qubit");
    }
    if (contains(name)) {
      throw ValidationError("duplicate register name '" + name + "'");
    }
    registers_.push_back(Register{name, num_qubits_, size});
    num_qubits_ += size;
  }
}

bool RegisterLayout::contains(std::string_view name) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const Register& r) { return r.name == name; });
}

const Register& RegisterLayout::get(std::string_view name) const {
  for (const auto& r : registers_) {
    if (r.name == name) return r;
  }
  throw ValidationError("unknown register '" + std::string(name) + "'");
}

std::size_t RegisterLayout::qubit(std::string_view name, std::size_t offset) const {
  const auto& r = get(name);
  if (offset >= r.size) {
    throw ValidationError("offset " + std::to_string(offset) +
                          " out of range for register '" + r.name + "'");
  }
  return r.first + offset;
}

std::vector<std::size_t> RegisterLayout::qubits(std::string_view name) const {
  const auto& r = get(name);
  std::vector<std::size_t> out(r.size);
  for (std::size_t i = 0; i < r.size; ++i) out[i] = r.first + i;
  return out;
}

std::pair<std::string_view, std::size_t> RegisterLayout::locate(
    std::size_t qubit) const {
  for (const auto& r : registers_) {
    if (qubit >= r.first && qubit < r.first + r.size) {
      return {r.name, qubit - r.first};
    }
  }
  throw ValidationError("qubit " + std::to_string(qubit) + " out of range");
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
  if (registers_.size() != other.registers_.size()) return false;
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].name != other.registers_[i].name ||
        registers_[i].size != other.registers_[i].size) {
      return false;
    }
  }
  return true;
}

}  // namespace qcr
