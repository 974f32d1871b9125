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

#include "qcr/errors.hpp"
#include "qcr/estimation.hpp"

namespace qcr {

std::vector<Control> good_pattern(const AmplitudeProblem& problem) {
  if (problem.good.empty()) throw ValidationError("amplitude problem has no good-state predicate");
  std::vector<Control> pattern;
  for (const auto& c : problem.good) {
    const Register& reg = problem.layout.get(c.reg);
    if (reg.size < 64 && c.value >= (std::uint64_t{1} << reg.size)) {
      throw ValidationError("good-state value exceeds register '" + reg.name + "'");
    }
    for (std::size_t i = 0; i < reg.size; ++i) {
      pattern.push_back(Control{reg.first + i, ((c.value >> i) & 1U) != 0});
    }
  }
  return pattern;
}

double exact_amplitude(const AmplitudeProblem& problem) {
  Statevector state(problem.layout);
  state.apply(problem.preparation);
  return probability_of(state, problem.good);
}

CircuitOp grover_operator(const AmplitudeProblem& problem) {
  std::vector<Control> zero;
  for (std::size_t q = 0; q < problem.layout.num_qubits(); ++q) zero.push_back(Control{q, false});
  return CircuitOp::sequence({CircuitOp::phase_flip(good_pattern(problem)),
                              problem.preparation.adjoint(), CircuitOp::phase_flip(zero),
                              problem.preparation},
                             "G");
}

}  // namespace qcr
