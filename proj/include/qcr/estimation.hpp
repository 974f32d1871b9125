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
#include <cstdint>
#include <utility>
#include <vector>

#include "qcr/circuit.hpp"
#include "qcr/register_layout.hpp"
#include "qcr/statevector.hpp"

namespace qcr {

/// Estimate a = P(good) for the state preparation |psi> = A|0>.
struct AmplitudeProblem {
  CircuitOp preparation;
  RegisterLayout layout;
  std::vector<RegisterConstraint> good;  // basis-aligned good-state predicate
  /// Exact mode feeds each round the true good-state frequency instead of a
  /// binomial draw, which makes every run deterministic.
  bool exact = false;
  std::size_t shots = 2048;
  std::uint64_t seed = 0;
};

/// The good-state predicate as a qubit pattern.
std::vector<Control> good_pattern(const AmplitudeProblem& problem);

/// True a, by direct statevector evaluation.
double exact_amplitude(const AmplitudeProblem& problem);

/// G = A S_0 A+ S_chi, listed in application order: S_chi, A+, S_0, A.
/// S_chi negates good states, S_0 negates |0...0>.
CircuitOp grover_operator(const AmplitudeProblem& problem);

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 1.0;
  double estimate = 0.0;
  double alpha = 0.05;  // confidence is 1 - alpha
  double epsilon = 0.0;
  double scale = 1.0;   // bounds were divided by this (k^2) after estimation
  std::size_t queries = 0;  // sum over rounds of shots * Grover power
  std::size_t shots = 0;
  std::size_t rounds = 0;
  bool converged = true;

  double half_width() const { return 0.5 * (upper - lower); }
  bool contains(double a) const { return lower <= a && a <= upper; }
};

/// Clopper-Pearson interval for `successes` out of `trials` (successes may be
/// fractional in exact mode).
std::pair<double, double> clopper_pearson(double successes, double trials, double alpha);

struct IqaeOptions {
  double min_ratio = 2.0;
  std::size_t max_rounds = 1000;  // safety cap; hitting it clears `converged`
};

/**
 * Iterative amplitude estimation (Clopper-Pearson variant): each round picks
 * the largest Grover power K = 4k + 2 (at least min_ratio times the previous
 * one) whose scaled interval stays in one half circle, aggregates shots of
 * rounds sharing k, and narrows theta with a = sin^2(2 pi theta) until the
 * theta interval is below eps / pi. The point estimate inverts the pooled
 * frequency of the last power and is clamped into the interval.
 */
ConfidenceInterval iqae(const AmplitudeProblem& problem, double eps, double alpha,
                        const IqaeOptions& options = {});

/// Divides bounds and estimate by k^2. Values above 1 are kept.
ConfidenceInterval rescale_estimate(const ConfidenceInterval& interval, double k);

}  // namespace qcr
