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
#include <span>
#include <vector>

namespace qcr {

/**
 * Credit portfolio under a multi-factor Gaussian conditional independence
 * model.
 *
 * Counterparty i defaults, conditionally on the systemic factors z, with
 *   pd_i(z) = Phi((Phi^-1(p0_i) + sqrt(rho_i) * (w_i . z)) / sqrt(1 - rho_i)).
 * Each factor is discretized into 2^qubits_per_factor equispaced points on
 * [-truncation, +truncation] weighted by the standard normal density.
 */
struct PortfolioModel {
  std::vector<double> default_probabilities;  // intrinsic p0_i in (0, 1)
  std::vector<double> sensitivities;          // rho_i in [0, 1)
  std::vector<double> lgd;                    // loss given default, > 0
  std::vector<std::vector<double>> loadings;  // n x f
  std::size_t qubits_per_factor = 2;
  double truncation = 2.0;

  std::size_t num_counterparties() const { return lgd.size(); }
  std::size_t num_factors() const { return loadings.empty() ? 0 : loadings.front().size(); }

  /// Throws ValidationError on inconsistent sizes or out-of-range values.
  void validate() const;
};

/// The four-counterparty, two-factor portfolio used in the benchmark runs.
PortfolioModel reference_portfolio();

inline constexpr std::size_t kMaxEnumeratedCounterparties = 20;

double standard_normal_cdf(double x);
double standard_normal_quantile(double p);

/// Discretization of a single standard normal factor.
struct FactorGrid {
  std::vector<double> points;
  std::vector<double> weights;  // sums to 1
};

FactorGrid factor_grid(const PortfolioModel& model);

/// Factor vector for joint grid index g; factor r uses bits
/// [r * qubits_per_factor, (r + 1) * qubits_per_factor) of g.
std::vector<double> grid_point(const PortfolioModel& model, const FactorGrid& grid,
                               std::uint64_t g);
double grid_weight(const PortfolioModel& model, const FactorGrid& grid, std::uint64_t g);

double scenario_loss(const PortfolioModel& model, std::uint64_t scenario);

double conditional_pd(const PortfolioModel& model, std::size_t counterparty,
                      std::span<const double> zpoint);

/// Exact scenario distribution. Scenario j has counterparty i in default iff
/// bit i of j is set.
struct ScenarioTable {
  std::vector<double> probability;
  std::vector<double> loss;
  double max_loss = 0.0;

  std::size_t size() const { return probability.size(); }
};

ScenarioTable enumerate(const PortfolioModel& model);

/// Sorted distinct scenario losses (ties within 1e-9 * L_M merged).
std::vector<double> distinct_losses(const ScenarioTable& table);

/// Sorted distinct scenario losses computed from the LGDs alone (no
/// probabilities), for drivers that must not consult the oracle.
std::vector<double> scenario_losses(const PortfolioModel& model);

/// Smallest gap between consecutive distinct losses.
double min_loss_gap(const ScenarioTable& table);

/// P(L <= x).
double cdf(const ScenarioTable& table, double x);

struct OracleMetrics {
  double value_at_risk = 0.0;
  double expected_loss = 0.0;
  /// sum over L_j <= VaR of p_j L_j (the lower-tail partial expectation).
  double lower_tail_partial_expectation = 0.0;
  /// E[L | L >= VaR], the conventional expected shortfall.
  double conditional_tail_expectation = 0.0;
  double cdf_at_var = 0.0;
};

OracleMetrics oracle_metrics(const ScenarioTable& table, double alpha_var);

}  // namespace qcr
