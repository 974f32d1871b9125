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
#include <numbers>
#include <string>
#include <vector>

#include "qcr/chebyshev.hpp"
#include "qcr/estimation.hpp"
#include "qcr/loading.hpp"
#include "qcr/portfolio.hpp"
#include "qcr/qsp.hpp"
#include "qcr/uncertainty.hpp"

namespace qcr {

enum class EstimationMode { kExact, kShots };
enum class QuantityKind { kCdf, kVar, kExpectedLoss, kCvar };

const char* to_string(EstimationMode mode);
const char* to_string(QuantityKind kind);

struct EstimationSettings {
  double eps = 0.01;  // target half-width in the reported (rescaled) units
  double alpha_iqae = 0.05;
  EstimationMode mode = EstimationMode::kShots;
  std::size_t shots = 2048;
  std::uint64_t seed = 0;
};

/// Window choice for calibrate_theta.
struct CalibrationOptions {
  double beta_min = 0.0;
  double beta_max = std::numbers::pi / 2;
  bool inverted = false;
};

/// The reusable threshold polynomial with its solved phases.
struct ThresholdFilter {
  ChebyshevPolynomial poly;
  PhaseSequence phases;

  /// Throws CacheMismatchError when the phases were solved for another polynomial.
  void check() const;
};

struct BisectionStep {
  std::size_t step = 0;
  double lo = 0.0;
  double hi = 0.0;
  double probe = 0.0;
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::string decision;  // "accept", "reject", "fallback-accept", "fallback-reject"
};

struct RiskEstimate {
  QuantityKind kind = QuantityKind::kCdf;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double k = 1.0;
  double eps = 0.0;
  double alpha_iqae = 0.0;
  double iqae_eps = 0.0;  // half-width requested from IQAE (eps * k^2 for the CDF)
  double error_bound = 0.0;  // systematic bound for EL / CVaR
  double probe = 0.0;        // loss at which the CDF was evaluated
  std::size_t shots = 0;
  std::size_t queries = 0;
  std::size_t iqae_runs = 0;
  std::vector<BisectionStep> trace;
  std::vector<std::string> warnings;
};

/**
 * Drivers for CDF, VaR, expected loss and tail expectation on one portfolio.
 * The uncertainty circuit is built once and shared by every query. Nothing
 * here reads scenario probabilities; only the loss grid (a function of the
 * LGDs) is used to place probes between scenario losses.
 */
class RiskEngine {
 public:
  RiskEngine(PortfolioModel model, EstimationSettings settings);

  const PortfolioModel& model() const { return model_; }
  const EstimationSettings& settings() const { return settings_; }
  const std::vector<double>& losses() const { return losses_; }
  double max_loss() const { return losses_.back(); }
  double min_gap() const { return min_gap_; }

  /// Midpoint of the inter-loss interval [L_i, L_{i+1}) holding x; beyond
  /// L_M, L_M plus half the last gap. The CDF is constant on each interval.
  double safe_point(double x) const;

  /// P(L <= target) through QSVT filtering and IQAE with eps_IQAE = eps k^2.
  RiskEstimate estimate_cdf(double target_loss, const ThresholdFilter& filter,
                            const CalibrationOptions& calibration = {}) const;

  /// Same, overriding the requested half-width.
  RiskEstimate estimate_cdf(double target_loss, const ThresholdFilter& filter,
                            const CalibrationOptions& calibration, double eps) const;

  RiskEstimate var_bisection(double alpha_var, const ThresholdFilter& filter,
                             const CalibrationOptions& calibration = {}) const;

  /// (L_M / c) (P(T = 1) - 1/2 + c/2) with rotations spanning pi/4 -+ c/2.
  RiskEstimate expected_loss(double c) const;

  /// Lower-tail partial expectation sum_{L_j <= VaR} p_j L_j.
  RiskEstimate estimate_cvar(double var_value, double c, double k, std::size_t degree,
                             const ThresholdFilter& filter) const;

  /// The preparation circuit U then Q(A(theta)) for a calibrated map.
  CircuitOp cdf_preparation(const ThetaMap& theta, const ThresholdFilter& filter) const;

  /// Calibrated map for a probe, extending the ceiling past L_M when needed.
  ThetaMap probe_theta(double target_loss, double mu, const CalibrationOptions& calibration) const;

 private:
  ConfidenceInterval run_iqae(const CircuitOp& preparation, std::vector<RegisterConstraint> good,
                              double eps) const;

  PortfolioModel model_;
  EstimationSettings settings_;
  UncertaintyCircuit uncertainty_;
  RegisterLayout layout_;
  std::vector<double> losses_;
  double min_gap_ = 0.0;
  mutable std::uint64_t calls_ = 0;
};

/// Exact value of what estimate_cdf measures: sum_j p_j P(sin a_j)^2 / k^2.
double filtered_oracle_cdf(const ScenarioTable& table, const ThetaMap& theta,
                           const ChebyshevPolynomial& poly);

/// Free-function forms.
RiskEstimate estimate_cdf(const PortfolioModel& model, double target_loss,
                          const ThresholdFilter& filter, const EstimationSettings& settings);
RiskEstimate var_bisection(const PortfolioModel& model, double alpha_var,
                           const ThresholdFilter& filter, const EstimationSettings& settings);
RiskEstimate expected_loss(const PortfolioModel& model, double c,
                           const EstimationSettings& settings);
RiskEstimate estimate_cvar(const PortfolioModel& model, double var_value, double c, double k,
                           std::size_t degree, const ThresholdFilter& filter,
                           const EstimationSettings& settings);

/// Taylor bias bound of the expected-loss estimator: L_M c^2 / 12.
double expected_loss_bias_bound(double max_loss, double c);

}  // namespace qcr
