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
#include <filesystem>
#include <numbers>
#include <string>
#include <string_view>

#include "qcr/portfolio.hpp"
#include "qcr/risk_engine.hpp"

namespace qcr {

/**
 * Run configuration. Text form is one `key = value` per line, `#` starts a
 * comment, arrays are bracketed and may span lines:
 *
 *   qubits_per_gaussian = 2
 *   intrinsic_pd = [0.256, 0.072, 0.135, 0.072]
 *   factor_loadings = [[0.158, 0.058],
 *                      [0.256, 0.157]]
 *
 * Portfolio keys: qubits_per_gaussian, gaussian_truncation, number_of_assets,
 * intrinsic_pd, sensitivity_rho, lgd, factor_loadings.
 * Run keys: shots, alpha_var, eps, alpha_iqae, kappa, mu, delta, degree,
 * cvar_degree, c, seed, mode (exact | shots), beta_min, beta_max, inverted.
 */
struct RunConfig {
  PortfolioModel model;
  std::size_t shots = 2048;
  double alpha_var = 0.05;
  double eps = 0.01;
  double alpha_iqae = 0.05;
  double kappa = 0.9;
  double mu = std::numbers::sqrt2 / 2;
  double delta = 0.01;
  std::size_t degree = 1000;
  std::size_t cvar_degree = 1000;
  double c = 0.05;
  std::uint64_t seed = 0;
  EstimationMode mode = EstimationMode::kShots;
  CalibrationOptions calibration;

  /// Throws ValidationError on any inconsistency.
  void validate() const;

  EstimationSettings settings() const;
};

/// Benchmark portfolio defaults.
RunConfig default_config();

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace qcr
