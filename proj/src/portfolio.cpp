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

#include "qcr/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

#include "qcr/errors.hpp"

namespace qcr {

void PortfolioModel::validate() const {
  const std::size_t n = lgd.size();
  if (n == 0) throw ValidationError("portfolio has no counterparties");
  if (default_probabilities.size() != n || sensitivities.size() != n ||
      loadings.size() != n) {
    throw ValidationError("portfolio vectors must all have one entry per counterparty");
  }
  const std::size_t f = num_factors();
  if (f == 0) throw ValidationError("portfolio needs at least one risk factor");
  for (std::size_t i = 0; i < n; ++i) {
    if (loadings[i].size() != f) throw ValidationError("loading matrix must be n x f");
    if (!(default_probabilities[i] > 0.0 && default_probabilities[i] < 1.0)) {
      throw ValidationError("intrinsic default probabilities must lie in (0, 1)");
    }
    if (!(sensitivities[i] >= 0.0 && sensitivities[i] < 1.0)) {
      throw ValidationError("sensitivities must lie in [0, 1)");
    }
    if (!(lgd[i] > 0.0) || !std::isfinite(lgd[i])) {
      throw ValidationError("loss given default must be positive");
    }
    for (double w : loadings[i]) {
      if (!std::isfinite(w)) throw ValidationError("loadings must be finite");
    }
  }
  if (qubits_per_factor == 0) throw ValidationError("qubits_per_factor must be >= 1");
  if (!(truncation > 0.0)) throw ValidationError("truncation must be positive");
}

PortfolioModel reference_portfolio() {
  PortfolioModel m;
  m.qubits_per_factor = 2;
  m.truncation = 2.0;
  m.default_probabilities = {0.256, 0.072, 0.135, 0.072};
  m.sensitivities = {0.090, 0.090, 0.090, 0.090};
  m.lgd = {18406.56, 54807.94, 13719.59, 21127.25};
  m.loadings = {{0.158, 0.058}, {0.256, 0.157}, {0.158, 0.058}, {0.158, 0.058}};
  return m;
}

double standard_normal_cdf(double x) {
  return boost::math::cdf(boost::math::normal_distribution<double>(), x);
}

double standard_normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

FactorGrid factor_grid(const PortfolioModel& model) {
  const std::size_t count = std::size_t{1} << model.qubits_per_factor;
  FactorGrid grid;
  grid.points.resize(count);
  grid.weights.resize(count);
  const boost::math::normal_distribution<double> normal;
  for (std::size_t k = 0; k < count; ++k) {
    const double z = count == 1 ? 0.0
                                : -model.truncation + 2.0 * model.truncation *
                                                          static_cast<double>(k) /
                                                          static_cast<double>(count - 1);
    grid.points[k] = z;
    grid.weights[k] = boost::math::pdf(normal, z);
  }
  const double total = std::accumulate(grid.weights.begin(), grid.weights.end(), 0.0);
  for (auto& w : grid.weights) w /= total;
  return grid;
}

std::vector<double> grid_point(const PortfolioModel& model, const FactorGrid& grid,
                               std::uint64_t g) {
  const std::size_t f = model.num_factors();
  const std::uint64_t mask = (std::uint64_t{1} << model.qubits_per_factor) - 1;
  std::vector<double> z(f);
  for (std::size_t r = 0; r < f; ++r) {
    z[r] = grid.points[(g >> (r * model.qubits_per_factor)) & mask];
  }
  return z;
}

double grid_weight(const PortfolioModel& model, const FactorGrid& grid, std::uint64_t g) {
  const std::uint64_t mask = (std::uint64_t{1} << model.qubits_per_factor) - 1;
  double w = 1.0;
  for (std::size_t r = 0; r < model.num_factors(); ++r) {
    w *= grid.weights[(g >> (r * model.qubits_per_factor)) & mask];
  }
  return w;
}

double scenario_loss(const PortfolioModel& model, std::uint64_t scenario) {
  const std::size_t n = model.num_counterparties();
  if (n >= 64 || scenario >= (std::uint64_t{1} << n)) {
    throw ValidationError("scenario index out of range");
  }
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if ((scenario >> i) & 1U) loss += model.lgd[i];
  }
  return loss;
}

double conditional_pd(const PortfolioModel& model, std::size_t counterparty,
                      std::span<const double> zpoint) {
  if (counterparty >= model.num_counterparties()) {
    throw ValidationError("counterparty index out of range");
  }
  if (zpoint.size() != model.num_factors()) {
    throw ValidationError("factor vector length does not match the loading matrix");
  }
  const auto& w = model.loadings[counterparty];
  double systemic = 0.0;
  for (std::size_t r = 0; r < zpoint.size(); ++r) systemic += w[r] * zpoint[r];
  const double rho = model.sensitivities[counterparty];
  const double threshold = standard_normal_quantile(model.default_probabilities[counterparty]);
  return standard_normal_cdf((threshold + std::sqrt(rho) * systemic) / std::sqrt(1.0 - rho));
}

ScenarioTable enumerate(const PortfolioModel& model) {
  model.validate();
  const std::size_t n = model.num_counterparties();
  if (n > kMaxEnumeratedCounterparties) {
    throw ValidationError("too many counterparties for exhaustive enumeration");
  }
  const std::size_t grid_bits = model.num_factors() * model.qubits_per_factor;
  if (grid_bits + n > 40) throw ValidationError("factor grid too large for enumeration");

  const std::uint64_t scenarios = std::uint64_t{1} << n;
  ScenarioTable table;
  table.probability.assign(scenarios, 0.0);
  table.loss.resize(scenarios);
  for (std::uint64_t j = 0; j < scenarios; ++j) table.loss[j] = scenario_loss(model, j);
  table.max_loss = table.loss.back();

  const FactorGrid grid = factor_grid(model);
  std::vector<double> pd(n);
  for (std::uint64_t g = 0; g < (std::uint64_t{1} << grid_bits); ++g) {
    const auto z = grid_point(model, grid, g);
    const double weight = grid_weight(model, grid, g);
    for (std::size_t i = 0; i < n; ++i) pd[i] = conditional_pd(model, i, z);
    for (std::uint64_t j = 0; j < scenarios; ++j) {
      double p = weight;
      for (std::size_t i = 0; i < n; ++i) p *= ((j >> i) & 1U) ? pd[i] : 1.0 - pd[i];
      table.probability[j] += p;
    }
  }
  return table;
}

std::vector<double> distinct_losses(const ScenarioTable& table) {
  std::vector<double> sorted = table.loss;
  std::sort(sorted.begin(), sorted.end());
  const double tol = 1e-9 * std::max(1.0, table.max_loss);
  std::vector<double> out;
  for (double l : sorted) {
    if (out.empty() || l - out.back() > tol) out.push_back(l);
  }
  return out;
}

std::vector<double> scenario_losses(const PortfolioModel& model) {
  model.validate();
  const std::size_t n = model.num_counterparties();
  if (n > kMaxEnumeratedCounterparties) {
    throw ValidationError("too many counterparties for exhaustive enumeration");
  }
  ScenarioTable shell;
  shell.loss.resize(std::size_t{1} << n);
  for (std::uint64_t j = 0; j < shell.loss.size(); ++j) shell.loss[j] = scenario_loss(model, j);
  shell.max_loss = shell.loss.back();
  return distinct_losses(shell);
}

double min_loss_gap(const ScenarioTable& table) {
  const auto losses = distinct_losses(table);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < losses.size(); ++i) gap = std::min(gap, losses[i] - losses[i - 1]);
  return gap;
}

double cdf(const ScenarioTable& table, double x) {
  const double tol = 1e-9 * std::max(1.0, table.max_loss);
  double total = 0.0;
  for (std::size_t j = 0; j < table.size(); ++j) {
    if (table.loss[j] <= x + tol) total += table.probability[j];
  }
  return total;
}

OracleMetrics oracle_metrics(const ScenarioTable& table, double alpha_var) {
  if (!(alpha_var > 0.0 && alpha_var < 1.0)) {
    throw ValidationError("alpha_var must lie in (0, 1)");
  }
  OracleMetrics m;
  for (std::size_t j = 0; j < table.size(); ++j) {
    m.expected_loss += table.probability[j] * table.loss[j];
  }
  const double level = 1.0 - alpha_var;
  const auto losses = distinct_losses(table);
  m.value_at_risk = losses.back();
  for (double l : losses) {
    if (cdf(table, l) >= level) {
      m.value_at_risk = l;
      break;
    }
  }
  m.cdf_at_var = cdf(table, m.value_at_risk);

  const double tol = 1e-9 * std::max(1.0, table.max_loss);
  double tail_mass = 0.0;
  double tail_sum = 0.0;
  for (std::size_t j = 0; j < table.size(); ++j) {
    if (table.loss[j] <= m.value_at_risk + tol) {
      m.lower_tail_partial_expectation += table.probability[j] * table.loss[j];
    }
    if (table.loss[j] >= m.value_at_risk - tol) {
      tail_mass += table.probability[j];
      tail_sum += table.probability[j] * table.loss[j];
    }
  }
  m.conditional_tail_expectation = tail_mass > 0.0 ? tail_sum / tail_mass : m.value_at_risk;
  return m;
}

}  // namespace qcr
