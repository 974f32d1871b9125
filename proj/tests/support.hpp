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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qcr/portfolio.hpp"
#include "qcr/statevector.hpp"

namespace qcr::testing {

// Independent standard normal helpers so the frozen oracle values do not
// depend on the library's own Boost-backed versions.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double normal_quantile(double p) {
  double lo = -12.0;
  double hi = 12.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Brute-force scenario distribution: nested loops over each factor's grid
// and every default pattern, no shared code with the library.
struct BruteForce {
  std::vector<double> probability;
  std::vector<double> loss;
};

inline BruteForce brute_force(const PortfolioModel& m) {
  const std::size_t n = m.lgd.size();
  const std::size_t f = m.loadings[0].size();
  const std::size_t points = std::size_t{1} << m.qubits_per_factor;
  std::vector<double> z(points), q(points);
  double total = 0.0;
  for (std::size_t k = 0; k < points; ++k) {
    z[k] = -m.truncation + 2.0 * m.truncation * double(k) / double(points - 1);
    q[k] = std::exp(-0.5 * z[k] * z[k]);
    total += q[k];
  }
  for (auto& w : q) w /= total;

  BruteForce out;
  out.probability.assign(std::size_t{1} << n, 0.0);
  out.loss.assign(std::size_t{1} << n, 0.0);
  for (std::size_t j = 0; j < out.loss.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (j & (std::size_t{1} << i)) out.loss[j] += m.lgd[i];
    }
  }
  std::size_t grid = 1;
  for (std::size_t r = 0; r < f; ++r) grid *= points;
  for (std::size_t g = 0; g < grid; ++g) {
    std::vector<double> zz(f);
    double w = 1.0;
    std::size_t rest = g;
    for (std::size_t r = 0; r < f; ++r) {
      zz[r] = z[rest % points];
      w *= q[rest % points];
      rest /= points;
    }
    std::vector<double> pd(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t r = 0; r < f; ++r) s += m.loadings[i][r] * zz[r];
      const double rho = m.sensitivities[i];
      pd[i] = normal_cdf((normal_quantile(m.default_probabilities[i]) + std::sqrt(rho) * s) /
                         std::sqrt(1.0 - rho));
    }
    for (std::size_t j = 0; j < out.probability.size(); ++j) {
      double p = w;
      for (std::size_t i = 0; i < n; ++i) p *= (j >> i) & 1U ? pd[i] : 1.0 - pd[i];
      out.probability[j] += p;
    }
  }
  return out;
}

inline std::vector<Amplitude> random_state(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Amplitude> v(dim);
  double norm = 0.0;
  for (auto& a : v) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

inline double max_distance(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Benchmark portfolio inputs restated so tests do not lean on reference_portfolio().
inline PortfolioModel table_one() {
  PortfolioModel m;
  m.default_probabilities = {0.256, 0.072, 0.135, 0.072};
  m.sensitivities = {0.09, 0.09, 0.09, 0.09};
  m.lgd = {18406.56, 54807.94, 13719.59, 21127.25};
  m.loadings = {{0.158, 0.058}, {0.256, 0.157}, {0.158, 0.058}, {0.158, 0.058}};
  return m;
}

}  // namespace qcr::testing
