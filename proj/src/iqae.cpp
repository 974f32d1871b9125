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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/beta.hpp>

#include "qcr/errors.hpp"
#include "qcr/estimation.hpp"

namespace qcr {

namespace {

constexpr double kPi = std::numbers::pi;

struct NextPower {
  std::size_t k;
  bool upper_half;
};

NextPower find_next_k(std::size_t k, bool upper_half, double theta_l, double theta_u,
                      double min_ratio) {
  const double old_scaling = 4.0 * static_cast<double>(k) + 2.0;
  const auto max_scaling = static_cast<long long>(1.0 / (2.0 * (theta_u - theta_l)));
  long long scaling = max_scaling - (max_scaling - 2) % 4;
  while (static_cast<double>(scaling) >= min_ratio * old_scaling) {
    const double s = static_cast<double>(scaling);
    const double theta_min = s * theta_l - std::floor(s * theta_l);
    const double theta_max = s * theta_u - std::floor(s * theta_u);
    const auto next = static_cast<std::size_t>((scaling - 2) / 4);
    if (theta_min <= theta_max && theta_max <= 0.5 && theta_min <= 0.5) return {next, true};
    if (theta_max >= 0.5 && theta_max >= theta_min && theta_min >= 0.5) return {next, false};
    scaling -= 4;
  }
  return {k, upper_half};
}

// Angle in units of full turns within the chosen half circle.
double half_circle_angle(double a, bool upper_half) {
  const double base = std::acos(std::clamp(1.0 - 2.0 * a, -1.0, 1.0)) / (2.0 * kPi);
  return upper_half ? base : 1.0 - base;
}

}  // namespace

std::pair<double, double> clopper_pearson(double successes, double trials, double alpha) {
  if (!(trials > 0.0) || successes < 0.0 || successes > trials) {
    throw ValidationError("clopper_pearson: need 0 <= successes <= trials, trials > 0");
  }
  constexpr double kEdge = 1e-12;
  const double lower = successes <= kEdge
                           ? 0.0
                           : boost::math::ibeta_inv(successes, trials - successes + 1.0, alpha / 2);
  const double upper =
      successes >= trials - kEdge
          ? 1.0
          : boost::math::ibeta_inv(successes + 1.0, trials - successes, 1.0 - alpha / 2);
  return {lower, upper};
}

ConfidenceInterval iqae(const AmplitudeProblem& problem, double eps, double alpha,
                        const IqaeOptions& options) {
  if (!(eps > 0.0 && eps < 0.5)) throw ValidationError("iqae: eps must lie in (0, 0.5)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("iqae: alpha must lie in (0, 1)");
  if (problem.shots == 0) throw ValidationError("iqae: shots must be at least 1");
  if (!(options.min_ratio > 1.0)) throw ValidationError("iqae: min_ratio must exceed 1");

  const auto pattern = good_pattern(problem);
  const CircuitOp grover = grover_operator(problem);
  Statevector state(problem.layout);
  state.apply(problem.preparation);
  std::size_t applied = 0;
  std::mt19937_64 rng(problem.seed);

  const double max_rounds_d =
      std::floor(std::log(options.min_ratio * kPi / 8.0 / eps) / std::log(options.min_ratio)) + 1.0;
  const double round_alpha = alpha / std::max(1.0, max_rounds_d);
  const double shots = static_cast<double>(problem.shots);

  ConfidenceInterval out;
  out.alpha = alpha;
  out.epsilon = eps;
  double theta_l = 0.0;
  double theta_u = 0.25;
  bool upper_half = true;
  std::vector<std::size_t> powers{0};
  std::vector<double> ones;
  double last_frequency = 0.0;
  std::size_t last_k = 0;
  bool last_upper = true;

  while (theta_u - theta_l > eps / kPi) {
    if (out.rounds >= options.max_rounds) {
      out.converged = false;
      break;
    }
    ++out.rounds;
    const auto next = find_next_k(powers.back(), upper_half, theta_l, theta_u, options.min_ratio);
    const std::size_t k = next.k;
    upper_half = next.upper_half;
    powers.push_back(k);

    for (; applied < k; ++applied) state.apply(grover);
    const double p = std::clamp(probability_of(state, problem.good), 0.0, 1.0);
    double one_count;
    if (problem.exact) {
      one_count = shots * p;
    } else {
      std::binomial_distribution<std::size_t> draw(problem.shots, p);
      one_count = static_cast<double>(draw(rng));
    }
    ones.push_back(one_count);
    out.queries += problem.shots * k;
    out.shots += problem.shots;

    // Pool the shots of earlier rounds that used the same power.
    double round_shots = shots;
    double round_ones = one_count;
    for (std::size_t r = powers.size() - 1; r >= 2 && powers[r - 1] == k; --r) {
      round_shots += shots;
      round_ones += ones[r - 2];
    }
    const auto [a_min, a_max] = clopper_pearson(round_ones, round_shots, round_alpha);
    double theta_min_i;
    double theta_max_i;
    if (upper_half) {
      theta_min_i = half_circle_angle(a_min, true);
      theta_max_i = half_circle_angle(a_max, true);
    } else {
      theta_min_i = half_circle_angle(a_max, false);
      theta_max_i = half_circle_angle(a_min, false);
    }
    const double scaling = 4.0 * static_cast<double>(k) + 2.0;
    const double new_u = (std::floor(scaling * theta_u) + theta_max_i) / scaling;
    const double new_l = (std::floor(scaling * theta_l) + theta_min_i) / scaling;
    theta_u = new_u;
    theta_l = new_l;
    last_frequency = round_ones / round_shots;
    last_k = k;
    last_upper = upper_half;
  }

  out.lower = std::pow(std::sin(2.0 * kPi * theta_l), 2);
  out.upper = std::pow(std::sin(2.0 * kPi * theta_u), 2);
  if (out.lower > out.upper) std::swap(out.lower, out.upper);
  if (out.rounds == 0) {
    out.estimate = 0.5 * (out.lower + out.upper);
    return out;
  }
  const double scaling = 4.0 * static_cast<double>(last_k) + 2.0;
  double theta = (std::floor(scaling * theta_l) + half_circle_angle(last_frequency, last_upper)) / scaling;
  theta = std::clamp(theta, std::min(theta_l, theta_u), std::max(theta_l, theta_u));
  out.estimate = std::clamp(std::pow(std::sin(2.0 * kPi * theta), 2), out.lower, out.upper);
  return out;
}

ConfidenceInterval rescale_estimate(const ConfidenceInterval& interval, double k) {
  if (!(k > 0.0 && k <= 1.0)) throw ValidationError("rescale_estimate: k must lie in (0, 1]");
  ConfidenceInterval out = interval;
  const double k2 = k * k;
  out.lower /= k2;
  out.upper /= k2;
  out.estimate /= k2;
  out.scale = interval.scale * k2;
  return out;
}

}  // namespace qcr
