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

#include "qcr/risk_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcr/errors.hpp"
#include "qcr/qsvt.hpp"

namespace qcr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double loss_tolerance(double max_loss) { return 1e-9 * std::max(1.0, max_loss); }

constexpr int kStraddleRetries = 3;

}  // namespace

const char* to_string(EstimationMode mode) {
  return mode == EstimationMode::kExact ? "exact" : "shots";
}

const char* to_string(QuantityKind kind) {
  switch (kind) {
    case QuantityKind::kCdf:
      return "CDF";
    case QuantityKind::kVar:
      return "VaR";
    case QuantityKind::kExpectedLoss:
      return "EL";
    case QuantityKind::kCvar:
      return "CVaR";
  }
  return "?";
}

void ThresholdFilter::check() const {
  if (phases.degree() != poly.degree() ||
      phases.polynomial_digest != coefficient_digest(poly.coefficients)) {
    throw CacheMismatchError("phase factors were solved for a different polynomial");
  }
  if (phases.phases.size() != poly.degree()) {
    throw CacheMismatchError("projector phases missing or of the wrong length");
  }
}

double expected_loss_bias_bound(double max_loss, double c) { return max_loss * c * c / 12.0; }

RiskEngine::RiskEngine(PortfolioModel model, EstimationSettings settings)
    : model_(std::move(model)), settings_(settings) {
  model_.validate();
  if (!(settings_.eps > 0.0 && settings_.eps < 0.5)) {
    throw ValidationError("eps must lie in (0, 0.5)");
  }
  if (!(settings_.alpha_iqae > 0.0 && settings_.alpha_iqae < 1.0)) {
    throw ValidationError("alpha_iqae must lie in (0, 1)");
  }
  if (settings_.shots == 0) throw ValidationError("shots must be at least 1");
  uncertainty_ = build_uncertainty(model_);
  layout_ = credit_layout(model_);
  losses_ = scenario_losses(model_);
  if (losses_.size() < 2) throw ValidationError("portfolio has a single loss level");
  min_gap_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < losses_.size(); ++i) {
    min_gap_ = std::min(min_gap_, losses_[i] - losses_[i - 1]);
  }
}

double RiskEngine::safe_point(double x) const {
  if (!(x >= 0.0)) throw ValidationError("safe_point: loss must be nonnegative");
  const double tol = loss_tolerance(max_loss());
  auto it = std::upper_bound(losses_.begin(), losses_.end(), x + tol);
  const std::size_t i = static_cast<std::size_t>(it - losses_.begin()) - 1;
  if (i + 1 == losses_.size()) {
    return max_loss() + 0.5 * (losses_[i] - losses_[i - 1]);
  }
  return 0.5 * (losses_[i] + losses_[i + 1]);
}

ThetaMap RiskEngine::probe_theta(double target_loss, double mu,
                                 const CalibrationOptions& calibration) const {
  if (!(target_loss > 0.0)) throw ValidationError("target loss must be positive");
  double ceiling = max_loss();
  if (target_loss >= ceiling - loss_tolerance(ceiling)) {
    ceiling = target_loss + std::max(target_loss - max_loss(), 0.5 * min_gap_);
  }
  return calibrate_theta(target_loss, ceiling, mu, calibration.beta_min, calibration.beta_max,
                         calibration.inverted);
}

CircuitOp RiskEngine::cdf_preparation(const ThetaMap& theta, const ThresholdFilter& filter) const {
  const LoadingCircuit loading = build_loading(model_, theta);
  const QsvtCircuit q = build_qsvt(loading, filter.phases.phases);
  return CircuitOp::sequence({uncertainty_.op, q.op}, "A_cdf");
}

ConfidenceInterval RiskEngine::run_iqae(const CircuitOp& preparation,
                                        std::vector<RegisterConstraint> good, double eps) const {
  AmplitudeProblem problem;
  problem.preparation = preparation;
  problem.layout = layout_;
  problem.good = std::move(good);
  problem.exact = settings_.mode == EstimationMode::kExact;
  problem.shots = settings_.shots;
  problem.seed = splitmix64(settings_.seed ^ splitmix64(calls_++));
  return iqae(problem, eps, settings_.alpha_iqae);
}

RiskEstimate RiskEngine::estimate_cdf(double target_loss, const ThresholdFilter& filter,
                                      const CalibrationOptions& calibration) const {
  return estimate_cdf(target_loss, filter, calibration, settings_.eps);
}

RiskEstimate RiskEngine::estimate_cdf(double target_loss, const ThresholdFilter& filter,
                                      const CalibrationOptions& calibration, double eps) const {
  filter.check();
  const double k = filter.poly.k;
  if (!(k > 0.0 && k <= 1.0)) throw ValidationError("threshold polynomial has k outside (0, 1]");
  const ThetaMap theta = probe_theta(target_loss, filter.poly.mu, calibration);
  const CircuitOp prep = cdf_preparation(theta, filter);

  RiskEstimate r;
  r.kind = QuantityKind::kCdf;
  r.k = k;
  r.eps = eps;
  r.alpha_iqae = settings_.alpha_iqae;
  r.iqae_eps = eps * k * k;
  r.probe = target_loss;
  const ConfidenceInterval raw =
      run_iqae(prep, {{kLossQubit, 0}, {kAncillaQubit, 0}}, r.iqae_eps);
  const ConfidenceInterval ci = rescale_estimate(raw, k);
  if (calibration.inverted) {
    r.value = 1.0 - ci.estimate;
    r.lower = 1.0 - ci.upper;
    r.upper = 1.0 - ci.lower;
  } else {
    r.value = ci.estimate;
    r.lower = ci.lower;
    r.upper = ci.upper;
  }
  r.shots = ci.shots;
  r.queries = ci.queries;
  r.iqae_runs = 1;
  if (!ci.converged) r.warnings.push_back("IQAE hit its round cap before reaching eps");
  return r;
}

RiskEstimate RiskEngine::var_bisection(double alpha_var, const ThresholdFilter& filter,
                                       const CalibrationOptions& calibration) const {
  if (!(alpha_var > 0.0 && alpha_var < 1.0)) throw ValidationError("alpha_var must lie in (0, 1)");
  const double level = 1.0 - alpha_var;
  RiskEstimate out;
  out.kind = QuantityKind::kVar;
  out.k = filter.poly.k;
  out.eps = settings_.eps;
  out.alpha_iqae = settings_.alpha_iqae;
  out.iqae_eps = settings_.eps * out.k * out.k;

  auto probe_decision = [&](double probe, BisectionStep& step) {
    double eps = settings_.eps;
    for (int attempt = 0; attempt <= kStraddleRetries; ++attempt) {
      const RiskEstimate est = estimate_cdf(probe, filter, calibration, eps);
      out.shots += est.shots;
      out.queries += est.queries;
      ++out.iqae_runs;
      step.estimate = est.value;
      step.lower = est.lower;
      step.upper = est.upper;
      if (est.lower >= level) {
        step.decision = "accept";
        return true;
      }
      if (est.upper < level) {
        step.decision = "reject";
        return false;
      }
      eps /= 2.0;
    }
    const bool accept = step.estimate >= level;
    step.decision = accept ? "fallback-accept" : "fallback-reject";
    out.warnings.push_back("interval straddled 1 - alpha_var at probe " + std::to_string(probe) +
                           " after " + std::to_string(kStraddleRetries) + " retries");
    return accept;
  };

  // Candidates are the losses with indices [first, last]. Every probe sits
  // halfway between two consecutive losses, so the filtered CDF there is the
  // CDF at the lower one and no loss falls inside the threshold band.
  double lo = 0.0;
  double hi = max_loss();
  std::size_t first = 0;
  std::size_t last = losses_.size() - 1;
  bool accepted_any = false;
  std::size_t step_index = 0;
  while (first < last) {
    BisectionStep step;
    step.step = ++step_index;
    step.lo = lo;
    step.hi = hi;
    const double mid = 0.5 * (lo + hi);
    // Largest candidate midpoint not above mid, so an accept at least halves
    // the bracket.
    std::size_t i = first;
    while (i + 1 < last && 0.5 * (losses_[i + 1] + losses_[i + 2]) <= mid) ++i;
    step.probe = 0.5 * (losses_[i] + losses_[i + 1]);
    const bool accept = probe_decision(step.probe, step);
    if (accept) {
      hi = step.probe;
      last = i;
      accepted_any = true;
    } else {
      lo = step.probe;
      first = i + 1;
    }
    out.trace.push_back(step);
  }
  if (!accepted_any) {
    BisectionStep step;
    step.step = ++step_index;
    step.lo = lo;
    step.hi = hi;
    step.probe = safe_point(max_loss());
    const bool accept = probe_decision(step.probe, step);
    out.trace.push_back(step);
    if (!accept && step.upper < level) {
      throw BracketingError("CDF at the maximal loss is below 1 - alpha_var (upper bound " +
                            std::to_string(step.upper) + ")");
    }
  }
  out.value = losses_[last];
  out.lower = lo;
  out.upper = hi;
  return out;
}

RiskEstimate RiskEngine::expected_loss(double c) const {
  const ThetaMap theta = expected_loss_theta(max_loss(), c);
  const LoadingCircuit loading = build_loading(model_, theta);
  const CircuitOp prep = CircuitOp::sequence({uncertainty_.op, loading.op}, "A_el");
  const ConfidenceInterval ci = run_iqae(prep, {{kLossQubit, 1}}, settings_.eps);

  const double factor = max_loss() / c;
  auto to_loss = [&](double p1) { return factor * (p1 - 0.5 + 0.5 * c); };
  RiskEstimate r;
  r.kind = QuantityKind::kExpectedLoss;
  r.value = to_loss(ci.estimate);
  r.lower = to_loss(ci.lower);
  r.upper = to_loss(ci.upper);
  r.eps = settings_.eps;
  r.alpha_iqae = settings_.alpha_iqae;
  r.iqae_eps = settings_.eps;
  r.error_bound = expected_loss_bias_bound(max_loss(), c);
  r.shots = ci.shots;
  r.queries = ci.queries;
  r.iqae_runs = 1;
  if (!ci.converged) r.warnings.push_back("IQAE hit its round cap before reaching eps");
  return r;
}

RiskEstimate RiskEngine::estimate_cvar(double var_value, double c, double k, std::size_t degree,
                                       const ThresholdFilter& filter) const {
  const double lm = max_loss();
  const double tol = loss_tolerance(lm);
  if (!(var_value >= 0.0 && var_value < lm - tol)) {
    throw ValidationError("estimate_cvar: VaR must lie in [0, L_M)");
  }
  if (!(k > 0.0 && k <= 1.0)) throw ValidationError("estimate_cvar: k must lie in (0, 1]");
  const ThetaMap theta = expected_loss_theta(lm, c);

  // Place mu halfway to the next loss level: the set {L_j <= cutoff} is the
  // same as {L_j <= VaR}, and no scenario sits on the kink of sqrt(mu^2 - x^2).
  const double cutoff = safe_point(var_value);
  const double mu = std::sin(theta.rotation(cutoff));
  if (!(mu > 0.0 && mu < 1.0)) {
    throw CalibrationError("estimate_cvar: no mu in (0, 1) separates the VaR for c = " +
                           std::to_string(c));
  }
  const ChebyshevPolynomial poly = approximate(cvar_target(mu, k), degree);
  const PhaseSequence phases = solve_phases(poly);
  const LoadingCircuit loading = build_loading(model_, theta);
  const QsvtCircuit q = build_qsvt(loading, phases.phases);
  const CircuitOp prep = CircuitOp::sequence({uncertainty_.op, q.op}, "A_cvar");
  const double iqae_eps = settings_.eps * k * k;
  const ConfidenceInterval ci = run_iqae(prep, {{kLossQubit, 0}, {kAncillaQubit, 0}}, iqae_eps);
  const RiskEstimate cdf = estimate_cdf(cutoff, filter);

  const double factor = lm / c;
  const double level_term = mu * mu - 0.5 * (1.0 - c);
  const double k2 = k * k;
  auto combine = [&](double f, double p1) { return factor * (f * level_term - p1 / k2); };

  RiskEstimate r;
  r.kind = QuantityKind::kCvar;
  r.k = k;
  r.probe = cutoff;
  r.value = combine(cdf.value, ci.estimate);
  const double a = combine(level_term >= 0 ? cdf.lower : cdf.upper, ci.upper);
  const double b = combine(level_term >= 0 ? cdf.upper : cdf.lower, ci.lower);
  r.lower = std::min(a, b);
  r.upper = std::max(a, b);
  r.eps = settings_.eps;
  r.alpha_iqae = settings_.alpha_iqae;
  r.iqae_eps = iqae_eps;

  // Certified systematic error: Taylor remainder of sin^2 around pi/4, the
  // tail polynomial's error on the loss grid, and the threshold filter's
  // error on the grid feeding F.
  const ThetaMap cdf_theta = probe_theta(cutoff, filter.poly.mu, {});
  double tail_err = 0.0;
  double cdf_err = 0.0;
  const auto tail = cvar_target(mu, k);
  for (double l : losses_) {
    const double x = std::sin(theta.rotation(l));
    tail_err = std::max(tail_err, std::abs(evaluate(poly, x) - tail.ideal(x)));
    const double y = std::sin(cdf_theta.rotation(l));
    const double p = evaluate(filter.poly, y);
    const double ideal = l <= cutoff ? filter.poly.k : 0.0;
    cdf_err = std::max(cdf_err, std::abs(p * p - ideal * ideal) / (filter.poly.k * filter.poly.k));
  }
  const double taylor = factor * (2.0 / 3.0) * std::pow(c / 2.0, 3) * std::min(1.0, cdf.upper);
  const double poly_term = factor * tail_err * (2.0 * k * mu + tail_err) / k2;
  const double cdf_term = factor * cdf_err * std::abs(level_term);
  r.error_bound = taylor + poly_term + cdf_term;

  r.shots = ci.shots + cdf.shots;
  r.queries = ci.queries + cdf.queries;
  r.iqae_runs = 2;
  r.warnings = cdf.warnings;
  if (!ci.converged) r.warnings.push_back("IQAE hit its round cap before reaching eps");
  return r;
}

double filtered_oracle_cdf(const ScenarioTable& table, const ThetaMap& theta,
                           const ChebyshevPolynomial& poly) {
  double total = 0.0;
  for (std::size_t j = 0; j < table.size(); ++j) {
    const double p = evaluate(poly, std::sin(theta.rotation(table.loss[j])));
    total += table.probability[j] * p * p;
  }
  total /= poly.k * poly.k;
  return theta.inverted ? 1.0 - total : total;
}

RiskEstimate estimate_cdf(const PortfolioModel& model, double target_loss,
                          const ThresholdFilter& filter, const EstimationSettings& settings) {
  return RiskEngine(model, settings).estimate_cdf(target_loss, filter);
}

RiskEstimate var_bisection(const PortfolioModel& model, double alpha_var,
                           const ThresholdFilter& filter, const EstimationSettings& settings) {
  return RiskEngine(model, settings).var_bisection(alpha_var, filter);
}

RiskEstimate expected_loss(const PortfolioModel& model, double c,
                           const EstimationSettings& settings) {
  return RiskEngine(model, settings).expected_loss(c);
}

RiskEstimate estimate_cvar(const PortfolioModel& model, double var_value, double c, double k,
                           std::size_t degree, const ThresholdFilter& filter,
                           const EstimationSettings& settings) {
  return RiskEngine(model, settings).estimate_cvar(var_value, c, k, degree, filter);
}

}  // namespace qcr
