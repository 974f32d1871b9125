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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qcr/errors.hpp"
#include "qcr/portfolio.hpp"
#include "qcr/risk_engine.hpp"

namespace qcr::cli {

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// CSV goes to --out when given, otherwise after the report on stdout.
class CsvSink {
 public:
  CsvSink(const Options& options, std::ostream& fallback) : fallback_(fallback) {
    if (options.out) {
      if (options.out->has_parent_path()) std::filesystem::create_directories(options.out->parent_path());
      file_.open(*options.out);
      if (!file_) throw ValidationError("cannot write " + options.out->string());
      path_ = options.out->string();
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }
  void announce(std::ostream& out) const {
    if (!path_.empty()) out << "wrote " << path_ << "\n";
  }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
  std::string path_;
};

ThresholdFilter load_filter(const Options& options, const RunConfig& cfg) {
  const auto path = resolve_cache_path(options, cfg);
  if (!std::filesystem::exists(path)) {
    throw CacheMismatchError("phase cache " + path.string() +
                             " not found; run the 'phases' command with the same settings first");
  }
  ThresholdFilter filter = load_phase_cache(path);
  require_cache_matches(filter, cfg.mu, cfg.kappa, cfg.delta, cfg.degree);
  return filter;
}

void print_estimate_header(std::ostream& out, const RunConfig& cfg) {
  out << "mode=" << to_string(cfg.mode) << " eps=" << cfg.eps << " alpha_iqae=" << cfg.alpha_iqae
      << " shots=" << cfg.shots << " seed=" << cfg.seed << "\n";
}

void print_warnings(std::ostream& out, const RiskEstimate& r) {
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
}

}  // namespace

RunConfig resolve_config(const Options& o) {
  RunConfig cfg = o.config ? load_config(*o.config) : default_config();
  if (o.seed) cfg.seed = *o.seed;
  if (o.mode) {
    if (*o.mode != "exact" && *o.mode != "shots") throw ValidationError("--mode must be exact or shots");
    cfg.mode = *o.mode == "exact" ? EstimationMode::kExact : EstimationMode::kShots;
  }
  if (o.eps) cfg.eps = *o.eps;
  if (o.alpha_iqae) cfg.alpha_iqae = *o.alpha_iqae;
  if (o.alpha_var) cfg.alpha_var = *o.alpha_var;
  if (o.degree) cfg.degree = *o.degree;
  if (o.mu) cfg.mu = *o.mu;
  if (o.kappa) cfg.kappa = *o.kappa;
  if (o.delta) cfg.delta = *o.delta;
  if (o.c) cfg.c = *o.c;
  cfg.validate();
  return cfg;
}

std::filesystem::path resolve_cache_path(const Options& options, const RunConfig& cfg) {
  if (options.cache) return *options.cache;
  const std::string name = default_cache_name(cfg.mu, cfg.kappa, cfg.delta, cfg.degree);
  if (const char* dir = std::getenv("QCR_CACHE_DIR"); dir != nullptr && *dir != '\0') {
    return std::filesystem::path(dir) / name;
  }
  return name;
}

int cmd_phases(const Options& options, std::ostream& out) {
  const RunConfig cfg = resolve_config(options);
  const ThresholdFilter filter = build_threshold_filter(cfg.mu, cfg.kappa, cfg.delta, cfg.degree);
  const auto path = resolve_cache_path(options, cfg);
  save_phase_cache(path, filter);
  const auto& p = filter.poly;
  out << "degree " << p.degree() << "  mu " << fmt("%.10f", p.mu) << "  kappa " << p.k << "  delta "
      << p.delta << "\n";
  out << "sup-norm " << fmt("%.6f", p.sup_norm) << "  max deviation off bands "
      << fmt("%.3e", p.max_deviation) << "  scale " << fmt("%.8f", p.scale) << "\n";
  out << "solver residual " << fmt("%.3e", filter.phases.residual) << " after "
      << filter.phases.iterations << " iterations\n";
  out << "verification error " << fmt("%.3e", filter.phases.verification_error) << "\n";
  out << "wrote " << path.string() << "\n";
  if (options.plot) {
    std::ofstream plot(*options.plot);
    if (!plot) throw ValidationError("cannot write " + options.plot->string());
    plot << "x,p_x\n";
    char buf[96];
    for (const auto& [x, v] : sample_polynomial(p, 2001)) {
      std::snprintf(buf, sizeof buf, "%.6f,%.10f\n", x, v);
      plot << buf;
    }
    out << "wrote " << options.plot->string() << "\n";
  }
  return kOk;
}

int cmd_bench(const Options& options, std::ostream& out) {
  const RunConfig cfg = resolve_config(options);
  const ThresholdFilter filter = load_filter(options, cfg);
  const RiskEngine engine(cfg.model, cfg.settings());
  const ScenarioTable table = enumerate(cfg.model);
  CsvSink csv(options, out);
  print_estimate_header(out, cfg);
  csv.stream() << "target_loss,cdf_qsvt,cdf_benchmark\n";
  double worst = 0.0;
  for (double loss : engine.losses()) {
    const double probe = engine.safe_point(loss);
    const RiskEstimate r = engine.estimate_cdf(probe, filter, cfg.calibration);
    const double bench = cdf(table, loss);
    worst = std::max(worst, std::abs(r.value - bench));
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.2f,%.4f,%.4f\n", loss, r.value, bench);
    csv.stream() << buf;
    print_warnings(out, r);
  }
  out << "rows " << engine.losses().size() << "  max |qsvt - benchmark| " << fmt("%.4f", worst) << "\n";
  csv.announce(out);
  return kOk;
}

int cmd_var(const Options& options, std::ostream& out) {
  const RunConfig cfg = resolve_config(options);
  const ThresholdFilter filter = load_filter(options, cfg);
  const RiskEngine engine(cfg.model, cfg.settings());
  const RiskEstimate r = engine.var_bisection(cfg.alpha_var, filter, cfg.calibration);
  CsvSink csv(options, out);
  print_estimate_header(out, cfg);
  out << "VaR(alpha_var=" << cfg.alpha_var << ") = " << fmt("%.2f", r.value) << "  final bracket ["
      << fmt("%.2f", r.lower) << ", " << fmt("%.2f", r.upper) << "]  steps " << r.trace.size()
      << "  IQAE runs " << r.iqae_runs << "  queries " << r.queries << "\n";
  print_warnings(out, r);
  csv.stream() << "step,lo,hi,probe,estimate,decision\n";
  for (const auto& s : r.trace) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%zu,%.2f,%.2f,%.2f,%.6f,%s\n", s.step, s.lo, s.hi, s.probe,
                  s.estimate, s.decision.c_str());
    csv.stream() << buf;
  }
  csv.announce(out);
  return kOk;
}

int cmd_el(const Options& options, std::ostream& out) {
  const RunConfig cfg = resolve_config(options);
  const RiskEngine engine(cfg.model, cfg.settings());
  const RiskEstimate r = engine.expected_loss(cfg.c);
  const OracleMetrics oracle = oracle_metrics(enumerate(cfg.model), cfg.alpha_var);
  print_estimate_header(out, cfg);
  out << "expected loss (c=" << cfg.c << ") = " << fmt("%.4f", r.value) << "  interval ["
      << fmt("%.4f", r.lower) << ", " << fmt("%.4f", r.upper) << "]\n";
  out << "Taylor bias bound " << fmt("%.4f", r.error_bound) << "  oracle " << fmt("%.4f", oracle.expected_loss)
      << "  deviation " << fmt("%.4f", r.value - oracle.expected_loss) << "\n";
  print_warnings(out, r);
  return kOk;
}

int cmd_cvar(const Options& options, std::ostream& out) {
  const RunConfig cfg = resolve_config(options);
  const ThresholdFilter filter = load_filter(options, cfg);
  const RiskEngine engine(cfg.model, cfg.settings());
  double var_value = 0.0;
  if (options.target_loss) {
    var_value = *options.target_loss;
  } else {
    var_value = engine.var_bisection(cfg.alpha_var, filter, cfg.calibration).value;
  }
  const RiskEstimate r = engine.estimate_cvar(var_value, cfg.c, cfg.kappa, cfg.cvar_degree, filter);
  const ScenarioTable table = enumerate(cfg.model);
  const OracleMetrics oracle = oracle_metrics(table, cfg.alpha_var);
  double oracle_partial = 0.0;
  for (std::size_t j = 0; j < table.size(); ++j) {
    if (table.loss[j] <= var_value + 1e-9 * table.max_loss) oracle_partial += table.probability[j] * table.loss[j];
  }
  print_estimate_header(out, cfg);
  out << "VaR used " << fmt("%.2f", var_value) << "  c " << cfg.c << "\n";
  out << "lower-tail partial expectation = " << fmt("%.4f", r.value) << "  interval ["
      << fmt("%.4f", r.lower) << ", " << fmt("%.4f", r.upper) << "]  systematic bound "
      << fmt("%.4f", r.error_bound) << "\n";
  out << "oracle lower-tail partial expectation " << fmt("%.4f", oracle_partial)
      << "  oracle E[L | L >= VaR] " << fmt("%.4f", oracle.conditional_tail_expectation) << "\n";
  print_warnings(out, r);
  return kOk;
}

int cmd_cdf(const Options& options, std::ostream& out) {
  if (!options.target_loss) throw ValidationError("cdf needs --target-loss");
  if (!(*options.target_loss > 0.0)) throw ValidationError("--target-loss must be > 0");
  const RunConfig cfg = resolve_config(options);
  const ThresholdFilter filter = load_filter(options, cfg);
  const RiskEngine engine(cfg.model, cfg.settings());
  const RiskEstimate r = engine.estimate_cdf(*options.target_loss, filter, cfg.calibration);
  const ScenarioTable table = enumerate(cfg.model);
  const ThetaMap theta = engine.probe_theta(*options.target_loss, cfg.mu, cfg.calibration);
  print_estimate_header(out, cfg);
  out << "CDF(" << fmt("%.2f", *options.target_loss) << ") = " << fmt("%.6f", r.value) << "  interval ["
      << fmt("%.6f", r.lower) << ", " << fmt("%.6f", r.upper) << "]  IQAE eps " << fmt("%.6f", r.iqae_eps)
      << "  queries " << r.queries << "\n";
  out << "oracle " << fmt("%.6f", cdf(table, *options.target_loss)) << "  polynomial-filtered oracle "
      << fmt("%.6f", filtered_oracle_cdf(table, theta, filter.poly)) << "\n";
  print_warnings(out, r);
  return kOk;
}

int cmd_oracle(const Options& options, std::ostream& out) {
  const RunConfig cfg = resolve_config(options);
  const ScenarioTable table = enumerate(cfg.model);
  const OracleMetrics m = oracle_metrics(table, cfg.alpha_var);
  CsvSink csv(options, out);
  out << "VaR(alpha_var=" << cfg.alpha_var << ") " << fmt("%.2f", m.value_at_risk) << "  CDF(VaR) "
      << fmt("%.6f", m.cdf_at_var) << "\n";
  out << "expected loss " << fmt("%.4f", m.expected_loss) << "\n";
  out << "lower-tail partial expectation (L <= VaR) " << fmt("%.4f", m.lower_tail_partial_expectation) << "\n";
  out << "E[L | L >= VaR] " << fmt("%.4f", m.conditional_tail_expectation) << "\n";
  csv.stream() << "target_loss,cdf_benchmark\n";
  for (double loss : distinct_losses(table)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.2f,%.4f\n", loss, cdf(table, loss));
    csv.stream() << buf;
  }
  csv.announce(out);
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Credit-risk VaR through QSVT state preparation and iterative amplitude estimation"};
  app.require_subcommand(1);
  Options o;
  std::string config, cache, outp, plot;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "run configuration file");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--mode", o.mode, "exact | shots");
    sub->add_option("--eps", o.eps, "target half-width");
    sub->add_option("--alpha-iqae", o.alpha_iqae, "IQAE failure probability");
    sub->add_option("--alpha-var", o.alpha_var, "VaR tail level");
    sub->add_option("--degree", o.degree, "polynomial degree");
    sub->add_option("--mu", o.mu, "threshold position");
    sub->add_option("--kappa", o.kappa, "polynomial scale k");
    sub->add_option("--delta", o.delta, "threshold band half-width");
    sub->add_option("--c", o.c, "expected-loss angle spread");
    sub->add_option("--cache", cache, "phase cache file");
    sub->add_option("--out", outp, "CSV output file");
  };

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const Options&, std::ostream&);
  };
  const Sub subs[] = {
      {"phases", "solve and cache threshold phases", cmd_phases},
      {"bench", "CDF at every scenario loss vs the classical benchmark", cmd_bench},
      {"var", "VaR by bisection", cmd_var},
      {"el", "expected loss", cmd_el},
      {"cvar", "lower-tail partial expectation up to VaR", cmd_cvar},
      {"cdf", "CDF at one target loss", cmd_cdf},
      {"oracle", "classical brute-force metrics", cmd_oracle},
  };
  int (*chosen)(const Options&, std::ostream&) = nullptr;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    if (std::string(s.name) == "phases") sub->add_option("--plot", plot, "write x,p_x samples");
    if (std::string(s.name) == "cdf" || std::string(s.name) == "cvar") {
      sub->add_option("--target-loss", o.target_loss, "target loss (cdf) or VaR to use (cvar)");
    }
    sub->callback([&chosen, fn = s.fn] { chosen = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }
  if (!config.empty()) o.config = config;
  if (!cache.empty()) o.cache = cache;
  if (!outp.empty()) o.out = outp;
  if (!plot.empty()) o.plot = plot;

  try {
    return chosen(o, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return kNonConvergence;
  } catch (const CacheMismatchError& e) {
    err << "error: " << e.what() << "\n";
    return kCacheMismatch;
  } catch (const BracketingError& e) {
    err << "error: " << e.what() << "\n";
    return kNotBracketed;
  } catch (const CalibrationError& e) {
    err << "error: " << e.what() << "\n";
    return kCvarCalibration;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qcr::cli
