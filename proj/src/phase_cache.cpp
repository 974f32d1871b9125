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

#include "qcr/phase_cache.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcr/errors.hpp"

namespace qcr {

namespace {

constexpr const char* kFormat = "qcr-phase-cache";

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

std::string serialize_phase_cache(const ThresholdFilter& filter) {
  const auto& p = filter.poly;
  const auto& s = filter.phases;
  nlohmann::ordered_json j;
  j["format"] = kFormat;
  j["version"] = kPhaseCacheVersion;
  j["degree"] = p.degree();
  j["mu"] = p.mu;
  j["kappa"] = p.k;
  j["delta"] = p.delta;
  j["scale"] = p.scale;
  j["sup_norm"] = p.sup_norm;
  j["max_deviation"] = p.max_deviation;
  j["band_deviation"] = p.band_deviation;
  j["odd_mass"] = p.odd_mass;
  j["coefficients"] = p.coefficients;
  j["polynomial_digest"] = s.polynomial_digest;
  j["residual"] = s.residual;
  j["verification_error"] = s.verification_error;
  j["iterations"] = s.iterations;
  j["signal_phases"] = s.signal;
  j["phases"] = s.phases;
  return j.dump(1) + "\n";
}

ThresholdFilter deserialize_phase_cache(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CacheMismatchError(std::string("phase cache is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("format", std::string{}) != kFormat) {
      throw CacheMismatchError("file is not a phase cache");
    }
    if (j.at("version").get<int>() != kPhaseCacheVersion) {
      throw CacheMismatchError("phase cache version " + std::to_string(j.at("version").get<int>()) +
                               " is not supported (expected " + std::to_string(kPhaseCacheVersion) + ")");
    }
    ThresholdFilter f;
    auto& p = f.poly;
    p.kind = TargetKind::kThreshold;
    p.coefficients = j.at("coefficients").get<std::vector<double>>();
    p.mu = j.at("mu").get<double>();
    p.k = j.at("kappa").get<double>();
    p.delta = j.at("delta").get<double>();
    p.scale = j.at("scale").get<double>();
    p.sup_norm = j.at("sup_norm").get<double>();
    p.max_deviation = j.at("max_deviation").get<double>();
    p.band_deviation = j.at("band_deviation").get<double>();
    p.odd_mass = j.at("odd_mass").get<double>();
    auto& s = f.phases;
    s.polynomial_digest = j.at("polynomial_digest").get<std::string>();
    s.residual = j.at("residual").get<double>();
    s.verification_error = j.at("verification_error").get<double>();
    s.iterations = j.at("iterations").get<std::size_t>();
    s.signal = j.at("signal_phases").get<std::vector<double>>();
    s.phases = j.at("phases").get<std::vector<double>>();
    if (j.at("degree").get<std::size_t>() != p.degree()) {
      throw CacheMismatchError("phase cache degree does not match its coefficient count");
    }
    if (coefficient_digest(p.coefficients) != s.polynomial_digest) {
      throw CacheMismatchError("phase cache coefficients do not match the recorded digest");
    }
    f.check();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw CacheMismatchError(std::string("phase cache is missing fields: ") + e.what());
  }
}

void save_phase_cache(const std::filesystem::path& path, const ThresholdFilter& filter) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write phase cache " + path.string());
  out << serialize_phase_cache(filter);
  if (!out) throw ValidationError("failed writing phase cache " + path.string());
}

ThresholdFilter load_phase_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheMismatchError("cannot open phase cache " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_phase_cache(buf.str());
}

void require_cache_matches(const ThresholdFilter& filter, double mu, double k, double delta,
                           std::size_t degree) {
  const auto& p = filter.poly;
  if (p.degree() != degree || !same(p.mu, mu) || !same(p.k, k) || !same(p.delta, delta)) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "phase cache (d=%zu, mu=%.17g, kappa=%.17g, delta=%.17g) does not match "
                  "the configuration (d=%zu, mu=%.17g, kappa=%.17g, delta=%.17g)",
                  p.degree(), p.mu, p.k, p.delta, degree, mu, k, delta);
    throw CacheMismatchError(buf);
  }
  filter.check();
}

ThresholdFilter build_threshold_filter(double mu, double k, double delta, std::size_t degree,
                                       const QspSolverOptions& options) {
  ThresholdFilter f;
  f.poly = approximate(threshold_target(mu, k, delta), degree);
  f.phases = solve_phases(f.poly, options);
  return f;
}

std::string default_cache_name(double mu, double k, double delta, std::size_t degree) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "phases_d%zu_mu%.6f_k%.4f_delta%.4f.json", degree, mu, k, delta);
  return buf;
}

}  // namespace qcr
