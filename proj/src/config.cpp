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

#include "qcr/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "qcr/errors.hpp"

namespace qcr {

namespace {

// A parsed value: a scalar token or a (possibly nested) list.
struct Value {
  std::string scalar;
  std::vector<Value> items;
  bool is_list = false;
};

class ValueParser {
 public:
  ValueParser(std::string_view text, std::string_view key) : text_(text), key_(key) {}

  Value parse() {
    Value v = parse_value();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return v;
  }

 private:
  Value parse_value() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '[') {
      ++pos_;
      Value list;
      list.is_list = true;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ']') {
        ++pos_;
        return list;
      }
      while (true) {
        list.items.push_back(parse_value());
        skip_space();
        if (pos_ >= text_.size()) fail("unterminated list");
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ']') {
          ++pos_;
          return list;
        }
        fail("expected ',' or ']'");
      }
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '[') {
      ++pos_;
    }
    Value v;
    v.scalar = std::string(text_.substr(start, pos_ - start));
    while (!v.scalar.empty() && std::isspace(static_cast<unsigned char>(v.scalar.back()))) {
      v.scalar.pop_back();
    }
    if (v.scalar.empty()) fail("empty value");
    return v;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("config key '" + std::string(key_) + "': " + what);
  }

  std::string_view text_;
  std::string_view key_;
  std::size_t pos_ = 0;
};

double to_double(const Value& v, std::string_view key) {
  if (v.is_list) throw ValidationError("config key '" + std::string(key) + "' expects a number");
  std::string s = v.scalar;
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.rfind("±", 0) == 0) s.erase(0, 2);  // "±2" as printed in the parameter table
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(out)) {
    throw ValidationError("config key '" + std::string(key) + "': '" + v.scalar +
                          "' is not a number");
  }
  return out;
}

std::uint64_t to_count(const Value& v, std::string_view key) {
  if (v.is_list) throw ValidationError("config key '" + std::string(key) + "' expects an integer");
  std::uint64_t out = 0;
  const auto& s = v.scalar;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("config key '" + std::string(key) + "': '" + s +
                          "' is not a nonnegative integer");
  }
  return out;
}

std::vector<double> to_vector(const Value& v, std::string_view key) {
  if (!v.is_list) throw ValidationError("config key '" + std::string(key) + "' expects a list");
  std::vector<double> out;
  for (const auto& item : v.items) out.push_back(to_double(item, key));
  return out;
}

bool to_bool(const Value& v, std::string_view key) {
  if (!v.is_list && (v.scalar == "true" || v.scalar == "1")) return true;
  if (!v.is_list && (v.scalar == "false" || v.scalar == "0")) return false;
  throw ValidationError("config key '" + std::string(key) + "' expects true or false");
}

int bracket_balance(std::string_view s) {
  int depth = 0;
  for (char ch : s) depth += ch == '[' ? 1 : ch == ']' ? -1 : 0;
  return depth;
}

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  cfg.model = reference_portfolio();
  return cfg;
}

EstimationSettings RunConfig::settings() const {
  EstimationSettings s;
  s.eps = eps;
  s.alpha_iqae = alpha_iqae;
  s.mode = mode;
  s.shots = shots;
  s.seed = seed;
  return s;
}

void RunConfig::validate() const {
  model.validate();
  if (shots == 0) throw ValidationError("shots must be at least 1");
  if (!(alpha_var > 0.0 && alpha_var < 1.0)) throw ValidationError("alpha_var must lie in (0, 1)");
  if (!(eps > 0.0 && eps < 0.5)) throw ValidationError("eps must lie in (0, 0.5)");
  if (!(alpha_iqae > 0.0 && alpha_iqae < 1.0)) throw ValidationError("alpha_iqae must lie in (0, 1)");
  if (!(kappa > 0.0 && kappa < 1.0)) throw ValidationError("kappa must lie in (0, 1)");
  if (!(mu > 0.0 && mu < 1.0)) throw ValidationError("mu must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 0.5)) throw ValidationError("delta must lie in (0, 0.5)");
  if (degree < 4 || degree % 2 != 0) throw ValidationError("degree must be even and at least 4");
  if (cvar_degree < 4 || cvar_degree % 2 != 0) {
    throw ValidationError("cvar_degree must be even and at least 4");
  }
  if (!(c > 0.0 && c <= 0.5)) throw ValidationError("c must lie in (0, 0.5]");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg = default_config();
  std::istringstream in{std::string(text)};
  std::string line;
  std::string pending;
  std::size_t line_no = 0;
  std::size_t declared_assets = 0;
  bool have_assets = false;

  auto apply = [&](const std::string& statement) {
    const auto eq = statement.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = statement.substr(0, eq);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.front()))) key.erase(0, 1);
    const Value v = ValueParser(std::string_view(statement).substr(eq + 1), key).parse();

    if (key == "qubits_per_gaussian") {
      cfg.model.qubits_per_factor = to_count(v, key);
    } else if (key == "gaussian_truncation") {
      cfg.model.truncation = std::abs(to_double(v, key));
    } else if (key == "number_of_assets") {
      declared_assets = to_count(v, key);
      have_assets = true;
    } else if (key == "intrinsic_pd") {
      cfg.model.default_probabilities = to_vector(v, key);
    } else if (key == "sensitivity_rho") {
      cfg.model.sensitivities = to_vector(v, key);
    } else if (key == "lgd") {
      cfg.model.lgd = to_vector(v, key);
    } else if (key == "factor_loadings") {
      if (!v.is_list) throw ValidationError("factor_loadings expects a list of rows");
      cfg.model.loadings.clear();
      for (const auto& row : v.items) cfg.model.loadings.push_back(to_vector(row, key));
    } else if (key == "shots") {
      cfg.shots = to_count(v, key);
    } else if (key == "alpha_var") {
      cfg.alpha_var = to_double(v, key);
    } else if (key == "eps") {
      cfg.eps = to_double(v, key);
    } else if (key == "alpha_iqae") {
      cfg.alpha_iqae = to_double(v, key);
    } else if (key == "kappa") {
      cfg.kappa = to_double(v, key);
    } else if (key == "mu") {
      cfg.mu = to_double(v, key);
    } else if (key == "delta") {
      cfg.delta = to_double(v, key);
    } else if (key == "degree") {
      cfg.degree = to_count(v, key);
    } else if (key == "cvar_degree") {
      cfg.cvar_degree = to_count(v, key);
    } else if (key == "c") {
      cfg.c = to_double(v, key);
    } else if (key == "seed") {
      cfg.seed = to_count(v, key);
    } else if (key == "mode") {
      if (v.is_list || (v.scalar != "exact" && v.scalar != "shots")) {
        throw ValidationError("mode must be 'exact' or 'shots'");
      }
      cfg.mode = v.scalar == "exact" ? EstimationMode::kExact : EstimationMode::kShots;
    } else if (key == "beta_min") {
      cfg.calibration.beta_min = to_double(v, key);
    } else if (key == "beta_max") {
      cfg.calibration.beta_max = to_double(v, key);
    } else if (key == "inverted") {
      cfg.calibration.inverted = to_bool(v, key);
    } else {
      throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    pending += pending.empty() ? line : " " + line;
    if (bracket_balance(pending) > 0) continue;
    const bool blank = pending.find_first_not_of(" \t\r") == std::string::npos;
    if (!blank) apply(pending);
    pending.clear();
  }
  if (!pending.empty() && pending.find_first_not_of(" \t\r") != std::string::npos) {
    throw ValidationError("config: unterminated list at end of input");
  }
  if (have_assets && declared_assets != cfg.model.num_counterparties()) {
    throw ValidationError("number_of_assets does not match the length of lgd");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace qcr
