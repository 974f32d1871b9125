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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "qcr/config.hpp"
#include "qcr/phase_cache.hpp"

namespace qcr::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kNonConvergence = 3,
  kCacheMismatch = 4,
  kNotBracketed = 5,
  kCvarCalibration = 6,
};

/// Command-line overrides; unset fields fall back to the config file.
struct Options {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> cache;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> plot;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<double> eps;
  std::optional<double> alpha_iqae;
  std::optional<double> alpha_var;
  std::optional<double> target_loss;
  std::optional<std::size_t> degree;
  std::optional<double> mu;
  std::optional<double> kappa;
  std::optional<double> delta;
  std::optional<double> c;
};

RunConfig resolve_config(const Options& options);

/// --cache, else $QCR_CACHE_DIR/<default name>, else ./<default name>.
std::filesystem::path resolve_cache_path(const Options& options, const RunConfig& config);

int cmd_phases(const Options& options, std::ostream& out);
int cmd_bench(const Options& options, std::ostream& out);
int cmd_var(const Options& options, std::ostream& out);
int cmd_el(const Options& options, std::ostream& out);
int cmd_cvar(const Options& options, std::ostream& out);
int cmd_cdf(const Options& options, std::ostream& out);
int cmd_oracle(const Options& options, std::ostream& out);

/// Parses argv, dispatches, and maps exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcr::cli
