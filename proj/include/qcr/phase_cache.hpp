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

#include <filesystem>
#include <string>

#include "qcr/risk_engine.hpp"

namespace qcr {

inline constexpr int kPhaseCacheVersion = 1;

/**
 * JSON file holding one threshold polynomial and its phases. Doubles are
 * written in shortest round-trip form, so save then load is bit-exact and
 * saving the same filter twice gives identical bytes.
 */
std::string serialize_phase_cache(const ThresholdFilter& filter);
ThresholdFilter deserialize_phase_cache(const std::string& text);

void save_phase_cache(const std::filesystem::path& path, const ThresholdFilter& filter);
ThresholdFilter load_phase_cache(const std::filesystem::path& path);

/// Throws CacheMismatchError unless the cache was built for these settings.
void require_cache_matches(const ThresholdFilter& filter, double mu, double k, double delta,
                           std::size_t degree);

/// Builds the threshold polynomial and solves its phases.
ThresholdFilter build_threshold_filter(double mu, double k, double delta, std::size_t degree,
                                       const QspSolverOptions& options = {});

/// File name used when no explicit cache path is given.
std::string default_cache_name(double mu, double k, double delta, std::size_t degree);

}  // namespace qcr
