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


#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "qcr/chebyshev.hpp"
#include "qcr/config.hpp"
#include "qcr/errors.hpp"
#include "qcr/phase_cache.hpp"
#include "qcr/qsp.hpp"

using namespace qcr;
namespace fs = std::filesystem;

namespace {

const double kMu = std::sin(std::numbers::pi / 4);

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qcr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qcr_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

const std::string kTableConfig = std::string(QCR_SOURCE_DIR) + "/configs/table1.conf";

}  // namespace

TEST_CASE("checked-in configuration reproduces the reference inputs") {
  const RunConfig cfg = load_config(kTableConfig);
  const PortfolioModel ref = reference_portfolio();
  CHECK(cfg.model.default_probabilities == ref.default_probabilities);
  CHECK(cfg.model.sensitivities == ref.sensitivities);
  CHECK(cfg.model.lgd == ref.lgd);
  CHECK(cfg.model.loadings == ref.loadings);
  CHECK(cfg.model.qubits_per_factor == 2);
  CHECK(cfg.model.truncation == 2.0);
  CHECK(cfg.shots == 2048);
  CHECK(cfg.alpha_var == 0.05);
  CHECK(cfg.degree == 1000);
}

TEST_CASE("configuration parsing rejects inconsistent input") {
  const std::string base =
      "intrinsic_pd = [0.1, 0.2]\nsensitivity_rho = [0.1, 0.1]\nlgd = [1, 2]\n"
      "factor_loadings = [[0.1], [0.2]]\nqubits_per_gaussian = 1\n";
  const RunConfig ok = parse_config(base + "number_of_assets = 2\ngaussian_truncation = ±2\n");
  CHECK(ok.model.num_counterparties() == 2);
  CHECK(ok.model.truncation == 2.0);
  CHECK_THROWS_AS(parse_config(base + "number_of_assets = 3\n"), ValidationError);
  CHECK_THROWS_AS(parse_config(base + "colour = blue\n"), ValidationError);
  CHECK_THROWS_AS(parse_config(base + "degree = 21\n"), ValidationError);
  CHECK_THROWS_AS(parse_config(base + "mode = fast\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("intrinsic_pd = [0.1, 0.2]\nlgd = [1]\n"), ValidationError);
  CHECK_THROWS_AS(parse_config(base + "lgd = [1, 2\n"), ValidationError);
  CHECK_THROWS_AS(load_config("/nonexistent/qcr.conf"), ValidationError);
}

TEST_CASE("phase cache round trip is bit exact") {
  const ThresholdFilter f = build_threshold_filter(kMu, 0.9, 0.05, 40);
  const std::string text = serialize_phase_cache(f);
  const ThresholdFilter g = deserialize_phase_cache(text);
  CHECK(g.poly.coefficients == f.poly.coefficients);
  CHECK(g.phases.phases == f.phases.phases);
  CHECK(g.phases.signal == f.phases.signal);
  CHECK(g.poly.mu == f.poly.mu);
  CHECK(serialize_phase_cache(g) == text);
}

TEST_CASE("phase cache gates on version, digest and settings") {
  const ThresholdFilter f = build_threshold_filter(kMu, 0.9, 0.05, 40);
  std::string text = serialize_phase_cache(f);
  const auto pos = text.find("\"version\": 1");
  REQUIRE(pos != std::string::npos);
  std::string bumped = text;
  bumped.replace(pos, 12, "\"version\": 2");
  CHECK_THROWS_AS(deserialize_phase_cache(bumped), CacheMismatchError);
  CHECK_THROWS_AS(deserialize_phase_cache("{"), CacheMismatchError);
  CHECK_THROWS_AS(deserialize_phase_cache("{\"format\": \"other\"}"), CacheMismatchError);

  ThresholdFilter tampered = f;
  tampered.poly.coefficients[2] += 1e-9;
  CHECK_THROWS_AS(deserialize_phase_cache(serialize_phase_cache(tampered)), CacheMismatchError);

  CHECK_NOTHROW(require_cache_matches(f, kMu, 0.9, 0.05, 40));
  CHECK_THROWS_AS(require_cache_matches(f, kMu, 0.8, 0.05, 40), CacheMismatchError);
  CHECK_THROWS_AS(require_cache_matches(f, kMu, 0.9, 0.05, 42), CacheMismatchError);
  CHECK_THROWS_AS(require_cache_matches(f, 0.6, 0.9, 0.05, 40), CacheMismatchError);
}

TEST_CASE("phases command writes a reproducible cache") {
  const fs::path cache = scratch("d20.json");
  const fs::path plot = scratch("d20.csv");
  const Run a = run_cli({"phases", "--degree", "20", "--cache", cache.string(), "--plot", plot.string()});
  CHECK(a.code == 0);
  CHECK(a.out.find("verification error") != std::string::npos);
  const ThresholdFilter f = load_phase_cache(cache);
  CHECK(f.phases.verification_error <= 1e-8);
  const std::string first = slurp(cache);
  CHECK(run_cli({"phases", "--degree", "20", "--cache", cache.string()}).code == 0);
  CHECK(slurp(cache) == first);
  CHECK(slurp(plot).rfind("x,p_x\n", 0) == 0);
}

TEST_CASE("odd degree is a validation error") {
  CHECK(run_cli({"phases", "--degree", "21", "--cache", scratch("odd.json").string()}).code == 2);
}

TEST_CASE("cache directory comes from the environment") {
  cli::Options o;
  const RunConfig cfg = default_config();
  ::setenv("QCR_CACHE_DIR", "/tmp/qcr-cache-dir", 1);
  CHECK(cli::resolve_cache_path(o, cfg) ==
        fs::path("/tmp/qcr-cache-dir") / default_cache_name(cfg.mu, cfg.kappa, cfg.delta, cfg.degree));
  ::unsetenv("QCR_CACHE_DIR");
  CHECK(cli::resolve_cache_path(o, cfg) == fs::path(default_cache_name(cfg.mu, cfg.kappa, cfg.delta, cfg.degree)));
  o.cache = "explicit.json";
  CHECK(cli::resolve_cache_path(o, cfg) == fs::path("explicit.json"));
}

TEST_CASE("command-line validation and cache errors map to exit codes") {
  CHECK(run_cli({"cdf", "--target-loss", "0"}).code == 2);
  CHECK(run_cli({"var", "--unknown"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"var", "--mode", "fast"}).code == 2);
  CHECK(run_cli({"oracle", "--alpha-var", "1.5"}).code == 2);
  // cache solved for d = 20 used with the default degree 1000
  const fs::path cache = scratch("d20.json");
  run_cli({"phases", "--degree", "20", "--cache", cache.string()});
  const Run r = run_cli({"var", "--cache", cache.string()});
  CHECK(r.code == 4);
  CHECK(r.err.find("error") != std::string::npos);
  CHECK(run_cli({"cdf", "--target-loss", "100", "--cache", scratch("missing.json").string()}).code == 4);
}

TEST_CASE("an under-reporting cache cannot bracket the VaR") {
  ThresholdFilter f;
  f.poly = approximate(threshold_target(kMu, 0.45, 0.05), 100);
  f.phases = solve_phases(f.poly);
  f.poly.k = 0.9;
  const fs::path cache = scratch("half.json");
  save_phase_cache(cache, f);
  const Run r = run_cli({"var", "--mode", "exact", "--degree", "100", "--delta", "0.05", "--cache", cache.string()});
  CHECK(r.code == 5);
}

TEST_CASE("oracle command prints the classical metrics") {
  const Run r = run_cli({"oracle", "--config", kTableConfig});
  CHECK(r.code == 0);
  CHECK(r.out.find("54807.94") != std::string::npos);
  CHECK(r.out.find("target_loss,cdf_benchmark") != std::string::npos);
  CHECK(r.out.find("11053.4587") != std::string::npos);
}

TEST_CASE("bench and var commands on the reference inputs") {
  const fs::path cache = scratch("d1000.json");
  REQUIRE(run_cli({"phases", "--cache", cache.string()}).code == 0);

  const fs::path csv = scratch("bench.csv");
  const Run b = run_cli({"bench", "--config", kTableConfig, "--mode", "exact", "--cache", cache.string(),
                         "--out", csv.string()});
  CHECK(b.code == 0);
  std::istringstream lines(slurp(csv));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "target_loss,cdf_qsvt,cdf_benchmark");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 16);

  const fs::path trace = scratch("trace.csv");
  const Run v = run_cli({"var", "--config", kTableConfig, "--mode", "exact", "--cache", cache.string(),
                         "--out", trace.string()});
  CHECK(v.code == 0);
  CHECK(v.out.find("= 54807.94") != std::string::npos);
  CHECK(slurp(trace).rfind("step,lo,hi,probe,estimate,decision\n", 0) == 0);

  const Run c = run_cli({"cdf", "--target-loss", "30000", "--mode", "exact", "--cache", cache.string()});
  CHECK(c.code == 0);
  const Run el = run_cli({"el", "--mode", "exact"});
  CHECK(el.code == 0);
  CHECK(el.out.find("expected loss") != std::string::npos);
}
