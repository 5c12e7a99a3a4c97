#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "exotic/bundle.hpp"
#include "exotic/division_algebra.hpp"
#include "exotic/errors.hpp"

namespace exotic::harness {

/// Tolerance classes. Every check names the class it is held to.
struct Tolerances {
  double algebra = 1e-12;     // polynomial identities in the algebra
  double rational = 1e-10;    // composed rational maps, invariance of quotient maps
  double group = 1e-9;        // automorphism construction and equivariance under gluing
  double transition = 1e-8;   // chart transitions with divisions
};

struct SuiteConfig {
  std::string suite = "all";
  std::vector<Algebra> algebras{Algebra::Quaternion, Algebra::Octonion};
  std::vector<int> k_list{-3, -1, 1, 3, 5, 7};
  /// Overrides every suite's default sample count when set.
  std::optional<std::size_t> samples;
  std::uint64_t seed = 1;
  Tolerances tol;
  /// Replaces the tolerance of every upper-bound check when set.
  std::optional<double> tol_override;
  RadiusRange radius{0.1, 10.0};
  /// Worker threads for sharded sweeps. Results do not depend on it.
  unsigned threads = 1;
};

/// Throws UsageError unless the config is runnable.
inline void validate(const SuiteConfig& c) {
  if (c.algebras.empty()) throw UsageError("config: no algebra selected");
  if (c.k_list.empty()) throw UsageError("config: empty k list");
  for (int k : c.k_list)
    if (k % 2 == 0) throw UsageError("config: k must be odd, got " + std::to_string(k));
  if (c.samples && *c.samples < 1) throw UsageError("config: samples must be >= 1");
  const double t[] = {c.tol.algebra, c.tol.rational, c.tol.group, c.tol.transition};
  for (double v : t)
    if (!(v > 0.0)) throw UsageError("config: tolerances must be positive");
  if (c.tol_override && !(*c.tol_override > 0.0)) throw UsageError("config: --tol must be positive");
  if (!(c.radius.lo > 0.0) || !(c.radius.hi >= c.radius.lo))
    throw UsageError("config: radius range must satisfy 0 < lo <= hi");
  if (c.threads < 1) throw UsageError("config: threads must be >= 1");
}

/// Upper-bound checks pass when the worst residual is at most the
/// tolerance; lower-bound checks (negative controls) pass when it exceeds
/// the threshold.
enum class Bound { Below, Above };

struct Counterexample {
  std::uint64_t shard = 0;
  std::uint64_t index = 0;
  std::vector<double> inputs;
};

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::Below;
  std::size_t samples = 0;
  bool pass = false;
  std::optional<Counterexample> counterexample;
};

inline bool evaluate(Bound bound, double residual, double tolerance) noexcept {
  if (std::isnan(residual)) return false;
  return bound == Bound::Below ? residual <= tolerance : residual > tolerance;
}

struct VerificationReport {
  std::string suite;
  SuiteConfig config;
  std::vector<CheckResult> checks;
  bool pass = true;
  double wall_time_s = 0.0;
};

inline nlohmann::ordered_json config_to_json(const SuiteConfig& c) {
  nlohmann::ordered_json j;
  j["suite"] = c.suite;
  auto& algebras = j["algebras"] = nlohmann::ordered_json::array();
  for (Algebra a : c.algebras) algebras.push_back(std::string(name_of(a)));
  j["k"] = c.k_list;
  j["samples"] = c.samples ? nlohmann::ordered_json(*c.samples) : nlohmann::ordered_json(nullptr);
  j["seed"] = c.seed;
  j["tolerances"] = {{"algebra", c.tol.algebra},
                     {"rational", c.tol.rational},
                     {"group", c.tol.group},
                     {"transition", c.tol.transition}};
  j["tol_override"] = c.tol_override ? nlohmann::ordered_json(*c.tol_override) : nlohmann::ordered_json(nullptr);
  j["radius_range"] = {c.radius.lo, c.radius.hi};
  return j;
}

/// Report as JSON. Omitting timing makes equal configs byte-identical.
inline nlohmann::ordered_json to_json(const VerificationReport& r, bool include_timing = true) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["seed"] = r.config.seed;
  j["config"] = config_to_json(r.config);
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["max_residual"] = c.max_residual;
    cj["tolerance"] = c.tolerance;
    cj["bound"] = c.bound == Bound::Below ? "below" : "above";
    cj["samples"] = c.samples;
    cj["pass"] = c.pass;
    if (!c.pass && c.counterexample) {
      cj["counterexample"] = {{"shard", c.counterexample->shard},
                              {"index", c.counterexample->index},
                              {"inputs", c.counterexample->inputs}};
    }
    checks.push_back(std::move(cj));
  }
  j["pass"] = r.pass;
  j["metadata"] = {
      {"automorphism_sampling", "frame-based (basic triples from normalized Gaussians); not Haar-uniform"},
      {"rng", "splitmix64 counter-based; seed, stream and shard index determine every draw"},
      {"b4_diffeomorphism_classes",
       "dimension 7: 16 oriented diffeomorphism classes are realized, 8 of them odd; quoted count, no predicate implemented"}};
  if (include_timing) j["wall_time_s"] = r.wall_time_s;
  return j;
}

}  // namespace exotic::harness
