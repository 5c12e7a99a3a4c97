#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "exotic/bundle.hpp"
#include "exotic/errors.hpp"
#include "exotic/orbit.hpp"
#include "exotic/random.hpp"
#include "exotic/symmetry.hpp"

namespace exotic::harness {

/// Where orbit-space samples come from: the round sphere through Q_s, or
/// the equator of the k-th bundle through Q_k.
struct OrbitSource {
  enum class Kind { Round, Exotic };
  Kind kind = Kind::Round;
  int k = 1;

  static OrbitSource round() noexcept { return {}; }
  static OrbitSource exotic(int k) {
    if (k % 2 == 0) throw UsageError("exotic source needs odd k, got " + std::to_string(k));
    return {Kind::Exotic, k};
  }

  /// Parses "round" or "exotic:<k>".
  static OrbitSource parse(std::string_view text) {
    if (text == "round") return round();
    constexpr std::string_view prefix = "exotic:";
    if (text.substr(0, prefix.size()) == prefix) {
      const std::string_view digits = text.substr(prefix.size());
      int k = 0;
      const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
      if (ec == std::errc{} && end == digits.data() + digits.size() && !digits.empty()) return exotic(k);
    }
    throw UsageError("unknown source '" + std::string(text) + "' (expected round or exotic:<k>)");
  }

  std::string label() const {
    return kind == Kind::Round ? std::string("round") : "exotic:" + std::to_string(k);
  }
};

/// Equator preimage of a round sphere point, expressed in the chart that
/// is *not* the natural one: the h1 preimage is pushed through the gluing
/// into chart Two, the h2 preimage pulled back into chart One. Points too
/// close to a chart's zero section stay where they are.
template <std::size_t N>
EquatorPoint<N> equator_preimage(const BundleParams& params, const SpherePoint<N>& s) {
  constexpr double kMinBase = 1e-6;
  if (s.c().norm() >= s.a().norm()) {
    const EquatorPoint<N> p = h1_inverse(s);
    return p.first().norm() > kMinBase ? transition(params, p) : p;
  }
  const EquatorPoint<N> p = h2_inverse(s);
  return p.first().norm() > kMinBase ? transition(params, p) : p;
}

/// n orbit-space points. Both sources consume the same underlying round
/// sphere samples for a given seed, so clouds from different sources are
/// paired sample by sample.
template <std::size_t N>
std::vector<OrbitPoint> sample_orbit_space(const OrbitSource& source, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw UsageError("sample_orbit_space: n must be >= 1");
  std::vector<OrbitPoint> out;
  out.reserve(n);
  CounterRng rng(seed, stream_id("orbit_space_sphere"));
  if (source.kind == OrbitSource::Kind::Round) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(q_s(random_sphere_point<N>(rng)));
    return out;
  }
  const BundleParams params = BundleParams::from_k(source.k);
  for (std::size_t i = 0; i < n; ++i) {
    const SpherePoint<N> s = random_sphere_point<N>(rng);
    out.push_back(q_k(params, equator_preimage(params, s)));
  }
  return out;
}

inline std::vector<OrbitPoint> sample_orbit_space(Algebra algebra, const OrbitSource& source, std::size_t n,
                                                  std::uint64_t seed) {
  return algebra == Algebra::Quaternion ? sample_orbit_space<4>(source, n, seed)
                                        : sample_orbit_space<8>(source, n, seed);
}

inline void write_csv(std::ostream& os, const std::vector<OrbitPoint>& pts) {
  os << "x,y,z\n";
  char line[96];
  for (const auto& p : pts) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", p.x, p.y, p.z);
    os << line;
  }
}

inline nlohmann::ordered_json points_to_json(const std::vector<OrbitPoint>& pts, const OrbitSource& source,
                                             Algebra algebra, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["source"] = source.label();
  j["algebra"] = std::string(name_of(algebra));
  j["seed"] = seed;
  j["n"] = pts.size();
  auto& arr = j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : pts) arr.push_back({p.x, p.y, p.z});
  return j;
}

/// Grid cells of side `resolution` hit by a cloud, as sorted unique keys.
inline std::vector<std::int64_t> occupied_cells(const std::vector<OrbitPoint>& pts, double resolution) {
  if (!(resolution > 0.0)) throw UsageError("occupied_cells: resolution must be positive");
  const auto cells = static_cast<std::int64_t>(std::ceil(2.0 / resolution)) + 2;
  auto index = [&](double t) {
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((t + 1.0) / resolution)), 0, cells - 1);
  };
  std::vector<std::int64_t> keys;
  keys.reserve(pts.size());
  for (const auto& p : pts) keys.push_back((index(p.x) * cells + index(p.y)) * cells + index(p.z));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

struct CoverageResult {
  std::size_t cells_a = 0;
  std::size_t cells_b = 0;
  std::size_t only_a = 0;
  std::size_t only_b = 0;
  std::size_t mismatched() const noexcept { return only_a + only_b; }
};

/// Bidirectional coverage: how many occupied cells of each cloud the
/// other one misses.
inline CoverageResult coverage(const std::vector<OrbitPoint>& a, const std::vector<OrbitPoint>& b,
                               double resolution = 0.05) {
  const auto ca = occupied_cells(a, resolution);
  const auto cb = occupied_cells(b, resolution);
  std::vector<std::int64_t> diff;
  std::set_difference(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(diff));
  CoverageResult r{ca.size(), cb.size(), diff.size(), 0};
  diff.clear();
  std::set_difference(cb.begin(), cb.end(), ca.begin(), ca.end(), std::back_inserter(diff));
  r.only_b = diff.size();
  return r;
}

}  // namespace exotic::harness
