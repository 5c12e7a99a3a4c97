#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "exotic/bundle.hpp"
#include "exotic/division_algebra.hpp"
#include "exotic/draw.hpp"
#include "exotic/errors.hpp"
#include "exotic/harness/parity.hpp"
#include "exotic/harness/report.hpp"
#include "exotic/harness/sampling.hpp"
#include "exotic/harness/sweep.hpp"
#include "exotic/orbit.hpp"
#include "exotic/symmetry.hpp"

namespace exotic::harness {

inline constexpr std::size_t kAlgebraSamples = 100'000;
inline constexpr std::size_t kBundleSamples = 10'000;
inline constexpr std::size_t kWitnessSamples = 1'000;
inline constexpr std::size_t kCoverageSamples = 100'000;
inline constexpr double kCoverageResolution = 0.05;
inline constexpr double kControlThreshold = 0.1;
inline constexpr double kGradientStep = 1e-4;

namespace detail {

class Context {
 public:
  Context(const SuiteConfig& cfg, std::vector<CheckResult>& out) : cfg_(cfg), out_(out) {}

  const SuiteConfig& cfg() const noexcept { return cfg_; }
  std::size_t samples(std::size_t fallback) const noexcept { return cfg_.samples.value_or(fallback); }

  template <std::size_t K, class Body>
  std::array<Tracker, K> sweep(const std::string& stream, std::size_t n, Body&& body) const {
    return harness::sweep<K>(cfg_.seed, stream, n, cfg_.threads, std::forward<Body>(body));
  }

  /// Upper-bound check; --tol replaces the tolerance.
  void below(std::string name, const Tracker& t, double tolerance) {
    push(std::move(name), t, cfg_.tol_override.value_or(tolerance), Bound::Below);
  }
  /// Lower-bound check (negative control); the threshold is fixed.
  void above(std::string name, const Tracker& t, double threshold) {
    push(std::move(name), t, threshold, Bound::Above);
  }

 private:
  void push(std::string name, const Tracker& t, double tolerance, Bound bound) {
    CheckResult r;
    r.name = std::move(name);
    r.max_residual = t.seen() ? t.worst() : std::numeric_limits<double>::quiet_NaN();
    r.tolerance = tolerance;
    r.bound = bound;
    r.samples = t.count();
    r.pass = t.seen() && evaluate(bound, r.max_residual, tolerance);
    if (t.seen()) r.counterexample = t.where();
    out_.push_back(std::move(r));
  }

  const SuiteConfig& cfg_;
  std::vector<CheckResult>& out_;
};

template <std::size_t N>
std::string prefix(std::string_view suite) {
  return std::string(name_of(Element<N>::tag.lambda)) + "/" + std::string(suite) + "/";
}

inline std::string with_k(std::string base, int k) { return base + "k=" + std::to_string(k) + "/"; }

template <std::size_t N>
Element<N> left_nested(const std::vector<Element<N>>& factors) {
  Element<N> w = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) w = w * factors[i];
  return w;
}

template <std::size_t N>
Element<N> right_nested(const std::vector<Element<N>>& factors) {
  Element<N> w = factors.back();
  for (std::size_t i = factors.size() - 1; i-- > 0;) w = factors[i] * w;
  return w;
}

/// u^h q u^{1-h} spelled out as a word in u, u^{-1} and q.
template <std::size_t N>
std::vector<Element<N>> artin_word(const Element<N>& u, const Element<N>& q, int h) {
  const Element<N> u_inv = inverse(u);
  std::vector<Element<N>> w;
  for (int i = 0; i < std::abs(h); ++i) w.push_back(h > 0 ? u : u_inv);
  w.push_back(q);
  const int tail = 1 - h;
  for (int i = 0; i < std::abs(tail); ++i) w.push_back(tail > 0 ? u : u_inv);
  return w;
}

inline double region_violation(const OrbitPoint& p) noexcept {
  const double bound = (p.x * p.x - p.y * p.y) * (1.0 - p.x * p.x);
  return std::max({0.0, -p.x, p.x - 1.0, std::fabs(p.y) - p.x, p.z * p.z - bound});
}

inline Chart random_chart(CounterRng& rng) {
  return rng.uniform() < 0.5 ? Chart::One : Chart::Two;
}

/// A chart point off the equator: second coordinate a unit vector with a
/// real part, so f does not vanish identically.
template <std::size_t N>
ChartPoint<N> random_general_point(CounterRng& rng, Chart chart, RadiusRange range) {
  const Element<N> base = rng.uniform(range.lo, range.hi) * draw_unit<N>(rng);
  return {chart, base, draw_unit<N>(rng)};
}

template <std::size_t N>
SpherePoint<N> apply_to_sphere(const LinearMap<N>& g, const SpherePoint<N>& p) {
  Element<N> gc = g(p.c());
  gc[0] = 0.0;
  return SpherePoint<N>::make(g(p.a()), gc, 1e-9);
}

// ---------------------------------------------------------------- algebra

template <std::size_t N>
void algebra_suite(Context& ctx) {
  const std::string pre = prefix<N>("algebra");
  const std::size_t n = ctx.samples(kAlgebraSamples);
  auto t = ctx.sweep<6>(pre, n, [](CounterRng& rng, std::array<Tracker, 6>& tr) {
    const Element<N> x = draw_gaussian<N>(rng);
    const Element<N> y = draw_gaussian<N>(rng);
    const Element<N> z = draw_gaussian<N>(rng);
    const double nx = x.norm();
    const double ny = y.norm();
    const Element<N> xy = x * y;

    tr[0].observe(std::fabs(xy.norm() - nx * ny) / (1.0 + nx * ny), x, y);
    tr[1].observe(distance(xy.conjugate(), y.conjugate() * x.conjugate()) / (1.0 + nx * ny), x, y);
    if constexpr (N == 4) {
      tr[2].observe(associator(x, y, z).norm() / (1.0 + nx * ny * z.norm()), x, y, z);
    } else {
      const double scale = 1.0 + nx * ny * (nx + ny);
      tr[2].observe(std::max(associator(x, x, y).norm(), associator(x, y, y).norm()) / scale, x, y);
    }

    const Element<N> u = draw_unit<N>(rng);
    const Element<N> q = draw_imaginary_unit<N>(rng);
    const int h = static_cast<int>(rng.next_u64() % 11) - 5;
    const auto word = artin_word(u, q, h);
    const Element<N> split = (power(u, h) * q) * power(u, 1 - h);
    const double artin = std::max({distance(split, power(u, h) * (q * power(u, 1 - h))),
                                   distance(split, left_nested(word)), distance(split, right_nested(word))});
    tr[3].observe(artin, u, q, h);

    const Element<N> base = (rng.uniform(0.5, 2.0) / nx) * x;
    const int m = static_cast<int>(rng.next_u64() % 11) - 5;
    const int k = static_cast<int>(rng.next_u64() % 11) - 5;
    const Element<N> whole = power(base, m + k);
    tr[4].observe(distance(whole, power(base, m) * power(base, k)) / (1.0 + whole.norm()), base, m, k);

    tr[5].observe(std::max(distance(x * inverse(x), Element<N>::one()), distance(inverse(x) * x, Element<N>::one())),
                  x);
  });
  const auto& tol = ctx.cfg().tol;
  ctx.below(pre + "norm-multiplicativity", t[0], tol.algebra);
  ctx.below(pre + "conjugation-anti-automorphism", t[1], tol.algebra);
  ctx.below(pre + (N == 4 ? "associativity" : "alternativity"), t[2], tol.algebra);
  ctx.below(pre + "artin-bracketing", t[3], tol.algebra);
  ctx.below(pre + "power-additivity", t[4], tol.rational);
  ctx.below(pre + "two-sided-inverse", t[5], tol.algebra);
}

// ------------------------------------------------------------ automorphism

template <std::size_t N>
void automorphism_suite(Context& ctx) {
  const std::string pre = prefix<N>("automorphism");
  const std::size_t n = ctx.samples(kBundleSamples);
  auto t = ctx.sweep<6>(pre, n, [](CounterRng& rng, std::array<Tracker, 6>& tr) {
    const Frame<N> frame = random_frame<N>(rng);
    const Automorphism<N> g = automorphism_from_frames(Frame<N>::standard(), frame);
    const Element<N> x = draw_gaussian<N>(rng);
    const Element<N> y = draw_gaussian<N>(rng);
    const Element<N> gx = g(x);

    tr[0].observe(distance(g(x * y), gx * g(y)), x, y);
    tr[1].observe(distance(g(x.conjugate()), gx.conjugate()), x);
    tr[2].observe(std::fabs(gx.norm() - x.norm()), x);

    const Frame<N> std_frame = Frame<N>::standard();
    double images = 0.0;
    for (std::size_t i = 0; i < Frame<N>::size; ++i) images = std::max(images, distance(g(std_frame[i]), frame[i]));
    tr[3].observe(images);
    tr[4].observe(distance(g(Element<N>::one()), Element<N>::one()));

    if constexpr (N == 4) {
      const Quaternion p = draw_unit<4>(rng);
      const Quaternion p_inv = inverse(p);
      const auto framed = automorphism_from_frames(
          Frame<4>::standard(),
          Frame<4>::make({(p * Quaternion::basis(1)) * p_inv, (p * Quaternion::basis(2)) * p_inv}));
      tr[5].observe(conjugation_automorphism(p).distance_to(framed), p);
    } else {
      tr[5].observe(compose(g, invert(g)).distance_to(LinearMap<N>::identity()));
    }
  });
  const auto& tol = ctx.cfg().tol;
  ctx.below(pre + "multiplicative", t[0], tol.group);
  ctx.below(pre + "commutes-with-conjugation", t[1], tol.rational);
  ctx.below(pre + "norm-preserving", t[2], tol.group);
  ctx.below(pre + "frame-images", t[3], tol.group);
  ctx.below(pre + "fixes-one", t[4], tol.algebra);
  ctx.below(pre + (N == 4 ? "inner-matches-frame" : "inverse-is-transpose"), t[5], tol.group);
}

// ----------------------------------------------------------------- bundle

template <std::size_t N>
void bundle_suite(Context& ctx) {
  const auto& cfg = ctx.cfg();
  const std::string pre = prefix<N>("bundle-welldef");
  const std::size_t n = ctx.samples(kBundleSamples);
  for (int k : cfg.k_list) {
    const BundleParams params = BundleParams::from_k(k);
    const std::string kp = with_k(pre, k);
    const RadiusRange range = cfg.radius;
    auto t = ctx.sweep<9>(kp, n, [&](CounterRng& rng, std::array<Tracker, 9>& tr) {
      const EquatorPoint<N> e = random_equator_point<N>(params, rng, random_chart(rng), range);
      const ChartPoint<N> p = e.point();
      const Automorphism<N> g = random_automorphism<N>(rng);
      const ChartPoint<N> phi_p = transition(params, p);

      tr[0].observe(chart_distance(transition(params, involution_T(p)), involution_T(phi_p)), p);
      tr[1].observe(chart_distance(transition(params, davis_action<N>(g, p)), davis_action<N>(g, phi_p)), p);
      tr[2].observe(chart_distance(transition(params, phi_p), p), p);

      const ChartPoint<N> gp = random_general_point<N>(rng, random_chart(rng), range);
      const double fg = f_value(gp);
      tr[3].observe(std::fabs(fg - f_value(transition(params, gp))), gp);
      tr[4].observe(std::fabs(fg - f_value_conjugate_form(gp)), gp);
      tr[5].observe(std::max(std::fabs(f_value(involution_T(gp)) + fg),
                             std::fabs(f_value(davis_action<N>(g, gp)) - fg)),
                    gp);

      tr[6].observe(std::max({chart_distance(involution_T(davis_action<N>(g, p)), davis_action<N>(g, involution_T(p))),
                              EquatorPoint<N>::equator_defect(phi_p),
                              EquatorPoint<N>::equator_defect(involution_T(p)),
                              EquatorPoint<N>::equator_defect(davis_action<N>(g, p))}),
                    p);

      const Element<N> image_base = p.first / p.first.norm2();
      tr[7].observe(std::max(distance(base_projection(params, phi_p).point, image_base),
                             distance(base_projection(params, davis_action<N>(g, p)).point, g(p.first))),
                    p);

      // T is free: the two points of an orbit stay apart by at least
      // sqrt(2) phi(|base|).
      const double gap = chart_distance(involution_T(p), p);
      tr[8].observe(std::max(0.0, std::sqrt(2.0) * phi(p.first) - gap), p);
    });
    const auto& tol = cfg.tol;
    ctx.below(kp + "T-commutes-with-transition", t[0], tol.group);
    ctx.below(kp + "davis-commutes-with-transition", t[1], tol.group);
    ctx.below(kp + "transition-round-trip", t[2], tol.group);
    ctx.below(kp + "f-chart-invariance", t[3], tol.rational);
    ctx.below(kp + "f-conjugate-form-agrees", t[4], tol.rational);
    ctx.below(kp + "f-odd-under-T-invariant-under-davis", t[5], tol.rational);
    ctx.below(kp + "equator-preserved-T-davis-commute", t[6], tol.rational);
    ctx.below(kp + "base-projection-compatible", t[7], tol.rational);
    ctx.below(kp + "T-free", t[8], tol.algebra);
  }

  // f has critical points exactly at the poles (0, +-1) of chart One.
  Tracker poles;
  poles.observe(f_gradient_norm(ChartPoint<N>{Chart::One, Element<N>{}, Element<N>::one()}, kGradientStep));
  poles.observe(f_gradient_norm(ChartPoint<N>{Chart::One, Element<N>{}, -Element<N>::one()}, kGradientStep));
  ctx.below(pre + "f-gradient-at-poles", poles, 1e-5);
  Tracker regular;
  regular.observe(f_gradient_norm(ChartPoint<N>{Chart::One, Element<N>{}, Element<N>::basis(1)}, kGradientStep));
  ctx.above(pre + "f-gradient-at-equator", regular, kControlThreshold);
}

// --------------------------------------------------------------- quotient

template <std::size_t N>
void quotient_suite(Context& ctx) {
  const auto& cfg = ctx.cfg();
  const std::string pre = prefix<N>("quotient-welldef");
  const std::size_t n = ctx.samples(kBundleSamples);
  for (int k : cfg.k_list) {
    const BundleParams params = BundleParams::from_k(k);
    const std::string kp = with_k(pre, k);
    const RadiusRange range = cfg.radius;
    auto t = ctx.sweep<6>(kp, n, [&](CounterRng& rng, std::array<Tracker, 6>& tr) {
      const EquatorPoint<N> e = random_equator_point<N>(params, rng, random_chart(rng), range);
      const ChartPoint<N> p = e.point();
      const ChartPoint<N> phi_p = transition(params, p);
      const OrbitPoint qp = q_k_chart(p);
      tr[0].observe(distance(qp, q_k_chart(phi_p)), p);

      // The derivation of chart independence, step by step, on the chart
      // One representative (u, q) and its image (v, r).
      const ChartPoint<N>& one = p.chart == Chart::One ? p : phi_p;
      const ChartPoint<N>& two = p.chart == Chart::One ? phi_p : p;
      const double nu = one.first.norm();
      const Element<N> w = one.first / nu;
      tr[1].observe(std::fabs(phi(two.first) - nu * phi(one.first)), p);
      tr[2].observe(std::fabs(two.second.re() - (w * one.second).re()), p);
      const double third_two = dot(two.second.im(), (two.first.conjugate() * two.second).im());
      const double third_one = dot((w * one.second).im(), one.second.im()) / nu;
      tr[3].observe(std::fabs(third_two - third_one) / (1.0 + std::fabs(third_one)), p);

      const Automorphism<N> g = random_automorphism<N>(rng);
      tr[4].observe(distance(q_k(params, davis_action(g, e)), qp), p);
      tr[5].observe(region_violation(qp), p);
    });
    const auto& tol = cfg.tol;
    ctx.below(kp + "qk-chart-welldefined", t[0], tol.transition);
    ctx.below(kp + "phi-identity", t[1], tol.algebra);
    ctx.below(kp + "real-part-step", t[2], tol.rational);
    ctx.below(kp + "third-coordinate-step", t[3], tol.transition);
    ctx.below(kp + "qk-davis-invariant", t[4], tol.rational);
    ctx.below(kp + "qk-image-in-region", t[5], tol.rational);
  }

  auto t = ctx.sweep<2>(pre + "qs", n, [](CounterRng& rng, std::array<Tracker, 2>& tr) {
    const SpherePoint<N> s = random_sphere_point<N>(rng);
    const SignedSymmetry<N> g{random_automorphism<N>(rng), 1};
    const OrbitPoint qs = q_s(s);
    tr[0].observe(distance(q_s(signed_action(g, s)), qs), s);
    tr[1].observe(region_violation(qs), s);
  });
  ctx.below(pre + "qs-invariant", t[0], cfg.tol.rational);
  ctx.below(pre + "qs-image-in-region", t[1], cfg.tol.rational);
}

// -------------------------------------------------------------- key lemma

template <std::size_t N>
void key_lemma_suite(Context& ctx) {
  const auto& cfg = ctx.cfg();
  const std::string pre = prefix<N>("key-lemma");
  const std::size_t n = ctx.samples(kBundleSamples);
  const std::size_t n_cov = ctx.samples(kCoverageSamples);
  const std::vector<OrbitPoint> round_cloud = sample_orbit_space<N>(OrbitSource::round(), n_cov, cfg.seed);

  for (int k : cfg.k_list) {
    const BundleParams params = BundleParams::from_k(k);
    const std::string kp = with_k(pre, k);
    const RadiusRange range = cfg.radius;
    auto t = ctx.sweep<4>(kp, n, [&](CounterRng& rng, std::array<Tracker, 4>& tr) {
      const EquatorPoint<N> p1 = random_equator_point<N>(params, rng, Chart::One, range);
      const EquatorPoint<N> p2 = random_equator_point<N>(params, rng, Chart::Two, range);
      const SpherePoint<N> s1 = h1(p1.first(), p1.second());
      const SpherePoint<N> s2 = h2(p2.first(), p2.second());
      tr[0].observe(distance(q_k(params, p1), q_s(s1)), p1);
      tr[1].observe(distance(q_k(params, p2), q_s(s2)), p2);
      tr[2].observe(std::max(std::fabs(s1.a().norm2() + s1.c().norm2() - 1.0),
                             std::fabs(s2.a().norm2() + s2.c().norm2() - 1.0)),
                    p1, p2);

      const Automorphism<N> g = random_automorphism<N>(rng);
      const EquatorPoint<N> g1 = davis_action(g, p1);
      const EquatorPoint<N> g2 = davis_action(g, p2);
      tr[3].observe(std::max(distance(h1(g1.first(), g1.second()), apply_to_sphere<N>(g, s1)),
                             distance(h2(g2.first(), g2.second()), apply_to_sphere<N>(g, s2))),
                    p1, p2);
    });
    const auto& tol = cfg.tol;
    ctx.below(kp + "qk-equals-qs-h1", t[0], tol.algebra);
    ctx.below(kp + "qk-equals-qs-h2", t[1], tol.algebra);
    ctx.below(kp + "embeddings-unit-norm", t[2], tol.rational);
    ctx.below(kp + "embeddings-equivariant", t[3], tol.group);

    const auto exotic_cloud = sample_orbit_space<N>(OrbitSource::exotic(k), n_cov, cfg.seed);
    Tracker inside;
    for (const auto& pt : exotic_cloud) inside.observe(region_violation(pt), pt);
    ctx.below(kp + "exotic-cloud-in-region", inside, tol.rational);

    const CoverageResult cov = coverage(round_cloud, exotic_cloud, kCoverageResolution);
    Tracker cells;
    cells.observe(static_cast<double>(cov.mismatched()), static_cast<double>(cov.cells_a),
                  static_cast<double>(cov.cells_b), static_cast<double>(cov.only_a),
                  static_cast<double>(cov.only_b));
    ctx.below(kp + "coverage-mismatched-cells", cells, 0.0);
  }
}

// ----------------------------------------------------------- stratification

template <std::size_t N>
SpherePoint<N> stratified_sphere_point(CounterRng& rng) {
  const double mode = rng.uniform();
  if (mode < 0.6) return random_sphere_point<N>(rng);
  if (mode < 0.75) return SpherePoint<N>::make(rng.uniform() < 0.5 ? Element<N>::one() : -Element<N>::one(),
                                               Element<N>{});
  // Singular orbits: im c parallel to im a (possibly c = 0).
  const Element<N> a = draw_gaussian<N>(rng);
  const double lambda = mode < 0.9 ? rng.gaussian() : 0.0;
  return SpherePoint<N>::normalized(a, lambda * a.im());
}

template <std::size_t N>
EquatorPoint<N> stratified_equator_point(const BundleParams& params, CounterRng& rng, RadiusRange range) {
  const double mode = rng.uniform();
  if (mode < 0.6) return random_equator_point<N>(params, rng, random_chart(rng), range);
  if (mode < 0.75)
    return EquatorPoint<N>::make(Chart::Two, Element<N>{},
                                 rng.uniform() < 0.5 ? Element<N>::one() : -Element<N>::one());
  // Base point in the plane spanned by 1 and q.
  const Element<N> q = draw_imaginary_unit<N>(rng);
  const Element<N> u = Element<N>::real(rng.gaussian()) + rng.gaussian() * q;
  return EquatorPoint<N>::make(Chart::One, u, q);
}

template <std::size_t N>
void stratification_suite(Context& ctx) {
  const auto& cfg = ctx.cfg();
  const std::string pre = prefix<N>("stratification");
  const std::size_t n = ctx.samples(kBundleSamples);

  const auto plus = SpherePoint<N>::make(Element<N>::one(), Element<N>{});
  const auto minus = SpherePoint<N>::make(-Element<N>::one(), Element<N>{});
  Tracker fixed;
  fixed.observe(distance(q_s(plus), OrbitPoint{1, 1, 0}));
  fixed.observe(distance(q_s(minus), OrbitPoint{1, -1, 0}));
  const BundleParams params = BundleParams::from_k(cfg.k_list.front());
  for (double sign : {1.0, -1.0}) {
    const auto corner = EquatorPoint<N>::make(Chart::Two, Element<N>{}, Element<N>::real(sign));
    fixed.observe(distance(q_k(params, corner), OrbitPoint{1, sign, 0}));
  }
  ctx.below(pre + "fixed-points-exact", fixed, 1e-15);

  const RadiusRange range = cfg.radius;
  auto t = ctx.sweep<2>(pre, n, [&](CounterRng& rng, std::array<Tracker, 2>& tr) {
    const SpherePoint<N> s = stratified_sphere_point<N>(rng);
    const auto by_region = stratum_of(q_s(s));
    tr[0].observe(by_region && *by_region == orbit_type(s) ? 0.0 : 1.0, s);

    const EquatorPoint<N> e = stratified_equator_point<N>(params, rng, range);
    const OrbitType chart_type = chart_orbit_type(e);
    const auto region_type = stratum_of(q_k(params, e));
    const bool agree = region_type && *region_type == chart_type && orbit_type(embed(e)) == chart_type;
    tr[1].observe(agree ? 0.0 : 1.0, e);
  });
  ctx.below(pre + "sphere-orbit-type-matches-region", t[0], 0.0);
  ctx.below(pre + "equator-orbit-type-matches-region", t[1], 0.0);
}

// ---------------------------------------------------------------- witness

/// Sphere point with prescribed invariants, built independently of the
/// witness construction: a = y + s e1, c = alpha e1 + beta e2.
template <std::size_t N>
SpherePoint<N> point_in_fiber(const OrbitPoint& pt, CounterRng& rng) {
  const Element<N> e1 = draw_imaginary_unit<N>(rng);
  Element<N> e2 = draw_imaginary_gaussian<N>(rng);
  e2 -= dot(e2, e1) * e1;
  e2 /= e2.norm();
  const double s = std::sqrt(std::fmax(0.0, pt.x * pt.x - pt.y * pt.y));
  const double alpha = s > 0 ? pt.z / s : 0.0;
  const double beta = std::sqrt(std::fmax(0.0, 1.0 - pt.x * pt.x - alpha * alpha));
  return SpherePoint<N>::normalized(Element<N>::real(pt.y) + s * e1, alpha * e1 + beta * e2);
}

template <std::size_t N>
void witness_suite(Context& ctx) {
  const auto& cfg = ctx.cfg();
  const std::string pre = prefix<N>("orbit-witness");
  const std::size_t n = ctx.samples(kWitnessSamples);
  const BundleParams params = BundleParams::from_k(cfg.k_list.front());
  const RadiusRange range = cfg.radius;
  constexpr double inf = std::numeric_limits<double>::infinity();

  auto t = ctx.sweep<5>(pre, n, [&](CounterRng& rng, std::array<Tracker, 5>& tr) {
    const SpherePoint<N> p = random_sphere_point<N>(rng);
    const Automorphism<N> g0 = random_automorphism<N>(rng);
    const SpherePoint<N> target = apply_to_sphere<N>(g0, p);
    bool failed = false;
    try {
      const Automorphism<N> g = orbit_witness(p, target);
      tr[0].observe(distance(apply_to_sphere<N>(g, p), target), p, target);
      tr[2].observe(verify_automorphism(g, 4, rng.next_u64()), p, target);
    } catch (const DomainError&) {
      failed = true;
      tr[0].observe(inf, p, target);
    }

    const SpherePoint<N> other = point_in_fiber<N>(q_s(p), rng);
    try {
      const Automorphism<N> g = orbit_witness(p, other, 1e-9);
      tr[3].observe(distance(apply_to_sphere<N>(g, p), other), p, other);
    } catch (const DomainError&) {
      failed = true;
      tr[3].observe(inf, p, other);
    }

    // Equal Q_k values on the equator, matched through h1.
    const EquatorPoint<N> e = random_equator_point<N>(params, rng, Chart::One, range);
    const EquatorPoint<N> ge = davis_action(g0, e);
    try {
      const Automorphism<N> g = orbit_witness(embed(e), embed(ge), 1e-9);
      tr[4].observe(chart_distance(davis_action<N>(g, e.point()), ge.point()), e, ge);
    } catch (const DomainError&) {
      failed = true;
      tr[4].observe(inf, e, ge);
    }
    tr[1].observe(failed ? 1.0 : 0.0, p);
  });
  const auto& tol = cfg.tol;
  ctx.below(pre + "witness-maps-p-to-g0p", t[0], tol.transition);
  ctx.below(pre + "witness-failures", t[1], 0.0);
  ctx.below(pre + "witness-is-automorphism", t[2], tol.group);
  ctx.below(pre + "witness-fiber-constructed", t[3], tol.transition);
  ctx.below(pre + "witness-equator-fiber", t[4], tol.transition);
}

// -------------------------------------------------------------------- Z2

template <std::size_t N>
void z2_suite(Context& ctx) {
  const auto& cfg = ctx.cfg();
  const std::string pre = prefix<N>("z2-coincide");
  const std::size_t n = ctx.samples(kBundleSamples);
  for (int k : cfg.k_list) {
    const BundleParams params = BundleParams::from_k(k);
    const std::string kp = with_k(pre, k);
    const RadiusRange range = cfg.radius;
    auto t = ctx.sweep<5>(kp, n, [&](CounterRng& rng, std::array<Tracker, 5>& tr) {
      const EquatorPoint<N> e = random_equator_point<N>(params, rng, random_chart(rng), range);
      const OrbitPoint qe = q_k(params, e);
      const EquatorPoint<N> te = involution_T(e);
      tr[0].observe(distance(q_k(params, te), z2_orbit_action(qe)), e);
      tr[1].observe(distance(q_k(params, transition(params, te)), z2_orbit_action(qe)), e);
      tr[2].observe(distance(embed(te), embed(e).antipode()), e);

      const SpherePoint<N> s = random_sphere_point<N>(rng);
      const OrbitPoint qs = q_s(s);
      const OrbitPoint qa = q_s(s.antipode());
      tr[3].observe(distance(qa, z2_orbit_action(qs)), s);
      tr[4].observe(distance(full_quotient_representative(qs), full_quotient_representative(qa)), s);
    });
    const auto& tol = cfg.tol;
    ctx.below(kp + "qk-T-is-z2", t[0], tol.rational);
    ctx.below(kp + "qk-T-is-z2-across-charts", t[1], tol.transition);
    ctx.below(kp + "embedding-intertwines-T-antipode", t[2], tol.rational);
    ctx.below(kp + "qs-antipode-is-z2", t[3], tol.rational);
    ctx.below(kp + "full-quotient-representative", t[4], tol.rational);
  }
}

// ------------------------------------------------------- negative controls

template <std::size_t N>
void negative_controls_suite(Context& ctx) {
  const auto& cfg = ctx.cfg();
  const std::string pre = prefix<N>("negative-controls");
  const std::size_t n = ctx.samples(kBundleSamples);
  const RadiusRange range = cfg.radius;
  const LinearMap<N> bad = LinearMap<N>::sign_flip(N - 1);

  Tracker equivariance;
  bool any_k = false;
  for (int k : cfg.k_list) {
    const BundleParams params = BundleParams::from_k(k);
    if (k != 1) {
      any_k = true;
      auto t = ctx.sweep<1>(with_k(pre, k) + "non-automorphism", n, [&](CounterRng& rng, std::array<Tracker, 1>& tr) {
        const ChartPoint<N> p = random_equator_point<N>(params, rng, random_chart(rng), range).point();
        tr[0].observe(chart_distance(transition(params, davis_action(bad, p)), davis_action(bad, transition(params, p))),
                      p, k);
      });
      equivariance.merge(t[0]);
    }

    // One exponent off by one: (h, j) -> (h, j + 1) no longer preserves Q_k.
    const GluingExponents perturbed{params.h, params.j + 1};
    auto t = ctx.sweep<1>(with_k(pre, k) + "perturbed-exponent", n, [&](CounterRng& rng, std::array<Tracker, 1>& tr) {
      const ChartPoint<N> p = random_equator_point<N>(params, rng, random_chart(rng), range).point();
      tr[0].observe(distance(q_k_chart(glue(perturbed, p)), q_k_chart(p)), p);
    });
    ctx.above(with_k(pre, k) + "perturbed-exponent-breaks-qk-welldef", t[0], cfg.tol.transition);
  }
  if (any_k) ctx.above(pre + "non-automorphism-breaks-equivariance", equivariance, kControlThreshold);

  Tracker verify;
  verify.observe(verify_automorphism(bad, 256, cfg.seed));
  ctx.above(pre + "non-automorphism-fails-verification", verify, kControlThreshold);
}

// ----------------------------------------------------------------- parity

inline void parity_suite(Context& ctx) {
  Tracker formulas;
  for (std::int64_t h = -20; h <= 20; ++h) {
    const std::int64_t m = ((h % 4) + 4) % 4;
    const bool residue = m == 2 || m == 3;
    const bool binomial = ((h * (h - 1) / 2) % 2) != 0;
    formulas.observe(is_odd_bP16(h) == residue && residue == binomial ? 0.0 : 1.0, static_cast<double>(h));
  }
  ctx.below("parity/predicate-matches-both-forms", formulas, 0.0);

  const auto rows = classify_range(1, 8);
  const auto odd = std::count_if(rows.begin(), rows.end(), [](const ParityRow& r) { return r.odd; });
  Tracker count;
  count.observe(std::fabs(static_cast<double>(odd) - 4.0));
  ctx.below("parity/one-to-eight-has-four-odd", count, 0.0);

  const auto first = classify_range(1, 4);
  const bool expected[] = {false, true, true, false};
  Tracker flags;
  for (std::size_t i = 0; i < first.size(); ++i)
    flags.observe(first[i].odd == expected[i] && first[i].k == 2 * first[i].h - 1 ? 0.0 : 1.0,
                  static_cast<double>(first[i].h));
  ctx.below("parity/one-to-four-flags", flags, 0.0);
}

struct SuiteEntry {
  std::string_view id;
  void (*quaternion)(Context&);
  void (*octonion)(Context&);
};

inline constexpr SuiteEntry kSuites[] = {
    {"algebra", &algebra_suite<4>, &algebra_suite<8>},
    {"automorphism", &automorphism_suite<4>, &automorphism_suite<8>},
    {"bundle-welldef", &bundle_suite<4>, &bundle_suite<8>},
    {"quotient-welldef", &quotient_suite<4>, &quotient_suite<8>},
    {"key-lemma", &key_lemma_suite<4>, &key_lemma_suite<8>},
    {"orbit-witness", &witness_suite<4>, &witness_suite<8>},
    {"stratification", &stratification_suite<4>, &stratification_suite<8>},
    {"z2-coincide", &z2_suite<4>, &z2_suite<8>},
    {"negative-controls", &negative_controls_suite<4>, &negative_controls_suite<8>},
    {"parity", nullptr, nullptr},
};

inline void run_entry(const SuiteEntry& entry, Context& ctx) {
  if (entry.quaternion == nullptr) {
    parity_suite(ctx);
    return;
  }
  for (Algebra a : ctx.cfg().algebras) (a == Algebra::Quaternion ? entry.quaternion : entry.octonion)(ctx);
}

}  // namespace detail

/// Suite ids accepted by run_suite, in the order "all" runs them.
inline std::vector<std::string> suite_ids() {
  std::vector<std::string> ids;
  for (const auto& e : detail::kSuites) ids.emplace_back(e.id);
  ids.emplace_back("all");
  return ids;
}

inline VerificationReport run_suite(const SuiteConfig& config) {
  validate(config);
  const auto* match = std::find_if(std::begin(detail::kSuites), std::end(detail::kSuites),
                                   [&](const detail::SuiteEntry& e) { return e.id == config.suite; });
  if (config.suite != "all" && match == std::end(detail::kSuites))
    throw UsageError("unknown suite '" + config.suite + "'");

  VerificationReport report;
  report.suite = config.suite;
  report.config = config;
  const auto start = std::chrono::steady_clock::now();
  detail::Context ctx(config, report.checks);
  if (config.suite == "all") {
    for (const auto& e : detail::kSuites) detail::run_entry(e, ctx);
  } else {
    detail::run_entry(*match, ctx);
  }
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const CheckResult& c) { return c.pass; });
  return report;
}

}  // namespace exotic::harness
