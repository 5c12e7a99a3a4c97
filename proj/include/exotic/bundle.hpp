#pragma once

// Sphere bundles S^{b-1} -> E -> S^b over Lambda, glued from two charts
// Lambda x S^{b-1} along
//   (u, q) -> (u/|u|^2, w^h q w^j),   w = u/|u|,
// together with the height function f, its zero set (the equator sphere),
// the free involution T and the diagonal automorphism action.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "exotic/division_algebra.hpp"
#include "exotic/draw.hpp"
#include "exotic/errors.hpp"
#include "exotic/random.hpp"
#include "exotic/symmetry.hpp"

namespace exotic {

enum class Chart { One, Two };

constexpr Chart other(Chart c) noexcept { return c == Chart::One ? Chart::Two : Chart::One; }

/// Exponents (h, j) of an arbitrary gluing; no constraint on h + j.
struct GluingExponents {
  int h;
  int j;
};

/// Gluing with h + j = 1 and k = h - j = 2h - 1.
struct BundleParams {
  int h = 1;
  int j = 0;
  int k = 1;

  static constexpr BundleParams from_h(int h) noexcept { return {h, 1 - h, 2 * h - 1}; }

  static BundleParams from_k(int k) {
    if (k % 2 == 0) throw UsageError("k must be odd, got " + std::to_string(k));
    return from_h((k + 1) / 2);
  }

  constexpr GluingExponents exponents() const noexcept { return {h, j}; }
};

/// (u, q) in chart One or (v, r) in chart Two; |second| = 1.
template <std::size_t N>
struct ChartPoint {
  Chart chart = Chart::One;
  Element<N> first;
  Element<N> second = Element<N>::one();
};

template <std::size_t N>
ChartPoint<N> chart_point(Chart chart, const Element<N>& first, const Element<N>& second,
                          double tol = 1e-10) {
  if (!first.is_finite() || !second.is_finite())
    throw DomainError("chart point: non-finite coordinates");
  if (std::fabs(second.norm() - 1.0) > tol)
    throw DomainError("chart point: fiber coordinate is not a unit");
  return {chart, first, second};
}

/// Point of the equator sphere f^{-1}(0):
///   chart One: re(q) = 0;  chart Two: re(conj(v) r) = <v, r> = 0.
template <std::size_t N>
class EquatorPoint {
 public:
  static EquatorPoint make(const ChartPoint<N>& p, double tol = 1e-10) {
    (void)chart_point(p.chart, p.first, p.second, tol);
    if (equator_defect(p) > tol) throw DomainError("equator point: f != 0");
    return EquatorPoint(p);
  }

  static EquatorPoint make(Chart chart, const Element<N>& first, const Element<N>& second,
                           double tol = 1e-10) {
    return make(ChartPoint<N>{chart, first, second}, tol);
  }

  /// |re(q)| in chart One, |re(conj(v) r)| in chart Two.
  static double equator_defect(const ChartPoint<N>& p) noexcept {
    return p.chart == Chart::One ? std::fabs(p.second.re()) : std::fabs(dot(p.first, p.second));
  }

  const ChartPoint<N>& point() const noexcept { return p_; }
  operator const ChartPoint<N>&() const noexcept { return p_; }
  Chart chart() const noexcept { return p_.chart; }
  const Element<N>& first() const noexcept { return p_.first; }
  const Element<N>& second() const noexcept { return p_.second; }

 private:
  explicit EquatorPoint(const ChartPoint<N>& p) noexcept : p_(p) {}
  ChartPoint<N> p_;
};

/// Chart distance, meaningful only for points in the same chart.
template <std::size_t N>
double chart_distance(const ChartPoint<N>& p, const ChartPoint<N>& q) noexcept {
  if (p.chart != q.chart) return std::numeric_limits<double>::infinity();
  return std::sqrt((p.first - q.first).norm2() + (p.second - q.second).norm2());
}

inline double phi_of_norm2(double n2) noexcept { return 1.0 / std::sqrt(1.0 + n2); }

/// 1/sqrt(1 + |w|^2).
template <std::size_t N>
double phi(const Element<N>& w) noexcept {
  return phi_of_norm2(w.norm2());
}

/// Gluing map of the given exponents. Chart One points go to chart Two by
/// (u, q) -> (u/|u|^2, w^h q w^j); chart Two points go back by the inverse
/// (v, r) -> (v/|v|^2, w^{-h} r w^{-j}), w = v/|v|. Products are
/// left-associated.
template <std::size_t N>
ChartPoint<N> glue(GluingExponents e, const ChartPoint<N>& p) {
  const double n2 = p.first.norm2();
  if (!(std::sqrt(n2) > 1e-12)) throw DomainError("transition: point is not in the gluing region");
  const Element<N> w = p.first / std::sqrt(n2);
  const Element<N> base = p.first / n2;
  if (p.chart == Chart::One) {
    return {Chart::Two, base, (power(w, e.h) * p.second) * power(w, e.j)};
  }
  return {Chart::One, base, (power(w, -e.h) * p.second) * power(w, -e.j)};
}

template <std::size_t N>
ChartPoint<N> transition(const BundleParams& params, const ChartPoint<N>& p) {
  return glue(params.exponents(), p);
}

template <std::size_t N>
EquatorPoint<N> transition(const BundleParams& params, const EquatorPoint<N>& p) {
  return EquatorPoint<N>::make(glue(params.exponents(), p.point()), 1e-9);
}

/// f = re(q) phi(u) in chart One, re(v r^{-1}) phi(v) in chart Two.
template <std::size_t N>
double f_value(const ChartPoint<N>& p) {
  if (p.chart == Chart::One) return p.second.re() * phi(p.first);
  return (p.first * inverse(p.second)).re() * phi(p.first);
}

/// Chart-Two height written with re(conj(v) r) |r^{-1}|^2; equals the
/// re(v r^{-1}) form for any nonzero r.
template <std::size_t N>
double f_value_conjugate_form(const ChartPoint<N>& p) {
  if (p.chart == Chart::One) return p.second.re() * phi(p.first);
  return (p.first.conjugate() * p.second).re() * inverse(p.second).norm2() * phi(p.first);
}

/// Norm of the central-difference differential of f in chart coordinates:
/// b directions for the base coordinate, an orthonormal tangent basis of
/// S^{b-1} (perturbations retracted by normalization) for the fiber.
template <std::size_t N>
double f_gradient_norm(const ChartPoint<N>& p, double step) {
  if (!(step > 0.0)) throw UsageError("f_gradient_norm: step must be positive");
  double sum = 0.0;
  for (std::size_t m = 0; m < N; ++m) {
    ChartPoint<N> plus = p;
    ChartPoint<N> minus = p;
    plus.first[m] += step;
    minus.first[m] -= step;
    const double d = (f_value(plus) - f_value(minus)) / (2.0 * step);
    sum += d * d;
  }
  // Tangent basis at the fiber coordinate.
  std::array<Element<N>, N> basis;
  std::size_t count = 0;
  const Element<N> normal = p.second / p.second.norm();
  for (std::size_t m = 0; m < N && count < N - 1; ++m) {
    Element<N> v = Element<N>::basis(m);
    for (int pass = 0; pass < 2; ++pass) {
      v -= dot(v, normal) * normal;
      for (std::size_t i = 0; i < count; ++i) v -= dot(v, basis[i]) * basis[i];
    }
    const double n = v.norm();
    if (n > 1e-6) basis[count++] = v / n;
  }
  for (std::size_t i = 0; i < count; ++i) {
    ChartPoint<N> plus = p;
    ChartPoint<N> minus = p;
    plus.second = p.second + step * basis[i];
    minus.second = p.second - step * basis[i];
    plus.second /= plus.second.norm();
    minus.second /= minus.second.norm();
    const double d = (f_value(plus) - f_value(minus)) / (2.0 * step);
    sum += d * d;
  }
  return std::sqrt(sum);
}

/// T: (u, q) -> (u, -q) in either chart.
template <std::size_t N>
ChartPoint<N> involution_T(const ChartPoint<N>& p) noexcept {
  return {p.chart, p.first, -p.second};
}

template <std::size_t N>
EquatorPoint<N> involution_T(const EquatorPoint<N>& p) {
  return EquatorPoint<N>::make(involution_T(p.point()));
}

/// Diagonal action g(u, q) = (g(u), g(q)). Accepts any linear map so that
/// non-automorphisms can serve as controls.
template <std::size_t N>
ChartPoint<N> davis_action(const LinearMap<N>& g, const ChartPoint<N>& p) noexcept {
  return {p.chart, g(p.first), g(p.second)};
}

template <std::size_t N>
EquatorPoint<N> davis_action(const Automorphism<N>& g, const EquatorPoint<N>& p) {
  return EquatorPoint<N>::make(davis_action<N>(g, p.point()), 1e-9);
}

template <std::size_t N>
struct BasePoint {
  Chart chart;
  Element<N> point;
};

/// Bundle projection to the chart copy of Lambda.
template <std::size_t N>
BasePoint<N> base_projection(const BundleParams&, const ChartPoint<N>& p) noexcept {
  return {p.chart, p.first};
}

struct RadiusRange {
  double lo = 0.1;
  double hi = 10.0;
};

/// Random point of the equator sphere in the requested chart.
///   chart One: |u| uniform in the range, uniform direction; q uniform on
///              the unit sphere of Im(Lambda).
///   chart Two: r uniform on S^{b-1}; v a Gaussian projected orthogonal to
///              r, rescaled to a norm uniform in the range.
/// The equator has the same chart description for every k.
template <std::size_t N>
EquatorPoint<N> random_equator_point(const BundleParams&, CounterRng& rng, Chart chart,
                                     RadiusRange range = {}) {
  if (!(range.lo >= 0.0) || !(range.hi >= range.lo) || !std::isfinite(range.hi))
    throw UsageError("random_equator_point: radius range must satisfy 0 <= lo <= hi < inf");
  const double radius = rng.uniform(range.lo, range.hi);
  if (chart == Chart::One) {
    const Element<N> u = radius * draw_unit<N>(rng);
    const Element<N> q = draw_imaginary_unit<N>(rng);
    return EquatorPoint<N>::make(Chart::One, u, q);
  }
  const Element<N> r = draw_unit<N>(rng);
  for (;;) {
    Element<N> v = draw_gaussian<N>(rng);
    v -= dot(v, r) * r;
    v -= dot(v, r) * r;
    const double n = v.norm();
    if (n > 1e-6) return EquatorPoint<N>::make(Chart::Two, (radius / n) * v, r);
  }
}

template <std::size_t N>
EquatorPoint<N> random_equator_point(const BundleParams& params, std::uint64_t seed, Chart chart,
                                     RadiusRange range = {}) {
  CounterRng rng(seed, stream_id("random_equator_point"));
  return random_equator_point<N>(params, rng, chart, range);
}

}  // namespace exotic
