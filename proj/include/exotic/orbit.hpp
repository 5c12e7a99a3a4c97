#pragma once

// Orbit spaces of the linear action on S^{2b-2} and of the diagonal action
// on the equator sphere, both realized as the region
//   { (x, y, z) : x in [0,1], |y| <= x, z^2 <= (x^2 - y^2)(1 - x^2) }
// of R^3.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

#include "exotic/bundle.hpp"
#include "exotic/division_algebra.hpp"
#include "exotic/errors.hpp"
#include "exotic/symmetry.hpp"

namespace exotic {

struct OrbitPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr bool operator==(const OrbitPoint&, const OrbitPoint&) = default;
};

inline double distance(const OrbitPoint& p, const OrbitPoint& q) noexcept {
  return std::sqrt((p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y) +
                   (p.z - q.z) * (p.z - q.z));
}

enum class OrbitType { Fixed, SingularBoundary, Principal };

constexpr const char* name_of(OrbitType t) noexcept {
  switch (t) {
    case OrbitType::Fixed: return "fixed";
    case OrbitType::SingularBoundary: return "singular";
    case OrbitType::Principal: return "principal";
  }
  return "?";
}

/// (a, c) -> (|a|, re a, <im a, im c>).
template <std::size_t N>
OrbitPoint q_s(const SpherePoint<N>& p) noexcept {
  return {p.a().norm(), p.a().re(), dot(p.a().im(), p.c().im())};
}

/// Chart formula of Q_k without the equator precondition. Only meaningful
/// on the equator; exposed so controls can feed it arbitrary chart points.
///   chart One: phi(u) (|u|, re(uq), phi(u) <im(uq), im q>)
///   chart Two: phi(v) (|r|, re r, phi(v) <im r, im(conj(v) r)>)
template <std::size_t N>
OrbitPoint q_k_chart(const ChartPoint<N>& p) noexcept {
  const double s = phi(p.first);
  if (p.chart == Chart::One) {
    const Element<N> uq = p.first * p.second;
    return {s * p.first.norm(), s * uq.re(), s * s * dot(uq.im(), p.second.im())};
  }
  const Element<N> vr = p.first.conjugate() * p.second;
  return {s * p.second.norm(), s * p.second.re(), s * s * dot(p.second.im(), vr.im())};
}

/// Quotient map of the diagonal action on the equator sphere.
template <std::size_t N>
OrbitPoint q_k(const BundleParams&, const EquatorPoint<N>& p) noexcept {
  return q_k_chart(p.point());
}

/// h1(u, q) = phi(u) (uq, q); requires |q| = 1, re q = 0.
template <std::size_t N>
SpherePoint<N> h1(const Element<N>& u, const Element<N>& q) {
  if (std::fabs(q.norm() - 1.0) > 1e-10 || std::fabs(q.re()) > 1e-10)
    throw DomainError("h1: q must be an imaginary unit");
  const double s = phi(u);
  Element<N> c = s * q;
  c[0] = 0.0;
  return SpherePoint<N>::make(s * (u * q), c, 1e-9);
}

/// h2(v, r) = phi(v) (r, conj(v) r); requires |r| = 1, re(conj(v) r) = 0.
template <std::size_t N>
SpherePoint<N> h2(const Element<N>& v, const Element<N>& r) {
  if (std::fabs(r.norm() - 1.0) > 1e-10 || std::fabs(dot(v, r)) > 1e-10)
    throw DomainError("h2: need |r| = 1 and re(conj(v) r) = 0");
  const double s = phi(v);
  Element<N> c = s * (v.conjugate() * r);
  c[0] = 0.0;
  return SpherePoint<N>::make(s * r, c, 1e-9);
}

/// h1 or h2 according to the chart.
template <std::size_t N>
SpherePoint<N> embed(const EquatorPoint<N>& p) {
  return p.chart() == Chart::One ? h1(p.first(), p.second()) : h2(p.first(), p.second());
}

/// Chart-One preimage under h1; requires c != 0.
template <std::size_t N>
EquatorPoint<N> h1_inverse(const SpherePoint<N>& p) {
  const double s = p.c().norm();
  if (!(s > 1e-12)) throw DomainError("h1_inverse: c = 0 is not in the image of h1");
  const Element<N> q = p.c() / s;
  return EquatorPoint<N>::make(Chart::One, (p.a() * inverse(q)) / s, q, 1e-9);
}

/// Chart-Two preimage under h2; requires a != 0.
template <std::size_t N>
EquatorPoint<N> h2_inverse(const SpherePoint<N>& p) {
  const double s = p.a().norm();
  if (!(s > 1e-12)) throw DomainError("h2_inverse: a = 0 is not in the image of h2");
  const Element<N> r = p.a() / s;
  const Element<N> v_bar = (p.c() * inverse(r)) / s;
  return EquatorPoint<N>::make(Chart::Two, v_bar.conjugate(), r, 1e-9);
}

/// |Q_k(p) - Q_s(h(p))| with h = h1 on chart One and h2 on chart Two.
template <std::size_t N>
double key_lemma_residual(const BundleParams& params, const EquatorPoint<N>& p) {
  return distance(q_k(params, p), q_s(embed(p)));
}

inline bool region_contains(const OrbitPoint& pt, double tol = 1e-10) noexcept {
  return pt.x >= -tol && pt.x <= 1.0 + tol && std::fabs(pt.y) <= pt.x + tol &&
         pt.z * pt.z <= (pt.x * pt.x - pt.y * pt.y) * (1.0 - pt.x * pt.x) + tol;
}

/// Stratum of a region point: the corners (1, +-1, 0), the rest of the
/// boundary z^2 = (x^2 - y^2)(1 - x^2), or the interior. nullopt outside
/// the region. The tolerance is in squared units, matching orbit_type:
/// x^2 - y^2 = |im a|^2, 1 - x^2 = |c|^2 and the boundary deficit is the
/// Gram determinant of (im a, im c). Taking square roots instead would
/// turn rounding in x near 1 into deficits of order 1e-8.
inline std::optional<OrbitType> stratum_of(const OrbitPoint& pt, double tol = 1e-10) noexcept {
  if (!region_contains(pt, tol)) return std::nullopt;
  const double im_a2 = pt.x * pt.x - pt.y * pt.y;
  const double c2 = 1.0 - pt.x * pt.x;
  if (im_a2 <= tol && c2 <= tol) return OrbitType::Fixed;
  if (im_a2 * c2 - pt.z * pt.z <= tol) return OrbitType::SingularBoundary;
  return OrbitType::Principal;
}

namespace detail {

/// Shared classifier of a pair of imaginary vectors by squared norms and
/// Gram determinant.
template <std::size_t N>
OrbitType pair_type(const Element<N>& x, const Element<N>& y, double tol) noexcept {
  const double nx2 = x.norm2();
  const double ny2 = y.norm2();
  if (nx2 <= tol && ny2 <= tol) return OrbitType::Fixed;
  const double d = dot(x, y);
  if (nx2 * ny2 - d * d <= tol) return OrbitType::SingularBoundary;
  return OrbitType::Principal;
}

}  // namespace detail

/// Orbit type on the round sphere: fixed points are (+-1, 0); an orbit is
/// singular iff im a and im c are linearly dependent,
/// |<im a, im c>| = |im a||im c|. Tested as |im a|^2 |im c|^2 -
/// <im a, im c>^2 <= tol, the same quantity stratum_of sees.
template <std::size_t N>
OrbitType orbit_type(const SpherePoint<N>& p, double tol = 1e-10) noexcept {
  return detail::pair_type<N>(p.a().im(), p.c().im(), tol);
}

/// Orbit type read off the chart data of an equator point: the isotropy of
/// (u, q) is that of the pair (im u, im q), so the orbit is singular iff
/// they are dependent and fixed iff both vanish. Squared units as above.
template <std::size_t N>
OrbitType chart_orbit_type(const EquatorPoint<N>& p, double tol = 1e-10) noexcept {
  return detail::pair_type<N>(p.first().im(), p.second().im(), tol);
}

namespace detail {

/// Orthonormal frame adapted to (first, second): e1 along first, e2 along
/// the part of second orthogonal to e1, remaining vectors completed from
/// the lowest-index basis directions.
template <std::size_t N>
Frame<N> adapted_frame(const Element<N>& first, const Element<N>& second) {
  constexpr double eps = 1e-12;
  typename Frame<N>::Vectors v;
  std::array<Element<N>, 4> done{};
  auto span_of = [&](std::size_t n) { return std::span<const Element<N>>(done.data(), n); };

  auto e1 = orthonormalize_against<N>(first, span_of(0), eps);
  if (!e1) e1 = orthonormalize_against<N>(second, span_of(0), eps);
  v[0] = e1 ? *e1 : first_orthogonal_direction<N>(span_of(0));
  done[0] = v[0];

  auto e2 = orthonormalize_against<N>(second, span_of(1), eps);
  if (!e2) e2 = orthonormalize_against<N>(first, span_of(1), eps);
  v[1] = e2 ? *e2 : first_orthogonal_direction<N>(span_of(1));
  done[1] = v[1];

  if constexpr (N == 8) {
    done[2] = v[0] * v[1];
    v[2] = first_orthogonal_direction<N>(span_of(3));
  }
  return Frame<N>::make(v);
}

}  // namespace detail

/// An automorphism carrying p1 to p2, built from frames adapted to
/// (im a, c) on both sides. The larger of the two vectors (measured on p1)
/// leads the frame so nearly degenerate directions only ever multiply small
/// components.
template <std::size_t N>
Automorphism<N> orbit_witness(const SpherePoint<N>& p1, const SpherePoint<N>& p2,
                              double tol = 1e-10) {
  if (distance(q_s(p1), q_s(p2)) > tol) throw DomainError("orbit_witness: not in same orbit");
  const Element<N> a1 = p1.a().im();
  const Element<N> c1 = p1.c().im();
  const Element<N> a2 = p2.a().im();
  const Element<N> c2 = p2.c().im();
  const bool lead_with_a = a1.norm() >= c1.norm();
  const Frame<N> src = lead_with_a ? detail::adapted_frame(a1, c1) : detail::adapted_frame(c1, a1);
  const Frame<N> dst = lead_with_a ? detail::adapted_frame(a2, c2) : detail::adapted_frame(c2, a2);
  return automorphism_from_frames(src, dst);
}

/// Induced Z2 action on the orbit space: (x, y, z) -> (x, -y, z).
constexpr OrbitPoint z2_orbit_action(const OrbitPoint& pt) noexcept { return {pt.x, -pt.y, pt.z}; }

/// Canonical representative of the G x Z2 quotient: (x, |y|, z).
inline OrbitPoint full_quotient_representative(const OrbitPoint& pt, double tol = 1e-10) {
  if (!region_contains(pt, tol)) throw DomainError("full_quotient_representative: point outside region");
  return {pt.x, std::fabs(pt.y), pt.z};
}

}  // namespace exotic
