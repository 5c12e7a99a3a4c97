#pragma once

// Automorphism groups of the division algebras (SO(3) on H, G2 on O) and
// their linear action on the unit sphere of Lambda (+) Im(Lambda).
//
// Automorphisms are stored extensionally as b x b matrices. They are built
// from frames: an automorphism is fixed by the images of a generating set
// of imaginary units, (e1, e2) for H and a basic triple (e1, e2, e3) with
// e3 orthogonal to e1 e2 for O. The products of the frame vectors give an
// orthonormal basis, and the map is the basis change between two of them.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>

#include "exotic/division_algebra.hpp"
#include "exotic/draw.hpp"
#include "exotic/errors.hpp"
#include "exotic/random.hpp"

namespace exotic {

/// Arbitrary real-linear map of Lambda given by the images of the basis.
template <std::size_t N>
  requires DivisionAlgebraDim<N>
class LinearMap {
 public:
  using Column = Element<N>;

  constexpr LinearMap() noexcept {
    for (std::size_t m = 0; m < N; ++m) columns_[m] = Element<N>::basis(m);
  }
  constexpr explicit LinearMap(const std::array<Column, N>& columns) noexcept
      : columns_(columns) {}

  static constexpr LinearMap identity() noexcept { return LinearMap{}; }

  /// Matrix with a single diagonal entry negated.
  static constexpr LinearMap sign_flip(std::size_t index) noexcept {
    LinearMap m;
    m.columns_[index] = -m.columns_[index];
    return m;
  }

  constexpr Element<N> apply(const Element<N>& x) const noexcept {
    Element<N> y;
    for (std::size_t m = 0; m < N; ++m) y += x[m] * columns_[m];
    return y;
  }

  constexpr Element<N> operator()(const Element<N>& x) const noexcept { return apply(x); }

  /// Row i, column m.
  constexpr double entry(std::size_t i, std::size_t m) const noexcept { return columns_[m][i]; }
  constexpr const std::array<Column, N>& columns() const noexcept { return columns_; }

  constexpr LinearMap transpose() const noexcept {
    std::array<Column, N> t;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t m = 0; m < N; ++m) t[i][m] = columns_[m][i];
    return LinearMap(t);
  }

  /// (*this) o other.
  constexpr LinearMap after(const LinearMap& other) const noexcept {
    std::array<Column, N> out;
    for (std::size_t m = 0; m < N; ++m) out[m] = apply(other.columns_[m]);
    return LinearMap(out);
  }

  /// Max-abs entry difference.
  double distance_to(const LinearMap& other) const noexcept {
    double d = 0.0;
    for (std::size_t m = 0; m < N; ++m)
      for (std::size_t i = 0; i < N; ++i)
        d = std::fmax(d, std::fabs(columns_[m][i] - other.columns_[m][i]));
    return d;
  }

 private:
  std::array<Column, N> columns_;
};

template <std::size_t N>
class Frame;

/// Element of G^Lambda. Only obtainable through constructions that produce
/// algebra automorphisms (frames, inner conjugation on H, composition,
/// inversion), so an Automorphism value always fixes 1, is orthogonal and
/// multiplicative up to rounding.
template <std::size_t N>
  requires DivisionAlgebraDim<N>
class Automorphism : public LinearMap<N> {
 public:
  constexpr Automorphism() noexcept = default;

  static constexpr Automorphism identity() noexcept { return Automorphism{}; }

  template <std::size_t M>
  friend Automorphism<M> automorphism_from_frames(const Frame<M>&, const Frame<M>&);
  friend Automorphism<4> conjugation_automorphism(const Quaternion&);
  template <std::size_t M>
  friend Automorphism<M> compose(const Automorphism<M>&, const Automorphism<M>&);
  template <std::size_t M>
  friend Automorphism<M> invert(const Automorphism<M>&);

 private:
  constexpr explicit Automorphism(const LinearMap<N>& m) noexcept : LinearMap<N>(m) {}
};

namespace detail {

/// Removes the components of v along the orthonormal vectors in basis.
template <std::size_t N>
Element<N> reject(Element<N> v, std::span<const Element<N>> basis) noexcept {
  // Two passes keep the result orthogonal to rounding level.
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : basis) v -= dot(v, e) * e;
  return v;
}

}  // namespace detail

/// Unit vector orthogonal to the given orthonormal imaginary vectors, or
/// nullopt if v is (numerically) in their span.
template <std::size_t N>
std::optional<Element<N>> orthonormalize_against(const Element<N>& v,
                                                 std::span<const Element<N>> basis,
                                                 double eps = 1e-12) {
  Element<N> w = detail::reject(v.im(), basis);
  const double n = w.norm();
  if (!(n > eps)) return std::nullopt;
  return w / n;
}

/// Lowest-index imaginary basis direction orthogonalized against basis.
/// Deterministic completion for degenerate partial frames.
template <std::size_t N>
Element<N> first_orthogonal_direction(std::span<const Element<N>> basis) {
  Element<N> best;
  double best_norm = 0.0;
  for (std::size_t m = 1; m < N; ++m) {
    const Element<N> w = detail::reject(Element<N>::basis(m), basis);
    const double n = w.norm();
    // Accept the first direction comfortably outside the span.
    if (n > 0.5) return w / n;
    if (n > best_norm) {
      best = w;
      best_norm = n;
    }
  }
  if (!(best_norm > 1e-12)) throw DomainError("no orthogonal direction available");
  return best / best_norm;
}

/// Generating frame of imaginary units: (e1, e2) for H, a basic triple
/// (e1, e2, e3) for O.
template <std::size_t N>
class Frame {
 public:
  static constexpr std::size_t size = N == 4 ? 2 : 3;
  using Vectors = std::array<Element<N>, size>;

  /// Validates the frame invariants to tol and re-orthonormalizes.
  static Frame make(const Vectors& v, double tol = 1e-8) {
    auto fail = [](const std::string& what) { throw DomainError("invalid frame: " + what); };
    for (std::size_t i = 0; i < size; ++i) {
      if (!v[i].is_finite()) fail("non-finite vector");
      if (std::fabs(v[i].norm() - 1.0) > tol) fail("vector is not a unit");
      if (std::fabs(v[i].re()) > tol) fail("vector is not imaginary");
      for (std::size_t j = 0; j < i; ++j)
        if (std::fabs(dot(v[i], v[j])) > tol) fail("vectors are not orthogonal");
    }
    if constexpr (size == 3) {
      if (std::fabs(dot(v[2], v[0] * v[1])) > tol) fail("e3 is not orthogonal to e1 e2");
    }
    Vectors out;
    std::array<Element<N>, 4> done{};
    std::size_t count = 0;
    for (std::size_t i = 0; i < size; ++i) {
      auto e = orthonormalize_against<N>(v[i], std::span<const Element<N>>(done.data(), count));
      if (!e) fail("degenerate vectors");
      out[i] = *e;
      done[count++] = *e;
      if (i == 1 && size == 3) done[count++] = out[0] * out[1];
    }
    return Frame(out);
  }

  /// (i, j) for H; (i, j, l) for O.
  static Frame standard() noexcept {
    Vectors v;
    v[0] = Element<N>::basis(1);
    v[1] = Element<N>::basis(2);
    if constexpr (size == 3) v[2] = Element<N>::basis(4);
    return Frame(v);
  }

  const Vectors& vectors() const noexcept { return v_; }
  const Element<N>& operator[](std::size_t i) const noexcept { return v_[i]; }

  /// Orthonormal basis of Lambda spanned by the frame products, in the
  /// order matching the coefficient basis for the standard frame.
  std::array<Element<N>, N> product_basis() const noexcept {
    std::array<Element<N>, N> b;
    b[0] = Element<N>::one();
    b[1] = v_[0];
    b[2] = v_[1];
    b[3] = v_[0] * v_[1];
    if constexpr (N == 8) {
      b[4] = v_[2];
      b[5] = v_[0] * v_[2];
      b[6] = v_[1] * v_[2];
      b[7] = b[3] * v_[2];
    }
    return b;
  }

 private:
  explicit Frame(const Vectors& v) noexcept : v_(v) {}
  Vectors v_;
};

/// The automorphism carrying src[i] to dst[i].
template <std::size_t N>
Automorphism<N> automorphism_from_frames(const Frame<N>& src, const Frame<N>& dst) {
  const auto from = src.product_basis();
  const auto to = dst.product_basis();
  // g = sum_m to_m from_m^T
  std::array<Element<N>, N> columns;
  for (std::size_t col = 0; col < N; ++col) {
    Element<N> image;
    for (std::size_t m = 0; m < N; ++m) image += from[m][col] * to[m];
    columns[col] = image;
  }
  return Automorphism<N>(LinearMap<N>(columns));
}

/// x -> p x p^{-1} for a unit quaternion p.
inline Automorphism<4> conjugation_automorphism(const Quaternion& p) {
  if (!p.is_finite() || std::fabs(p.norm() - 1.0) > 1e-10)
    throw DomainError("conjugation_automorphism: p must be a unit quaternion");
  const Quaternion p_inv = inverse(p);
  std::array<Quaternion, 4> columns;
  for (std::size_t m = 0; m < 4; ++m) columns[m] = (p * Quaternion::basis(m)) * p_inv;
  return Automorphism<4>(LinearMap<4>(columns));
}

template <std::size_t N>
Automorphism<N> compose(const Automorphism<N>& g, const Automorphism<N>& h) {
  return Automorphism<N>(g.after(h));
}

/// Inverse via transpose.
template <std::size_t N>
Automorphism<N> invert(const Automorphism<N>& g) {
  return Automorphism<N>(g.transpose());
}

template <std::size_t N>
Element<N> apply(const LinearMap<N>& g, const Element<N>& x) noexcept {
  return g.apply(x);
}

/// Gaussian draws in Im(Lambda), Gram-Schmidt, e3 projected off e1 e2.
template <std::size_t N>
Frame<N> random_frame(CounterRng& rng) {
  using Vectors = typename Frame<N>::Vectors;
  for (;;) {
    Vectors v;
    std::array<Element<N>, 4> done{};
    std::size_t count = 0;
    bool ok = true;
    for (std::size_t i = 0; i < Frame<N>::size && ok; ++i) {
      auto e = orthonormalize_against<N>(draw_imaginary_gaussian<N>(rng),
                                         std::span<const Element<N>>(done.data(), count), 1e-6);
      if (!e) {
        ok = false;
        break;
      }
      v[i] = *e;
      done[count++] = *e;
      if (i == 1 && Frame<N>::size == 3) done[count++] = v[0] * v[1];
    }
    if (ok) return Frame<N>::make(v);
  }
}

template <std::size_t N>
Frame<N> random_frame(std::uint64_t seed) {
  CounterRng rng(seed, stream_id("random_frame"));
  return random_frame<N>(rng);
}

template <std::size_t N>
Automorphism<N> random_automorphism(CounterRng& rng) {
  return automorphism_from_frames(Frame<N>::standard(), random_frame<N>(rng));
}

template <std::size_t N>
Automorphism<N> random_automorphism(std::uint64_t seed) {
  CounterRng rng(seed, stream_id("random_automorphism"));
  return random_automorphism<N>(rng);
}

/// Max over sampled Gaussian x, y of |g(xy) - g(x)g(y)| and ||g(x)| - |x||.
template <std::size_t N>
double verify_automorphism(const LinearMap<N>& g, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw UsageError("verify_automorphism: samples must be >= 1");
  CounterRng rng(seed, stream_id("verify_automorphism"));
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto x = draw_gaussian<N>(rng);
    const auto y = draw_gaussian<N>(rng);
    const auto gx = g(x);
    const double mult = distance(g(x * y), gx * g(y));
    const double iso = std::fabs(gx.norm() - x.norm());
    worst = std::fmax(worst, std::fmax(mult, iso));
    if (std::isnan(mult) || std::isnan(iso)) return std::numeric_limits<double>::infinity();
  }
  return worst;
}

/// Point (a, c) of the unit sphere S^{2b-2} in Lambda (+) Im(Lambda).
template <std::size_t N>
class SpherePoint {
 public:
  SpherePoint() noexcept : a_(Element<N>::one()) {}

  /// Validates |a|^2 + |c|^2 = 1 to tol and re(c) = 0 to 1e-12.
  static SpherePoint make(const Element<N>& a, const Element<N>& c, double tol = 1e-10) {
    if (!a.is_finite() || !c.is_finite()) throw DomainError("sphere point: non-finite coordinates");
    if (std::fabs(a.norm2() + c.norm2() - 1.0) > tol)
      throw DomainError("sphere point: |a|^2 + |c|^2 != 1");
    if (std::fabs(c.re()) > 1e-12) throw DomainError("sphere point: c is not imaginary");
    return SpherePoint(a, c);
  }

  /// Normalizes (a, im c) onto the sphere.
  static SpherePoint normalized(const Element<N>& a, const Element<N>& c) {
    const Element<N> ci = c.im();
    const double n = std::sqrt(a.norm2() + ci.norm2());
    if (!(n > 0.0)) throw DomainError("sphere point: cannot normalize zero vector");
    return SpherePoint(a / n, ci / n);
  }

  const Element<N>& a() const noexcept { return a_; }
  const Element<N>& c() const noexcept { return c_; }

  SpherePoint antipode() const noexcept { return SpherePoint(-a_, -c_); }

  friend double distance(const SpherePoint& p, const SpherePoint& q) noexcept {
    return std::sqrt((p.a_ - q.a_).norm2() + (p.c_ - q.c_).norm2());
  }

 private:
  SpherePoint(const Element<N>& a, const Element<N>& c) noexcept : a_(a), c_(c) {}
  Element<N> a_;
  Element<N> c_;
};

/// Uniform point of S^{2b-2}.
template <std::size_t N>
SpherePoint<N> random_sphere_point(CounterRng& rng) {
  for (;;) {
    const auto a = draw_gaussian<N>(rng);
    const auto c = draw_imaginary_gaussian<N>(rng);
    if (a.norm2() + c.norm2() > 1e-12) return SpherePoint<N>::normalized(a, c);
  }
}

/// Element (g, sign) of G^Lambda x Z2.
template <std::size_t N>
struct SignedSymmetry {
  Automorphism<N> g;
  int sign = 1;

  friend SignedSymmetry operator*(const SignedSymmetry& s, const SignedSymmetry& t) {
    return {compose(s.g, t.g), s.sign * t.sign};
  }
};

/// (g, +-) . (a, c) = +-(g(a), g(c)).
template <std::size_t N>
SpherePoint<N> signed_action(const SignedSymmetry<N>& s, const SpherePoint<N>& p) {
  const double sign = s.sign < 0 ? -1.0 : 1.0;
  Element<N> ga = sign * s.g(p.a());
  Element<N> gc = sign * s.g(p.c());
  gc[0] = 0.0;  // g fixes the real axis; drop rounding residue
  return SpherePoint<N>::make(ga, gc, 1e-9);
}

}  // namespace exotic
