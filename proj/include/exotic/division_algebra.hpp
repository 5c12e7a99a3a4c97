#pragma once

// Quaternions (b = 4) and octonions (b = 8) as coefficient vectors over the
// Cayley-Dickson basis
//   H: 1, i, j, k
//   O: 1, i, j, k, l, il, jl, kl
// with the doubling rule (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <span>
#include <string_view>

#include "exotic/errors.hpp"

namespace exotic {

enum class Algebra { Quaternion, Octonion };

struct AlgebraTag {
  Algebra lambda;
  int b;

  friend constexpr bool operator==(AlgebraTag, AlgebraTag) = default;
};

constexpr AlgebraTag tag_of(Algebra a) noexcept {
  return a == Algebra::Quaternion ? AlgebraTag{a, 4} : AlgebraTag{a, 8};
}

constexpr std::string_view name_of(Algebra a) noexcept {
  return a == Algebra::Quaternion ? "quaternion" : "octonion";
}

template <std::size_t N>
concept DivisionAlgebraDim = (N == 4 || N == 8);

namespace detail {

template <std::size_t M>
constexpr void cd_conj(const double* x, double* out) noexcept {
  out[0] = x[0];
  for (std::size_t i = 1; i < M; ++i) out[i] = -x[i];
}

template <std::size_t M>
constexpr void cd_mul(const double* x, const double* y, double* out) noexcept {
  if constexpr (M == 1) {
    out[0] = x[0] * y[0];
  } else {
    constexpr std::size_t H = M / 2;
    const double* a = x;
    const double* b = x + H;
    const double* c = y;
    const double* d = y + H;
    double c_bar[H];
    double d_bar[H];
    double lhs[H];
    double rhs[H];
    cd_conj<H>(c, c_bar);
    cd_conj<H>(d, d_bar);
    cd_mul<H>(a, c, lhs);
    cd_mul<H>(d_bar, b, rhs);
    for (std::size_t i = 0; i < H; ++i) out[i] = lhs[i] - rhs[i];
    cd_mul<H>(d, a, lhs);
    cd_mul<H>(b, c_bar, rhs);
    for (std::size_t i = 0; i < H; ++i) out[H + i] = lhs[i] + rhs[i];
  }
}

}  // namespace detail

/// Element of H (N = 4) or O (N = 8). A plain value; all arithmetic is
/// pure. Mixing dimensions is rejected at compile time.
template <std::size_t N>
  requires DivisionAlgebraDim<N>
class Element {
 public:
  static constexpr std::size_t dim = N;
  static constexpr Algebra algebra = N == 4 ? Algebra::Quaternion : Algebra::Octonion;
  static constexpr AlgebraTag tag = tag_of(algebra);

  constexpr Element() noexcept = default;
  constexpr explicit Element(const std::array<double, N>& coeffs) noexcept : c_(coeffs) {}

  static constexpr Element real(double s) noexcept {
    Element e;
    e.c_[0] = s;
    return e;
  }

  static constexpr Element one() noexcept { return real(1.0); }

  /// Basis vector e_index (index 0 is the unit).
  static constexpr Element basis(std::size_t index) noexcept {
    Element e;
    e.c_[index] = 1.0;
    return e;
  }

  constexpr double operator[](std::size_t i) const noexcept { return c_[i]; }
  constexpr double& operator[](std::size_t i) noexcept { return c_[i]; }
  constexpr const std::array<double, N>& coeffs() const noexcept { return c_; }
  std::span<const double, N> span() const noexcept { return c_; }

  constexpr double re() const noexcept { return c_[0]; }

  constexpr Element im() const noexcept {
    Element e = *this;
    e.c_[0] = 0.0;
    return e;
  }

  constexpr Element conjugate() const noexcept {
    Element e;
    detail::cd_conj<N>(c_.data(), e.c_.data());
    return e;
  }

  constexpr double norm2() const noexcept {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return s;
  }

  double norm() const noexcept { return std::sqrt(norm2()); }

  bool is_finite() const noexcept {
    for (double v : c_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  constexpr Element operator-() const noexcept {
    Element e;
    for (std::size_t i = 0; i < N; ++i) e.c_[i] = -c_[i];
    return e;
  }

  constexpr Element& operator+=(const Element& o) noexcept {
    for (std::size_t i = 0; i < N; ++i) c_[i] += o.c_[i];
    return *this;
  }
  constexpr Element& operator-=(const Element& o) noexcept {
    for (std::size_t i = 0; i < N; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  constexpr Element& operator*=(double s) noexcept {
    for (double& v : c_) v *= s;
    return *this;
  }
  constexpr Element& operator/=(double s) noexcept {
    for (double& v : c_) v /= s;
    return *this;
  }

  friend constexpr Element operator+(Element a, const Element& b) noexcept { return a += b; }
  friend constexpr Element operator-(Element a, const Element& b) noexcept { return a -= b; }
  friend constexpr Element operator*(Element a, double s) noexcept { return a *= s; }
  friend constexpr Element operator*(double s, Element a) noexcept { return a *= s; }
  friend constexpr Element operator/(Element a, double s) noexcept { return a /= s; }

  /// Algebra product.
  friend constexpr Element operator*(const Element& x, const Element& y) noexcept {
    Element out;
    detail::cd_mul<N>(x.c_.data(), y.c_.data(), out.c_.data());
    return out;
  }

  friend constexpr bool operator==(const Element&, const Element&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Element& e) {
    os << '(';
    for (std::size_t i = 0; i < N; ++i) os << (i ? ", " : "") << e.c_[i];
    return os << ')';
  }

 private:
  std::array<double, N> c_{};
};

using Quaternion = Element<4>;
using Octonion = Element<8>;

template <std::size_t N>
constexpr Element<N> mul(const Element<N>& x, const Element<N>& y) noexcept {
  return x * y;
}

template <std::size_t N>
constexpr Element<N> conjugate(const Element<N>& x) noexcept {
  return x.conjugate();
}

template <std::size_t N>
constexpr double re(const Element<N>& x) noexcept {
  return x.re();
}

template <std::size_t N>
constexpr Element<N> im(const Element<N>& x) noexcept {
  return x.im();
}

/// Euclidean inner product of coefficient vectors; equals re(x conj(y)).
template <std::size_t N>
constexpr double dot(const Element<N>& x, const Element<N>& y) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += x[i] * y[i];
  return s;
}

template <std::size_t N>
double distance(const Element<N>& x, const Element<N>& y) noexcept {
  return (x - y).norm();
}

template <std::size_t N>
Element<N> inverse(const Element<N>& x) {
  const double n2 = x.norm2();
  if (!(n2 > 0.0) || !std::isfinite(1.0 / n2))
    throw DomainError("inverse: element has zero norm");
  return x.conjugate() / n2;
}

/// x^n with left-associated products, ((x x) x)...; negative exponents
/// invert the positive power. Alternativity makes every bracketing equal.
template <std::size_t N>
Element<N> power(const Element<N>& x, int n) {
  if (n < 0) {
    if (!(x.norm2() > 0.0)) throw DomainError("power: zero base with negative exponent");
    return inverse(power(x, -n));
  }
  Element<N> result = Element<N>::one();
  for (int i = 0; i < n; ++i) result = result * x;
  return result;
}

/// (xy)z - x(yz).
template <std::size_t N>
constexpr Element<N> associator(const Element<N>& x, const Element<N>& y,
                                const Element<N>& z) noexcept {
  return (x * y) * z - x * (y * z);
}

}  // namespace exotic
