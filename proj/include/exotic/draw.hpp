#pragma once

// Seeded draws of algebra elements. Unit vectors are normalized standard
// Gaussians; near-zero draws are rejected and redrawn.

#include <cstddef>

#include "exotic/division_algebra.hpp"
#include "exotic/random.hpp"

namespace exotic {

template <std::size_t N>
Element<N> draw_gaussian(CounterRng& rng) {
  Element<N> x;
  for (std::size_t i = 0; i < N; ++i) x[i] = rng.gaussian();
  return x;
}

template <std::size_t N>
Element<N> draw_imaginary_gaussian(CounterRng& rng) {
  Element<N> x;
  for (std::size_t i = 1; i < N; ++i) x[i] = rng.gaussian();
  return x;
}

/// Uniform on the unit sphere S^{b-1}.
template <std::size_t N>
Element<N> draw_unit(CounterRng& rng) {
  for (;;) {
    const Element<N> x = draw_gaussian<N>(rng);
    const double n = x.norm();
    if (n > 1e-6) return x / n;
  }
}

/// Uniform on the unit sphere of Im(Lambda).
template <std::size_t N>
Element<N> draw_imaginary_unit(CounterRng& rng) {
  for (;;) {
    const Element<N> x = draw_imaginary_gaussian<N>(rng);
    const double n = x.norm();
    if (n > 1e-6) return x / n;
  }
}

}  // namespace exotic
