// Walks through the library on one octonionic point: build the bundle
// for k = 3, move an equator point across the gluing, and compare the two
// quotient maps on it.

#include <cstdio>

#include "exotic/exotic.hpp"

using namespace exotic;

int main() {
  CounterRng rng(2024);
  const BundleParams params = BundleParams::from_k(3);
  std::printf("k = %d: h = %d, j = %d\n", params.k, params.h, params.j);

  const auto i = Octonion::basis(1);
  const auto j = Octonion::basis(2);
  const auto l = Octonion::basis(4);
  std::printf("associator(i, j, l) has norm %.1f; octonions are not associative\n", associator(i, j, l).norm());

  const EquatorPoint<8> p = random_equator_point<8>(params, rng, Chart::One);
  const EquatorPoint<8> across = transition(params, p);
  std::printf("|u| = %.6f in chart One, |v| = %.6f in chart Two\n", p.first().norm(), across.first().norm());

  const OrbitPoint here = q_k(params, p);
  const OrbitPoint there = q_k(params, across);
  const OrbitPoint round = q_s(embed(p));
  std::printf("Q_k in chart One:  (%.12f, %.12f, %.12f)\n", here.x, here.y, here.z);
  std::printf("Q_k in chart Two:  (%.12f, %.12f, %.12f)\n", there.x, there.y, there.z);
  std::printf("Q_s after h1:      (%.12f, %.12f, %.12f)\n", round.x, round.y, round.z);
  std::printf("stratum: %s\n", name_of(*stratum_of(here)));

  // Any automorphism moves p inside its orbit; the witness recovers one.
  const Automorphism<8> g = random_automorphism<8>(rng);
  const EquatorPoint<8> gp = davis_action(g, p);
  const Automorphism<8> w = orbit_witness(embed(p), embed(gp), 1e-9);
  std::printf("witness error |w.p - g.p| = %.2e\n", chart_distance(davis_action<8>(w, p.point()), gp.point()));
  return 0;
}
