#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "exotic/orbit.hpp"

using namespace exotic;

namespace {

const std::vector<int> kDefaultK{-3, -1, 1, 3, 5, 7};

template <std::size_t N>
struct Dim {
  static constexpr std::size_t value = N;
};
using Dims = ::testing::Types<Dim<4>, Dim<8>>;

template <typename T>
class OrbitTyped : public ::testing::Test {};
TYPED_TEST_SUITE(OrbitTyped, Dims);

/// Solves the fiber equations directly: a point with prescribed
/// (|a|, re a, <im a, im c>) = (x, y, z) built on a random orthonormal pair.
template <std::size_t N>
SpherePoint<N> point_with_invariants(const OrbitPoint& pt, CounterRng& rng) {
  const auto e1 = draw_imaginary_unit<N>(rng);
  Element<N> e2 = draw_imaginary_gaussian<N>(rng);
  e2 -= dot(e2, e1) * e1;
  e2 /= e2.norm();
  const double s = std::sqrt(std::fmax(0.0, pt.x * pt.x - pt.y * pt.y));
  const double alpha = s > 0 ? pt.z / s : 0.0;
  const double beta = std::sqrt(std::fmax(0.0, 1.0 - pt.x * pt.x - alpha * alpha));
  const Element<N> a = Element<N>::real(pt.y) + s * e1;
  const Element<N> c = alpha * e1 + beta * e2;
  return SpherePoint<N>::make(a, c, 1e-9);
}

}  // namespace

TEST(QS, FixedPointsAndFormula) {
  const auto plus = SpherePoint<4>::make(Quaternion::one(), Quaternion{});
  const auto minus = SpherePoint<4>::make(-Quaternion::one(), Quaternion{});
  EXPECT_EQ(q_s(plus), (OrbitPoint{1, 1, 0}));
  EXPECT_EQ(q_s(minus), (OrbitPoint{1, -1, 0}));
  const Quaternion i = Quaternion::basis(1);
  const auto p = SpherePoint<4>::make(i / std::sqrt(2.0), i / std::sqrt(2.0));
  EXPECT_LT(distance(q_s(p), OrbitPoint{1 / std::sqrt(2.0), 0, 0.5}), 1e-15);
}

TEST(QK, ChartExamples) {
  const auto params = BundleParams::from_k(3);
  CounterRng rng(1);
  const auto r = draw_unit<8>(rng);
  EXPECT_LT(distance(q_k(params, EquatorPoint<8>::make(Chart::Two, Octonion{}, r)), OrbitPoint{1, r.re(), 0}),
            1e-15);
  const auto q = draw_imaginary_unit<8>(rng);
  EXPECT_EQ(q_k(params, EquatorPoint<8>::make(Chart::One, Octonion{}, q)), (OrbitPoint{0, 0, 0}));
  const auto one_i = EquatorPoint<4>::make(Chart::One, Quaternion::one(), Quaternion::basis(1));
  EXPECT_LT(distance(q_k(params, one_i), OrbitPoint{1 / std::sqrt(2.0), 0, 0.5}), 1e-15);
}

TEST(Embeddings, Examples) {
  const Octonion i = Octonion::basis(1);
  const auto p = h1(Octonion{}, i);
  EXPECT_EQ(p.a(), Octonion{});
  EXPECT_EQ(p.c(), i);
  CounterRng rng(2);
  const auto r = draw_unit<8>(rng);
  const auto p2 = h2(Octonion{}, r);
  EXPECT_EQ(p2.a(), r);
  EXPECT_EQ(p2.c(), Octonion{});
  for (int s = 0; s < 100; ++s) {
    const auto u = 5.0 * draw_gaussian<8>(rng);
    const auto img = h1(u, draw_imaginary_unit<8>(rng));
    EXPECT_NEAR(img.a().norm2() + img.c().norm2(), 1.0, 1e-10);
  }
  EXPECT_THROW(h1(Octonion{}, Octonion::one()), DomainError);
  EXPECT_THROW(h2(Octonion::one(), Octonion::one()), DomainError);
}

TEST(KeyLemma, ResidualExamples) {
  const auto params = BundleParams::from_k(5);
  EXPECT_EQ(key_lemma_residual(params, EquatorPoint<4>::make(Chart::One, Quaternion{}, Quaternion::basis(1))), 0.0);
  CounterRng rng(3);
  for (int s = 0; s < 100; ++s) {
    EXPECT_LT(key_lemma_residual(params, random_equator_point<8>(params, rng, Chart::One)), 1e-12);
    EXPECT_LT(key_lemma_residual(params, random_equator_point<8>(params, rng, Chart::Two)), 1e-12);
  }
}

TEST(Region, Membership) {
  EXPECT_TRUE(region_contains({1, 1, 0}, 1e-10));
  // z^2 = 0.81 exceeds (0.25)(0.75) = 0.1875.
  EXPECT_FALSE(region_contains({0.5, 0, 0.9}, 1e-10));
  EXPECT_TRUE(region_contains({0, 0, 0}, 1e-10));
  EXPECT_FALSE(region_contains({1.1, 0, 0}, 1e-10));
  EXPECT_FALSE(region_contains({0.5, 0.6, 0}, 1e-10));
  EXPECT_EQ(stratum_of({1, -1, 0}), OrbitType::Fixed);
  EXPECT_EQ(stratum_of({0.5, 0.5, 0}), OrbitType::SingularBoundary);
  EXPECT_EQ(stratum_of({0.5, 0.1, 0.1}), OrbitType::Principal);
  EXPECT_FALSE(stratum_of({0.5, 0, 0.9}).has_value());
}

TEST(OrbitTypeLabels, Examples) {
  EXPECT_EQ(orbit_type(SpherePoint<8>::make(Octonion::one(), Octonion{})), OrbitType::Fixed);
  const Octonion i = Octonion::basis(1);
  EXPECT_EQ(orbit_type(SpherePoint<8>::make(i / std::sqrt(2.0), i / std::sqrt(2.0))), OrbitType::SingularBoundary);
  CounterRng rng(4);
  for (int s = 0; s < 200; ++s) EXPECT_EQ(orbit_type(random_sphere_point<8>(rng)), OrbitType::Principal);
}

TYPED_TEST(OrbitTyped, WitnessExamples) {
  constexpr std::size_t N = TypeParam::value;
  CounterRng rng(5);
  for (int s = 0; s < 200; ++s) {
    const auto p = random_sphere_point<N>(rng);
    const SignedSymmetry<N> g0{random_automorphism<N>(rng), 1};
    const auto target = signed_action(g0, p);
    const SignedSymmetry<N> g{orbit_witness(p, target), 1};
    ASSERT_LT(distance(signed_action(g, p), target), 1e-8);
    const SignedSymmetry<N> self{orbit_witness(p, p), 1};
    ASSERT_LT(distance(signed_action(self, p), p), 1e-12);
    ASSERT_LT(verify_automorphism(g.g, 10, s), 1e-9);
  }
  const auto p = random_sphere_point<N>(rng);
  auto shifted = q_s(p);
  EXPECT_THROW(orbit_witness(p, point_with_invariants<N>({shifted.x, shifted.y - 0.1, 0.0}, rng)), DomainError);
}

TYPED_TEST(OrbitTyped, WitnessDegenerateConfigurations) {
  constexpr std::size_t N = TypeParam::value;
  using E = Element<N>;
  CounterRng rng(6);
  std::vector<SpherePoint<N>> cases;
  const auto e = draw_imaginary_unit<N>(rng);
  cases.push_back(SpherePoint<N>::make(E::one(), E{}));                         // fixed
  cases.push_back(SpherePoint<N>::normalized(E::real(0.3), e));                  // im a = 0
  cases.push_back(SpherePoint<N>::normalized(E::real(0.2) + 0.5 * e, E{}));      // c = 0
  cases.push_back(SpherePoint<N>::normalized(E::real(0.2) + 0.5 * e, -0.7 * e)); // collinear
  cases.push_back(SpherePoint<N>::normalized(E{}, e));                           // a = 0
  for (const auto& p : cases) {
    const SignedSymmetry<N> g0{random_automorphism<N>(rng), 1};
    const auto target = signed_action(g0, p);
    const SignedSymmetry<N> g{orbit_witness(p, target), 1};
    EXPECT_LT(distance(signed_action(g, p), target), 1e-10);
  }
}

TYPED_TEST(OrbitTyped, FiberImpliesOrbit) {
  constexpr std::size_t N = TypeParam::value;
  CounterRng rng(7);
  for (int s = 0; s < 300; ++s) {
    const auto p1 = random_sphere_point<N>(rng);
    const auto p2 = point_with_invariants<N>(q_s(p1), rng);
    ASSERT_LT(distance(q_s(p1), q_s(p2)), 1e-10);
    const SignedSymmetry<N> g{orbit_witness(p1, p2), 1};
    ASSERT_LT(distance(signed_action(g, p1), p2), 1e-8);
  }
}

TEST(Z2, OrbitAction) {
  EXPECT_EQ(z2_orbit_action({1, 1, 0}), (OrbitPoint{1, -1, 0}));
  const OrbitPoint pt{0.4, 0.2, 0.1};
  EXPECT_EQ(z2_orbit_action(z2_orbit_action(pt)), pt);
  EXPECT_EQ(full_quotient_representative({1, -1, 0}), (OrbitPoint{1, 1, 0}));
  EXPECT_EQ(full_quotient_representative({0.6, 0, 0.2}), (OrbitPoint{0.6, 0, 0.2}));
  const OrbitPoint rep = full_quotient_representative({0.5, -0.3, 0.1});
  EXPECT_EQ(full_quotient_representative(rep), rep);
  EXPECT_THROW(full_quotient_representative({0.5, 0, 0.9}), DomainError);
}

TYPED_TEST(OrbitTyped, QuotientMapInvariants) {
  constexpr std::size_t N = TypeParam::value;
  CounterRng rng(8);
  for (int k : kDefaultK) {
    const auto params = BundleParams::from_k(k);
    for (int s = 0; s < 200; ++s) {
      const Chart chart = s % 2 ? Chart::One : Chart::Two;
      const auto p = random_equator_point<N>(params, rng, chart);
      const auto g = random_automorphism<N>(rng);
      const auto value = q_k(params, p);
      ASSERT_TRUE(region_contains(value, 1e-10));
      ASSERT_LT(distance(value, q_k(params, transition(params, p))), 1e-8) << "k=" << k;
      ASSERT_LT(distance(value, q_k(params, davis_action(g, p))), 1e-10);
      ASSERT_LT(distance(q_k(params, involution_T(p)), z2_orbit_action(value)), 1e-10);

      const auto sp = random_sphere_point<N>(rng);
      const SignedSymmetry<N> gs{g, 1};
      ASSERT_LT(distance(q_s(signed_action(gs, sp)), q_s(sp)), 1e-10);
      ASSERT_LT(distance(q_s(sp.antipode()), z2_orbit_action(q_s(sp))), 1e-12);

      // h1, h2 equivariance.
      ASSERT_LT(distance(embed(davis_action(g, p)), signed_action(gs, embed(p))), 1e-9);
    }
  }
}

TEST(PhiIdentity, InversionScalesPhi) {
  CounterRng rng(9);
  for (int s = 0; s < 1000; ++s) {
    const auto u = rng.uniform(0.01, 100.0) * draw_unit<8>(rng);
    ASSERT_LT(std::fabs(phi(u / u.norm2()) / u.norm() - phi(u)), 1e-12);
  }
}

TYPED_TEST(OrbitTyped, EmbeddingInversesRoundTrip) {
  constexpr std::size_t N = TypeParam::value;
  CounterRng rng(10);
  for (int s = 0; s < 300; ++s) {
    const auto sp = random_sphere_point<N>(rng);
    const auto one = h1_inverse(sp);
    const auto two = h2_inverse(sp);
    ASSERT_LT(distance(embed(one), sp), 1e-10);
    ASSERT_LT(distance(embed(two), sp), 1e-10);
  }
}

TYPED_TEST(OrbitTyped, StratificationAgrees) {
  constexpr std::size_t N = TypeParam::value;
  using E = Element<N>;
  const auto params = BundleParams::from_k(3);
  CounterRng rng(11);
  for (int s = 0; s < 400; ++s) {
    // Mix generic points with constructed boundary data.
    const auto q = draw_imaginary_unit<N>(rng);
    EquatorPoint<N> p = random_equator_point<N>(params, rng, s % 2 ? Chart::One : Chart::Two);
    switch (s % 5) {
      case 0: p = EquatorPoint<N>::make(Chart::One, E::real(rng.uniform(-2, 2)) + rng.uniform(-2, 2) * q, q); break;
      case 1: p = EquatorPoint<N>::make(Chart::Two, E{}, rng.uniform() < 0.5 ? E::one() : -E::one()); break;
      case 2: {
        const auto r = draw_unit<N>(rng).im();
        const auto rr = (E::real(0.4) + r) / (E::real(0.4) + r).norm();
        // im v parallel to im r, with <v, r> = 0.
        E v = rr.im() * 0.8;
        v[0] = -dot(v, rr) / rr.re();
        p = EquatorPoint<N>::make(Chart::Two, v, rr, 1e-9);
        break;
      }
      default: break;
    }
    const auto chart_label = chart_orbit_type(p);
    const auto sphere_label = orbit_type(embed(p));
    const auto region_label = stratum_of(q_k(params, p));
    ASSERT_TRUE(region_label.has_value());
    ASSERT_EQ(chart_label, sphere_label) << "case " << s % 5;
    ASSERT_EQ(sphere_label, *region_label) << "case " << s % 5;
  }
  // Corners are attained exactly by (0, +-1) in chart Two.
  EXPECT_EQ(q_k(params, EquatorPoint<N>::make(Chart::Two, E{}, E::one())), (OrbitPoint{1, 1, 0}));
  EXPECT_EQ(q_k(params, EquatorPoint<N>::make(Chart::Two, E{}, -E::one())), (OrbitPoint{1, -1, 0}));
}

// Points with c = 0 sit on the x = 1 edge of the region, where 1 - x^2 is
// pure rounding. They are singular (the pair (im a, 0) is dependent) and
// the region side must agree.
TYPED_TEST(OrbitTyped, ZeroFiberCoordinateIsBoundary) {
  constexpr std::size_t N = TypeParam::value;
  CounterRng rng(12);
  for (int s = 0; s < 2000; ++s) {
    const auto p = SpherePoint<N>::normalized(draw_gaussian<N>(rng), Element<N>{});
    const auto pt = q_s(p);
    ASSERT_EQ(orbit_type(p), OrbitType::SingularBoundary);
    ASSERT_EQ(stratum_of(pt), OrbitType::SingularBoundary) << "x = " << pt.x;
  }
}
