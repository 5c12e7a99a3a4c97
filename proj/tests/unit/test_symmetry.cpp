#include <gtest/gtest.h>

#include <cmath>

#include "exotic/symmetry.hpp"

using namespace exotic;

namespace {

const Quaternion qi = Quaternion::basis(1);
const Quaternion qj = Quaternion::basis(2);
const Quaternion qk = Quaternion::basis(3);

template <std::size_t N>
double conjugation_defect(const LinearMap<N>& g, const Element<N>& x) {
  return distance(g(x.conjugate()), g(x).conjugate());
}

}  // namespace

template <class X>
concept InnerConjugable = requires(X x) { conjugation_automorphism(x); };
template <class G, class X>
concept Applicable = requires(G g, X x) { g(x); };
static_assert(InnerConjugable<Quaternion>);
static_assert(!InnerConjugable<Octonion>, "inner conjugation is only offered on H");
static_assert(Applicable<Automorphism<8>, Octonion>);
static_assert(!Applicable<Automorphism<4>, Octonion>);

TEST(ConjugationAutomorphism, Examples) {
  EXPECT_LT(conjugation_automorphism(Quaternion::one()).distance_to(LinearMap<4>::identity()), 1e-15);

  const auto gi = conjugation_automorphism(qi);
  EXPECT_LT(distance(gi(qi), qi), 1e-15);
  EXPECT_LT(distance(gi(qj), -qj), 1e-15);
  EXPECT_LT(distance(gi(qk), -qk), 1e-15);

  const Quaternion p = (Quaternion::one() + qi) / std::sqrt(2.0);
  // Oracle: the product p j conj(p) evaluated directly.
  const Quaternion direct = (p * qj) * p.conjugate();
  EXPECT_LT(distance(direct, qk), 1e-15);
  EXPECT_LT(distance(conjugation_automorphism(p)(qj), qk), 1e-15);
}

TEST(ConjugationAutomorphism, RejectsNonUnit) {
  EXPECT_THROW(conjugation_automorphism(Quaternion::real(2.0)), DomainError);
  EXPECT_THROW(conjugation_automorphism(Quaternion{}), DomainError);
}

TEST(Frames, StandardFrameGivesIdentity) {
  EXPECT_LT(automorphism_from_frames(Frame<4>::standard(), Frame<4>::standard())
                .distance_to(LinearMap<4>::identity()),
            1e-15);
  EXPECT_LT(automorphism_from_frames(Frame<8>::standard(), Frame<8>::standard())
                .distance_to(LinearMap<8>::identity()),
            1e-15);
}

TEST(Frames, CyclicQuaternionFrame) {
  const auto g = automorphism_from_frames(Frame<4>::standard(), Frame<4>::make({qj, qk}));
  EXPECT_LT(distance(g(qi), qj), 1e-15);
  EXPECT_LT(distance(g(qj), qk), 1e-15);
  EXPECT_LT(distance(g(qk), qi), 1e-15);
  EXPECT_LT(verify_automorphism(g, 1000, 5), 1e-12);
}

TEST(Frames, RejectsBrokenBasicTriple) {
  const Octonion e1 = Octonion::basis(1);
  const Octonion e2 = Octonion::basis(2);
  const Octonion e3 = 0.5 * Octonion::basis(3) + std::sqrt(0.75) * Octonion::basis(4);
  ASSERT_NEAR(dot(e3, e1 * e2), 0.5, 1e-15);
  EXPECT_THROW(Frame<8>::make({e1, e2, e3}), DomainError);
  EXPECT_THROW(Frame<8>::make({e1, e2, 2.0 * Octonion::basis(4)}), DomainError);
  EXPECT_THROW(Frame<4>::make({Quaternion::one(), qj}), DomainError);
  EXPECT_THROW(Frame<4>::make({qi, (qi + qj) / std::sqrt(2.0)}), DomainError);
}

TEST(Frames, AcceptsSlightlyPerturbedFrame) {
  const Octonion e1 = Octonion::basis(1) + 1e-9 * Octonion::basis(3);
  const auto f = Frame<8>::make({e1, Octonion::basis(2), Octonion::basis(4)});
  EXPECT_LT(std::fabs(f[0].norm() - 1.0), 1e-15);
  EXPECT_LT(std::fabs(dot(f[2], f[0] * f[1])), 1e-15);
}

TEST(RandomAutomorphism, DeterministicAndValid) {
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    const auto a = random_automorphism<8>(seed);
    const auto b = random_automorphism<8>(seed);
    EXPECT_EQ(a.distance_to(b), 0.0);
    EXPECT_LT(verify_automorphism(a, 2000, seed + 1), 1e-9);
  }
  EXPECT_GT(random_automorphism<8>(1).distance_to(random_automorphism<8>(2)), 1e-3);

  const auto g = random_automorphism<4>(17);
  EXPECT_EQ(g.entry(0, 0), 1.0);
  for (std::size_t m = 1; m < 4; ++m) {
    EXPECT_LT(std::fabs(g.entry(0, m)), 1e-15);
    EXPECT_LT(std::fabs(g.entry(m, 0)), 1e-15);
  }
}

TEST(RandomAutomorphism, FrameInvariants) {
  CounterRng rng(4);
  for (int s = 0; s < 200; ++s) {
    const auto f = random_frame<8>(rng);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_LT(std::fabs(f[i].norm() - 1.0), 1e-10);
      EXPECT_LT(std::fabs(f[i].re()), 1e-10);
      for (std::size_t j = 0; j < i; ++j) EXPECT_LT(std::fabs(dot(f[i], f[j])), 1e-10);
    }
    EXPECT_LT(std::fabs(dot(f[2], f[0] * f[1])), 1e-10);
  }
}

TEST(Apply, IdentityUnitAndInverse) {
  CounterRng rng(8);
  const auto g = random_automorphism<8>(rng);
  const auto x = draw_gaussian<8>(rng);
  EXPECT_EQ(apply(Automorphism<8>::identity(), x), x);
  EXPECT_LT(distance(apply(g, Octonion::one()), Octonion::one()), 1e-15);
  EXPECT_LT(compose(g, invert(g)).distance_to(LinearMap<8>::identity()), 1e-10);
  EXPECT_LT(compose(invert(g), g).distance_to(LinearMap<8>::identity()), 1e-10);
}

TEST(VerifyAutomorphism, IdentityAndNegativeControl) {
  EXPECT_EQ(verify_automorphism(LinearMap<8>::identity(), 100, 1), 0.0);
  EXPECT_GT(verify_automorphism(LinearMap<8>::sign_flip(7), 100, 1), 0.1);
  EXPECT_GT(verify_automorphism(LinearMap<4>::sign_flip(3), 100, 1), 0.1);
  EXPECT_THROW(verify_automorphism(LinearMap<4>::identity(), 0, 1), UsageError);
}

TEST(AutomorphismProperties, ConjugationRealPartAndNorm) {
  CounterRng rng(21);
  for (int s = 0; s < 300; ++s) {
    const auto g = random_automorphism<8>(rng);
    const auto x = draw_gaussian<8>(rng);
    EXPECT_LT(conjugation_defect<8>(g, x), 1e-10);
    EXPECT_LT(std::fabs(g(x).re() - x.re()), 1e-10);
    EXPECT_LT(std::fabs(g(x).im().norm() - x.im().norm()), 1e-10);
  }
}

TEST(AutomorphismProperties, InnerConjugationAgreesWithFrames) {
  CounterRng rng(22);
  for (int s = 0; s < 500; ++s) {
    const Quaternion p = draw_unit<4>(rng);
    const auto inner = conjugation_automorphism(p);
    const Quaternion p_inv = inverse(p);
    const auto framed = automorphism_from_frames(
        Frame<4>::standard(), Frame<4>::make({(p * qi) * p_inv, (p * qj) * p_inv}));
    ASSERT_LT(inner.distance_to(framed), 1e-9);
  }
}

TEST(SignedAction, Examples) {
  CounterRng rng(30);
  const auto p = random_sphere_point<8>(rng);
  const SignedSymmetry<8> plus{Automorphism<8>::identity(), 1};
  const SignedSymmetry<8> minus{Automorphism<8>::identity(), -1};
  EXPECT_EQ(distance(signed_action(plus, p), p), 0.0);
  EXPECT_EQ(distance(signed_action(minus, p), p.antipode()), 0.0);

  const SignedSymmetry<8> g{random_automorphism<8>(rng), 1};
  const auto pole = SpherePoint<8>::make(Octonion::one(), Octonion{});
  EXPECT_LT(distance(signed_action(g, pole), pole), 1e-15);
}

TEST(SignedAction, IsAGroupAction) {
  CounterRng rng(31);
  for (int s = 0; s < 300; ++s) {
    const SignedSymmetry<8> s1{random_automorphism<8>(rng), rng.uniform() < 0.5 ? -1 : 1};
    const SignedSymmetry<8> s2{random_automorphism<8>(rng), rng.uniform() < 0.5 ? -1 : 1};
    const auto p = random_sphere_point<8>(rng);
    const auto lhs = signed_action(s1, signed_action(s2, p));
    const auto rhs = signed_action(s1 * s2, p);
    ASSERT_LT(distance(lhs, rhs), 1e-10);
    ASSERT_LT(std::fabs(lhs.a().norm2() + lhs.c().norm2() - 1.0), 1e-10);
  }
}

TEST(SpherePointType, Validation) {
  EXPECT_THROW(SpherePoint<4>::make(Quaternion::real(2), Quaternion{}), DomainError);
  EXPECT_THROW(SpherePoint<4>::make(Quaternion{}, Quaternion::one()), DomainError);
  const auto p = SpherePoint<4>::make(qi / std::sqrt(2.0), qi / std::sqrt(2.0));
  EXPECT_NEAR(p.a().norm2() + p.c().norm2(), 1.0, 1e-15);
}
