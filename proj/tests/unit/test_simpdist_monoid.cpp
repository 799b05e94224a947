#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "simctx/monoid.hpp"
#include "simctx/polytope.hpp"
#include "simctx/simpdist.hpp"

using namespace simctx;
using namespace simtest;

namespace {

constexpr auto Q = SemiringKind::NonnegRational;

Scalar q(const Rational& r) { return Scalar(Q, r); }

}  // namespace

TEST(SimpDist, IncompatibleBoxesFailValidation) {
  auto x = shared_standard(StandardSpace::ChshCone);
  SimpDist pr = pr_box({0, 0, 0, 1});
  SimpDist::Table t = pr.table();
  // break the x0 marginal of one context
  int tri = 0;
  t[2][static_cast<std::size_t>(tri)] = OutcomeDist::delta({0, 0}, Q);
  SimpDist broken(x, Q, Target::nerve(2), t);
  EXPECT_FALSE(validate(broken).empty());
  EXPECT_TRUE(validate(pr).empty());
}

TEST(SimpDist, PrBoxHasEmptySupport) {
  EXPECT_TRUE(support(pr_box({1, 0, 0, 0})).empty());
  EXPECT_TRUE(is_strongly_contextual(pr_box({1, 0, 0, 0})));
  EXPECT_EQ(support(uniform_chsh()).size(), 16u);
}

TEST(SimpDist, BoundaryRestrictionCertifiesPrBoxes) {
  Subspace b = chsh_boundary();
  auto z = std::make_shared<const SSet2>(b.space);
  EXPECT_TRUE(restriction_certifies_strong_contextuality(pr_box({0, 1, 1, 1}), b.inclusion, z));
  EXPECT_FALSE(restriction_certifies_strong_contextuality(uniform_chsh(), b.inclusion, z));
}

TEST(SimpDist, ThetaOfUniformMapsIsUniform) {
  auto x = shared_standard(StandardSpace::ChshCone);
  auto maps = enumerate_det_maps(*x, Target::nerve(2));
  std::map<DetMap, Scalar> w;
  for (const auto& m : maps) w.emplace(m, q(Rational(1, 16)));
  EXPECT_EQ(theta(x, Dist<DetMap>::from_weights(Q, w)), uniform_chsh());
}

TEST(SimpDist, RealizeMatchesBoxes) {
  EmpiricalModel e;
  e.measurements = {"x0", "x1", "y0", "y1"};
  e.contexts = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  const Rational h(1, 2);
  for (int k = 0; k < 4; ++k) {
    if (k == 3) {
      e.dists.push_back(OutcomeDist::from_weights(Q, {{{0, 1}, q(h)}, {{1, 0}, q(h)}}));
    } else {
      e.dists.push_back(OutcomeDist::from_weights(Q, {{{0, 0}, q(h)}, {{1, 1}, q(h)}}));
    }
  }
  EXPECT_TRUE(e.validate().empty());
  SimpDist p = realize(e);
  for (int t = 0; t < 4; ++t) EXPECT_EQ(box_of(p, t), box_of(pr_box({0, 0, 0, 1}), t));
}

TEST(SimpDist, DecalageRoundTrip) {
  auto s = shared_standard(StandardSpace::Circle);
  std::array<std::map<int, OutcomeDist>, 3> given;
  given[1].emplace(0, OutcomeDist::from_weights(Q, {{{0, 0}, q(Rational(1, 4))}, {{1, 1}, q(Rational(3, 4))}}));
  SimpDist p = complete_from_faces(s, Q, Target::delta(2), given);
  Decalage d = decalage_to_nerve(p);
  EXPECT_TRUE(validate(d.dist).empty());
  EXPECT_EQ(decalage_from_nerve(d.join, s, d.dist), p);
}

TEST(Monoid, DeterministicElementsAreUnits) {
  auto x = shared_standard(StandardSpace::ChshCone);
  MonoidContext ctx(x, Target::nerve(2), Q);
  for (std::size_t i = 0; i < ctx.units().size(); ++i) {
    auto inv = inverse(ctx.unit(i));
    ASSERT_TRUE(inv);
    EXPECT_EQ(mult(ctx.unit(i), *inv), ctx.identity());
  }
}

TEST(Monoid, MixturesAreNotInvertibleOverNonnegativeRationals) {
  EXPECT_FALSE(inverse(uniform_chsh()));
  EXPECT_FALSE(inverse(pr_box({0, 0, 0, 1})));
}

TEST(Monoid, BooleanInverseOnlyForDeterministic) {
  auto pr = boolean_support(pr_box({0, 0, 0, 1}));
  EXPECT_FALSE(inverse(pr));
  auto unit = boolean_support(known_vertices(StandardSpace::ChshCone)[5]);
  EXPECT_TRUE(inverse(unit));
}

TEST(Monoid, MixedChshDecomposition) {
  auto e = identity(shared_standard(StandardSpace::ChshCone), Target::nerve(2), Q);
  SimpDist p = mix({{q(Rational(1, 2)), e}, {q(Rational(1, 2)), pr_box({0, 0, 0, 1})}});
  auto wi = is_weakly_invertible(p);
  EXPECT_FALSE(wi.invertible);
  EXPECT_EQ(invertible_fraction(p), Rational(1, 2));
  MonoidContext ctx = MonoidContext::of(p);
  auto is = isupp(ctx, p);
  ASSERT_EQ(is.size(), 1u);
  EXPECT_EQ(is.front(), zero_map(p.space(), Target::nerve(2)));
}

TEST(Monoid, WeakInvertibilityWitnessReproducesTheModel) {
  Rng rng(3);
  auto vs = known_vertices(StandardSpace::ChshCone);
  std::vector<SimpDist> det(vs.begin(), vs.begin() + 16);
  for (int i = 0; i < 20; ++i) {
    SimpDist p = random_vertex_mixture(rng, det, 3);
    auto wi = is_weakly_invertible(p);
    ASSERT_TRUE(wi.invertible);
    ASSERT_TRUE(wi.witness);
    EXPECT_EQ(theta(p.shared_space(), *wi.witness), p);
  }
}

TEST(Monoid, RingModelsRefuseConvexAnalyses) {
  auto s = shared_standard(StandardSpace::Circle);
  auto r = identity(s, Target::delta(2), SemiringKind::RealField);
  EXPECT_THROW(is_weakly_invertible(r), Unsupported);
  EXPECT_THROW(invertible_fraction(r), Unsupported);
}

TEST(Monoid, MixedSpacesAreRejected) {
  EXPECT_THROW(mult(uniform_chsh(), identity(shared_standard(StandardSpace::Delta2), Target::nerve(2), Q)), UsageError);
}
