#include "pwsig/pwmap.hpp"
#include "pwsig/random.hpp"
#include "pwsig/signature.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>

namespace {

using namespace pwsig;
using namespace pwsig::test;

TEST(Build, IdentityFromSinglePiece) {
  const PwMap id = build({{Interval(0, 1), 1, 0}}, {{pt(0), pt(0)}});
  EXPECT_TRUE(id.is_identity());
  EXPECT_EQ(id, PwMap());
}

TEST(Build, HalfSwapIsBijective) {
  // Oracle: the interior images (1/2,1) and (0,1/2) are disjoint, cover all
  // but {0, 1/2}, and those are exactly the point images.
  const PwMap r = half_swap();
  std::set<Rational> missed{q(0), q(1, 2)};
  std::set<Rational> imgs;
  for (std::size_t k = 0; k < r.piece_count(); ++k) imgs.insert(r.point_image(k));
  EXPECT_EQ(imgs, missed);
  EXPECT_EQ(r.piece(0).image(), Interval(q(1, 2), 1));
  EXPECT_EQ(r.piece(1).image(), Interval(0, q(1, 2)));
}

TEST(Build, RejectsNonBijectiveData) {
  EXPECT_THROW(build({{Interval(0, 1), 1, 0}}, {{pt(0), pt(1, 2)}}), invalid_element);
  EXPECT_THROW(build({{Interval(0, q(1, 2)), 1, 0}, {Interval(q(1, 2), 1), 1, q(-1, 2)}},
                     {{pt(0), pt(0)}, {pt(1, 2), pt(1, 2)}}),
               invalid_element);
  EXPECT_THROW(build({{Interval(0, 1), 0, q(1, 2)}}, {{pt(0), pt(0)}}), invalid_element);
  EXPECT_THROW(build({{Interval(0, q(1, 2)), 1, 0}}, {{pt(0), pt(0)}}), invalid_element);
  EXPECT_THROW(build({{Interval(0, 1), 1, 0}}, {{pt(0), pt(0)}, {pt(1, 2), pt(1, 2)}}), invalid_element);
  EXPECT_THROW(build({{Interval(0, 1), 1, 0}}, {}), invalid_element);
}

TEST(Build, MergesMergeablePieces) {
  const PwMap id = build({{Interval(0, q(1, 3)), 1, 0}, {Interval(q(1, 3), 1), 1, 0}},
                         {{pt(0), pt(0)}, {pt(1, 3), pt(1, 3)}});
  EXPECT_TRUE(id.is_identity());
}

TEST(MinimalPartition, Examples) {
  EXPECT_EQ(minimal_partition(PwMap()), Partition());
  const PwMap t = from_finperm(FinPerm::cycle({pt(1, 3), pt(2, 3)}));
  EXPECT_EQ(minimal_partition(t), make_partition({q(1, 3), q(2, 3)}));
  EXPECT_EQ(minimal_partition(half_swap()), make_partition({q(1, 2)}));
}

TEST(MinimalPartition, IgnoresContinuousKinks) {
  const PwMap kink = build({{Interval(0, q(1, 2)), q(1, 2), 0}, {Interval(q(1, 2), 1), q(3, 2), q(-1, 2)}},
                           {{pt(0), pt(0)}, {pt(1, 2), pt(1, 4)}});
  EXPECT_EQ(minimal_partition(kink), Partition());
  EXPECT_EQ(kink.affine_partition(), make_partition({q(1, 2)}));
}

TEST(ArrivalPartition, Examples) {
  const Partition p = make_partition({q(1, 5), q(3, 5)});
  EXPECT_EQ(arrival_partition(PwMap(), p), p);
  EXPECT_EQ(arrival_partition(r3(), make_partition({q(2, 3)})), make_partition({q(1, 3)}));
  EXPECT_EQ(arrival_partition(half_swap(), make_partition({q(1, 2)})), make_partition({q(1, 2)}));
  EXPECT_THROW(arrival_partition(half_swap(), Partition()), std::invalid_argument);
}

TEST(Apply, Examples) {
  const PwMap s = flip(Interval(q(1, 4), q(1, 2)));
  EXPECT_EQ(s(pt(5, 16)), pt(7, 16));
  EXPECT_EQ(s(pt(1, 4)), pt(1, 4));
  EXPECT_EQ(half_swap()(pt(0)), pt(1, 2));
}

TEST(Compose, Examples) {
  EXPECT_EQ(compose(r3(), PwMap()), r3());
  const PwMap s = flip(Interval(0, q(1, 2)));
  EXPECT_TRUE(compose(s, s).is_identity());
  const PwMap chain = compose_all({flip(Interval(0, q(1, 2))), flip(Interval(q(1, 2), 1)), flip(Interval(0, 1))});
  EXPECT_EQ(chain, h3());
  EXPECT_TRUE(pointwise_equal(chain, h3()));
}

TEST(Compose, MatchesPointwiseEvaluation) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ElementClass c = seed % 2 ? ElementClass::paff : ElementClass::iet;
    const PwMap f = random_element({8, 96, c}, seed * 2 + 1);
    const PwMap g = random_element({8, 96, c}, seed * 2 + 2);
    const PwMap fg = compose(f, g);
    EXPECT_NO_THROW(fg.validate());
    for (const auto& x : sample_points(24)) ASSERT_EQ(fg(x), f(g(x))) << "seed " << seed;
    // also at every breakpoint preimage
    for (const auto& p : fg.pieces()) ASSERT_EQ(fg(p.source.left()), f(g(p.source.left())));
  }
}

TEST(Inverse, Examples) {
  EXPECT_TRUE(inverse(PwMap()).is_identity());
  const PwMap r23 = build({{Interval(0, q(1, 3)), 1, q(2, 3)}, {Interval(q(1, 3), 1), 1, q(-1, 3)}},
                          {{pt(0), pt(2, 3)}, {pt(1, 3), pt(0)}});
  EXPECT_EQ(inverse(r3()), r23);
  const PwMap s = flip(Interval(q(1, 5), q(4, 5)));
  EXPECT_EQ(inverse(s), s);
}

TEST(Equals, Examples) {
  EXPECT_FALSE(equals(h3(), half_swap()));
  EXPECT_TRUE(equals(compose(from_finperm(FinPerm::cycle({pt(0), pt(1, 2)})), half_swap()), h3()));
  EXPECT_TRUE(equals(r3(), r3()));
}

TEST(EqualsModFin, Examples) {
  EXPECT_TRUE(equals_mod_fin(h3(), half_swap()));
  EXPECT_FALSE(equals_mod_fin(flip(Interval(0, q(1, 2))), PwMap()));
  EXPECT_TRUE(equals_mod_fin(r3(), r3()));
}

TEST(Flip, Examples) {
  EXPECT_EQ(flip(Interval(0, 1))(pt(1, 4)), pt(3, 4));
  EXPECT_EQ(flip(Interval(q(1, 4), q(1, 2)))(pt(3, 4)), pt(3, 4));
  const PwMap s = flip(Interval(q(1, 7), q(5, 9)));
  EXPECT_TRUE(compose(s, s).is_identity());
  EXPECT_EQ(s(pt(1, 7)), pt(1, 7));
  EXPECT_EQ(s(pt(5, 9)), pt(5, 9));
}

TEST(SwapRc, Examples) {
  const PwMap r = swap_rc(Interval(0, q(1, 2)), Interval(q(1, 2), 1));
  EXPECT_EQ(r, half_swap());
  EXPECT_EQ(r(pt(0)), pt(1, 2));
  const PwMap w = swap_rc(Interval(q(1, 8), q(1, 3)), Interval(q(1, 3), q(3, 4)));
  EXPECT_TRUE(classify_features(w).right_continuous);
  EXPECT_THROW(swap_rc(Interval(0, q(1, 4)), Interval(q(1, 2), 1)), std::invalid_argument);
}

TEST(FromFinperm, Examples) {
  EXPECT_TRUE(from_finperm(FinPerm()).is_identity());
  const PwMap t = from_finperm(FinPerm::cycle({pt(0), pt(1, 2)}));
  ASSERT_EQ(t.piece_count(), 2u);
  EXPECT_EQ(t.piece(0).source, Interval(0, q(1, 2)));
  EXPECT_EQ(t.point_image(0), q(1, 2));
  EXPECT_EQ(t.point_image(1), q(0));
  const PwMap c = from_finperm(FinPerm::cycle({pt(0), pt(1, 3), pt(2, 3)}));
  EXPECT_EQ(c.piece_count(), 3u);
  EXPECT_TRUE(c.is_finitary());
}

TEST(IetBuild, Examples) {
  EXPECT_EQ(iet_build({q(2, 3), q(1, 3)}, {1, 0}, {Sense::preserve, Sense::preserve}), r3());
  EXPECT_EQ(iet_build({q(1)}, {0}, {Sense::reverse}), flip(Interval(0, 1)));
  EXPECT_TRUE(iet_build({q(1, 2), q(1, 2)}, {0, 1}, {Sense::preserve, Sense::preserve}).is_identity());
  EXPECT_THROW(iet_build({q(1, 2), q(1, 3)}, {0, 1}, {Sense::preserve, Sense::preserve}), std::invalid_argument);
  EXPECT_THROW(iet_build({q(1, 2), q(1, 2)}, {0, 0}, {Sense::preserve, Sense::preserve}), std::invalid_argument);
}

TEST(IetBuild, SignatureIsReversedPieceParity) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::vector<Rational> lengths{q(1, 8), q(1, 4), q(1, 6), q(11, 24)};
    std::vector<std::size_t> order{0, 1, 2, 3};
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Sense> senses;
    unsigned reversed = 0;
    for (int k = 0; k < 4; ++k) {
      const bool rev = rng() % 2;
      reversed += rev;
      senses.push_back(rev ? Sense::reverse : Sense::preserve);
    }
    const PwMap h = iet_build(lengths, order, senses);
    EXPECT_EQ(sigma_default(h, make_partition({q(1, 8), q(3, 8), q(13, 24)})), FinPerm());
    EXPECT_EQ(signature(h), SignBit(reversed));
  }
}

TEST(ClassifyFeatures, Examples) {
  const FeatureReport r = classify_features(half_swap());
  EXPECT_FALSE(r.in_sfin);
  EXPECT_TRUE(r.right_continuous);
  EXPECT_EQ(r.orientation, Orientation::all_preserving);
  EXPECT_TRUE(r.unit_slopes);
  EXPECT_FALSE(r.continuous);

  const FeatureReport s = classify_features(flip(Interval(q(1, 4), q(1, 2))));
  EXPECT_FALSE(s.right_continuous);
  EXPECT_EQ(s.orientation, Orientation::mixed);
  EXPECT_EQ(s.piece_count, 3u);

  EXPECT_TRUE(classify_features(from_finperm(FinPerm::cycle({pt(0), pt(1, 2)}))).in_sfin);
  EXPECT_EQ(classify_features(flip(Interval(0, 1))).orientation, Orientation::all_reversing);
  EXPECT_TRUE(classify_features(PwMap()).continuous);
}

TEST(ElementOrder, Examples) {
  EXPECT_EQ(element_order_upto(PwMap(), 5), 1u);
  EXPECT_EQ(element_order_upto(r3(), 10), 3u);
  EXPECT_EQ(element_order_upto(flip(Interval(0, 1)), 10), 2u);
  EXPECT_EQ(element_order_upto(r3(), 2), std::nullopt);
}

TEST(RandomElement, DeterministicAndInClass) {
  for (auto c : {ElementClass::iet, ElementClass::iet_plus, ElementClass::iet_plus_rc, ElementClass::paff,
                 ElementClass::finperm, ElementClass::homeo_plus}) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const RandomProfile prof{8, 96, c};
      const PwMap h = random_element(prof, seed);
      EXPECT_EQ(h, random_element(prof, seed));
      EXPECT_TRUE(belongs_to(h, c)) << to_string(c) << " seed " << seed;
      EXPECT_LE(h.piece_count(), 8u);
      EXPECT_NO_THROW(h.validate());
    }
  }
}

TEST(RandomElement, RightContinuousClassHasZeroSignature) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_EQ(signature(random_element({8, 96, ElementClass::iet_plus_rc}, seed)), SignBit(0));
  }
}

TEST(RandomElement, SinglePieceIetIsIdentityOrFullFlip) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PwMap h = random_element({1, 96, ElementClass::iet}, seed);
    EXPECT_TRUE(h.is_identity() || h == flip(Interval(0, 1))) << h;
  }
}

class GroupLaws : public ::testing::TestWithParam<ElementClass> {};

TEST_P(GroupLaws, HoldExactly) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RandomProfile prof{8, 96, GetParam()};
    const PwMap f = random_element(prof, 3 * seed), g = random_element(prof, 3 * seed + 1),
                h = random_element(prof, 3 * seed + 2);
    EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
    EXPECT_TRUE(compose(f, inverse(f)).is_identity());
    EXPECT_TRUE(compose(inverse(f), f).is_identity());
    EXPECT_EQ(compose(PwMap(), f), f);
    // canonicalization is idempotent: rebuilding from the stored data is a no-op
    std::vector<AffinePiece> raw(f.pieces());
    const auto images = f.point_images();
    std::vector<std::pair<RatPoint, RatPoint>> pts(images.begin(), images.end());
    EXPECT_EQ(build(raw, pts), f);
  }
}

INSTANTIATE_TEST_SUITE_P(Classes, GroupLaws,
                         ::testing::Values(ElementClass::iet, ElementClass::paff, ElementClass::finperm,
                                           ElementClass::homeo_plus));

TEST(EqualsModFin, IsACongruence) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PwMap f = random_element({6, 48, ElementClass::iet}, seed);
    const PwMap g = random_element({6, 48, ElementClass::paff}, seed + 1000);
    const PwMap t1 = random_element({6, 48, ElementClass::finperm}, seed + 2000);
    const PwMap t2 = random_element({6, 48, ElementClass::finperm}, seed + 3000);
    const PwMap f2 = compose(t1, f);
    const PwMap g2 = compose(g, t2);
    EXPECT_TRUE(equals_mod_fin(f, f2));
    EXPECT_TRUE(equals_mod_fin(f2, f));
    EXPECT_TRUE(equals_mod_fin(compose(f, g), compose(f2, g2)));
  }
}

}  // namespace
