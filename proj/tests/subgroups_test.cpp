#include "pwsig/random.hpp"
#include "pwsig/subgroups.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace {

using namespace pwsig;
using namespace pwsig::test;

TEST(ClassifyNormal, CuratedExamples) {
  EXPECT_EQ(classify_normal(PwMap()), NormalLevel::trivial);
  EXPECT_EQ(classify_normal(from_finperm(FinPerm::cycle({pt(0), pt(1, 3), pt(2, 3)}))), NormalLevel::a_fin);
  EXPECT_EQ(classify_normal(from_finperm(FinPerm::cycle({pt(0), pt(1, 2)}))), NormalLevel::s_fin);
  EXPECT_EQ(classify_normal(r3()), NormalLevel::ker_epsilon);
  EXPECT_EQ(classify_normal(flip(Interval(q(1, 4), q(1, 2)))), NormalLevel::full);
  EXPECT_EQ(classify_normal(h3()), NormalLevel::full);
  EXPECT_EQ(classify_normal(half_swap()), NormalLevel::ker_epsilon);
}

TEST(ClassifyNormal, InvariantUnderInversion) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const ElementClass c = seed % 3 == 0 ? ElementClass::finperm : seed % 3 == 1 ? ElementClass::iet : ElementClass::paff;
    const PwMap h = random_element({8, 96, c}, seed);
    EXPECT_EQ(classify_normal(h), classify_normal(inverse(h)));
  }
}

TEST(ClassifyNormal, ClosureSpotChecks) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PwMap a = random_element({6, 24, ElementClass::finperm}, seed);
    PwMap b = random_element({6, 24, ElementClass::finperm}, seed + 777);
    if (classify_normal(a) == NormalLevel::s_fin) a = compose(a, from_finperm(FinPerm::cycle({pt(1, 97), pt(2, 97)})));
    if (classify_normal(b) == NormalLevel::s_fin) b = compose(b, from_finperm(FinPerm::cycle({pt(3, 97), pt(4, 97)})));
    EXPECT_LE(classify_normal(compose(a, b)), NormalLevel::s_fin);

    PwMap k1 = random_element({8, 96, ElementClass::iet}, seed);
    PwMap k2 = random_element({8, 96, ElementClass::paff}, seed);
    if (signature(k1).is_odd()) k1 = compose(flip(Interval(0, q(1, 9))), k1);
    if (signature(k2).is_odd()) k2 = compose(k2, flip(Interval(q(8, 9), 1)));
    const NormalLevel l = classify_normal(compose(k1, k2));
    EXPECT_TRUE(l == NormalLevel::trivial || l == NormalLevel::a_fin || l == NormalLevel::ker_epsilon);
  }
}

TEST(SimplicityWitness, Examples) {
  const SimplicityWitness a = simplicity_witness(r3());
  EXPECT_EQ(a.i, Interval(0, q(1, 4)));
  EXPECT_EQ(a.image, Interval(q(1, 3), q(7, 12)));
  EXPECT_TRUE(equals_mod_fin(a.h, compose(flip(Interval(q(1, 3), q(7, 12))), flip(Interval(0, q(1, 4))))));

  const SimplicityWitness b = simplicity_witness(half_swap());
  EXPECT_EQ(b.i, Interval(0, q(1, 4)));
  EXPECT_EQ(b.image, Interval(q(1, 2), q(3, 4)));
  EXPECT_TRUE(equals_mod_fin(b.h, compose(flip(b.image), flip(b.i))));

  const SimplicityWitness c = simplicity_witness(flip(Interval(0, 1)));
  EXPECT_EQ(c.i, Interval(0, q(1, 4)));
  EXPECT_EQ(c.image, Interval(q(3, 4), 1));
  EXPECT_TRUE(equals_mod_fin(c.h, compose(flip(c.image), flip(c.i))));

  EXPECT_THROW(simplicity_witness(from_finperm(FinPerm::cycle({pt(0), pt(1, 2)}))), std::invalid_argument);
}

TEST(SimplicityWitness, SmallRotation) {
  const PwMap g = build({{Interval(0, q(97, 98)), q(1), q(1, 98)}, {Interval(q(97, 98), 1), q(1), q(-97, 98)}},
                        {{pt(0), pt(1, 98)}, {pt(97, 98), pt(0)}});
  const SimplicityWitness w = simplicity_witness(g);
  EXPECT_TRUE(w.i.disjoint(w.image));
  EXPECT_LE(w.i.length(), q(1, 98));
  EXPECT_TRUE(equals_mod_fin(w.h, compose(flip(w.image), flip(w.i))));
  EXPECT_EQ(signature(w.h), SignBit(0));
}

TEST(SimplicityWitness, RandomElements) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const PwMap g = random_element({8, 96, seed % 2 ? ElementClass::paff : ElementClass::iet}, seed);
    if (g.is_finitary()) continue;
    const SimplicityWitness w = simplicity_witness(g);
    const std::size_t k = g.piece_index(w.i.left());
    EXPECT_LE(w.i.right(), g.piece(k).source.right());
    EXPECT_TRUE(w.i.disjoint(w.image));
    EXPECT_LT(w.i.length() + w.image.length(), q(1));
    EXPECT_TRUE(equals_mod_fin(w.h, compose(flip(w.image), flip(w.i))));
    EXPECT_EQ(signature(w.h), SignBit(0));
  }
}

bool leaves_rc(const PwMap& g, const PwMap& f) {
  const FeatureReport fr = classify_features(compose_all({g, f, inverse(g)}));
  return !fr.right_continuous || fr.orientation != Orientation::all_preserving;
}

TEST(NormalizerWitnessRc, Examples) {
  const PwMap t = from_finperm(FinPerm::cycle({pt(0), pt(1, 2)}));
  const PwMap f = normalizer_witness_rc(t);
  EXPECT_EQ(f, swap_rc(Interval(q(1, 4), q(1, 2)), Interval(q(1, 2), q(3, 4))));
  EXPECT_FALSE(classify_features(compose_all({t, f, inverse(t)})).right_continuous);

  const PwMap rev = flip(Interval(0, 1));
  const PwMap f2 = normalizer_witness_rc(rev);
  EXPECT_EQ(f2, swap_rc(Interval(0, q(1, 4)), Interval(q(1, 4), q(1, 2))));
  const PwMap conj = compose_all({rev, f2, inverse(rev)});
  // fixes the left endpoint 1/2 of the image of [1/4,1/2)
  EXPECT_EQ(conj(pt(1, 2)), pt(1, 2));
  EXPECT_TRUE(leaves_rc(rev, f2));

  EXPECT_TRUE(leaves_rc(h3(), normalizer_witness_rc(h3())));
  EXPECT_THROW(normalizer_witness_rc(half_swap()), std::invalid_argument);
}

TEST(NormalizerWitnessRc, RandomAdmissible) {
  std::size_t tried = 0;
  for (std::uint64_t seed = 0; tried < 40; ++seed) {
    const PwMap g = random_element({8, 96, seed % 2 ? ElementClass::iet_plus : ElementClass::iet}, seed);
    const FeatureReport fr = classify_features(g);
    if (fr.right_continuous && fr.orientation == Orientation::all_preserving) continue;
    ++tried;
    const PwMap f = normalizer_witness_rc(g);
    const FeatureReport ff = classify_features(f);
    EXPECT_TRUE(ff.right_continuous && ff.orientation == Orientation::all_preserving && ff.unit_slopes);
    EXPECT_TRUE(leaves_rc(g, f)) << "seed " << seed;
  }
}

TEST(NormalizerWitnessOrientation, Examples) {
  const PwMap g = flip(Interval(0, q(1, 2)));
  const PwMap f = normalizer_witness_orientation(g);
  for (const auto& [x, y] : std::vector<std::pair<Rational, Rational>>{
           {q(3, 8), q(1, 2)}, {q(1, 2), q(3, 8)}, {q(5, 8), q(3, 4)}, {q(3, 4), q(5, 8)}, {q(7, 8), q(7, 8)}, {q(0), q(0)}}) {
    EXPECT_EQ(f(x), y) << to_string(x);
  }
  EXPECT_EQ(f.piece_count(), 6u);
  EXPECT_NE(classify_features(compose_all({g, f, inverse(g)})).orientation, Orientation::all_preserving);

  EXPECT_THROW(normalizer_witness_orientation(r3()), std::invalid_argument);
  EXPECT_THROW(normalizer_witness_orientation(flip(Interval(0, 1))), std::invalid_argument);
}

TEST(NormalizerWitnessOrientation, RandomMixed) {
  std::size_t tried = 0;
  for (std::uint64_t seed = 0; tried < 40; ++seed) {
    const PwMap g = random_element({8, 96, ElementClass::iet}, seed);
    if (classify_features(g).orientation != Orientation::mixed) continue;
    ++tried;
    const PwMap f = normalizer_witness_orientation(g);
    const FeatureReport ff = classify_features(f);
    EXPECT_EQ(ff.orientation, Orientation::all_preserving);
    EXPECT_TRUE(ff.unit_slopes);
    EXPECT_FALSE(ff.in_sfin);
    EXPECT_NE(classify_features(compose_all({g, f, inverse(g)})).orientation, Orientation::all_preserving);
  }
}

}  // namespace
