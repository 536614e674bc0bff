#pragma once

#include "pwsig/finperm.hpp"
#include "pwsig/pwmap.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwsig {

enum class ElementClass { iet, iet_plus, iet_plus_rc, paff, finperm, homeo_plus };

inline const char* to_string(ElementClass c) {
  switch (c) {
    case ElementClass::iet: return "IET";
    case ElementClass::iet_plus: return "IET+";
    case ElementClass::iet_plus_rc: return "IET+rc";
    case ElementClass::paff: return "PAff";
    case ElementClass::finperm: return "FinPerm";
    case ElementClass::homeo_plus: return "Homeo+";
  }
  return "?";
}

struct RandomProfile {
  std::size_t max_pieces = 8;
  std::uint64_t denominator_bound = 96;
  ElementClass element_class = ElementClass::iet;
};

/// Whether h lies in the class a generator was asked for.
inline bool belongs_to(const PwMap& h, ElementClass c) {
  const FeatureReport fr = classify_features(h);
  switch (c) {
    case ElementClass::iet: return fr.unit_slopes;
    case ElementClass::iet_plus: return fr.unit_slopes && fr.orientation == Orientation::all_preserving;
    case ElementClass::iet_plus_rc:
      return fr.unit_slopes && fr.orientation == Orientation::all_preserving && fr.right_continuous;
    case ElementClass::paff: return true;
    case ElementClass::finperm: return fr.in_sfin;
    case ElementClass::homeo_plus: return fr.continuous && fr.orientation == Orientation::all_preserving;
  }
  return false;
}

namespace detail {

class ElementSampler {
 public:
  ElementSampler(const RandomProfile& profile, std::uint64_t seed) : profile_(profile), rng_(seed) {
    if (profile.max_pieces == 0 || profile.denominator_bound == 0) {
      throw std::invalid_argument("random profile needs max_pieces >= 1 and denominator_bound >= 1");
    }
  }

  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }
  bool coin() { return uniform(0, 1) == 1; }

  /// Piece count and grid denominator with count <= denominator.
  std::pair<std::size_t, std::uint64_t> shape() {
    const std::uint64_t cap = std::min<std::uint64_t>(profile_.max_pieces, profile_.denominator_bound);
    const std::size_t n = static_cast<std::size_t>(uniform(1, cap));
    return {n, uniform(std::max<std::uint64_t>(n, 1), profile_.denominator_bound)};
  }

  /// n sorted left endpoints on the grid (1/den)Z, starting at 0.
  std::vector<Rational> grid_partition(std::size_t n, std::uint64_t den) {
    std::vector<std::uint64_t> nums(den - 1);
    std::iota(nums.begin(), nums.end(), std::uint64_t{1});
    std::shuffle(nums.begin(), nums.end(), rng_);
    nums.resize(n - 1);
    std::sort(nums.begin(), nums.end());
    std::vector<Rational> lefts{Rational(0)};
    for (auto k : nums) lefts.push_back(make_rational(static_cast<long long>(k), static_cast<long long>(den)));
    return lefts;
  }

  static std::vector<Rational> lengths_of(const std::vector<Rational>& lefts) {
    std::vector<Rational> out;
    for (std::size_t k = 0; k < lefts.size(); ++k) {
      out.push_back((k + 1 < lefts.size() ? lefts[k + 1] : Rational(1)) - lefts[k]);
    }
    return out;
  }

  std::vector<std::size_t> shuffled(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    std::shuffle(v.begin(), v.end(), rng_);
    return v;
  }

  /// Random finite permutation of the given points.
  FinPerm permute(const std::vector<Rational>& points) {
    std::vector<Rational> targets = points;
    std::shuffle(targets.begin(), targets.end(), rng_);
    std::vector<std::pair<RatPoint, RatPoint>> pairs;
    for (std::size_t k = 0; k < points.size(); ++k) pairs.emplace_back(RatPoint(points[k]), RatPoint(targets[k]));
    return FinPerm::from_pairs(pairs);
  }

  PwMap interval_exchange(bool allow_reversal, bool right_continuous) {
    const auto [n, den] = shape();
    const auto lengths = lengths_of(grid_partition(n, den));
    std::vector<Sense> senses(n, Sense::preserve);
    if (allow_reversal) {
      for (auto& s : senses) s = coin() ? Sense::reverse : Sense::preserve;
    }
    PwMap base = iet_build(lengths, shuffled(n), senses);
    if (right_continuous) return base;
    std::vector<Rational> images;
    for (std::size_t k = 0; k < base.piece_count(); ++k) images.push_back(base.point_image(k));
    return compose(from_finperm(permute(images)), base);
  }

  PwMap finite_permutation() {
    const auto [n, den] = shape();
    std::vector<Rational> support = grid_partition(n, den);
    // Also move 0 half of the time.
    if (coin()) support.erase(support.begin());
    return from_finperm(permute(support));
  }

  PwMap affine(bool homeomorphism) {
    const auto [n, den] = shape();
    const std::uint64_t den2 = uniform(std::max<std::uint64_t>(n, 1), profile_.denominator_bound);
    const auto src = grid_partition(n, den);
    const auto dst_lefts = grid_partition(n, den2);
    const auto src_len = lengths_of(src);
    const auto dst_len = lengths_of(dst_lefts);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (!homeomorphism) order = shuffled(n);
    // order[k]: target block of source piece k.
    std::vector<AffinePiece> pieces;
    std::vector<Rational> images;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t t = order[k];
      const bool rev = !homeomorphism && coin();
      const Rational scale = dst_len[t] / src_len[k];
      const Interval source(src[k], src[k] + src_len[k]);
      if (rev) {
        pieces.push_back({source, -scale, dst_lefts[t] + dst_len[t] + scale * src[k]});
      } else {
        pieces.push_back({source, scale, dst_lefts[t] - scale * src[k]});
      }
      images.push_back(dst_lefts[t]);
    }
    std::vector<std::pair<RatPoint, RatPoint>> points;
    const FinPerm shuffle_points = homeomorphism ? FinPerm() : permute(images);
    for (std::size_t k = 0; k < n; ++k) {
      points.emplace_back(RatPoint(src[k]), RatPoint(shuffle_points(images[k])));
    }
    return PwMap::build(std::move(pieces), points);
  }

 private:
  RandomProfile profile_;
  std::mt19937_64 rng_;
};

}  // namespace detail

/// Deterministic in (profile, seed); the result satisfies belongs_to(·, class).
inline PwMap random_element(const RandomProfile& profile, std::uint64_t seed) {
  detail::ElementSampler s(profile, seed);
  switch (profile.element_class) {
    case ElementClass::iet: return s.interval_exchange(true, false);
    case ElementClass::iet_plus: return s.interval_exchange(false, false);
    case ElementClass::iet_plus_rc: return s.interval_exchange(false, true);
    case ElementClass::paff: return s.affine(false);
    case ElementClass::finperm: return s.finite_permutation();
    case ElementClass::homeo_plus: return s.affine(true);
  }
  throw std::invalid_argument("unknown element class");
}

/// Random refinement of p splitting one interval at a grid point.
inline Partition split_one(const Partition& p, std::uint64_t seed, std::uint64_t denominator_bound = 96) {
  std::mt19937_64 rng(seed);
  const std::size_t k = std::uniform_int_distribution<std::size_t>(0, p.size() - 1)(rng);
  const Interval i = p.interval(k);
  // i.left + i.length * m/den for 0 < m < den
  const auto den = static_cast<long long>(std::uniform_int_distribution<std::uint64_t>(2, std::max<std::uint64_t>(2, denominator_bound))(rng));
  const auto m = static_cast<long long>(std::uniform_int_distribution<long long>(1, den - 1)(rng));
  std::vector<Rational> lefts = p.left_endpoints();
  lefts.push_back(i.left() + i.length() * make_rational(m, den));
  return make_partition(lefts);
}

}  // namespace pwsig
