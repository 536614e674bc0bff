#pragma once

#include "pwsig/finperm.hpp"
#include "pwsig/partition.hpp"
#include "pwsig/pwmap.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pwsig {

/// Product flip(r[0]) ∘ flip(r[1]) ∘ ... of interval flips.
inline PwMap product_of_flips(const std::vector<Interval>& intervals) {
  PwMap out;
  for (auto it = intervals.rbegin(); it != intervals.rend(); ++it) out = compose(flip(*it), out);
  return out;
}

/// h = (product of flips over r) ∘ sigma ∘ f, with f right-continuous and
/// order-preserving with unit slopes.
struct RSigmaF {
  std::vector<Interval> r;
  FinPerm sigma;
  PwMap f;

  PwMap reconstruct() const { return compose(product_of_flips(r), compose(from_finperm(sigma), f)); }
};

/// h = g ∘ tau ∘ (product of flips over s), g right-continuous order-preserving.
struct GTauS {
  PwMap g;
  FinPerm tau;
  std::vector<Interval> s;

  PwMap reconstruct() const { return compose(g, compose(from_finperm(tau), product_of_flips(s))); }
};

/// h = f ∘ phi with f of unit slopes and phi a piecewise-affine increasing
/// homeomorphism.
struct HomeoSplit {
  PwMap f;
  PwMap phi;

  PwMap reconstruct() const { return compose(f, phi); }
};

/// Flips whose product agrees with the input up to the finite permutation
/// `residual`: product(flips) = input ∘ residual⁻¹.
struct FlipWord {
  std::vector<Interval> flips;
  FinPerm residual;
};

using SwapPair = std::pair<Interval, Interval>;

namespace detail {

inline void require_unit_slopes(const PwMap& h, const char* what) {
  for (const auto& p : h.pieces()) {
    if (p.slope != 1 && p.slope != -1) {
      throw std::invalid_argument(std::string(what) + ": element has a piece of slope " + to_string(p.slope));
    }
  }
}

/// Right-continuous order-preserving map translating each source block to
/// the block starting at its target. Blocks must tile [0,1) and so must
/// their targets.
inline PwMap block_map(std::vector<std::pair<Interval, Rational>> blocks) {
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<AffinePiece> pieces;
  std::vector<std::pair<RatPoint, RatPoint>> points;
  for (const auto& [src, target] : blocks) {
    pieces.push_back({src, 1, target - src.left()});
    points.emplace_back(RatPoint(src.left()), RatPoint(target));
  }
  return PwMap::build(std::move(pieces), points);
}

}  // namespace detail

inline RSigmaF decompose_r_sigma_f(const PwMap& h) {
  detail::require_unit_slopes(h, "decompose_r_sigma_f");
  const Partition p = minimal_partition(h);
  RSigmaF out;
  for (const auto& i : p.intervals()) {
    if (detail::reversing_on(h, i)) out.r.push_back(detail::interior_image(h, i));
  }
  // Flips of r are disjoint involutions, so the product is its own inverse.
  const PwMap g = compose(product_of_flips(out.r), h);
  std::vector<std::pair<RatPoint, RatPoint>> pairs;
  for (const auto& i : p.intervals()) {
    pairs.emplace_back(RatPoint(g.right_limit(i.left())), RatPoint(g(i.left())));
  }
  out.sigma = FinPerm::from_pairs(pairs);
  out.f = compose(from_finperm(out.sigma.inverse()), g);
  return out;
}

inline GTauS decompose_g_tau_s(const PwMap& h) {
  detail::require_unit_slopes(h, "decompose_g_tau_s");
  RSigmaF inv = decompose_r_sigma_f(inverse(h));
  return GTauS{inverse(inv.f), inv.sigma.inverse(), std::vector<Interval>(inv.r.rbegin(), inv.r.rend())};
}

inline HomeoSplit normalize_to_iet(const PwMap& h) {
  std::vector<AffinePiece> pieces;
  std::vector<std::pair<RatPoint, RatPoint>> points;
  Rational cumulative = 0;
  for (const auto& p : h.pieces()) {
    const Rational scale = abs(p.slope);
    pieces.push_back({p.source, scale, cumulative - scale * p.source.left()});
    points.emplace_back(RatPoint(p.source.left()), RatPoint(cumulative));
    cumulative += scale * p.source.length();
  }
  PwMap phi = PwMap::build(std::move(pieces), points);
  PwMap f = compose(h, inverse(phi));
  return HomeoSplit{std::move(f), std::move(phi)};
}

/// Adjacent block swaps whose product, leftmost factor applied last, is f.
/// Selection sort: the block destined for the leftmost unsorted position is
/// brought there by one swap with the run in front of it.
inline std::vector<SwapPair> swaps_factorization(const PwMap& f) {
  const FeatureReport fr = classify_features(f);
  if (!fr.right_continuous || fr.orientation != Orientation::all_preserving || !fr.unit_slopes) {
    throw std::invalid_argument("swaps_factorization: element is not a right-continuous interval exchange");
  }
  // Image layout, as source piece indices in left-to-right order.
  std::vector<std::size_t> layout(f.piece_count());
  std::iota(layout.begin(), layout.end(), std::size_t{0});
  std::sort(layout.begin(), layout.end(), [&](std::size_t a, std::size_t b) {
    return f.point_image(a) < f.point_image(b);
  });
  // Build the layout from the identity arrangement by post-composing swaps.
  std::vector<std::size_t> cur(layout.size());
  std::iota(cur.begin(), cur.end(), std::size_t{0});
  std::vector<SwapPair> word;
  Rational start = 0;
  for (std::size_t k = 0; k < layout.size(); ++k) {
    const auto first = cur.begin() + static_cast<std::ptrdiff_t>(k);
    const auto it = std::find(first, cur.end(), layout[k]);
    const Rational len = f.piece(layout[k]).source.length();
    if (it != first) {
      Rational run = 0;
      for (auto jt = first; jt != it; ++jt) run += f.piece(*jt).source.length();
      word.emplace_back(Interval(start, start + run), Interval(start + run, start + run + len));
      std::rotate(first, it, it + 1);
    }
    start += len;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

inline PwMap product_of_swaps(const std::vector<SwapPair>& word) {
  PwMap out;
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = compose(swap_rc(it->first, it->second), out);
  return out;
}

inline FlipWord flips_factorization(const PwMap& h) {
  detail::require_unit_slopes(h, "flips_factorization");
  const RSigmaF rsf = decompose_r_sigma_f(h);
  FlipWord out;
  out.flips = rsf.r;
  for (const auto& [i, j] : swaps_factorization(rsf.f)) {
    // R_{I,J} = flip(J') ∘ flip(I') ∘ flip(I ∪ J), J' and I' the image blocks.
    const Rational mid = i.left() + j.length();
    out.flips.emplace_back(i.left(), mid);
    out.flips.emplace_back(mid, j.right());
    out.flips.emplace_back(i.left(), j.right());
  }
  const PwMap product = product_of_flips(out.flips);
  out.residual = compose(inverse(product), h).to_finperm();
  return out;
}

struct TwoFlipConjugation {
  PwMap c;
  Interval k;
};

/// Order-preserving unit-slope c and k = [0, |i|+|j|) with
/// c ∘ flip(i) ∘ flip(j) ∘ c⁻¹ equal to flip(k) up to a finite set.
inline TwoFlipConjugation conjugate_two_flips_to_one(const Interval& i, const Interval& j) {
  if (!i.disjoint(j)) throw std::invalid_argument("conjugate_two_flips_to_one: intervals overlap");
  const Rational hi = i.length() / 2;
  const Rational hj = j.length() / 2;
  const Rational total = i.length() + j.length();
  // Halves of i go to the outer ends of k, halves of j to its middle; flip(k)
  // pairs them the same way flip(i) and flip(j) do.
  std::vector<std::pair<Interval, Rational>> blocks{
      {Interval(i.left(), i.left() + hi), Rational(0)},
      {Interval(i.left() + hi, i.right()), total - hi},
      {Interval(j.left(), j.left() + hj), hi},
      {Interval(j.left() + hj, j.right()), hi + hj},
  };
  std::vector<Rational> cuts{0, 1, i.left(), i.right(), j.left(), j.right()};
  std::sort(cuts.begin(), cuts.end());
  Rational target = total;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Rational& a = cuts[k];
    const Rational& b = cuts[k + 1];
    if (a == b || i.interior_contains((a + b) / 2) || j.interior_contains((a + b) / 2)) continue;
    blocks.emplace_back(Interval(a, b), target);
    target += b - a;
  }
  TwoFlipConjugation out{detail::block_map(std::move(blocks)), Interval(0, total)};
  const PwMap conj = compose_all({out.c, flip(i), flip(j), inverse(out.c)});
  if (!equals_mod_fin(conj, flip(out.k))) {
    throw std::logic_error("conjugate_two_flips_to_one: construction failed self-check");
  }
  return out;
}

}  // namespace pwsig
