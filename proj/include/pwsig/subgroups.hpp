#pragma once

#include "pwsig/decomposition.hpp"
#include "pwsig/pwmap.hpp"
#include "pwsig/signature.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwsig {

/// Smallest member of {1} ⊂ A_fin ⊂ {S_fin, Ker ε} ⊂ Ĝ containing an element.
enum class NormalLevel { trivial, a_fin, s_fin, ker_epsilon, full };

inline const char* to_string(NormalLevel level) {
  switch (level) {
    case NormalLevel::trivial: return "trivial";
    case NormalLevel::a_fin: return "A_fin";
    case NormalLevel::s_fin: return "S_fin";
    case NormalLevel::ker_epsilon: return "Ker_epsilon";
    case NormalLevel::full: return "full";
  }
  return "?";
}

inline NormalLevel classify_normal(const PwMap& h) {
  if (h.is_identity()) return NormalLevel::trivial;
  if (h.is_finitary()) {
    // Odd finite permutations have signature 1, so they never lie in Ker ε.
    return h.to_finperm().sign().is_odd() ? NormalLevel::s_fin : NormalLevel::a_fin;
  }
  return signature(h).is_odd() ? NormalLevel::full : NormalLevel::ker_epsilon;
}

namespace detail {

/// 1/4, 1/8, 1/16, ...
inline Rational dyadic_length(unsigned k) { return Rational(Integer(1), Integer(1) << (k + 2)); }

inline constexpr unsigned kMaxDyadicDepth = 40;

inline bool in_iet_plus_rc(const FeatureReport& fr) {
  return fr.right_continuous && fr.orientation == Orientation::all_preserving && fr.unit_slopes;
}

}  // namespace detail

struct SimplicityWitness {
  Interval i;
  PwMap h;
  /// Closure of g(i°).
  Interval image;
};

/// Interval i inside one affine piece of g with i and g(i°) disjoint and not
/// covering [0,1), together with the commutator g∘s_i∘g⁻¹∘s_i, which agrees
/// with s_{g(i)}∘s_i outside a finite set.
inline SimplicityWitness simplicity_witness(const PwMap& g) {
  if (g.is_finitary()) throw std::invalid_argument("simplicity_witness: element is finitely supported");
  const PwMap g_inv = inverse(g);
  for (unsigned depth = 0; depth < detail::kMaxDyadicDepth; ++depth) {
    const Rational len = detail::dyadic_length(depth);
    for (const auto& piece : g.pieces()) {
      if (piece.slope == 1 && piece.offset == 0) continue;
      for (Rational a = piece.source.left(); a + len <= piece.source.right(); a += len) {
        const Interval i(a, a + len);
        const Interval img = AffinePiece{i, piece.slope, piece.offset}.image();
        if (!i.disjoint(img) || i.length() + img.length() >= 1) continue;
        const PwMap s = flip(i);
        PwMap h = compose(g, compose(s, compose(g_inv, s)));
        if (!equals_mod_fin(h, compose(flip(img), s)) || signature(h).is_odd()) {
          throw std::logic_error("simplicity_witness: commutator failed self-check");
        }
        return SimplicityWitness{i, std::move(h), img};
      }
    }
  }
  throw std::logic_error("simplicity_witness: no admissible interval found");
}

namespace detail {

inline bool conjugate_leaves_rc(const PwMap& g, const PwMap& g_inv, const PwMap& f) {
  return !in_iet_plus_rc(classify_features(compose(g, compose(f, g_inv))));
}

}  // namespace detail

/// Right-continuous order-preserving f whose conjugate g∘f∘g⁻¹ is no longer
/// right-continuous and order-preserving. g must have unit slopes and lie
/// outside that subgroup.
inline PwMap normalizer_witness_rc(const PwMap& g) {
  detail::require_unit_slopes(g, "normalizer_witness_rc");
  const FeatureReport fr = classify_features(g);
  if (detail::in_iet_plus_rc(fr)) {
    throw std::invalid_argument("normalizer_witness_rc: element is right-continuous and order-preserving");
  }
  const PwMap g_inv = inverse(g);

  if (fr.orientation == Orientation::all_preserving) {
    // g = sigma ∘ g' with g' right-continuous; conjugating by g' stays inside
    // the subgroup, so work against sigma alone.
    const RSigmaF rsf = decompose_r_sigma_f(g);
    const std::vector<Rational> support = rsf.sigma.support();
    const PwMap rc_inv = inverse(rsf.f);
    for (unsigned depth = 0; depth < detail::kMaxDyadicDepth; ++depth) {
      const Rational len = detail::dyadic_length(depth);
      for (const auto& x : support) {
        if (x < len || x + len > 1) continue;
        const Interval left(x - len, x);
        bool clear = true;
        for (const auto& y : support) clear = clear && !left.contains(y);
        if (!clear) continue;
        PwMap f = compose(rc_inv, compose(swap_rc(left, Interval(x, x + len)), rsf.f));
        if (detail::conjugate_leaves_rc(g, g_inv, f)) return f;
      }
    }
  } else {
    // A swap of two consecutive blocks strictly inside a reversed piece: the
    // conjugate fixes the left endpoint of the image of the right block.
    for (unsigned depth = 0; depth < detail::kMaxDyadicDepth; ++depth) {
      const Rational len = detail::dyadic_length(depth);
      for (const auto& piece : g.pieces()) {
        if (!piece.reversing()) continue;
        for (Rational a = piece.source.left(); a + 2 * len < piece.source.right(); a += len) {
          PwMap f = swap_rc(Interval(a, a + len), Interval(a + len, a + 2 * len));
          if (detail::conjugate_leaves_rc(g, g_inv, f)) return f;
        }
      }
    }
  }
  throw std::logic_error("normalizer_witness_rc: no witness found");
}

/// Order-preserving unit-slope f, not finitely supported, exchanging a block
/// I of a reversed piece with a block J of a preserved piece (and a second
/// pair K, L of preserved blocks), so that g∘f∘g⁻¹ reverses order somewhere.
/// g must have unit slopes and mixed orientation.
inline PwMap normalizer_witness_orientation(const PwMap& g) {
  detail::require_unit_slopes(g, "normalizer_witness_orientation");
  if (classify_features(g).orientation != Orientation::mixed) {
    throw std::invalid_argument("normalizer_witness_orientation: element does not have mixed orientation");
  }
  const PwMap g_inv = inverse(g);
  for (unsigned depth = 0; depth < detail::kMaxDyadicDepth; ++depth) {
    const Rational len = detail::dyadic_length(depth);
    std::optional<Interval> reversed_block;
    std::vector<Interval> preserved_blocks;
    for (const auto& piece : g.pieces()) {
      const Integer count = boost::multiprecision::numerator(piece.source.length() / len) /
                            boost::multiprecision::denominator(piece.source.length() / len);
      if (count == 0) continue;
      if (piece.reversing()) {
        if (!reversed_block) {
          const Rational end = piece.source.left() + Rational(count) * len;
          reversed_block.emplace(end - len, end);
        }
      } else {
        for (Integer k = 0; k < count && preserved_blocks.size() < 3; ++k) {
          const Rational a = piece.source.left() + Rational(k) * len;
          preserved_blocks.emplace_back(a, a + len);
        }
      }
    }
    if (!reversed_block || preserved_blocks.size() < 3) continue;

    const Interval& i = *reversed_block;
    const Interval& j = preserved_blocks[0];
    const Interval& k = preserved_blocks[1];
    const Interval& l = preserved_blocks[2];
    std::vector<std::pair<Interval, Rational>> blocks{
        {i, j.left()}, {j, i.left()}, {k, l.left()}, {l, k.left()}};
    std::vector<Rational> cuts{0, 1};
    for (const Interval* b : {&i, &j, &k, &l}) {
      cuts.push_back(b->left());
      cuts.push_back(b->right());
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const Interval gap(cuts[c], cuts[c + 1]);
      bool inside = false;
      for (const Interval* b : {&i, &j, &k, &l}) inside = inside || b->contains(gap);
      if (!inside) blocks.emplace_back(gap, gap.left());
    }
    PwMap f = detail::block_map(std::move(blocks));
    const FeatureReport conj = classify_features(compose(g, compose(f, g_inv)));
    if (!f.is_finitary() && conj.orientation != Orientation::all_preserving) return f;
  }
  throw std::logic_error("normalizer_witness_orientation: no witness found");
}

}  // namespace pwsig
