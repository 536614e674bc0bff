#pragma once

#include "pwsig/finperm.hpp"
#include "pwsig/partition.hpp"
#include "pwsig/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pwsig {

/// Thrown when piece data does not describe a bijection of [0,1).
class invalid_element : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// x -> slope*x + offset on the interior of `source`.
struct AffinePiece {
  Interval source;
  Rational slope;
  Rational offset;

  Rational at(const Rational& x) const { return slope * x + offset; }
  bool reversing() const { return slope < 0; }

  /// Closure of the image of the interior, as a half-open interval.
  Interval image() const {
    Rational a = at(source.left());
    Rational b = at(source.right());
    if (b < a) std::swap(a, b);
    return Interval(std::move(a), std::move(b));
  }

  friend bool operator==(const AffinePiece& a, const AffinePiece& b) {
    return a.source == b.source && a.slope == b.slope && a.offset == b.offset;
  }
};

enum class Orientation { all_preserving, all_reversing, mixed };

inline const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::all_preserving: return "all-preserving";
    case Orientation::all_reversing: return "all-reversing";
    case Orientation::mixed: return "mixed";
  }
  return "?";
}

struct FeatureReport {
  bool in_sfin = false;
  bool right_continuous = false;
  bool continuous = false;
  Orientation orientation = Orientation::all_preserving;
  bool unit_slopes = false;
  std::size_t piece_count = 0;
};

/// Piecewise-affine bijection of [0,1) with finitely many pieces and rational
/// data. Each piece carries its affine action on the interior and the image of
/// its left endpoint. The canonical form never holds two adjacent pieces that
/// share their affine data and agree at the shared endpoint.
class PwMap {
 public:
  /// Identity map.
  PwMap() : pieces_{AffinePiece{Interval(0, 1), Rational(1), Rational(0)}}, point_images_{Rational(0)} {}

  /// Validating constructor. Pieces may come in any order; their sources must
  /// tile [0,1) and every left endpoint needs exactly one point image.
  static PwMap build(std::vector<AffinePiece> pieces,
                     const std::vector<std::pair<RatPoint, RatPoint>>& point_images) {
    if (pieces.empty()) throw invalid_element("no pieces");
    std::sort(pieces.begin(), pieces.end(),
              [](const AffinePiece& a, const AffinePiece& b) { return a.source < b.source; });
    if (pieces.front().source.left() != 0) throw invalid_element("pieces do not start at 0");
    for (std::size_t k = 0; k + 1 < pieces.size(); ++k) {
      if (pieces[k].source.right() != pieces[k + 1].source.left()) {
        throw invalid_element("piece sources do not tile [0,1) near " + to_string(pieces[k].source.right()));
      }
    }
    if (pieces.back().source.right() != 1) throw invalid_element("pieces do not end at 1");

    std::map<Rational, Rational> points;
    for (const auto& [x, y] : point_images) {
      if (!points.emplace(x.value(), y.value()).second) {
        throw invalid_element("duplicate point image for " + to_string(x));
      }
    }
    std::vector<Rational> images;
    images.reserve(pieces.size());
    for (const auto& p : pieces) {
      auto it = points.find(p.source.left());
      if (it == points.end()) {
        throw invalid_element("missing point image for left endpoint " + to_string(p.source.left()));
      }
      images.push_back(it->second);
      points.erase(it);
    }
    if (!points.empty()) {
      throw invalid_element("point image given for " + to_string(points.begin()->first) +
                            ", which is not a piece left endpoint");
    }
    PwMap h(std::move(pieces), std::move(images));
    h.validate();
    h.canonicalize();
    return h;
  }

  const std::vector<AffinePiece>& pieces() const noexcept { return pieces_; }
  std::size_t piece_count() const noexcept { return pieces_.size(); }
  const AffinePiece& piece(std::size_t k) const { return pieces_.at(k); }
  /// h(left endpoint of piece k).
  const Rational& point_image(std::size_t k) const { return point_images_.at(k); }

  std::map<RatPoint, RatPoint> point_images() const {
    std::map<RatPoint, RatPoint> m;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
      m.emplace(RatPoint(pieces_[k].source.left()), RatPoint(point_images_[k]));
    }
    return m;
  }

  /// Index of the piece whose source contains x.
  std::size_t piece_index(const Rational& x) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Rational& v, const AffinePiece& p) { return v < p.source.left(); });
    if (it == pieces_.begin() || x >= 1) throw std::out_of_range("point " + to_string(x) + " outside [0,1)");
    return static_cast<std::size_t>(std::distance(pieces_.begin(), it)) - 1;
  }

  Rational operator()(const Rational& x) const {
    const std::size_t k = piece_index(x);
    if (pieces_[k].source.left() == x) return point_images_[k];
    return pieces_[k].at(x);
  }
  RatPoint operator()(const RatPoint& x) const { return RatPoint((*this)(x.value())); }

  /// lim h(y) as y -> x from the right.
  Rational right_limit(const Rational& x) const { return pieces_[piece_index(x)].at(x); }

  /// lim h(y) as y -> x from the left, for 0 < x <= 1.
  Rational left_limit(const Rational& x) const {
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                               [](const AffinePiece& p, const Rational& v) { return p.source.right() < v; });
    return it->at(x);
  }

  /// Breakpoints of the canonical pieces: the coarsest partition on whose
  /// intervals h is affine.
  Partition affine_partition() const {
    std::vector<Rational> lefts;
    for (const auto& p : pieces_) lefts.push_back(p.source.left());
    return make_partition(lefts);
  }

  bool continuous_at(std::size_t k) const {
    const Rational& x = pieces_[k].source.left();
    if (k == 0) return point_images_[0] == pieces_[0].at(x);
    return pieces_[k - 1].at(x) == point_images_[k] && pieces_[k].at(x) == point_images_[k];
  }

  bool is_identity() const {
    return pieces_.size() == 1 && pieces_[0].slope == 1 && pieces_[0].offset == 0 && point_images_[0] == 0;
  }

  /// Identity outside a finite set.
  bool is_finitary() const {
    return std::all_of(pieces_.begin(), pieces_.end(),
                       [](const AffinePiece& p) { return p.slope == 1 && p.offset == 0; });
  }

  FinPerm to_finperm() const {
    if (!is_finitary()) throw std::invalid_argument("element is not finitely supported");
    std::vector<std::pair<RatPoint, RatPoint>> pairs;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
      pairs.emplace_back(RatPoint(pieces_[k].source.left()), RatPoint(point_images_[k]));
    }
    return FinPerm::from_pairs(pairs);
  }

  /// Re-checks bijectivity; throws invalid_element on failure.
  void validate() const {
    std::vector<Interval> images;
    images.reserve(pieces_.size());
    for (const auto& p : pieces_) {
      if (p.slope == 0) throw invalid_element("zero slope on " + to_string(p.source));
      Rational a = p.at(p.source.left());
      Rational b = p.at(p.source.right());
      if (b < a) std::swap(a, b);
      if (a < 0 || b > 1) throw invalid_element("image of " + to_string(p.source) + " leaves [0,1)");
      images.emplace_back(std::move(a), std::move(b));
    }
    std::sort(images.begin(), images.end());
    for (std::size_t k = 0; k < images.size(); ++k) {
      const Rational expected = k == 0 ? Rational(0) : images[k - 1].right();
      if (images[k].left() != expected) {
        throw invalid_element("interior images overlap or leave a gap near " + to_string(expected));
      }
    }
    if (images.back().right() != 1) throw invalid_element("interior images do not cover [0,1)");
    std::vector<Rational> lows;
    for (const auto& i : images) lows.push_back(i.left());
    std::vector<Rational> pts = point_images_;
    std::sort(pts.begin(), pts.end());
    if (pts != lows) {
      throw invalid_element("point images are not exactly the points missed by the interior images");
    }
  }

  friend bool operator==(const PwMap& f, const PwMap& g) {
    return f.pieces_ == g.pieces_ && f.point_images_ == g.point_images_;
  }

  friend std::ostream& operator<<(std::ostream& os, const PwMap& h) {
    for (std::size_t k = 0; k < h.pieces_.size(); ++k) {
      const auto& p = h.pieces_[k];
      os << (k ? "; " : "") << p.source << " x*" << to_string(p.slope) << "+" << to_string(p.offset)
         << " @" << to_string(p.source.left()) << "->" << to_string(h.point_images_[k]);
    }
    return os;
  }

  /// Trusted constructor for data already known to be bijective; only
  /// canonicalizes.
  static PwMap from_valid_pieces(std::vector<AffinePiece> pieces, std::vector<Rational> point_images) {
    PwMap h(std::move(pieces), std::move(point_images));
    h.canonicalize();
    return h;
  }

 private:
  PwMap(std::vector<AffinePiece> pieces, std::vector<Rational> images)
      : pieces_(std::move(pieces)), point_images_(std::move(images)) {}

  void canonicalize() {
    std::vector<AffinePiece> pieces;
    std::vector<Rational> images;
    pieces.push_back(pieces_[0]);
    images.push_back(point_images_[0]);
    for (std::size_t k = 1; k < pieces_.size(); ++k) {
      AffinePiece& last = pieces.back();
      const AffinePiece& next = pieces_[k];
      if (last.slope == next.slope && last.offset == next.offset &&
          point_images_[k] == next.at(next.source.left())) {
        last.source = Interval(last.source.left(), next.source.right());
      } else {
        pieces.push_back(next);
        images.push_back(point_images_[k]);
      }
    }
    pieces_ = std::move(pieces);
    point_images_ = std::move(images);
  }

  std::vector<AffinePiece> pieces_;
  std::vector<Rational> point_images_;
};

inline PwMap identity_map() { return PwMap(); }

inline PwMap build(std::vector<AffinePiece> pieces,
                   const std::vector<std::pair<RatPoint, RatPoint>>& point_images) {
  return PwMap::build(std::move(pieces), point_images);
}

inline RatPoint apply(const PwMap& h, const RatPoint& x) { return h(x); }

/// P_h^min: breaks exactly where h fails to be continuous. Every partition on
/// whose interiors h is continuous refines it. Coarser than affine_partition()
/// when h has continuous kinks.
inline Partition minimal_partition(const PwMap& h) {
  std::vector<Rational> lefts;
  for (std::size_t k = 1; k < h.piece_count(); ++k) {
    if (!h.continuous_at(k)) lefts.push_back(h.piece(k).source.left());
  }
  return make_partition(lefts);
}

/// Whether p belongs to Π_h.
inline bool is_associated(const PwMap& h, const Partition& p) {
  return is_refinement(p, minimal_partition(h));
}

namespace detail {

inline void require_associated(const PwMap& h, const Partition& p, const char* what) {
  if (!is_associated(h, p)) {
    throw std::invalid_argument(std::string(what) + ": partition is not associated with the element");
  }
}

/// Closure of h(I°) for an interval on whose interior h is continuous.
inline Interval interior_image(const PwMap& h, const Interval& i) {
  Rational a = h.right_limit(i.left());
  Rational b = h.left_limit(i.right());
  if (b < a) std::swap(a, b);
  return Interval(std::move(a), std::move(b));
}

inline bool reversing_on(const PwMap& h, const Interval& i) {
  return h.piece(h.piece_index(i.left())).reversing();
}

}  // namespace detail

/// Partition whose interiors are the images h(I°), I in p. Requires p in Π_h.
inline Partition arrival_partition(const PwMap& h, const Partition& p) {
  detail::require_associated(h, p, "arrival_partition");
  std::vector<Rational> lefts;
  for (const auto& i : p.intervals()) lefts.push_back(detail::interior_image(h, i).left());
  return make_partition(lefts);
}

/// f ∘ g.
inline PwMap compose(const PwMap& f, const PwMap& g) {
  std::set<Rational> cuts;
  for (const auto& gp : g.pieces()) {
    cuts.insert(gp.source.left());
    const Interval img = gp.image();
    for (const auto& fp : f.pieces()) {
      const Rational& y = fp.source.left();
      if (img.interior_contains(y)) cuts.insert((y - gp.offset) / gp.slope);
    }
  }
  std::vector<Rational> lefts(cuts.begin(), cuts.end());
  std::vector<AffinePiece> pieces;
  std::vector<Rational> images;
  pieces.reserve(lefts.size());
  for (std::size_t k = 0; k < lefts.size(); ++k) {
    const Rational right = k + 1 < lefts.size() ? lefts[k + 1] : Rational(1);
    const AffinePiece& gp = g.piece(g.piece_index(lefts[k]));
    const AffinePiece& fp = f.piece(f.piece_index(gp.at((lefts[k] + right) / 2)));
    pieces.push_back(AffinePiece{Interval(lefts[k], right), fp.slope * gp.slope, fp.slope * gp.offset + fp.offset});
    images.push_back(f(g(lefts[k])));
  }
  return PwMap::from_valid_pieces(std::move(pieces), std::move(images));
}

/// Left-to-right product: compose(maps[0], compose(maps[1], ...)).
inline PwMap compose_all(const std::vector<PwMap>& maps) {
  PwMap out;
  for (auto it = maps.rbegin(); it != maps.rend(); ++it) out = compose(*it, out);
  return out;
}

inline PwMap inverse(const PwMap& h) {
  std::map<Rational, AffinePiece> by_image;
  std::map<Rational, Rational> preimage;
  for (std::size_t k = 0; k < h.piece_count(); ++k) {
    const AffinePiece& p = h.piece(k);
    preimage.emplace(h.point_image(k), p.source.left());
    Interval img = p.image();
    Rational low = img.left();
    by_image.emplace(std::move(low), AffinePiece{std::move(img), 1 / p.slope, -p.offset / p.slope});
  }
  std::vector<AffinePiece> pieces;
  std::vector<Rational> images;
  for (auto& [low, piece] : by_image) {
    pieces.push_back(piece);
    images.push_back(preimage.at(low));
  }
  return PwMap::from_valid_pieces(std::move(pieces), std::move(images));
}

inline bool equals(const PwMap& f, const PwMap& g) { return f == g; }

/// Equality in the quotient by finitely supported permutations.
inline bool equals_mod_fin(const PwMap& f, const PwMap& g) {
  return compose(f, inverse(g)).is_finitary();
}

inline PwMap power(const PwMap& h, std::size_t n) {
  PwMap out;
  for (std::size_t k = 0; k < n; ++k) out = compose(h, out);
  return out;
}

// --- constructors -----------------------------------------------------------

/// The I-flip: slope -1 on the interior of i, identity elsewhere, endpoints fixed.
inline PwMap flip(const Interval& i) {
  std::vector<AffinePiece> pieces;
  std::vector<Rational> images;
  if (i.left() > 0) {
    pieces.push_back({Interval(0, i.left()), 1, 0});
    images.push_back(0);
  }
  pieces.push_back({i, -1, i.left() + i.right()});
  images.push_back(i.left());
  if (i.right() < 1) {
    pieces.push_back({Interval(i.right(), 1), 1, 0});
    images.push_back(i.right());
  }
  return PwMap::from_valid_pieces(std::move(pieces), std::move(images));
}

/// Right-continuous exchange of two consecutive blocks i = [a,b), j = [b,c).
inline PwMap swap_rc(const Interval& i, const Interval& j) {
  if (i.right() != j.left()) throw std::invalid_argument("swap_rc: intervals are not consecutive");
  const Rational& a = i.left();
  const Rational& c = j.right();
  std::vector<AffinePiece> pieces;
  std::vector<Rational> images;
  if (a > 0) {
    pieces.push_back({Interval(0, a), 1, 0});
    images.push_back(0);
  }
  pieces.push_back({i, 1, j.length()});
  images.push_back(a + j.length());
  pieces.push_back({j, 1, -i.length()});
  images.push_back(a);
  if (c < 1) {
    pieces.push_back({Interval(c, 1), 1, 0});
    images.push_back(c);
  }
  return PwMap::from_valid_pieces(std::move(pieces), std::move(images));
}

inline PwMap from_finperm(const FinPerm& t) {
  std::vector<Rational> lefts{Rational(0)};
  for (const auto& x : t.support()) {
    if (x != 0) lefts.push_back(x);
  }
  std::vector<AffinePiece> pieces;
  std::vector<Rational> images;
  for (std::size_t k = 0; k < lefts.size(); ++k) {
    const Rational right = k + 1 < lefts.size() ? lefts[k + 1] : Rational(1);
    pieces.push_back({Interval(lefts[k], right), 1, 0});
    images.push_back(t(lefts[k]));
  }
  return PwMap::from_valid_pieces(std::move(pieces), std::move(images));
}

enum class Sense { preserve, reverse };

/// Interval exchange with flips. Source pieces have the given lengths in
/// order; arrangement[k] is the (0-based) source piece placed k-th from the
/// left in the image. Each left endpoint goes to the left endpoint of its
/// image block, also on reversed pieces.
inline PwMap iet_build(const std::vector<Rational>& lengths, const std::vector<std::size_t>& arrangement,
                       const std::vector<Sense>& senses) {
  const std::size_t n = lengths.size();
  if (n == 0 || arrangement.size() != n || senses.size() != n) {
    throw std::invalid_argument("iet_build: lengths, arrangement and orientations differ in size");
  }
  Rational total = 0;
  for (const auto& l : lengths) {
    if (l <= 0) throw std::invalid_argument("iet_build: non-positive length");
    total += l;
  }
  if (total != 1) throw std::invalid_argument("iet_build: lengths sum to " + to_string(total) + ", not 1");
  std::vector<std::size_t> check = arrangement;
  std::sort(check.begin(), check.end());
  for (std::size_t k = 0; k < n; ++k) {
    if (check[k] != k) throw std::invalid_argument("iet_build: arrangement is not a permutation");
  }
  std::vector<Rational> target_left(n);
  Rational pos = 0;
  for (std::size_t k = 0; k < n; ++k) {
    target_left[arrangement[k]] = pos;
    pos += lengths[arrangement[k]];
  }
  std::vector<AffinePiece> pieces;
  std::vector<Rational> images;
  Rational left = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Rational right = left + lengths[k];
    if (senses[k] == Sense::preserve) {
      pieces.push_back({Interval(left, right), 1, target_left[k] - left});
    } else {
      pieces.push_back({Interval(left, right), -1, target_left[k] + lengths[k] + left});
    }
    images.push_back(target_left[k]);
    left = right;
  }
  return PwMap::from_valid_pieces(std::move(pieces), std::move(images));
}

inline FeatureReport classify_features(const PwMap& h) {
  FeatureReport r;
  r.piece_count = h.piece_count();
  r.in_sfin = h.is_finitary();
  r.right_continuous = true;
  r.unit_slopes = true;
  bool any_pres = false;
  bool any_rev = false;
  for (std::size_t k = 0; k < h.piece_count(); ++k) {
    const AffinePiece& p = h.piece(k);
    if (h.point_image(k) != p.at(p.source.left())) r.right_continuous = false;
    if (p.slope != 1 && p.slope != -1) r.unit_slopes = false;
    (p.reversing() ? any_rev : any_pres) = true;
  }
  r.orientation = any_rev ? (any_pres ? Orientation::mixed : Orientation::all_reversing)
                          : Orientation::all_preserving;
  r.continuous = r.right_continuous && minimal_partition(h).size() == 1;
  return r;
}

/// Least n <= nmax with h^n = id, or nullopt.
inline std::optional<std::size_t> element_order_upto(const PwMap& h, std::size_t nmax) {
  PwMap p = h;
  for (std::size_t n = 1; n <= nmax; ++n) {
    if (p.is_identity()) return n;
    p = compose(h, p);
  }
  return std::nullopt;
}

}  // namespace pwsig
