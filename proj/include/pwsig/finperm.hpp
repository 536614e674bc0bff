#pragma once

#include "pwsig/rational.hpp"

#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pwsig {

/// Element of Z/2Z.
class SignBit {
 public:
  constexpr SignBit() = default;
  constexpr explicit SignBit(unsigned v) : odd_((v & 1U) != 0) {}

  constexpr unsigned value() const noexcept { return odd_ ? 1U : 0U; }
  constexpr bool is_odd() const noexcept { return odd_; }

  friend constexpr SignBit operator+(SignBit a, SignBit b) { return SignBit(a.value() ^ b.value()); }
  friend constexpr bool operator==(SignBit a, SignBit b) { return a.odd_ == b.odd_; }

  friend std::ostream& operator<<(std::ostream& os, SignBit s) { return os << s.value(); }

 private:
  bool odd_ = false;
};

/// Finitely supported permutation of [0,1). Only moved points are stored.
class FinPerm {
 public:
  using Map = std::map<Rational, Rational>;

  FinPerm() = default;

  /// Builds from (x, y) pairs meaning x -> y. The listed sources must be
  /// exactly the listed targets; fixed pairs are allowed and dropped.
  static FinPerm from_pairs(const std::vector<std::pair<RatPoint, RatPoint>>& pairs) {
    Map m;
    std::set<Rational> targets;
    for (const auto& [x, y] : pairs) {
      if (!m.emplace(x.value(), y.value()).second) {
        throw std::invalid_argument("point " + to_string(x) + " listed twice");
      }
      if (!targets.insert(y.value()).second) {
        throw std::invalid_argument("image " + to_string(y) + " listed twice");
      }
    }
    for (const auto& [x, y] : m) {
      if (!targets.count(x)) throw std::invalid_argument("not a permutation of its domain");
    }
    return FinPerm(std::move(m));
  }

  /// The cycle (p0 p1 ... pk): p0 -> p1 -> ... -> pk -> p0.
  static FinPerm cycle(const std::vector<RatPoint>& points) {
    std::vector<std::pair<RatPoint, RatPoint>> pairs;
    for (std::size_t k = 0; k < points.size(); ++k) {
      pairs.emplace_back(points[k], points[(k + 1) % points.size()]);
    }
    return from_pairs(pairs);
  }

  Rational operator()(const Rational& x) const {
    auto it = map_.find(x);
    return it == map_.end() ? x : it->second;
  }
  RatPoint operator()(const RatPoint& x) const { return RatPoint((*this)(x.value())); }

  const Map& moved() const noexcept { return map_; }
  std::vector<Rational> support() const {
    std::vector<Rational> s;
    for (const auto& kv : map_) s.push_back(kv.first);
    return s;
  }
  bool is_identity() const noexcept { return map_.empty(); }

  FinPerm inverse() const {
    Map m;
    for (const auto& [x, y] : map_) m.emplace(y, x);
    return FinPerm(std::move(m));
  }

  /// a ∘ b: apply b first.
  friend FinPerm compose(const FinPerm& a, const FinPerm& b) {
    std::set<Rational> dom;
    for (const auto& kv : a.map_) dom.insert(kv.first);
    for (const auto& kv : b.map_) dom.insert(kv.first);
    Map m;
    for (const auto& x : dom) {
      Rational y = a(b(x));
      if (y != x) m.emplace(x, std::move(y));
    }
    return FinPerm(std::move(m));
  }

  /// Cycle decompositions, each cycle starting at its smallest point.
  std::vector<std::vector<Rational>> cycles() const {
    std::vector<std::vector<Rational>> out;
    std::set<Rational> seen;
    for (const auto& [start, unused] : map_) {
      if (seen.count(start)) continue;
      std::vector<Rational> cyc;
      Rational x = start;
      do {
        seen.insert(x);
        cyc.push_back(x);
        x = (*this)(x);
      } while (x != start);
      out.push_back(std::move(cyc));
    }
    return out;
  }

  /// Classical signature: sum of (cycle length - 1) mod 2.
  SignBit sign() const {
    std::size_t transpositions = 0;
    for (const auto& c : cycles()) transpositions += c.size() - 1;
    return SignBit(static_cast<unsigned>(transpositions & 1U));
  }

  /// Signature by counting inversions of the permutation read on its sorted
  /// support. Independent of the cycle walk in sign().
  SignBit sign_by_inversions() const {
    std::vector<Rational> images;
    for (const auto& kv : map_) images.push_back(kv.second);
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      for (std::size_t j = i + 1; j < images.size(); ++j) {
        if (images[j] < images[i]) ++inversions;
      }
    }
    return SignBit(static_cast<unsigned>(inversions & 1U));
  }

  friend bool operator==(const FinPerm& a, const FinPerm& b) { return a.map_ == b.map_; }

  friend std::ostream& operator<<(std::ostream& os, const FinPerm& t) {
    if (t.is_identity()) return os << "id";
    for (const auto& c : t.cycles()) {
      os << '(';
      for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << to_string(c[k]);
      os << ')';
    }
    return os;
  }

 private:
  explicit FinPerm(Map m) {
    for (auto& [x, y] : m) {
      if (x != y) map_.emplace(x, std::move(y));
    }
  }

  Map map_;
};

inline SignBit finperm_sign(const FinPerm& t) { return t.sign(); }

}  // namespace pwsig
