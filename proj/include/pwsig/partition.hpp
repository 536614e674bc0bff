#pragma once

#include "pwsig/rational.hpp"

#include <algorithm>
#include <iterator>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwsig {

/// Half-open interval [left, right) with 0 <= left < right <= 1. Its interior
/// is (left, right), also when left = 0.
class Interval {
 public:
  Interval(Rational left, Rational right) : left_(std::move(left)), right_(std::move(right)) {
    if (left_ < 0 || right_ > 1 || !(left_ < right_)) {
      throw std::invalid_argument("bad interval [" + to_string(left_) + "," + to_string(right_) + ")");
    }
  }

  const Rational& left() const noexcept { return left_; }
  const Rational& right() const noexcept { return right_; }
  RatPoint left_point() const { return RatPoint(left_); }
  Rational length() const { return right_ - left_; }
  Rational midpoint() const { return (left_ + right_) / 2; }

  bool contains(const Rational& x) const { return left_ <= x && x < right_; }
  bool interior_contains(const Rational& x) const { return left_ < x && x < right_; }
  bool contains(const Interval& other) const {
    return left_ <= other.left_ && other.right_ <= right_;
  }
  /// True when the interiors are disjoint.
  bool disjoint(const Interval& other) const {
    return right_ <= other.left_ || other.right_ <= left_;
  }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.left_ == b.left_ && a.right_ == b.right_;
  }
  friend bool operator<(const Interval& a, const Interval& b) {
    return a.left_ < b.left_ || (a.left_ == b.left_ && a.right_ < b.right_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Interval& i) {
    return os << '[' << to_string(i.left_) << ',' << to_string(i.right_) << ')';
  }

 private:
  Rational left_;
  Rational right_;
};

inline std::string to_string(const Interval& i) {
  return "[" + to_string(i.left()) + "," + to_string(i.right()) + ")";
}

/// Finite ordered tiling of [0,1) by half-open intervals. Stored as the sorted
/// list of left endpoints, the first of which is 0.
class Partition {
 public:
  /// The trivial partition {[0,1)}.
  Partition() : lefts_{Rational(0)} {}

  std::size_t size() const noexcept { return lefts_.size(); }
  const std::vector<Rational>& left_endpoints() const noexcept { return lefts_; }

  Rational right_of(std::size_t k) const { return k + 1 < lefts_.size() ? lefts_[k + 1] : Rational(1); }
  Interval interval(std::size_t k) const { return Interval(lefts_.at(k), right_of(k)); }

  std::vector<Interval> intervals() const {
    std::vector<Interval> out;
    out.reserve(lefts_.size());
    for (std::size_t k = 0; k < lefts_.size(); ++k) out.push_back(interval(k));
    return out;
  }

  /// Index of the interval containing x (0 <= x < 1).
  std::size_t index_of(const Rational& x) const {
    auto it = std::upper_bound(lefts_.begin(), lefts_.end(), x);
    return static_cast<std::size_t>(std::distance(lefts_.begin(), it)) - 1;
  }

  bool is_breakpoint(const Rational& x) const {
    return std::binary_search(lefts_.begin(), lefts_.end(), x);
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.lefts_ == b.lefts_; }

  friend std::ostream& operator<<(std::ostream& os, const Partition& p) {
    os << '{';
    for (std::size_t k = 0; k < p.size(); ++k) os << (k ? "," : "") << p.interval(k);
    return os << '}';
  }

  template <typename Range>
  friend Partition make_partition(const Range& breakpoints);

 private:
  explicit Partition(std::vector<Rational> sorted_lefts) : lefts_(std::move(sorted_lefts)) {}

  std::vector<Rational> lefts_;
};

/// Partition whose left endpoints are exactly {0} ∪ breakpoints.
template <typename Range>
Partition make_partition(const Range& breakpoints) {
  std::set<Rational> pts{Rational(0)};
  for (const auto& b : breakpoints) {
    Rational v;
    if constexpr (std::is_same_v<std::decay_t<decltype(b)>, RatPoint>) {
      v = b.value();
    } else {
      v = Rational(b);
    }
    if (v < 0 || v >= 1) throw std::invalid_argument("breakpoint " + to_string(v) + " outside [0,1)");
    pts.insert(std::move(v));
  }
  return Partition(std::vector<Rational>(pts.begin(), pts.end()));
}

inline Partition make_partition(std::initializer_list<Rational> breakpoints) {
  return make_partition(std::vector<Rational>(breakpoints));
}

/// Coarsest common refinement: the union of both breakpoint sets.
inline Partition common_refinement(const Partition& p, const Partition& q) {
  std::vector<Rational> merged;
  merged.reserve(p.size() + q.size());
  std::set_union(p.left_endpoints().begin(), p.left_endpoints().end(), q.left_endpoints().begin(),
                 q.left_endpoints().end(), std::back_inserter(merged));
  return make_partition(merged);
}

/// True iff every interval of `fine` lies inside an interval of `coarse`,
/// i.e. the breakpoints of `coarse` are breakpoints of `fine`.
inline bool is_refinement(const Partition& fine, const Partition& coarse) {
  return std::includes(fine.left_endpoints().begin(), fine.left_endpoints().end(),
                       coarse.left_endpoints().begin(), coarse.left_endpoints().end());
}

}  // namespace pwsig
