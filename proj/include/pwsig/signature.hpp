#pragma once

#include "pwsig/finperm.hpp"
#include "pwsig/partition.hpp"
#include "pwsig/pwmap.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace pwsig {

/// Number of intervals of p on which h reverses order. Not reduced mod 2.
inline std::size_t flip_number(const PwMap& h, const Partition& p) {
  detail::require_associated(h, p, "flip_number");
  std::size_t n = 0;
  for (const auto& i : p.intervals()) {
    if (detail::reversing_on(h, i)) ++n;
  }
  return n;
}

/// Default of pseudo right continuity: the finitely supported permutation
/// sending h(α) to the left endpoint of h(I°) for every interval I = [α, ·)
/// of p.
inline FinPerm sigma_default(const PwMap& h, const Partition& p) {
  detail::require_associated(h, p, "sigma_default");
  std::vector<std::pair<RatPoint, RatPoint>> pairs;
  for (const auto& i : p.intervals()) {
    pairs.emplace_back(RatPoint(h(i.left())), RatPoint(detail::interior_image(h, i).left()));
  }
  return FinPerm::from_pairs(pairs);
}

inline SignBit signature_at(const PwMap& h, const Partition& p) {
  return SignBit(static_cast<unsigned>(flip_number(h, p) & 1U)) + sigma_default(h, p).sign();
}

/// The signature homomorphism, evaluated on the minimal partition.
inline SignBit signature(const PwMap& h) { return signature_at(h, minimal_partition(h)); }

}  // namespace pwsig
