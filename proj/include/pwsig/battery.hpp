#pragma once

#include "pwsig/decomposition.hpp"
#include "pwsig/finperm.hpp"
#include "pwsig/pwmap.hpp"
#include "pwsig/random.hpp"
#include "pwsig/signature.hpp"
#include "pwsig/subgroups.hpp"
#include "pwsig/text_format.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <future>
#include <string>
#include <vector>

namespace pwsig {

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0 && trials > 0; }
};

namespace battery {

/// splitmix64 step, used to derive independent per-suite and per-trial seeds.
inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  template <typename Check>
  void trial(Check&& check, const std::string& label) {
    ++result_.trials;
    bool ok = false;
    std::string why = label;
    try {
      ok = check();
    } catch (const std::exception& e) {
      why += ": threw " + std::string(e.what());
    }
    if (!ok) {
      if (result_.failures == 0) result_.first_failure = why;
      ++result_.failures;
    }
  }

  SuiteResult result() const { return result_; }

 private:
  SuiteResult result_;
};

inline RandomProfile profile(ElementClass c, std::size_t pieces = 8, std::uint64_t den = 96) {
  return RandomProfile{pieces, den, c};
}

inline std::string seed_label(std::uint64_t seed) { return "seed " + std::to_string(seed); }

/// The six points 0, 1/7, 2/7, ..., 5/7 and every permutation of them.
inline std::vector<FinPerm> all_permutations_of_six() {
  std::vector<Rational> pts;
  for (int k = 0; k < 6; ++k) pts.push_back(make_rational(k, 7));
  std::vector<std::size_t> idx{0, 1, 2, 3, 4, 5};
  std::vector<FinPerm> out;
  do {
    std::vector<std::pair<RatPoint, RatPoint>> pairs;
    for (std::size_t k = 0; k < 6; ++k) pairs.emplace_back(RatPoint(pts[k]), RatPoint(pts[idx[k]]));
    out.push_back(FinPerm::from_pairs(pairs));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

inline SuiteResult group_axioms(std::uint64_t seed) {
  Recorder rec("group-axioms");
  for (std::uint64_t t = 0; t < 100; ++t) {
    const std::uint64_t s = mix(seed + t);
    const ElementClass c = t % 2 ? ElementClass::paff : ElementClass::iet;
    const PwMap f = random_element(profile(c), mix(s + 1));
    const PwMap g = random_element(profile(c), mix(s + 2));
    const PwMap h = random_element(profile(ElementClass::iet), mix(s + 3));
    rec.trial([&] {
      const PwMap fg = compose(f, g);
      const RatPoint x(make_rational(static_cast<long long>(s % 97), 97));
      return compose(fg, h) == compose(f, compose(g, h)) && compose(f, inverse(f)).is_identity() &&
             compose(inverse(f), f).is_identity() && compose(f, PwMap()) == f && compose(PwMap(), f) == f &&
             fg(x) == f(g(x));
    }, seed_label(s));
  }
  return rec.result();
}

inline SuiteResult homomorphism(std::uint64_t seed, std::size_t pairs = 1000) {
  Recorder rec("homomorphism");
  for (std::uint64_t t = 0; t < pairs; ++t) {
    const std::uint64_t s = mix(seed + t);
    const ElementClass c = t % 2 ? ElementClass::paff : ElementClass::iet;
    const PwMap f = random_element(profile(c), mix(s + 1));
    const PwMap g = random_element(profile(c), mix(s + 2));
    rec.trial([&] { return signature(compose(f, g)) == signature(f) + signature(g); }, seed_label(s));
  }
  return rec.result();
}

inline SuiteResult partition_independence(std::uint64_t seed, std::size_t samples = 200) {
  Recorder rec("partition-independence");
  for (std::uint64_t t = 0; t < samples; ++t) {
    const std::uint64_t s = mix(seed + t);
    const ElementClass c = t % 2 ? ElementClass::paff : ElementClass::iet;
    const PwMap h = random_element(profile(c), mix(s + 1));
    rec.trial([&] {
      Partition p = minimal_partition(h);
      const SignBit base = signature_at(h, p);
      for (std::uint64_t step = 0; step < 4; ++step) {
        p = split_one(p, mix(s + 10 + step));
        if (signature_at(h, p) != base) return false;
      }
      return base == signature(h);
    }, seed_label(s));
  }
  return rec.result();
}

inline SuiteResult classical_extension(std::uint64_t) {
  Recorder rec("classical-extension");
  for (const FinPerm& tau : all_permutations_of_six()) {
    rec.trial([&] {
      return signature(from_finperm(tau)) == tau.sign_by_inversions() && tau.sign() == tau.sign_by_inversions();
    }, "permutation");
  }
  return rec.result();
}

inline SuiteResult kernel(std::uint64_t seed, std::size_t rc = 200, std::size_t flips = 50) {
  Recorder rec("kernel");
  for (std::uint64_t t = 0; t < rc; ++t) {
    const std::uint64_t s = mix(seed + t);
    const ElementClass c = t % 2 ? ElementClass::homeo_plus : ElementClass::iet_plus_rc;
    const PwMap f = random_element(profile(c), s);
    rec.trial([&] { return !signature(f).is_odd(); }, seed_label(s));
  }
  for (std::uint64_t t = 0; t < flips; ++t) {
    const std::uint64_t s = mix(seed + rc + t);
    const auto a = static_cast<long long>(s % 96);
    const auto b = a + 1 + static_cast<long long>((s >> 8) % static_cast<std::uint64_t>(96 - a));
    rec.trial([&] { return signature(flip(Interval(make_rational(a, 96), make_rational(b, 96)))).is_odd(); },
              seed_label(s));
  }
  return rec.result();
}

inline SuiteResult decompositions(std::uint64_t seed, std::size_t samples = 300) {
  Recorder rec("decompositions");
  for (std::uint64_t t = 0; t < samples; ++t) {
    const std::uint64_t s = mix(seed + t);
    const PwMap h = random_element(profile(ElementClass::iet), mix(s + 1));
    const PwMap a = random_element(profile(ElementClass::paff), mix(s + 2));
    rec.trial([&] {
      const RSigmaF rsf = decompose_r_sigma_f(h);
      const GTauS gts = decompose_g_tau_s(h);
      const HomeoSplit hs = normalize_to_iet(a);
      const FeatureReport ff = classify_features(rsf.f);
      const FeatureReport gf = classify_features(gts.g);
      const FeatureReport pf = classify_features(hs.phi);
      return rsf.reconstruct() == h && gts.reconstruct() == h && hs.reconstruct() == a &&
             ff.right_continuous && ff.orientation == Orientation::all_preserving && ff.unit_slopes &&
             gf.right_continuous && gf.orientation == Orientation::all_preserving && gf.unit_slopes &&
             pf.continuous && pf.orientation == Orientation::all_preserving && classify_features(hs.f).unit_slopes &&
             signature(h) == SignBit(static_cast<unsigned>(rsf.r.size())) + rsf.sigma.sign() &&
             signature(a) == signature(hs.f);
    }, seed_label(s));
  }
  return rec.result();
}

inline SuiteResult flip_generation(std::uint64_t seed, std::size_t samples = 200) {
  Recorder rec("flip-generation");
  for (std::uint64_t t = 0; t < samples; ++t) {
    const std::uint64_t s = mix(seed + t);
    const PwMap h = random_element(profile(ElementClass::iet), s);
    rec.trial([&] {
      const FlipWord w = flips_factorization(h);
      const PwMap product = product_of_flips(w.flips);
      return equals_mod_fin(product, h) && product == compose(h, from_finperm(w.residual.inverse())) &&
             signature(h) == SignBit(static_cast<unsigned>(w.flips.size())) + w.residual.sign();
    }, seed_label(s));
  }
  return rec.result();
}

inline SuiteResult simplicity(std::uint64_t seed, std::size_t samples = 100, std::size_t pairs = 50) {
  Recorder rec("simplicity");
  for (std::uint64_t t = 0; t < samples; ++t) {
    const std::uint64_t s = mix(seed + t);
    const ElementClass c = t % 2 ? ElementClass::paff : ElementClass::iet;
    PwMap g = random_element(profile(c), s);
    for (std::uint64_t retry = 1; g.is_finitary(); ++retry) g = random_element(profile(c), mix(s + retry));
    rec.trial([&] {
      const SimplicityWitness w = simplicity_witness(g);
      return equals_mod_fin(w.h, compose(flip(w.image), flip(w.i))) && !signature(w.h).is_odd() &&
             w.i.disjoint(w.image);
    }, seed_label(s));
  }
  for (std::uint64_t t = 0; t < pairs; ++t) {
    const std::uint64_t s = mix(seed + samples + t);
    // four sorted grid points a < b <= c < d in [0,1]
    std::vector<long long> cut;
    for (int k = 0; k < 4; ++k) cut.push_back(static_cast<long long>(mix(s + static_cast<std::uint64_t>(k)) % 97));
    std::sort(cut.begin(), cut.end());
    if (cut[0] == cut[1]) cut[1] += 1;
    if (cut[1] > cut[2]) cut[2] = cut[1];
    if (cut[2] >= cut[3]) cut[3] = cut[2] + 1;
    const long long den = std::max<long long>(96, cut[3]);
    const Interval i(make_rational(cut[0], den), make_rational(cut[1], den));
    const Interval j(make_rational(cut[2], den), make_rational(cut[3], den));
    rec.trial([&] {
      const auto [c, k] = conjugate_two_flips_to_one(t % 2 ? j : i, t % 2 ? i : j);
      const FeatureReport cf = classify_features(c);
      return cf.unit_slopes && cf.orientation == Orientation::all_preserving &&
             k == Interval(0, i.length() + j.length()) &&
             equals_mod_fin(compose_all({c, flip(i), flip(j), inverse(c)}), flip(k));
    }, seed_label(s));
  }
  return rec.result();
}

inline SuiteResult normalizers(std::uint64_t seed, std::size_t samples = 100) {
  Recorder rec("normalizers");
  for (std::uint64_t t = 0; t < samples; ++t) {
    const std::uint64_t s = mix(seed + t);
    PwMap g = random_element(profile(ElementClass::iet), s);
    for (std::uint64_t retry = 1; classify_features(g).right_continuous &&
                                  classify_features(g).orientation == Orientation::all_preserving;
         ++retry) {
      g = random_element(profile(ElementClass::iet), mix(s + retry));
    }
    rec.trial([&] {
      const PwMap f = normalizer_witness_rc(g);
      const FeatureReport ff = classify_features(f);
      const FeatureReport conj = classify_features(compose_all({g, f, inverse(g)}));
      return ff.right_continuous && ff.orientation == Orientation::all_preserving && ff.unit_slopes &&
             !(conj.right_continuous && conj.orientation == Orientation::all_preserving);
    }, "rc " + seed_label(s));
  }
  for (std::uint64_t t = 0; t < samples; ++t) {
    const std::uint64_t s = mix(seed + samples + t);
    PwMap g = random_element(profile(ElementClass::iet), s);
    for (std::uint64_t retry = 1; classify_features(g).orientation != Orientation::mixed; ++retry) {
      g = random_element(profile(ElementClass::iet), mix(s + retry));
    }
    rec.trial([&] {
      const PwMap f = normalizer_witness_orientation(g);
      const FeatureReport ff = classify_features(f);
      const FeatureReport conj = classify_features(compose_all({g, f, inverse(g)}));
      return ff.orientation == Orientation::all_preserving && ff.unit_slopes && !ff.in_sfin &&
             conj.orientation != Orientation::all_preserving;
    }, "orientation " + seed_label(s));
  }
  return rec.result();
}

inline SuiteResult homeo_invariance(std::uint64_t seed, std::size_t samples = 200) {
  Recorder rec("homeo-invariance");
  for (std::uint64_t t = 0; t < samples; ++t) {
    const std::uint64_t s = mix(seed + t);
    const ElementClass c = t % 2 ? ElementClass::paff : ElementClass::iet;
    const PwMap h = random_element(profile(c), mix(s + 1));
    const PwMap phi = random_element(profile(ElementClass::homeo_plus), mix(s + 2));
    rec.trial([&] {
      const SignBit e = signature(h);
      return signature(compose(h, phi)) == e && signature(compose(phi, h)) == e &&
             signature(compose_all({phi, h, inverse(phi)})) == e;
    }, seed_label(s));
  }
  return rec.result();
}

inline SuiteResult classifier(std::uint64_t seed, std::size_t samples = 200) {
  Recorder rec("classifier");
  const auto r3 = iet_build({make_rational(2, 3), make_rational(1, 3)}, {1, 0}, {Sense::preserve, Sense::preserve});
  const std::vector<std::pair<PwMap, NormalLevel>> curated{
      {PwMap(), NormalLevel::trivial},
      {from_finperm(FinPerm::cycle({RatPoint(0), RatPoint(make_rational(1, 3)), RatPoint(make_rational(2, 3))})), NormalLevel::a_fin},
      {from_finperm(FinPerm::cycle({RatPoint(0), RatPoint(make_rational(1, 2))})), NormalLevel::s_fin},
      {r3, NormalLevel::ker_epsilon},
      {flip(Interval(make_rational(1, 4), make_rational(1, 2))), NormalLevel::full},
  };
  for (const auto& [h, level] : curated) {
    rec.trial([&] { return classify_normal(h) == level; }, std::string("curated ") + to_string(level));
  }
  const ElementClass classes[] = {ElementClass::finperm, ElementClass::iet, ElementClass::paff};
  for (std::uint64_t t = 0; t < samples; ++t) {
    const std::uint64_t s = mix(seed + t);
    const PwMap f = random_element(profile(classes[t % 3]), mix(s + 1));
    const PwMap g = random_element(profile(classes[(t / 3) % 3]), mix(s + 2));
    rec.trial([&] {
      const NormalLevel lf = classify_normal(f), lg = classify_normal(g), lfg = classify_normal(compose(f, g));
      auto fin = [](NormalLevel l) { return l <= NormalLevel::s_fin; };
      auto even = [](NormalLevel l) { return l != NormalLevel::s_fin && l != NormalLevel::full; };
      bool ok = classify_normal(inverse(f)) == lf;
      if (fin(lf) && fin(lg)) ok = ok && fin(lfg);
      ok = ok && (even(lfg) == (even(lf) == even(lg)));
      return ok;
    }, seed_label(s));
  }
  return rec.result();
}

inline SuiteResult text_round_trip(std::uint64_t seed, std::size_t samples = 100) {
  Recorder rec("text-round-trip");
  const ElementClass classes[] = {ElementClass::iet, ElementClass::iet_plus, ElementClass::iet_plus_rc,
                                  ElementClass::paff, ElementClass::finperm, ElementClass::homeo_plus};
  for (std::uint64_t t = 0; t < samples; ++t) {
    const std::uint64_t s = mix(seed + t);
    const PwMap h = random_element(profile(classes[t % 6]), s);
    rec.trial([&] {
      const std::string doc = serialize_element(h);
      const PwMap back = parse_element(doc);
      return back == h && serialize_element(back) == doc;
    }, seed_label(s));
  }
  return rec.result();
}

}  // namespace battery

/// Runs every property suite, each on its own seed derived from `seed`.
/// Suites are independent and run concurrently; results keep a fixed order.
inline std::vector<SuiteResult> run_battery(std::uint64_t seed) {
  using Suite = std::function<SuiteResult(std::uint64_t)>;
  const std::vector<Suite> suites{
      [](std::uint64_t s) { return battery::group_axioms(s); },
      [](std::uint64_t s) { return battery::homomorphism(s); },
      [](std::uint64_t s) { return battery::partition_independence(s); },
      [](std::uint64_t s) { return battery::classical_extension(s); },
      [](std::uint64_t s) { return battery::kernel(s); },
      [](std::uint64_t s) { return battery::decompositions(s); },
      [](std::uint64_t s) { return battery::flip_generation(s); },
      [](std::uint64_t s) { return battery::simplicity(s); },
      [](std::uint64_t s) { return battery::normalizers(s); },
      [](std::uint64_t s) { return battery::homeo_invariance(s); },
      [](std::uint64_t s) { return battery::classifier(s); },
      [](std::uint64_t s) { return battery::text_round_trip(s); },
  };
  std::vector<std::future<SuiteResult>> running;
  for (std::size_t k = 0; k < suites.size(); ++k) {
    running.push_back(std::async(std::launch::async, suites[k], battery::mix(seed * 131 + k)));
  }
  std::vector<SuiteResult> out;
  for (auto& r : running) out.push_back(r.get());
  return out;
}

}  // namespace pwsig
