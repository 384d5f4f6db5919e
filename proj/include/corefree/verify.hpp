#pragma once

// Independent checks of a BasisCertificate:
//  (a) structural: the core of psi(H) has no single-label cycle;
//  (b) brute force: y_i^m is not in g H g^-1 for short conjugators g;
//  (c) subword bound: sampled elements of H have all exponents < m0 in the
//      new coordinates.

#include <cstddef>
#include <cstdint>
#include <string>

#include "corefree/nielsen.hpp"
#include "corefree/random.hpp"
#include "corefree/stallings.hpp"
#include "corefree/text.hpp"

namespace corefree {

struct Verdict {
  bool passed = true;
  std::size_t checked = 0;
  std::string failure;  // first counterexample, empty when passed
};

struct VerificationReport {
  Verdict structural;
  Verdict conjugates;
  Verdict subword;

  bool passed() const { return structural.passed && conjugates.passed && subword.passed; }
};

struct VerifyOptions {
  std::size_t g_bound = 4;
  std::int64_t power_bound = 6;
  std::size_t samples = 1000;
  std::size_t max_factors = 10;
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultLengthCap;
};

inline Verdict check_structural(const BasisCertificate& cert) {
  Verdict v;
  const FoldedGraph g = fold(SubgroupPresentation(cert.rank, cert.transformed_generators));
  const CoreGraph c = core(g);
  for (Label i = 1; i <= cert.rank; ++i) {
    ++v.checked;
    const LoopSet s = loop_set(c, i);
    if (!s.empty()) {
      v.passed = false;
      v.failure = "core of psi(H) has an x" + std::to_string(i) + "-cycle through vertex " +
                  std::to_string(s.vertices.front());
      return v;
    }
  }
  return v;
}

inline Verdict check_conjugates(const SubgroupPresentation& p, const BasisCertificate& cert,
                                std::size_t g_bound, std::int64_t power_bound) {
  Verdict v;
  const FoldedGraph h = fold(p);
  const std::size_t n = cert.rank;
  for_each_reduced_word(n, g_bound, [&](const Word& g) {
    if (!v.passed) return;
    const Word g_inv = invert(g);
    for (std::size_t i = 0; i < cert.basis.size() && v.passed; ++i) {
      Word power(n);
      for (std::int64_t m = 1; m <= power_bound; ++m) {
        power = power * cert.basis[i];
        ++v.checked;
        if (membership(h, g_inv * power * g)) {
          v.passed = false;
          v.failure = "y" + std::to_string(i + 1) + "^" + std::to_string(m) +
                      " lies in g H g^-1 for g = '" + format_word(g) + "'";
          return;
        }
      }
    }
  });
  return v;
}

inline Verdict check_subword_bound(const BasisCertificate& cert, std::size_t samples,
                                   std::size_t max_factors, std::uint64_t seed,
                                   std::size_t cap = kDefaultLengthCap) {
  Verdict v;
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const Word h = random_subgroup_element(rng, cert.rank, cert.original_generators, max_factors);
    const Word t = to_transformed_coordinates(cert, h, cap);
    ++v.checked;
    if (max_syllable_exponent(t) >= cert.m0) {
      v.passed = false;
      v.failure = "element '" + format_word(h) + "' has transformed form '" + format_word(t) +
                  "' with an exponent >= m0 = " + std::to_string(cert.m0);
      return v;
    }
  }
  return v;
}

inline VerificationReport verify_certificate(const SubgroupPresentation& p,
                                             const BasisCertificate& cert,
                                             const VerifyOptions& opt = {}) {
  if (p.rank() != cert.rank) {
    throw Error(ErrorKind::rank_mismatch, "presentation rank differs from certificate rank");
  }
  VerificationReport r;
  r.structural = check_structural(cert);
  r.conjugates = check_conjugates(p, cert, opt.g_bound, opt.power_bound);
  r.subword = check_subword_bound(cert, opt.samples, opt.max_factors, opt.seed, opt.cap);
  return r;
}

}  // namespace corefree
