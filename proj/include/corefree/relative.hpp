#pragma once

// Quasimorphisms vanishing on H. With psi, y_i and m0 from a
// BasisCertificate, a split quasimorphism in the y-basis whose factors are
// supported on m0 * Z is zero on H: every element of H has all y-exponents
// below m0. Evaluation goes through the x-side word psi(h), which spells h
// in y-letters.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corefree/nielsen.hpp"
#include "corefree/quasimorphism.hpp"
#include "corefree/random.hpp"
#include "corefree/stallings.hpp"

namespace corefree {

struct RelativeQM {
  BasisCertificate certificate;
  SplitQM split;  // factors are the base factors, supported on m0 * Z

  const std::vector<AlternatingFunction>& base_factors() const { return split.factors(); }

  /// Value on an element already in transformed coordinates psi(h).
  Rational evaluate_transformed(const Word& t) const { return split(t); }

  Rational operator()(const Word& h) const {
    return split(to_transformed_coordinates(certificate, h));
  }
};

inline RelativeQM make_relative_qm(BasisCertificate cert, std::vector<AlternatingFunction> base) {
  if (base.size() != cert.rank) {
    throw Error(ErrorKind::rank_mismatch, "need one base factor per generator");
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (const auto& [m, v] : base[i].values()) {
      if (m % cert.m0 != 0) {
        throw Error(ErrorKind::precondition,
                    "factor " + std::to_string(i + 1) + " has support key " + std::to_string(m) +
                        " not divisible by m0 = " + std::to_string(cert.m0));
      }
    }
  }
  const std::size_t n = cert.rank;
  return RelativeQM{std::move(cert), SplitQM(n, std::move(base))};
}

/// Embeds unscaled factors into m0 * Z first.
inline RelativeQM make_relative_qm_embedded(BasisCertificate cert,
                                            const std::vector<AlternatingFunction>& factors) {
  std::vector<AlternatingFunction> base;
  for (const auto& f : factors) base.push_back(embed_support(f, cert.m0));
  return make_relative_qm(std::move(cert), std::move(base));
}

struct VanishingReport {
  bool passed = true;
  std::size_t checked = 0;
  std::optional<Word> witness;  // an element of H with nonzero value
  Rational value;
};

/// Evaluates r on `samples` random products of <= max_factors generators of H.
inline VanishingReport check_vanishing(const RelativeQM& r, const SubgroupPresentation& p,
                                       std::size_t samples, std::size_t max_factors,
                                       std::uint64_t seed) {
  if (p.rank() != r.certificate.rank) {
    throw Error(ErrorKind::rank_mismatch, "presentation rank differs from certificate rank");
  }
  VanishingReport rep;
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const Word h = random_subgroup_element(rng, p.rank(), p.generators(), max_factors);
    const Rational v = r(h);
    ++rep.checked;
    if (v.numerator() != 0) {
      rep.passed = false;
      rep.witness = h;
      rep.value = v;
      return rep;
    }
  }
  return rep;
}

struct NontrivialityWitness {
  Word element;  // psi^-1(x_i^s)
  Label label = 1;
  std::int64_t exponent = 0;
  Rational value;  // r(element) = f_i(s)
};

/// psi^-1(x_i^s) for the first factor i with a nonzero value f_i(s) (smallest
/// s); r takes the value f_i(s) there. None for the zero quasimorphism.
inline std::optional<NontrivialityWitness> nontriviality_witness(
    const RelativeQM& r, std::size_t cap = kDefaultLengthCap) {
  const std::size_t n = r.certificate.rank;
  for (Label i = 1; i <= n; ++i) {
    const auto& values = r.split.factor(i).values();
    if (values.empty()) continue;
    const auto& [s, v] = *values.begin();
    const Word x = Word::power(n, i, s);
    return NontrivialityWitness{r.certificate.psi.inverse().apply(x, cap), i, s, v};
  }
  return std::nullopt;
}

}  // namespace corefree
