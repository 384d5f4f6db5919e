// Walks H = <x1 x2 x1^-1, x2^3> < F_2 through the whole pipeline: fold,
// power-free basis, a quasimorphism vanishing on H, and its defect.

#include <iostream>

#include "corefree/corefree.hpp"

using namespace corefree;

int main() {
  const SubgroupPresentation h(2, parse_word_list("x1 x2 x1^-1, x2^3", 2));

  const FoldedGraph g = fold(h);
  const CoreGraph c = core(g);
  std::cout << "folded graph: " << g.vertex_count() << " vertices, rank " << rank(c)
            << ", index " << (index(g) ? std::to_string(*index(g)) : "infinite") << "\n";

  const BasisCertificate cert = find_power_free_basis(h);
  std::cout << "moves:";
  for (const auto& m : cert.psi.moves()) std::cout << " phi(" << m.i << ", " << m.k << ")";
  std::cout << "\nbasis:\n";
  for (std::size_t i = 0; i < cert.basis.size(); ++i) {
    std::cout << "  y" << i + 1 << " = " << format_word(cert.basis[i]) << "\n";
  }
  std::cout << "m0 = " << cert.m0 << "\n";

  // f_1 = f_2 = indicator-style function at 1, moved onto m0 * Z.
  const AlternatingFunction f{{1, Rational(1)}};
  const RelativeQM r = make_relative_qm_embedded(cert, {f, f});
  const VanishingReport v = check_vanishing(r, h, 1000, 10, 7);
  std::cout << "vanishes on " << v.checked << " sampled elements of H: "
            << (v.passed ? "yes" : "no") << "\n";
  if (auto w = nontriviality_witness(r)) {
    std::cout << "value " << format_rational(w->value) << " at " << format_word(w->element) << "\n";
  }
  std::cout << "defect: " << format_rational(split_defect(r.split)) << "\n";
}
