/*
 * Group-theoretic side: the right-angled Coxeter group of the polytope
 * (one involution per facet, commuting exactly for adjacent facets), the
 * homomorphism onto Z_2^{n-1} induced by a characteristic function, and a
 * Reidemeister-Schreier presentation of its kernel, the orbifold
 * fundamental group of the quotient.
 *
 * Words over the Coxeter generators are plain index sequences; every
 * generator is an involution, so the inverse of a word is its reversal.
 */

#ifndef SMALLORB_PI1ORB_HPP
#define SMALLORB_PI1ORB_HPP

#include <vector>

#include "smallorb/characteristic.hpp"
#include "smallorb/polytope.hpp"

namespace smallorb {

struct CoxeterPresentation {
  int generator_count = 0;                           // one per facet
  std::vector<std::pair<int, int>> commuting_pairs;  // adjacent facets, i < j

  /// Relator words: a_i a_i for each generator, then a_i a_j a_i a_j for
  /// each commuting pair, in that order.
  std::vector<std::vector<int>> relators() const;
};

CoxeterPresentation coxeter_presentation(const FaceLattice& lattice);

struct XiMap {
  int dim = 0;                     // n - 1
  std::vector<GF2Vector> images;   // generator -> its facet value

  GF2Vector word_image(const std::vector<int>& word) const;
};

/// Composition through the abelianization; asserts surjectivity and that
/// every Coxeter relator maps to zero.
XiMap xi_map(const CoxeterPresentation& cox, const SCharFunction& schar);

struct KernelPresentation {
  int coset_count = 0;                          // 2^{n-1}
  std::vector<GF2Vector> cosets;                // breadth-first order, 0 first
  std::vector<std::vector<int>> coset_table;    // [coset][generator] -> coset
  std::vector<std::vector<int>> transversal;    // Schreier transversal words

  struct SchreierGenerator {
    int coset = -1;
    int generator = -1;
    std::vector<int> word;  // t_g a_i reverse(t_{g a_i})
  };
  /// Non-tree pairs only: 2^{n-1} m - (2^{n-1} - 1) of them.
  std::vector<SchreierGenerator> schreier_generators;

  /// One rewritten word per (Coxeter relator, transversal element), as
  /// indices into schreier_generators.
  std::vector<std::vector<int>> rewritten_relators;

  /// -1 marks a spanning-tree pair.
  std::vector<std::vector<int>> schreier_index;  // [coset][generator]
};

KernelPresentation kernel_presentation(const CoxeterPresentation& cox, const XiMap& xi);

}  // namespace smallorb

#endif  // SMALLORB_PI1ORB_HPP
