/*
 * s-characteristic functions on simple polytopes: per-vertex omission-basis
 * validation, certified exhaustive search with pruning, face subgroups G_F,
 * restriction of a function to a face, and the integer isotropy variant.
 */

#ifndef SMALLORB_CHARACTERISTIC_HPP
#define SMALLORB_CHARACTERISTIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "smallorb/exactalg.hpp"
#include "smallorb/polytope.hpp"

namespace smallorb {

/// Assignment of a nonzero vector in F_2^{n-1} to every facet.
struct SCharFunction {
  int dim = 0;  // n - 1
  std::vector<GF2Vector> values;  // indexed by facet

  bool operator==(const SCharFunction& o) const {
    return dim == o.dim && values == o.values;
  }
};

struct ScharCheck {
  bool ok = true;
  int vertex = -1;          // first violating vertex
  int omitted_facet = -1;   // facet whose omission failed there
};

/// All n * |V| omission-basis checks of the defining condition.  Throws
/// std::invalid_argument on missing facet values or length mismatches.
ScharCheck validate_schar(const FaceLattice& lattice, const SCharFunction& cand);

struct ScharSearchResult {
  std::vector<SCharFunction> found;   // lexicographic in the value sequence
  std::uint64_t nodes_visited = 0;    // partial assignments examined
  std::uint64_t pruned = 0;           // prefixes rejected by a vertex check
  Int candidate_space = 0;            // (2^{n-1} - 1)^m full assignments
  bool exhausted = true;              // false iff stopped by the limit
};

/// Depth-first exhaustive search over facets in input order, values in
/// lexicographic bit order; prunes as soon as a fully assigned vertex fails.
/// An empty result with exhausted == true certifies non-existence.
ScharSearchResult search_schar(const FaceLattice& lattice,
                               std::optional<std::size_t> limit = std::nullopt);

struct FaceSubgroup {
  int face_id = -1;
  std::vector<GF2Vector> generators;  // values of the facets containing F
  std::vector<GF2Vector> member_set;  // whole span, sorted
  GF2Span span;

  FaceSubgroup() : span(0) {}
};

FaceSubgroup face_subgroup(const FaceLattice& lattice, const SCharFunction& schar,
                           int face_id);

/// Restriction of a characteristic function to a codimension-k face
/// (0 < k < n-1).  The quotient F_2^{n-1}/G_F is identified with
/// F_2^{n-1-k} through the lexicographically first set of standard
/// coordinates complementary to G_F.
struct FaceRestriction {
  SimplePolytope face_polytope;       // the face as an (n-k)-polytope
  FaceLattice face_lattice;
  SCharFunction schar;                // values in F_2^{n-1-k}
  std::vector<int> parent_facet;      // facet j of P with F_j cap F = facet i
  std::vector<int> vertex_map;        // face vertex -> vertex of P
  std::vector<int> quotient_coords;   // the chosen complementary coordinates
};

FaceRestriction restrict_to_face(const FaceLattice& lattice, const SCharFunction& schar,
                                 int face_id);

/// Integer-vector analogue: facet -> Z^{n-1}.
struct IsotropyFunction {
  std::vector<std::vector<Int>> values;  // indexed by facet, each length n-1
};

struct IsotropyCheck {
  bool ok = false;        // strict reading: every omission unimodular
  bool loose_ok = false;  // omissions restricted to 1 < k < n only
  std::string first_violation;
};

IsotropyCheck validate_isotropy(const FaceLattice& lattice, const IsotropyFunction& psi);

/// Componentwise mod-2 reduction of an isotropy function.
SCharFunction mod2_reduction(const IsotropyFunction& psi, int n);

}  // namespace smallorb

#endif  // SMALLORB_CHARACTERISTIC_HPP
