/*
 * Brute-force oracle: the quotient (Z_2^{n-1} x P)/~ triangulated as an
 * explicit Delta-complex.  Simplices are pairs (flag of the face poset,
 * coset of the subgroup attached to the flag's largest face); the open
 * simplex of a flag lies in the relative interior of that largest face,
 * where the identification group is exactly G_F.  Homology of this complex
 * is computed with no input from the closed-form theorems, so agreement is
 * genuine cross-validation.
 */

#ifndef SMALLORB_QUOTIENT_HPP
#define SMALLORB_QUOTIENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "smallorb/chainreduce.hpp"
#include "smallorb/characteristic.hpp"
#include "smallorb/homology.hpp"
#include "smallorb/polytope.hpp"

namespace smallorb {

/// A strictly increasing chain of faces (P itself allowed) together with a
/// canonical coset representative modulo G of the largest face.
struct QuotientSimplex {
  std::vector<int> flag;  // face ids, strictly increasing containment
  GF2Vector coset;        // lexicographic minimum of its class
};

class DeltaComplex {
 public:
  int n = 0;
  std::vector<std::vector<QuotientSimplex>> simplices;       // by dimension
  std::vector<std::vector<std::vector<int>>> face_maps;      // [k][i] -> k+1 faces
  std::vector<GF2Span> subgroup;                             // per face id
  const FaceLattice* lattice = nullptr;                      // borrowed

  long long simplex_count(int k) const {
    return static_cast<long long>(simplices[k].size());
  }
  long long total_vertices() const { return simplex_count(0); }
  /// 0-simplices whose flag is a single vertex of P (the orbifold points).
  int orbifold_point_count() const;
  long long euler_characteristic() const;

  /// Signed boundary columns of dimension k (alternating signs by dropped
  /// flag position, coefficients combined on repeated faces).
  std::vector<SparseIntCol> boundary_columns(int k) const;
  SparseChainComplex sparse_complex() const;

  /// Indices of the k-simplices lying over the face (flag tops inside it).
  std::vector<int> simplices_over_face(int k, int face_id) const;
};

/// Builds the full complex.  Validates the characteristic function first
/// and checks the simplicial identities (d d = 0) of the result.
DeltaComplex build_quotient_complex(const FaceLattice& lattice, const SCharFunction& schar);

/// Exact simplicial homology of the oracle complex.
HomologyProfile simplicial_homology(const DeltaComplex& d, Coefficient coeff);

struct FundamentalCycle {
  bool ok = false;
  std::string error;
  int degree = 0;
  SparseRatCol chain;  // keyed by simplex index within its dimension
};

/// Generator of the 1-dimensional kernel of the boundary restricted to the
/// top simplices over an even-dimensional face; normalized to coprime
/// integer entries with the first nonzero one positive.
FundamentalCycle face_fundamental_cycle(const DeltaComplex& d, int face_id);

/// Coefficients lambda with  cycle - sum lambda_i basis_i  a boundary,
/// solved exactly; nullopt when inconsistent (a basis-claim violation).
std::optional<std::vector<Rat>> express_in_basis(const DeltaComplex& d, int degree,
                                                 const SparseRatCol& cycle,
                                                 const std::vector<SparseRatCol>& basis);

}  // namespace smallorb

#endif  // SMALLORB_QUOTIENT_HPP
