/*
 * Homology of integer chain complexes over Z, Q and Z_2, plus the
 * closed-form profiles predicted for small orbifolds and their toric
 * relatives, and the mod-2 Euler characteristic.
 */

#ifndef SMALLORB_HOMOLOGY_HPP
#define SMALLORB_HOMOLOGY_HPP

#include <string>
#include <vector>

#include "smallorb/chainreduce.hpp"
#include "smallorb/cwstruct.hpp"
#include "smallorb/exactalg.hpp"

namespace smallorb {

enum class Coefficient { Z, Q, Z2 };

std::string coefficient_name(Coefficient c);

/// Finitely generated abelian group in invariant-factor form.
struct AbelianGroup {
  long long free_rank = 0;
  std::vector<Int> invariant_factors;  // each > 1, d_i | d_{i+1}

  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  bool operator==(const AbelianGroup& o) const {
    return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
  }
  /// Torsion re-expressed in prime powers (for display).
  std::vector<Int> prime_power_torsion() const;
  std::string to_string(Coefficient c = Coefficient::Z) const;

  static AbelianGroup free(long long rank) { return {rank, {}}; }
  static AbelianGroup z2_power(long long count) {
    AbelianGroup g;
    g.invariant_factors.assign(count, Int(2));
    return g;
  }
};

struct HomologyProfile {
  Coefficient coeff = Coefficient::Z;
  std::vector<AbelianGroup> groups;  // degree 0 .. top

  bool operator==(const HomologyProfile& o) const {
    return coeff == o.coeff && groups == o.groups;
  }
  std::string to_string() const;
};

/// H_k = ker d_k / im d_{k+1}, computed exactly: over Z through the
/// unit-pivot collapse and Smith normal form of the residuals, over Q from
/// the same ranks, and over Z_2 independently from mod-2 ranks of the
/// original matrices.
HomologyProfile homology_from_chain(const ChainComplexZ& complex, Coefficient coeff);
HomologyProfile homology_from_sparse(const SparseChainComplex& complex, Coefficient coeff);

SparseChainComplex to_sparse(const ChainComplexZ& complex);

/// Closed-form homology of the small orbifold over a polytope with the
/// given h-vector, degrees 0..n.
HomologyProfile theorem_homology(const std::vector<long long>& h, int n, Coefficient coeff);

/// Mod-2 Euler characteristic: sum of the even h-entries.  Asserted equal
/// to the alternating sum of the mod-2 Betti numbers.
long long euler_mod2(const std::vector<long long>& h, int n);

/// Closed-form homology of the toric analogue, degrees 0..2n-1 (integral).
HomologyProfile theorem_toric_homology(const std::vector<long long>& h, int n);

/// h_0 - sum_{i>=2} (i-1) h_i; asserted equal to the alternating cell count.
long long toric_euler_characteristic(const std::vector<long long>& h, int n);

/// Universal-coefficients consistency between an integral and a mod-2
/// profile: dim H_k(Z2) = rank H_k + t2(H_k) + t2(H_{k-1}).
bool universal_coefficients_consistent(const HomologyProfile& integral,
                                       const HomologyProfile& mod2);

}  // namespace smallorb

#endif  // SMALLORB_HOMOLOGY_HPP
