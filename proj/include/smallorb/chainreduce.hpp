/*
 * Sparse integer chain complexes and the exact machinery shared by the
 * homology and quotient-oracle modules: unit-pivot complex collapse (a
 * change of basis splitting off acyclic summands, so integral homology is
 * untouched), mod-2 ranks of sparse matrices, and incremental rational
 * column reduction used for cycle kernels and basis expression.
 */

#ifndef SMALLORB_CHAINREDUCE_HPP
#define SMALLORB_CHAINREDUCE_HPP

#include <map>
#include <optional>
#include <vector>

#include "smallorb/exactalg.hpp"

namespace smallorb {

/// Sparse column: sorted map row -> coefficient.
using SparseIntCol = std::map<int, Int>;
using SparseRatCol = std::map<int, Rat>;

/// Chain complex with boundary[k] = columns of d_k : C_k -> C_{k-1},
/// k = 1..top (boundary[0] is unused and empty).
struct SparseChainComplex {
  std::vector<int> sizes;                             // cells per dimension
  std::vector<std::vector<SparseIntCol>> boundary;    // [k][cell] -> column

  int top_dim() const { return static_cast<int>(sizes.size()) - 1; }
};

/// Collapses every pivot of absolute value 1.  After run(), the residual
/// matrices are small and rank/torsion bookkeeping refers back to the
/// original complex:
///   rank(d_k) = eliminated_pairs(k) + rank(residual d_k)
/// and the invariant factors > 1 of d_k survive unchanged in the residual.
class ChainReducer {
 public:
  explicit ChainReducer(const SparseChainComplex& complex);
  void run();

  int eliminated_pairs(int k) const { return eliminated_[k]; }
  IntMatrix residual_matrix(int k) const;  // dense d_k on surviving cells
  int alive_count(int k) const;

 private:
  struct Matrix {
    std::map<int, SparseIntCol> cols;          // col id -> column
    std::map<int, std::map<int, Int>> rows;    // row id -> (col id -> coeff)
  };
  void set_entry(int k, int row, int col, const Int& v);
  void eliminate(int k, int row, int col);
  bool sweep();

  int top_;
  std::vector<Matrix> mat_;        // mat_[k] = d_k, k = 1..top
  std::vector<std::map<int, char>> alive_;
  std::vector<int> eliminated_;
};

/// Rank over F_2 of the mod-2 reduction of sparse columns.
int mod2_rank_sparse(const std::vector<SparseIntCol>& cols, int rows);

/// Rank over Q via the unit-pivot collapse plus a dense residual.
int rational_rank_sparse(const std::vector<SparseIntCol>& cols, int rows);

/// Incremental exact column reduction.  Stored columns are kept in echelon
/// form keyed by their largest-index nonzero row.  Each column carries a
/// combination vector over a caller-chosen set of tracked coordinates.
class RationalColumnSpace {
 public:
  /// Adds a column; returns the combination when it reduces to zero
  /// (i.e. the column is dependent), nullopt when it was stored.
  std::optional<SparseRatCol> add(SparseRatCol col, SparseRatCol combo);

  /// Reduces a vector against the stored columns without storing it;
  /// returns (residue, accumulated combination of used columns).
  std::pair<SparseRatCol, SparseRatCol> reduce(SparseRatCol col) const;

 private:
  struct Stored {
    SparseRatCol col;
    SparseRatCol combo;
  };
  std::map<int, Stored> by_lead_;
};

/// Exact solve of  z = sum_i lambda_i basis_i + (combination of cols):
/// returns lambda or nullopt when no solution exists.
std::optional<std::vector<Rat>> express_modulo(
    const std::vector<SparseRatCol>& basis, const std::vector<SparseIntCol>& cols,
    const SparseRatCol& z);

/// One-dimensional kernel of the matrix given by sparse integer columns.
/// Returns the kernel vector normalized to coprime integer entries with the
/// first nonzero entry positive, or an error string describing the actual
/// kernel dimension.
struct KernelOneResult {
  bool ok = false;
  std::vector<Rat> vec;  // length = number of columns
  std::string error;
};
KernelOneResult kernel_one(const std::vector<SparseIntCol>& cols, int rows);

}  // namespace smallorb

#endif  // SMALLORB_CHAINREDUCE_HPP
