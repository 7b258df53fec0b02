/*
 * Morse-indexed CW structure over a simple polytope: directed 1-skeleton
 * from an objective, vertex indices, the recursive subcomplexes
 * Q^n > Q^{n-1} > ... > Q^1 > Q^0 with one cell per k-face, boundary
 * degrees, and the resulting integer chain complexes (orbifold and toric).
 *
 * Every structural claim behind the recursion is asserted at runtime: a
 * failure signals a non-generic objective and is reported with the level
 * at which it happened.
 */

#ifndef SMALLORB_CWSTRUCT_HPP
#define SMALLORB_CWSTRUCT_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "smallorb/characteristic.hpp"
#include "smallorb/exactalg.hpp"
#include "smallorb/polytope.hpp"

namespace smallorb {

/// Either a linear functional on the vertex coordinates or an explicit
/// total order of the vertices (listed in ascending position).
struct Objective {
  std::optional<std::vector<Rat>> functional;
  std::optional<std::vector<int>> vertex_order;
};

/// Raised when an objective fails a genericity assertion (duplicate values,
/// index distribution mismatch, or a level of the Q-recursion breaking).
/// Callers with a random objective should re-randomize.
class NonGenericObjective : public std::runtime_error {
 public:
  explicit NonGenericObjective(const std::string& what) : std::runtime_error(what) {}
};

struct IndexedSkeleton {
  std::vector<int> rank;   // position of each vertex in ascending phi order
  std::vector<int> ind;    // inward degree in the directed 1-skeleton
  std::vector<std::pair<int, int>> directed_edges;  // (tail, head), one per edge face
  std::vector<int> edge_face_ids;

  bool higher(int u, int v) const { return rank[u] > rank[v]; }
  int top_vertex() const;
};

/// Orients each edge toward its phi-larger endpoint and validates: distinct
/// vertex values, index distribution equal to the reversed h-vector, and on
/// every face the top two vertices adjacent within that face.
IndexedSkeleton orient_skeleton(const SimplePolytope& p, const FaceLattice& lattice,
                                const Objective& obj);

struct CellRecord {
  int dim = 0;
  int vertex = -1;           // top vertex of the carrier face
  int second_vertex = -1;    // y_v, second-highest vertex of the carrier
  int edge_face_id = -1;     // designated edge e_v joining them (dim >= 1)
  int carrier_face_id = -1;  // F_v^k
};

struct CellStructure {
  /// records[k] = cells of dimension k; records[0] lists the vertices.
  std::vector<std::vector<CellRecord>> records;
  /// q_levels[k] = face ids whose union is Q^k (k >= 1); q_levels[0] = vertex faces.
  std::vector<std::vector<int>> q_levels;
  /// Edge face ids of the spanning tree Q^1.
  std::vector<int> tree_edges;
};

/// The recursion of the cell construction; requires only the lattice and an
/// oriented skeleton (the characteristic function plays no combinatorial
/// role here).  Throws NonGenericObjective naming the offending level.
CellStructure build_cell_structure_raw(const FaceLattice& lattice,
                                       const IndexedSkeleton& skel);

/// Spec surface: validates the characteristic function first.
CellStructure build_cell_structure(const FaceLattice& lattice, const SCharFunction& schar,
                                   const IndexedSkeleton& skel);

/// Degree of the attaching composition for cell_w in the boundary of cell_v:
/// 2 when dim(cell_v) is odd and the carrier of cell_w is a facet of the
/// carrier of cell_v avoiding the designated edge; 0 otherwise.
int boundary_degree(const FaceLattice& lattice, const CellRecord& cell_v,
                    const CellRecord& cell_w);

/// Chain complex with C_k = Z^{ranks[k]} and integer boundary matrices.
struct ChainComplexZ {
  std::vector<int> ranks;            // C_0 .. C_top
  std::vector<IntMatrix> boundaries; // boundaries[k-1] = d_k : C_k -> C_{k-1}

  int top_dim() const { return static_cast<int>(ranks.size()) - 1; }
  const IntMatrix& d(int k) const { return boundaries[k - 1]; }
};

/// d_k from boundary_degree for k >= 2 and the signed tree incidence for
/// d_1; verifies d_{k-1} d_k = 0.
ChainComplexZ build_chain_complex(const FaceLattice& lattice, const IndexedSkeleton& skel,
                                  const CellStructure& cells);

/// The toric variant: cells in dimensions 0, 1, 3, ..., 2n-1 only, all
/// boundaries zero except the tree incidence d_1.
ChainComplexZ build_toric_chain_complex(const FaceLattice& lattice,
                                        const IndexedSkeleton& skel);

struct PreparedObjective {
  Objective objective;
  IndexedSkeleton skeleton;
  CellStructure cells;
  int attempts = 1;  // randomization attempts consumed
};

/// Uses the document objective when given; otherwise draws integer
/// functionals from a growing box seeded deterministically, retrying until
/// every structural assertion passes.
PreparedObjective prepare_objective(const SimplePolytope& p, const FaceLattice& lattice,
                                    const std::optional<Objective>& given,
                                    std::uint64_t seed);

}  // namespace smallorb

#endif  // SMALLORB_CWSTRUCT_HPP
