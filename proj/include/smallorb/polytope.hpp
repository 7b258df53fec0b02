/*
 * Combinatorial model of a simple n-polytope: facet-vertex incidence as
 * input, the derived face lattice, f- and h-vectors, and the 1-skeleton.
 * All data is immutable after construction; coordinates are optional and
 * only ever consumed by objective functionals.
 */

#ifndef SMALLORB_POLYTOPE_HPP
#define SMALLORB_POLYTOPE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smallorb/exactalg.hpp"

namespace smallorb {

struct SimplePolytope {
  int n = 0;                              // dimension
  int vertex_count = 0;                   // m_v
  std::vector<std::vector<int>> facets;   // vertex index sets, input order
  std::optional<std::vector<std::vector<Rat>>> coords;  // per vertex, length n
  std::string name;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Simplicity (every vertex in exactly n facets), antichain facets,
/// connected 1-skeleton.  Scans everything; never aborts at the first hit.
ValidationReport validate_simple(const SimplePolytope& p);

/// A face is identified by the maximal set of facets containing it.
/// facet_ids and vertex_ids are sorted; dim == n - |facet_ids|.
struct Face {
  int id = -1;
  int dim = 0;
  std::vector<int> facet_ids;
  std::uint64_t facet_bits = 0;
  std::vector<int> vertex_ids;
};

class FaceLattice {
 public:
  int n = 0;
  int vertex_count = 0;
  int facet_count = 0;

  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int id) const { return faces_[id]; }
  int face_count() const { return static_cast<int>(faces_.size()); }

  /// Face ids of the given dimension.  Dimension-(n-1) ids appear in input
  /// facet order; dimension-0 ids in vertex order.
  const std::vector<int>& faces_of_dim(int d) const { return by_dim_[d]; }

  int facet_face(int facet_index) const { return by_dim_[n - 1][facet_index]; }
  int vertex_face(int vertex) const { return vertex_face_[vertex]; }
  int top_face() const { return by_dim_[n][0]; }

  /// Sorted facet indices containing a vertex.
  const std::vector<int>& vertex_facets(int vertex) const {
    return vertex_facets_[vertex];
  }

  /// sub subseteq super, tested through the facet sets.
  bool is_subface(int sub, int super) const {
    return (faces_[sub].facet_bits & faces_[super].facet_bits) ==
           faces_[super].facet_bits;
  }

  /// Face id with exactly this (closed) facet set, or -1.
  int face_with_facets(std::uint64_t facet_bits) const;

  /// Edge (dim-1 face) joining two vertices, or -1.
  int edge_between(int u, int v) const;

  /// Reflexive-free containment pairs (sub, super), super != sub.
  std::vector<std::pair<int, int>> containment_pairs() const;

 private:
  friend FaceLattice build_face_lattice(const SimplePolytope& p);
  std::vector<Face> faces_;
  std::vector<std::vector<int>> by_dim_;          // [d] -> face ids
  std::vector<int> vertex_face_;                  // vertex -> dim-0 face id
  std::vector<std::vector<int>> vertex_facets_;   // vertex -> facet indices
};

/// All distinct nonempty intersections of facet subsets plus P itself,
/// canonicalized by the maximal facet set.  Throws std::runtime_error if a
/// nonempty intersection of more than n facets shows up (simplicity broken)
/// and std::invalid_argument for inputs with more than 64 facets.
FaceLattice build_face_lattice(const SimplePolytope& p);

/// f_j = number of codimension-(j+1) faces, j = 0..n-1.
std::vector<long long> f_vector(const FaceLattice& lattice);

/// h_i = coefficient of t^{n-i} in (t-1)^n + sum_j f_j (t-1)^{n-1-j}.
std::vector<long long> h_vector(const FaceLattice& lattice);
std::vector<long long> h_vector_from_f(const std::vector<long long>& f, int n);

struct SkeletonGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // vertex pairs, u < v
  std::vector<int> edge_face_ids;          // lattice face id per edge
};

/// Dimension-1 faces as a graph.  Throws std::runtime_error when some
/// dimension-1 face does not have exactly two vertices.
SkeletonGraph skeleton_graph(const FaceLattice& lattice);

}  // namespace smallorb

#endif  // SMALLORB_POLYTOPE_HPP
