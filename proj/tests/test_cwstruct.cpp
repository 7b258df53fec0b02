#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "helpers.hpp"
#include "smallorb/cwstruct.hpp"

using namespace smallorb;
using smallorb::testing::data;
using smallorb::testing::make;

namespace {

Objective functional(std::vector<long long> coeffs) {
  Objective obj;
  obj.functional = std::vector<Rat>();
  for (long long c : coeffs) obj.functional->push_back(Rat(c));
  return obj;
}

std::multiset<int> index_multiset(const IndexedSkeleton& skel) {
  return {skel.ind.begin(), skel.ind.end()};
}

}  // namespace

TEST_CASE("orient_skeleton on the unit square") {
  auto built = data("square.json");
  IndexedSkeleton skel = orient_skeleton(built.doc.polytope, built.lattice, functional({1, 2}));
  // Corners (0,0),(1,0),(1,1),(0,1) get values 0,1,3,2.
  REQUIRE(skel.ind == std::vector<int>{0, 1, 2, 1});
  REQUIRE(skel.top_vertex() == 2);
}

TEST_CASE("orient_skeleton index distribution is the reversed h-vector") {
  auto cube = data("i3.json");
  IndexedSkeleton skel =
      orient_skeleton(cube.doc.polytope, cube.lattice, functional({1, 2, 4}));
  REQUIRE(index_multiset(skel) == std::multiset<int>{0, 1, 1, 1, 2, 2, 2, 3});

  auto hexagon = make("polygon", {6});
  IndexedSkeleton hs =
      orient_skeleton(hexagon.doc.polytope, hexagon.lattice, functional({1, 3}));
  REQUIRE(index_multiset(hs) == std::multiset<int>{0, 1, 1, 1, 1, 2});
}

TEST_CASE("orient_skeleton rejects duplicate vertex values") {
  auto built = data("square.json");
  REQUIRE_THROWS_AS(
      orient_skeleton(built.doc.polytope, built.lattice, functional({1, 0})),
      NonGenericObjective);
}

TEST_CASE("orient_skeleton rejects a non-generic explicit order") {
  auto built = data("square.json");
  Objective obj;
  obj.vertex_order = std::vector<int>{0, 2, 1, 3};  // top two not adjacent
  REQUIRE_THROWS_AS(orient_skeleton(built.doc.polytope, built.lattice, obj),
                    NonGenericObjective);
}

TEST_CASE("orient_skeleton rejects a non-permutation order") {
  auto built = data("square.json");
  Objective obj;
  obj.vertex_order = std::vector<int>{0, 0, 1, 3};
  REQUIRE_THROWS_AS(orient_skeleton(built.doc.polytope, built.lattice, obj),
                    std::invalid_argument);
}

TEST_CASE("cell counts follow the h-vector tails") {
  struct Case {
    std::string family;
    std::vector<long long> params;
    std::vector<long long> functional;
    std::vector<std::size_t> expected;  // cells per dimension 0..n
  };
  std::vector<Case> cases = {
      {"cube", {3}, {1, 2, 4}, {8, 7, 4, 1}},
      {"polygon", {4}, {1, 2}, {4, 3, 1}},
      {"cube", {4}, {1, 2, 4, 8}, {16, 15, 11, 5, 1}},
  };
  for (const auto& c : cases) {
    auto built = make(c.family, c.params);
    IndexedSkeleton skel =
        orient_skeleton(built.doc.polytope, built.lattice, functional(c.functional));
    CellStructure cells = build_cell_structure_raw(built.lattice, skel);
    REQUIRE(cells.records.size() == c.expected.size());
    for (size_t k = 0; k < c.expected.size(); ++k)
      REQUIRE(cells.records[k].size() == c.expected[k]);
  }
}

TEST_CASE("a designated edge of one carrier blocks faces of the others") {
  // On prism-4 with phi = x + 2y + 4z, the designated edge of a side facet
  // is an ordinary edge of the top facet.  The level exclusion must be
  // global or Q^1 would pick up 8 edges and fail to be a tree.
  auto built = make("prism", {4});
  IndexedSkeleton skel =
      orient_skeleton(built.doc.polytope, built.lattice, functional({1, 2, 4}));
  CellStructure cells = build_cell_structure_raw(built.lattice, skel);
  REQUIRE(cells.records[1].size() == 7);
  REQUIRE(cells.tree_edges.size() == 7);
}

TEST_CASE("Q^1 is a spanning tree") {
  auto built = data("i3.json");
  IndexedSkeleton skel =
      orient_skeleton(built.doc.polytope, built.lattice, functional({1, 2, 4}));
  CellStructure cells = build_cell_structure_raw(built.lattice, skel);
  REQUIRE(cells.tree_edges.size() == 7);
  // Acyclic and spanning: union-find over the edges reaches all 8 vertices.
  std::vector<int> parent(8);
  for (int v = 0; v < 8; ++v) parent[v] = v;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e : cells.tree_edges) {
    const auto& vs = built.lattice.face(e).vertex_ids;
    REQUIRE(find(vs[0]) != find(vs[1]));  // no cycle
    parent[find(vs[0])] = find(vs[1]);
  }
  for (int v = 1; v < 8; ++v) REQUIRE(find(v) == find(0));
}

TEST_CASE("each record's carrier has the designated vertex and edge on top") {
  auto built = make("prism", {4});
  IndexedSkeleton skel =
      orient_skeleton(built.doc.polytope, built.lattice, functional({1, 2, 4}));
  CellStructure cells = build_cell_structure_raw(built.lattice, skel);
  for (int k = 1; k <= built.lattice.n; ++k)
    for (const auto& rec : cells.records[k]) {
      const Face& carrier = built.lattice.face(rec.carrier_face_id);
      REQUIRE(carrier.dim == k);
      for (int v : carrier.vertex_ids)
        if (v != rec.vertex) REQUIRE(skel.rank[rec.vertex] > skel.rank[v]);
      for (int v : carrier.vertex_ids)
        if (v != rec.vertex && v != rec.second_vertex)
          REQUIRE(skel.rank[rec.second_vertex] > skel.rank[v]);
      REQUIRE(built.lattice.is_subface(rec.edge_face_id, rec.carrier_face_id));
    }
}

TEST_CASE("boundary degrees on the cube") {
  auto built = data("i3.json");
  IndexedSkeleton skel =
      orient_skeleton(built.doc.polytope, built.lattice, functional({1, 2, 4}));
  CellStructure cells = build_cell_structure(built.lattice, *built.doc.schar, skel);

  SECTION("top cell against all 2-cells gives (2,2,2,2)") {
    REQUIRE(cells.records[3].size() == 1);
    REQUIRE(cells.records[2].size() == 4);
    for (const auto& w : cells.records[2])
      REQUIRE(boundary_degree(built.lattice, cells.records[3][0], w) == 2);
  }
  SECTION("even dimension always gives zero") {
    for (const auto& v : cells.records[2])
      for (const auto& w : cells.records[1])
        REQUIRE(boundary_degree(built.lattice, v, w) == 0);
  }
  SECTION("dimension mismatch throws") {
    REQUIRE_THROWS_AS(
        boundary_degree(built.lattice, cells.records[3][0], cells.records[1][0]),
        std::invalid_argument);
  }
}

TEST_CASE("boundary degree vanishes when the carrier is not a facet") {
  // In the 4-cube, 3-cells against 2-cells: degree 2 requires the 2-cell's
  // carrier to be a facet of the 3-cell's carrier avoiding its edge.
  auto built = data("i4.json");
  IndexedSkeleton skel =
      orient_skeleton(built.doc.polytope, built.lattice, functional({1, 2, 4, 8}));
  CellStructure cells = build_cell_structure_raw(built.lattice, skel);
  bool saw_nonface = false;
  for (const auto& v : cells.records[3])
    for (const auto& w : cells.records[2]) {
      if (!built.lattice.is_subface(w.carrier_face_id, v.carrier_face_id)) {
        REQUIRE(boundary_degree(built.lattice, v, w) == 0);
        saw_nonface = true;
      }
    }
  REQUIRE(saw_nonface);
}

TEST_CASE("chain complex of the cube") {
  auto built = data("i3.json");
  IndexedSkeleton skel =
      orient_skeleton(built.doc.polytope, built.lattice, functional({1, 2, 4}));
  CellStructure cells = build_cell_structure(built.lattice, *built.doc.schar, skel);
  ChainComplexZ cc = build_chain_complex(built.lattice, skel, cells);
  REQUIRE(cc.ranks == std::vector<int>{8, 7, 4, 1});

  // d_3 is the column (2,2,2,2)^T.
  REQUIRE(cc.d(3).rows() == 4);
  REQUIRE(cc.d(3).cols() == 1);
  for (int i = 0; i < 4; ++i) REQUIRE(cc.d(3).at(i, 0) == 2);

  // d_2 vanishes.
  REQUIRE(cc.d(2).is_zero());

  // d_1 is a signed tree incidence: each column one +1 and one -1.
  for (int c = 0; c < cc.d(1).cols(); ++c) {
    int plus = 0, minus = 0;
    for (int r = 0; r < cc.d(1).rows(); ++r) {
      if (cc.d(1).at(r, c) == 1) ++plus;
      if (cc.d(1).at(r, c) == -1) ++minus;
    }
    REQUIRE(plus == 1);
    REQUIRE(minus == 1);
  }
}

TEST_CASE("d compose d vanishes over the battery") {
  std::vector<std::pair<std::string, std::vector<long long>>> polys = {
      {"cube", {3}}, {"cube", {4}}, {"prism", {5}}, {"product", {3, 4}}};
  for (const auto& [family, params] : polys) {
    auto built = make(family, params);
    PreparedObjective prep =
        prepare_objective(built.doc.polytope, built.lattice, std::nullopt, 99);
    ChainComplexZ cc = build_chain_complex(built.lattice, prep.skeleton, prep.cells);
    for (int k = 2; k <= cc.top_dim(); ++k)
      REQUIRE(cc.d(k - 1).multiply(cc.d(k)).is_zero());
  }
}

TEST_CASE("alternating cell count equals the sum of even h-entries") {
  for (auto& built : {make("cube", {3}), make("cube", {4}), make("prism", {6})}) {
    PreparedObjective prep =
        prepare_objective(built.doc.polytope, built.lattice, std::nullopt, 5);
    auto h = h_vector(built.lattice);
    long long alt = 0;
    for (size_t k = 0; k < prep.cells.records.size(); ++k) {
      long long c = static_cast<long long>(prep.cells.records[k].size());
      alt += (k % 2 == 0) ? c : -c;
    }
    long long even_h = 0;
    for (size_t i = 0; i < h.size(); i += 2) even_h += h[i];
    REQUIRE(alt == even_h);
  }
}

TEST_CASE("toric chain complex") {
  SECTION("cube ranks and boundaries") {
    auto built = data("i3.json");
    IndexedSkeleton skel =
        orient_skeleton(built.doc.polytope, built.lattice, functional({1, 2, 4}));
    ChainComplexZ cc = build_toric_chain_complex(built.lattice, skel);
    REQUIRE(cc.ranks == std::vector<int>{8, 7, 0, 4, 0, 1});
    for (int k = 2; k <= cc.top_dim(); ++k) REQUIRE(cc.d(k).is_zero());
    REQUIRE_FALSE(cc.d(1).is_zero());
  }
  SECTION("square ranks") {
    auto built = data("square.json");
    IndexedSkeleton skel =
        orient_skeleton(built.doc.polytope, built.lattice, functional({1, 2}));
    ChainComplexZ cc = build_toric_chain_complex(built.lattice, skel);
    REQUIRE(cc.ranks == std::vector<int>{4, 3, 0, 1});
  }
}

TEST_CASE("prepare_objective is deterministic in the seed") {
  auto built = make("prism", {5});
  PreparedObjective a = prepare_objective(built.doc.polytope, built.lattice, std::nullopt, 7);
  PreparedObjective b = prepare_objective(built.doc.polytope, built.lattice, std::nullopt, 7);
  REQUIRE(*a.objective.functional == *b.objective.functional);
  REQUIRE(a.skeleton.rank == b.skeleton.rank);
}

TEST_CASE("prepare_objective requires coordinates or an explicit objective") {
  SimplePolytope p;
  p.n = 2;
  p.vertex_count = 3;
  p.facets = {{0, 1}, {1, 2}, {0, 2}};
  FaceLattice lat = build_face_lattice(p);
  REQUIRE_THROWS_AS(prepare_objective(p, lat, std::nullopt, 1), std::invalid_argument);
  Objective obj;
  obj.vertex_order = std::vector<int>{0, 1, 2};
  PreparedObjective prep = prepare_objective(p, lat, obj, 1);
  REQUIRE(prep.cells.records[2].size() == 1);
}
