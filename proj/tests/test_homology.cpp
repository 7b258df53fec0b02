#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "smallorb/homology.hpp"

using namespace smallorb;
using smallorb::testing::data;
using smallorb::testing::make;

namespace {

AbelianGroup z_plus_torsion(long long rank, std::vector<long long> torsion) {
  AbelianGroup g;
  g.free_rank = rank;
  for (long long t : torsion) g.invariant_factors.push_back(Int(t));
  return g;
}

ChainComplexZ cube_chain(const smallorb::testing::Built& built, std::uint64_t seed) {
  PreparedObjective prep =
      prepare_objective(built.doc.polytope, built.lattice, std::nullopt, seed);
  return build_chain_complex(built.lattice, prep.skeleton, prep.cells);
}

}  // namespace

TEST_CASE("theorem homology profiles") {
  SECTION("cube over Z") {
    HomologyProfile p = theorem_homology({1, 3, 3, 1}, 3, Coefficient::Z);
    REQUIRE(p.groups[0] == AbelianGroup::free(1));
    REQUIRE(p.groups[1].is_trivial());
    REQUIRE(p.groups[2] == z_plus_torsion(3, {2}));
    REQUIRE(p.groups[3].is_trivial());
  }
  SECTION("4-cube over Z") {
    HomologyProfile p = theorem_homology({1, 4, 6, 4, 1}, 4, Coefficient::Z);
    REQUIRE(p.groups[0] == AbelianGroup::free(1));
    REQUIRE(p.groups[2] == z_plus_torsion(6, {2, 2, 2, 2, 2}));
    REQUIRE(p.groups[3].is_trivial());
    REQUIRE(p.groups[4] == AbelianGroup::free(1));
  }
  SECTION("square: the sphere") {
    HomologyProfile p = theorem_homology({1, 2, 1}, 2, Coefficient::Z);
    REQUIRE(p.groups[0] == AbelianGroup::free(1));
    REQUIRE(p.groups[1].is_trivial());
    REQUIRE(p.groups[2] == AbelianGroup::free(1));
  }
  SECTION("cube over Z2 dims (1, 0, 4, 1)") {
    HomologyProfile p = theorem_homology({1, 3, 3, 1}, 3, Coefficient::Z2);
    std::vector<long long> dims;
    for (const auto& g : p.groups)
      dims.push_back(static_cast<long long>(g.invariant_factors.size()) + g.free_rank);
    REQUIRE(dims == std::vector<long long>{1, 0, 4, 1});
  }
  SECTION("Q profile drops the torsion") {
    HomologyProfile p = theorem_homology({1, 4, 6, 4, 1}, 4, Coefficient::Q);
    REQUIRE(p.groups[2] == AbelianGroup::free(6));
    REQUIRE(p.groups[4] == AbelianGroup::free(1));
  }
}

TEST_CASE("homology_from_chain matches the closed form on the cube") {
  auto built = data("i3.json");
  ChainComplexZ cc = cube_chain(built, 17);
  auto h = h_vector(built.lattice);
  for (Coefficient c : {Coefficient::Z, Coefficient::Q, Coefficient::Z2})
    REQUIRE(homology_from_chain(cc, c) == theorem_homology(h, 3, c));
}

TEST_CASE("chain homology is independent of the objective") {
  auto built = make("prism", {4});
  auto h = h_vector(built.lattice);
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    ChainComplexZ cc = cube_chain(built, seed);
    REQUIRE(homology_from_chain(cc, Coefficient::Z) ==
            theorem_homology(h, 3, Coefficient::Z));
  }
}

TEST_CASE("euler_mod2") {
  REQUIRE(euler_mod2({1, 3, 3, 1}, 3) == 4);
  REQUIRE(euler_mod2({1, 2, 1}, 2) == 2);
  REQUIRE(euler_mod2({1, 4, 6, 4, 1}, 4) == 8);
}

TEST_CASE("toric closed forms") {
  SECTION("cube") {
    HomologyProfile p = theorem_toric_homology({1, 3, 3, 1}, 3);
    REQUIRE(p.groups.size() == 6);
    REQUIRE(p.groups[0] == AbelianGroup::free(1));
    REQUIRE(p.groups[3] == AbelianGroup::free(4));
    REQUIRE(p.groups[5] == AbelianGroup::free(1));
    REQUIRE(p.groups[1].is_trivial());
    REQUIRE(p.groups[2].is_trivial());
    REQUIRE(p.groups[4].is_trivial());
    REQUIRE(toric_euler_characteristic({1, 3, 3, 1}, 3) == -4);
  }
  SECTION("square gives the 3-sphere profile") {
    HomologyProfile p = theorem_toric_homology({1, 2, 1}, 2);
    REQUIRE(p.groups.size() == 4);
    REQUIRE(p.groups[0] == AbelianGroup::free(1));
    REQUIRE(p.groups[1].is_trivial());
    REQUIRE(p.groups[2].is_trivial());
    REQUIRE(p.groups[3] == AbelianGroup::free(1));
  }
}

TEST_CASE("toric chain SNF equals the toric closed form") {
  for (auto& built : {make("cube", {3}), make("polygon", {5}), make("prism", {4}),
                      make("product", {3, 3})}) {
    PreparedObjective prep =
        prepare_objective(built.doc.polytope, built.lattice, std::nullopt, 23);
    ChainComplexZ cc = build_toric_chain_complex(built.lattice, prep.skeleton);
    auto h = h_vector(built.lattice);
    REQUIRE(homology_from_chain(cc, Coefficient::Z) ==
            theorem_toric_homology(h, built.lattice.n));
  }
}

TEST_CASE("universal coefficients consistency") {
  SECTION("closed forms are consistent") {
    for (auto h : std::vector<std::vector<long long>>{
             {1, 2, 1}, {1, 3, 3, 1}, {1, 4, 6, 4, 1}, {1, 4, 4, 1}}) {
      int n = static_cast<int>(h.size()) - 1;
      REQUIRE(universal_coefficients_consistent(
          theorem_homology(h, n, Coefficient::Z), theorem_homology(h, n, Coefficient::Z2)));
    }
  }
  SECTION("computed chains are consistent") {
    auto built = data("i3.json");
    ChainComplexZ cc = cube_chain(built, 3);
    REQUIRE(universal_coefficients_consistent(homology_from_chain(cc, Coefficient::Z),
                                              homology_from_chain(cc, Coefficient::Z2)));
  }
  SECTION("detects an inconsistent pair") {
    HomologyProfile z = theorem_homology({1, 3, 3, 1}, 3, Coefficient::Z);
    HomologyProfile z2 = theorem_homology({1, 3, 3, 1}, 3, Coefficient::Z2);
    z2.groups[2] = AbelianGroup::z2_power(5);
    REQUIRE_FALSE(universal_coefficients_consistent(z, z2));
  }
}

TEST_CASE("alternating Betti sum equals alternating cell count") {
  auto built = make("cube", {4});
  ChainComplexZ cc = cube_chain(built, 9);
  HomologyProfile q = homology_from_chain(cc, Coefficient::Q);
  long long betti_alt = 0, cell_alt = 0;
  for (size_t k = 0; k < q.groups.size(); ++k) {
    betti_alt += (k % 2 == 0) ? q.groups[k].free_rank : -q.groups[k].free_rank;
    cell_alt += (k % 2 == 0) ? cc.ranks[k] : -cc.ranks[k];
  }
  REQUIRE(betti_alt == cell_alt);
}

TEST_CASE("abelian group display") {
  REQUIRE(z_plus_torsion(3, {2}).to_string() == "Z^3 + Z/2");
  REQUIRE(AbelianGroup::free(1).to_string() == "Z");
  REQUIRE(AbelianGroup{}.to_string() == "0");
  REQUIRE(z_plus_torsion(0, {6}).prime_power_torsion() == std::vector<Int>{2, 3});
  REQUIRE(z_plus_torsion(0, {12}).prime_power_torsion() == std::vector<Int>{3, 4});
}

TEST_CASE("homology of a sparse complex with known torsion") {
  // 0 -> Z -(x2)-> Z -> 0 concentrated in degrees 1, 0.
  SparseChainComplex c;
  c.sizes = {1, 1};
  c.boundary.resize(2);
  c.boundary[1].resize(1);
  c.boundary[1][0][0] = 2;
  HomologyProfile p = homology_from_sparse(c, Coefficient::Z);
  REQUIRE(p.groups[0] == z_plus_torsion(0, {2}));
  REQUIRE(p.groups[1].is_trivial());
  HomologyProfile q = homology_from_sparse(c, Coefficient::Q);
  REQUIRE(q.groups[0].is_trivial());
  REQUIRE(q.groups[1].is_trivial());
  HomologyProfile z2 = homology_from_sparse(c, Coefficient::Z2);
  REQUIRE(z2.groups[0].invariant_factors.size() == 1);
  REQUIRE(z2.groups[1].invariant_factors.size() == 1);
}
