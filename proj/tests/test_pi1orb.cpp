#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "helpers.hpp"
#include "smallorb/pi1orb.hpp"

using namespace smallorb;
using smallorb::testing::data;
using smallorb::testing::make;

TEST_CASE("coxeter presentation of the square") {
  auto built = make("polygon", {4});
  CoxeterPresentation cox = coxeter_presentation(built.lattice);
  REQUIRE(cox.generator_count == 4);
  // Edges 0..3 in cycle order 0-1-2-3-0: consecutive edges commute.
  std::set<std::pair<int, int>> pairs(cox.commuting_pairs.begin(),
                                      cox.commuting_pairs.end());
  REQUIRE(pairs.size() == 4);
  REQUIRE(pairs.count({0, 1}) == 1);
  REQUIRE(pairs.count({1, 2}) == 1);
  REQUIRE(pairs.count({2, 3}) == 1);
  REQUIRE(pairs.count({0, 3}) == 1);
  REQUIRE(pairs.count({0, 2}) == 0);  // opposite edges are free
  REQUIRE(pairs.count({1, 3}) == 0);
}

TEST_CASE("coxeter presentation of the cube and the simplex") {
  auto cube = data("i3.json");
  CoxeterPresentation cc = coxeter_presentation(cube.lattice);
  REQUIRE(cc.generator_count == 6);
  REQUIRE(cc.commuting_pairs.size() == 12);  // 15 pairs minus 3 opposite ones

  auto simplex = make("simplex", {3});
  CoxeterPresentation cs = coxeter_presentation(simplex.lattice);
  REQUIRE(cs.generator_count == 4);
  REQUIRE(cs.commuting_pairs.size() == 6);  // every two facets meet
}

TEST_CASE("relator list shapes") {
  auto built = make("polygon", {4});
  CoxeterPresentation cox = coxeter_presentation(built.lattice);
  auto rels = cox.relators();
  REQUIRE(rels.size() == 4 + 4);
  REQUIRE(rels[0] == std::vector<int>{0, 0});
  REQUIRE(rels[4].size() == 4);
}

TEST_CASE("xi map on the square and the cube") {
  SECTION("square: everything maps to 1") {
    auto built = data("square.json");
    CoxeterPresentation cox = coxeter_presentation(built.lattice);
    XiMap xi = xi_map(cox, *built.doc.schar);
    for (const auto& img : xi.images) REQUIRE(img == GF2Vector{1});
  }
  SECTION("cube: the published images") {
    auto built = data("i3.json");
    CoxeterPresentation cox = coxeter_presentation(built.lattice);
    XiMap xi = xi_map(cox, *built.doc.schar);
    REQUIRE(xi.images[0] == GF2Vector{1, 0});
    REQUIRE(xi.images[1] == GF2Vector{0, 1});
    REQUIRE(xi.images[2] == GF2Vector{1, 1});
    REQUIRE(xi.images[3] == GF2Vector{1, 1});
    REQUIRE(xi.images[4] == GF2Vector{0, 1});
    REQUIRE(xi.images[5] == GF2Vector{1, 0});
  }
  SECTION("relators map to zero") {
    auto built = data("i3.json");
    CoxeterPresentation cox = coxeter_presentation(built.lattice);
    XiMap xi = xi_map(cox, *built.doc.schar);
    for (const auto& rel : cox.relators()) REQUIRE(xi.word_image(rel).is_zero());
  }
}

TEST_CASE("kernel presentation of the square function") {
  auto built = data("square.json");
  CoxeterPresentation cox = coxeter_presentation(built.lattice);
  XiMap xi = xi_map(cox, *built.doc.schar);
  KernelPresentation ker = kernel_presentation(cox, xi);
  REQUIRE(ker.coset_count == 2);
  REQUIRE(ker.schreier_generators.size() == 2 * 4 - 1);  // N m - (N - 1) = 7
  // Relators: one conjugate per coset of each of 4 + 4 relators.
  REQUIRE(ker.rewritten_relators.size() == 2 * 8);
}

TEST_CASE("kernel presentation of the cube function") {
  auto built = data("i3.json");
  CoxeterPresentation cox = coxeter_presentation(built.lattice);
  XiMap xi = xi_map(cox, *built.doc.schar);
  KernelPresentation ker = kernel_presentation(cox, xi);
  REQUIRE(ker.coset_count == 4);
  REQUIRE(ker.schreier_generators.size() == 4 * 6 - 3);  // 21

  SECTION("the coset table is an involutive action") {
    for (int g = 0; g < ker.coset_count; ++g)
      for (int i = 0; i < cox.generator_count; ++i)
        REQUIRE(ker.coset_table[ker.coset_table[g][i]][i] == g);
  }
  SECTION("transversal words reach their cosets") {
    for (int g = 0; g < ker.coset_count; ++g)
      REQUIRE(xi.word_image(ker.transversal[g]) == ker.cosets[g]);
  }
  SECTION("every Schreier generator lies in the kernel") {
    for (const auto& sg : ker.schreier_generators)
      REQUIRE(xi.word_image(sg.word).is_zero());
  }
  SECTION("Schreier generator words have the defining shape") {
    for (const auto& sg : ker.schreier_generators) {
      std::vector<int> expect = ker.transversal[sg.coset];
      expect.push_back(sg.generator);
      const auto& back = ker.transversal[ker.coset_table[sg.coset][sg.generator]];
      expect.insert(expect.end(), back.rbegin(), back.rend());
      REQUIRE(sg.word == expect);
    }
  }
  SECTION("rewritten relators are words in the Schreier generators") {
    REQUIRE(ker.rewritten_relators.size() == 4 * (6 + 12));
    for (const auto& word : ker.rewritten_relators)
      for (int idx : word) {
        REQUIRE(idx >= 0);
        REQUIRE(idx < static_cast<int>(ker.schreier_generators.size()));
      }
  }
  SECTION("exponent parity: Schreier words hit each coordinate evenly") {
    for (const auto& sg : ker.schreier_generators) {
      GF2Vector total(xi.dim);
      for (int letter : sg.word) total += xi.images[letter];
      REQUIRE(total.is_zero());
    }
  }
}

TEST_CASE("kernel presentation across found functions") {
  for (auto& built : {make("cube", {4}), make("prism", {6})}) {
    ScharSearchResult r = search_schar(built.lattice, std::size_t(1));
    REQUIRE_FALSE(r.found.empty());
    CoxeterPresentation cox = coxeter_presentation(built.lattice);
    XiMap xi = xi_map(cox, r.found[0]);
    KernelPresentation ker = kernel_presentation(cox, xi);
    const int N = 1 << (built.lattice.n - 1);
    REQUIRE(ker.coset_count == N);
    REQUIRE(static_cast<int>(ker.schreier_generators.size()) ==
            N * cox.generator_count - (N - 1));
    for (const auto& sg : ker.schreier_generators)
      REQUIRE(xi.word_image(sg.word).is_zero());
  }
}
