#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "helpers.hpp"
#include "smallorb/cohomology.hpp"

using namespace smallorb;
using smallorb::testing::data;
using smallorb::testing::make;

namespace {

struct Ctx {
  smallorb::testing::Built built;
  PreparedObjective prep;
  SCharFunction schar;
};

Ctx context(const std::string& file, std::uint64_t seed) {
  Ctx ctx{smallorb::testing::data(file), {}, {}};
  ctx.prep = prepare_objective(ctx.built.doc.polytope, ctx.built.lattice, std::nullopt, seed);
  ctx.schar = *ctx.built.doc.schar;
  return ctx;
}

}  // namespace

TEST_CASE("transverse faces") {
  auto built = data("i3.json");
  const FaceLattice& lat = built.lattice;
  SECTION("adjacent facets are transverse") {
    REQUIRE(transverse(lat, lat.facet_face(0), lat.facet_face(1)));
  }
  SECTION("a proper face is not transverse to itself") {
    REQUIRE_FALSE(transverse(lat, lat.facet_face(0), lat.facet_face(0)));
  }
  SECTION("opposite facets are not transverse") {
    // Facets 0 and 5 of the bundled cube are disjoint.
    REQUIRE_FALSE(transverse(lat, lat.facet_face(0), lat.facet_face(5)));
  }
  SECTION("the whole polytope is transverse to everything") {
    for (const auto& f : lat.faces()) REQUIRE(transverse(lat, lat.top_face(), f.id));
  }
}

TEST_CASE("face hats have the index as dimension") {
  auto ctx = context("i4.json", 11);
  auto hats = face_hats(ctx.built.lattice, ctx.prep.skeleton);
  std::vector<long long> count_by_dim(5, 0);
  for (const auto& h : hats) {
    REQUIRE(h.dim == ctx.prep.skeleton.ind[h.vertex]);
    ++count_by_dim[h.dim];
    // The designated vertex is the top of its hat.
    const Face& f = ctx.built.lattice.face(h.face_id);
    for (int v : f.vertex_ids)
      if (v != h.vertex)
        REQUIRE(ctx.prep.skeleton.rank[h.vertex] > ctx.prep.skeleton.rank[v]);
  }
  REQUIRE(count_by_dim == std::vector<long long>{1, 4, 6, 4, 1});
}

TEST_CASE("transversality checker passes on even-dimensional cubes") {
  for (const char* file : {"square.json", "i4.json"}) {
    auto ctx = context(file, 19);
    TransversalityReport rep =
        check_transversality_properties(ctx.built.lattice, ctx.prep.skeleton);
    REQUIRE(rep.property1_failures.empty());
    REQUIRE(rep.property2_failures.empty());
    REQUIRE(rep.fhat_basis_failures.empty());
    REQUIRE(rep.ok());
  }
}

TEST_CASE("transversality checker rejects odd dimensions") {
  auto built = data("i3.json");
  PreparedObjective prep =
      prepare_objective(built.doc.polytope, built.lattice, std::nullopt, 3);
  REQUIRE_THROWS_AS(check_transversality_properties(built.lattice, prep.skeleton),
                    std::domain_error);
}

TEST_CASE("ring of the square orbifold is Q[w]/(w^2)") {
  auto ctx = context("square.json", 5);
  RingCalculator calc(ctx.built.doc.polytope, ctx.built.lattice, ctx.schar,
                      ctx.prep.skeleton);
  RingPresentation ring = calc.ring_presentation();
  REQUIRE(ring.generator_count == 1);
  REQUIRE(ring.relation_monomials.empty());
  REQUIRE(ring.relation_binomials.empty());
  REQUIRE(ring.implied_zero_above_degree == 1);  // w^2 lives above the top degree

  GradedDimensions dims = calc.graded_dimensions(ring);
  REQUIRE(dims.dims == std::vector<long long>{1, 0, 1});
  REQUIRE(dims.matches);

  auto pairing = calc.pairing_diagnostic();
  REQUIRE(pairing.error.empty());
  REQUIRE(pairing.nondegenerate);
}

TEST_CASE("empty product is the fundamental class") {
  auto ctx = context("square.json", 5);
  RingCalculator calc(ctx.built.doc.polytope, ctx.built.lattice, ctx.schar,
                      ctx.prep.skeleton);
  MuClass unit = calc.mu_product({});
  REQUIRE(unit.ok());
  REQUIRE_FALSE(unit.zero);
  REQUIRE(unit.degree == 2);
  REQUIRE(unit.coefficients == std::vector<Rat>{Rat(1)});
}

TEST_CASE("ring of the 4-cube orbifold") {
  auto ctx = context("i4.json", 7);
  RingCalculator calc(ctx.built.doc.polytope, ctx.built.lattice, ctx.schar,
                      ctx.prep.skeleton);

  SECTION("six generators and matching graded dimensions") {
    RingPresentation ring = calc.ring_presentation();
    REQUIRE(ring.generator_count == 6);
    GradedDimensions dims = calc.graded_dimensions(ring);
    REQUIRE(dims.dims == std::vector<long long>{1, 0, 6, 0, 1});
    REQUIRE(dims.matches);
    // Squares are never transverse, so every w_i^2 is a stated relation.
    int squares = 0;
    for (const auto& expo : ring.relation_monomials) {
      int total = 0, max_single = 0;
      for (int e : expo) {
        total += e;
        max_single = std::max(max_single, e);
      }
      if (total == 2 && max_single == 2) ++squares;
    }
    REQUIRE(squares == 6);
  }

  SECTION("single generators express as unit vectors in the A-basis") {
    for (int i = 0; i < 6; ++i) {
      MuClass cls = calc.mu_product({i});
      REQUIRE(cls.ok());
      REQUIRE_FALSE(cls.zero);
      REQUIRE(cls.degree == 2);
      for (size_t j = 0; j < cls.coefficients.size(); ++j)
        REQUIRE(cls.coefficients[j] == (static_cast<int>(j) == i ? Rat(1) : Rat(0)));
    }
  }

  SECTION("self-products vanish") {
    for (int i = 0; i < 6; ++i) {
      MuClass cls = calc.mu_product({i, i});
      REQUIRE(cls.ok());
      REQUIRE(cls.zero);
    }
  }

  SECTION("products are symmetric and land in H_0 with coefficient one") {
    bool saw_nonzero = false;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        MuClass ab = calc.mu_product({i, j});
        MuClass ba = calc.mu_product({j, i});
        REQUIRE(ab.ok());
        REQUIRE(ba.ok());
        REQUIRE(ab.zero == ba.zero);
        if (!ab.zero) {
          REQUIRE(ab.coefficients == ba.coefficients);
          REQUIRE(ab.coefficients == std::vector<Rat>{Rat(1)});
          saw_nonzero = true;
        }
      }
    REQUIRE(saw_nonzero);
  }

  SECTION("pairing diagnostic is emitted and nondegenerate here") {
    auto pairing = calc.pairing_diagnostic();
    REQUIRE(pairing.error.empty());
    REQUIRE(pairing.matrix.rows() == 6);
    REQUIRE(pairing.matrix.cols() == 6);
    REQUIRE(pairing.nondegenerate);
  }
}

TEST_CASE("graded dimensions satisfy Poincare symmetry") {
  auto ctx = context("i4.json", 29);
  RingCalculator calc(ctx.built.doc.polytope, ctx.built.lattice, ctx.schar,
                      ctx.prep.skeleton);
  GradedDimensions dims = calc.graded_dimensions(calc.ring_presentation());
  const int n = 4;
  for (int k = 0; k <= n; ++k) REQUIRE(dims.dims[k] == dims.dims[n - k]);
}

TEST_CASE("odd-dimensional input is rejected") {
  auto built = data("i3.json");
  PreparedObjective prep =
      prepare_objective(built.doc.polytope, built.lattice, std::nullopt, 3);
  REQUIRE_THROWS_AS(
      RingCalculator(built.doc.polytope, built.lattice, *built.doc.schar, prep.skeleton),
      std::domain_error);
}
