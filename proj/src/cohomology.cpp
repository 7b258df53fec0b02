#include "smallorb/cohomology.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace smallorb {

std::vector<FaceHat> face_hats(const FaceLattice& lattice, const IndexedSkeleton& skel) {
  std::vector<FaceHat> hats(lattice.vertex_count);
  // Inward edges at each vertex, then the closure of their union.
  std::vector<std::vector<int>> inward(lattice.vertex_count);
  for (size_t e = 0; e < skel.directed_edges.size(); ++e)
    inward[skel.directed_edges[e].second].push_back(skel.edge_face_ids[e]);

  for (int v = 0; v < lattice.vertex_count; ++v) {
    FaceHat h;
    h.vertex = v;
    if (inward[v].empty()) {
      h.face_id = lattice.vertex_face(v);
      h.dim = 0;
    } else {
      // Smallest face containing the inward edges: facets containing all of
      // them (each edge's facet set intersected).
      std::uint64_t bits = lattice.face(inward[v][0]).facet_bits;
      for (int e : inward[v]) bits &= lattice.face(e).facet_bits;
      int id = lattice.face_with_facets(bits);
      if (id < 0)
        throw std::logic_error("face_hats: closure of inward edges is not a face");
      h.face_id = id;
      h.dim = lattice.face(id).dim;
    }
    if (h.dim != skel.ind[v])
      throw std::logic_error("face_hats: dim F-hat differs from the vertex index");
    hats[v] = h;
  }
  return hats;
}

int intersection_face(const FaceLattice& lattice, int f, int g) {
  const auto& va = lattice.face(f).vertex_ids;
  const auto& vb = lattice.face(g).vertex_ids;
  std::vector<int> common;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                        std::back_inserter(common));
  if (common.empty()) return -1;
  for (const auto& face : lattice.faces())
    if (face.vertex_ids == common) return face.id;
  return -1;
}

bool transverse(const FaceLattice& lattice, int f, int g) {
  int meet = intersection_face(lattice, f, g);
  if (meet < 0) return false;
  int cf = lattice.n - lattice.face(f).dim;
  int cg = lattice.n - lattice.face(g).dim;
  int cm = lattice.n - lattice.face(meet).dim;
  return cm == cf + cg;
}

namespace {

// All ways to pair up the elements of `items`; calls visit(pairs) until it
// returns true.
bool for_each_matching(std::vector<int> items,
                       const std::function<bool(const std::vector<std::pair<int, int>>&)>& visit,
                       std::vector<std::pair<int, int>>& acc) {
  if (items.empty()) return visit(acc);
  int first = items[0];
  for (size_t i = 1; i < items.size(); ++i) {
    std::vector<int> rest;
    for (size_t j = 1; j < items.size(); ++j)
      if (j != i) rest.push_back(items[j]);
    acc.emplace_back(first, items[i]);
    if (for_each_matching(rest, visit, acc)) return true;
    acc.pop_back();
  }
  return false;
}

}  // namespace

TransversalityReport check_transversality_properties(const FaceLattice& lattice,
                                                     const IndexedSkeleton& skel) {
  TransversalityReport rep;
  const int n = lattice.n;
  if (n % 2 != 0)
    throw std::domain_error("check_transversality_properties: even dimension required");
  std::vector<FaceHat> hats = face_hats(lattice, skel);
  std::set<int> fhat_faces;
  for (const auto& h : hats) fhat_faces.insert(h.face_id);

  // Property 1: unique transverse complement through each vertex of every
  // proper even-dimensional face.
  for (const auto& f : lattice.faces()) {
    if (f.dim <= 0 || f.dim >= n || f.dim % 2 != 0) continue;
    for (int u : f.vertex_ids) {
      int count = 0;
      for (int gid : lattice.faces_of_dim(n - f.dim)) {
        if (!transverse(lattice, f.id, gid)) continue;
        if (intersection_face(lattice, f.id, gid) == lattice.vertex_face(u)) ++count;
      }
      if (count != 1) {
        std::ostringstream os;
        os << "face " << f.id << " (dim " << f.dim << "), vertex " << u << ": " << count
           << " transverse complements, expected 1";
        rep.property1_failures.push_back(os.str());
      }
    }
  }

  // Property 2 and the F-hat-form decomposition of even-codimension faces.
  for (const auto& f : lattice.faces()) {
    int codim = n - f.dim;
    if (codim <= 0 || codim >= n || codim % 2 != 0) continue;

    auto pair_face = [&](int a, int b) {
      std::uint64_t bits =
          (std::uint64_t(1) << f.facet_ids[a]) | (std::uint64_t(1) << f.facet_ids[b]);
      return lattice.face_with_facets(bits);
    };

    std::vector<int> idx(f.facet_ids.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::vector<std::pair<int, int>> acc;

    bool plain = for_each_matching(
        idx,
        [&](const std::vector<std::pair<int, int>>& pairs) {
          for (auto [a, b] : pairs)
            if (pair_face(a, b) < 0) return false;
          return true;
        },
        acc);
    if (!plain) {
      rep.property2_failures.push_back("face " + std::to_string(f.id) +
                                       ": no pairing of its facets into codim-2 faces");
    }

    acc.clear();
    bool fhat_form = for_each_matching(
        idx,
        [&](const std::vector<std::pair<int, int>>& pairs) {
          for (auto [a, b] : pairs) {
            int pf = pair_face(a, b);
            if (pf < 0 || !fhat_faces.count(pf)) return false;
          }
          return true;
        },
        acc);
    if (!fhat_form) {
      std::string msg = "face " + std::to_string(f.id) + " (codim " +
                        std::to_string(codim) +
                        "): no decomposition into codim-2 F-hat faces";
      if (fhat_faces.count(f.id))
        rep.fhat_basis_failures.push_back(msg);
      else
        rep.fhat_counterexamples.push_back(msg);
    }
  }
  return rep;
}

RingCalculator::RingCalculator(const SimplePolytope& p, const FaceLattice& lattice,
                               const SCharFunction& schar, const IndexedSkeleton& skel)
    : lattice_(lattice), skel_(skel), n_(lattice.n) {
  if (n_ % 2 != 0) throw std::domain_error("RingCalculator: even dimension required");
  h_ = h_vector(lattice);
  hats_ = face_hats(lattice, skel);
  delta_ = build_quotient_complex(lattice, schar);
  for (int v = 0; v < lattice.vertex_count; ++v)
    if (skel.ind[v] == n_ - 2) generator_vertices_.push_back(v);
  if (static_cast<long long>(generator_vertices_.size()) != h_[2])
    throw std::logic_error("RingCalculator: generator count differs from h_2");
}

const FundamentalCycle& RingCalculator::cycle_of_face(int face_id) const {
  auto it = cycle_cache_.find(face_id);
  if (it == cycle_cache_.end())
    it = cycle_cache_.emplace(face_id, face_fundamental_cycle(delta_, face_id)).first;
  return it->second;
}

void RingCalculator::ensure_basis(int degree) const {
  if (basis_vertices_.count(degree)) return;
  std::vector<int> verts;
  std::vector<SparseRatCol> cycles;
  for (int v = 0; v < lattice_.vertex_count; ++v) {
    if (skel_.ind[v] != degree) continue;
    const FundamentalCycle& c = cycle_of_face(hats_[v].face_id);
    if (!c.ok)
      throw std::runtime_error("basis cycle over F-hat of vertex " + std::to_string(v) +
                               " failed: " + c.error);
    verts.push_back(v);
    cycles.push_back(c.chain);
  }
  basis_vertices_[degree] = std::move(verts);
  basis_cycles_[degree] = std::move(cycles);
}

const std::vector<int>& RingCalculator::basis_vertices(int degree) const {
  ensure_basis(degree);
  return basis_vertices_.at(degree);
}

MuClass RingCalculator::mu_faces(const std::vector<int>& face_ids) const {
  MuClass out;
  int running = lattice_.top_face();
  int total_codim = 0;
  for (int fid : face_ids) {
    total_codim += n_ - lattice_.face(fid).dim;
    if (!transverse(lattice_, running, fid)) {
      out.zero = true;
      out.degree = n_ - total_codim;
      return out;
    }
    running = intersection_face(lattice_, running, fid);
  }
  out.degree = n_ - total_codim;
  if (out.degree < 0) {
    out.zero = true;
    return out;
  }

  const FundamentalCycle& cyc = cycle_of_face(running);
  if (!cyc.ok) {
    out.error = "fundamental cycle of face " + std::to_string(running) + ": " + cyc.error;
    return out;
  }
  ensure_basis(out.degree);
  out.basis_vertices = basis_vertices_.at(out.degree);
  auto lambda =
      express_in_basis(delta_, out.degree, cyc.chain, basis_cycles_.at(out.degree));
  if (!lambda) {
    out.error = "class of face " + std::to_string(running) +
                " is not expressible in the A-basis (basis claim violated)";
    return out;
  }
  out.coefficients = *lambda;
  bool all_zero = true;
  for (const auto& c : out.coefficients)
    if (c != 0) all_zero = false;
  out.zero = all_zero;
  return out;
}

MuClass RingCalculator::mu_product(const std::vector<int>& generator_indices) const {
  std::vector<int> faces;
  for (int gi : generator_indices) {
    if (gi < 0 || gi >= static_cast<int>(generator_vertices_.size()))
      throw std::invalid_argument("mu_product: generator index out of range");
    faces.push_back(hats_[generator_vertices_[gi]].face_id);
  }
  return mu_faces(faces);
}

namespace {

// Monomials of the given degree over r variables, as exponent vectors in
// lexicographic order.
void monomials_of_degree(int r, int degree, std::vector<std::vector<int>>& out) {
  std::vector<int> expo(r, 0);
  std::function<void(int, int)> rec = [&](int var, int remaining) {
    if (var == r - 1) {
      expo[var] = remaining;
      out.push_back(expo);
      expo[var] = 0;
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      expo[var] = e;
      rec(var + 1, remaining - e);
    }
    expo[var] = 0;
  };
  if (r == 0) {
    if (degree == 0) out.push_back({});
    return;
  }
  rec(0, degree);
}

std::vector<int> expand_monomial(const std::vector<int>& expo) {
  std::vector<int> gens;
  for (size_t i = 0; i < expo.size(); ++i)
    for (int t = 0; t < expo[i]; ++t) gens.push_back(static_cast<int>(i));
  return gens;
}

}  // namespace

RingPresentation RingCalculator::ring_presentation() const {
  RingPresentation ring;
  ring.generator_count = static_cast<int>(generator_vertices_.size());
  ring.generator_vertices = generator_vertices_;
  ring.implied_zero_above_degree = n_ / 2;

  for (int deg = 1; deg <= n_ / 2; ++deg) {
    std::vector<std::vector<int>> monos;
    monomials_of_degree(ring.generator_count, deg, monos);

    // Evaluate each monomial; bucket the nonzero ones by their class.
    std::vector<std::pair<std::vector<int>, std::vector<Rat>>> nonzero;
    for (const auto& expo : monos) {
      MuClass cls = mu_product(expand_monomial(expo));
      if (!cls.ok()) throw std::runtime_error("ring_presentation: " + cls.error);
      if (cls.zero)
        ring.relation_monomials.push_back(expo);
      else
        nonzero.emplace_back(expo, cls.coefficients);
    }
    for (size_t a = 0; a < nonzero.size(); ++a)
      for (size_t b = a + 1; b < nonzero.size(); ++b)
        if (nonzero[a].second == nonzero[b].second)
          ring.relation_binomials.emplace_back(nonzero[a].first, nonzero[b].first);
  }
  return ring;
}

GradedDimensions RingCalculator::graded_dimensions(const RingPresentation& ring) const {
  GradedDimensions out;
  out.dims.assign(n_ + 1, 0);
  out.expected.assign(n_ + 1, 0);
  out.expected[0] = 1;
  out.expected[n_] = 1;
  for (int k = 2; k < n_; k += 2) out.expected[k] = h_[k];

  const int r = ring.generator_count;
  for (int l = 0; 2 * l <= n_; ++l) {
    std::vector<std::vector<int>> monos;
    monomials_of_degree(r, l, monos);
    std::map<std::vector<int>, int> mono_index;
    for (size_t i = 0; i < monos.size(); ++i) mono_index[monos[i]] = static_cast<int>(i);

    std::vector<std::vector<std::pair<int, Rat>>> rows;
    auto add_multiples = [&](const std::vector<int>& base,
                             const std::optional<std::vector<int>>& other) {
      int bd = 0;
      for (int e : base) bd += e;
      if (bd > l) return;
      std::vector<std::vector<int>> cof;
      monomials_of_degree(r, l - bd, cof);
      for (const auto& c : cof) {
        std::vector<int> m1(base);
        for (int i = 0; i < r; ++i) m1[i] += c[i];
        std::vector<std::pair<int, Rat>> row{{mono_index.at(m1), Rat(1)}};
        if (other) {
          std::vector<int> m2(*other);
          for (int i = 0; i < r; ++i) m2[i] += c[i];
          if (m2 == m1) continue;
          row.emplace_back(mono_index.at(m2), Rat(-1));
        }
        rows.push_back(std::move(row));
      }
    };
    for (const auto& mono : ring.relation_monomials) add_multiples(mono, std::nullopt);
    for (const auto& [m1, m2] : ring.relation_binomials) add_multiples(m1, m2);

    RatMatrix mat(static_cast<int>(rows.size()), static_cast<int>(monos.size()));
    for (size_t i = 0; i < rows.size(); ++i)
      for (const auto& [j, v] : rows[i]) mat.at(static_cast<int>(i), j) += v;
    long long rank = rows.empty() ? 0 : rational_rank(std::move(mat));
    out.dims[2 * l] = static_cast<long long>(monos.size()) - rank;
  }
  out.matches = (out.dims == out.expected);
  return out;
}

RingCalculator::PairingDiagnostic RingCalculator::pairing_diagnostic() const {
  PairingDiagnostic diag;
  ensure_basis(2);
  const auto& a2 = basis_vertices_.at(2);
  const int r = static_cast<int>(generator_vertices_.size());
  diag.matrix = RatMatrix(r, static_cast<int>(a2.size()));
  for (int i = 0; i < r; ++i)
    for (size_t j = 0; j < a2.size(); ++j) {
      MuClass cls =
          mu_faces({hats_[generator_vertices_[i]].face_id, hats_[a2[j]].face_id});
      if (!cls.ok()) {
        diag.error = cls.error;
        return diag;
      }
      if (cls.zero) continue;
      if (cls.coefficients.size() != 1) {
        diag.error = "pairing product landed outside H_0";
        return diag;
      }
      diag.matrix.at(i, static_cast<int>(j)) = cls.coefficients[0];
    }
  RatMatrix copy = diag.matrix;
  diag.nondegenerate = (rational_rank(std::move(copy)) == r);
  return diag;
}

}  // namespace smallorb
