#include "smallorb/characteristic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace smallorb {

namespace {

// Rank of up to 64 rows given as raw bit masks.
int raw_rank(std::uint64_t* rows, int count) {
  int rank = 0;
  for (int i = 0; i < count; ++i) {
    std::uint64_t x = rows[i];
    for (int k = 0; k < rank; ++k) {
      std::uint64_t lead = rows[k] & (~rows[k] + 1);
      if (x & lead) x ^= rows[k];
    }
    if (x) rows[rank++] = x;
  }
  return rank;
}

// Checks the omission condition at one vertex given the raw facet values.
// Returns the position (0..n-1) of the first failing omission, or -1.
int vertex_violation(const std::vector<int>& vfacets, const std::vector<std::uint64_t>& raw,
                     int n) {
  std::uint64_t buf[64];
  for (int k = 0; k < n; ++k) {
    int cnt = 0;
    for (int t = 0; t < n; ++t)
      if (t != k) buf[cnt++] = raw[vfacets[t]];
    if (raw_rank(buf, cnt) != n - 1) return k;
  }
  return -1;
}

}  // namespace

ScharCheck validate_schar(const FaceLattice& lattice, const SCharFunction& cand) {
  const int n = lattice.n;
  if (cand.dim != n - 1)
    throw std::invalid_argument("validate_schar: value dimension must be n-1");
  if (static_cast<int>(cand.values.size()) != lattice.facet_count)
    throw std::invalid_argument("validate_schar: one value per facet required");
  std::vector<std::uint64_t> raw(cand.values.size());
  for (size_t j = 0; j < cand.values.size(); ++j) {
    if (cand.values[j].size() != n - 1)
      throw std::invalid_argument("validate_schar: value length mismatch at facet " +
                                  std::to_string(j));
    raw[j] = cand.values[j].raw();
  }
  ScharCheck res;
  for (int v = 0; v < lattice.vertex_count; ++v) {
    const auto& vf = lattice.vertex_facets(v);
    int k = vertex_violation(vf, raw, n);
    if (k >= 0) {
      res.ok = false;
      res.vertex = v;
      res.omitted_facet = vf[k];
      return res;
    }
  }
  return res;
}

ScharSearchResult search_schar(const FaceLattice& lattice, std::optional<std::size_t> limit) {
  const int n = lattice.n;
  if (n < 2) throw std::invalid_argument("search_schar: dimension must be at least 2");
  const int d = n - 1;
  const int m = lattice.facet_count;
  const std::uint64_t value_count = (std::uint64_t(1) << d) - 1;

  ScharSearchResult res;
  res.candidate_space = 1;
  for (int j = 0; j < m; ++j) res.candidate_space *= Int(value_count);

  // Vertices become checkable once their largest incident facet is assigned.
  std::vector<std::vector<int>> complete_at(m);
  for (int v = 0; v < lattice.vertex_count; ++v) {
    const auto& vf = lattice.vertex_facets(v);
    complete_at[vf.back()].push_back(v);
  }

  std::vector<std::uint64_t> raw(m, 0);
  std::vector<GF2Vector> assigned(m, GF2Vector(d));

  // Iterative DFS over facet index.
  std::vector<std::uint64_t> rank_at(m, 1);  // next lex rank to try per level
  int level = 0;
  while (level >= 0) {
    if (rank_at[level] > value_count) {
      rank_at[level] = 1;
      --level;
      if (level >= 0) ++rank_at[level];
      continue;
    }
    GF2Vector v = GF2Vector::from_lex_rank(d, rank_at[level]);
    assigned[level] = v;
    raw[level] = v.raw();
    ++res.nodes_visited;

    bool ok = true;
    for (int vert : complete_at[level])
      if (vertex_violation(lattice.vertex_facets(vert), raw, n) >= 0) {
        ok = false;
        break;
      }
    if (!ok) {
      ++res.pruned;
      ++rank_at[level];
      continue;
    }
    if (level == m - 1) {
      SCharFunction f;
      f.dim = d;
      f.values = assigned;
      res.found.push_back(std::move(f));
      if (limit && res.found.size() >= *limit) {
        res.exhausted = false;
        return res;
      }
      ++rank_at[level];
      continue;
    }
    ++level;
  }
  return res;
}

FaceSubgroup face_subgroup(const FaceLattice& lattice, const SCharFunction& schar,
                           int face_id) {
  const Face& f = lattice.face(face_id);
  FaceSubgroup out;
  out.face_id = face_id;
  out.span = GF2Span(schar.dim);
  for (int j : f.facet_ids) {
    out.generators.push_back(schar.values[j]);
    out.span.add(schar.values[j]);
  }
  out.member_set = out.span.members();
  return out;
}

namespace {

// Solve sum_i c_i cols[i] = target over F_2; the columns are assumed
// independent.  Returns the coefficient mask.
std::uint64_t gf2_solve(const std::vector<GF2Vector>& cols, GF2Vector target) {
  struct Row {
    GF2Vector vec;
    std::uint64_t combo;
  };
  std::vector<Row> ech;
  std::uint64_t target_combo = 0;
  for (size_t i = 0; i < cols.size(); ++i) {
    GF2Vector v = cols[i];
    std::uint64_t combo = std::uint64_t(1) << i;
    for (const auto& r : ech)
      if (v.get(r.vec.leading())) {
        v += r.vec;
        combo ^= r.combo;
      }
    if (v.is_zero()) throw std::logic_error("gf2_solve: dependent columns");
    ech.push_back({v, combo});
  }
  for (const auto& r : ech)
    if (target.get(r.vec.leading())) {
      target += r.vec;
      target_combo ^= r.combo;
    }
  if (!target.is_zero()) throw std::logic_error("gf2_solve: inconsistent system");
  return target_combo;
}

}  // namespace

FaceRestriction restrict_to_face(const FaceLattice& lattice, const SCharFunction& schar,
                                 int face_id) {
  const int n = lattice.n;
  const Face& f = lattice.face(face_id);
  const int k = n - f.dim;
  if (!(0 < k && k < n - 1))
    throw std::domain_error("restrict_to_face: codimension out of range");

  GF2Span gf(n - 1);
  for (int j : f.facet_ids) gf.add(schar.values[j]);
  if (gf.rank() != k)
    throw std::runtime_error("restrict_to_face: G_F has unexpected rank (invalid input?)");

  // Lexicographically first complementary set of standard coordinates.
  std::vector<int> comp;
  GF2Span grow = gf;
  for (int i = 0; i < n - 1 && static_cast<int>(comp.size()) < n - 1 - k; ++i) {
    GF2Vector e(n - 1);
    e.set(i, true);
    if (grow.add(e)) comp.push_back(i);
  }
  if (static_cast<int>(comp.size()) != n - 1 - k)
    throw std::runtime_error("restrict_to_face: no coordinate complement found");

  // Columns [G_F basis | e_i, i in comp] form a basis of F_2^{n-1}.
  std::vector<GF2Vector> cols = gf.echelon_basis();
  for (int i : comp) {
    GF2Vector e(n - 1);
    e.set(i, true);
    cols.push_back(e);
  }
  auto quotient_image = [&](const GF2Vector& v) {
    std::uint64_t combo = gf2_solve(cols, v);
    GF2Vector img(n - 1 - k);
    for (size_t t = 0; t < comp.size(); ++t)
      if ((combo >> (k + t)) & 1u) img.set(static_cast<int>(t), true);
    return img;
  };

  FaceRestriction out;
  out.quotient_coords = comp;
  out.vertex_map = f.vertex_ids;

  std::vector<int> inverse_vertex(lattice.vertex_count, -1);
  for (size_t i = 0; i < f.vertex_ids.size(); ++i)
    inverse_vertex[f.vertex_ids[i]] = static_cast<int>(i);

  // Facets of F are its (dim F - 1)-subfaces; each adds exactly one facet of P.
  std::vector<std::pair<int, int>> face_facets;  // (parent facet j, lattice id)
  for (int id : lattice.faces_of_dim(f.dim - 1)) {
    if (!lattice.is_subface(id, face_id)) continue;
    std::uint64_t extra = lattice.face(id).facet_bits & ~f.facet_bits;
    if (__builtin_popcountll(extra) != 1)
      throw std::runtime_error("restrict_to_face: facet of face not of codimension 1 in P");
    face_facets.emplace_back(__builtin_ctzll(extra), id);
  }
  std::sort(face_facets.begin(), face_facets.end());

  out.face_polytope.n = f.dim;
  out.face_polytope.vertex_count = static_cast<int>(f.vertex_ids.size());
  out.face_polytope.name = "face";
  out.schar.dim = n - 1 - k;
  for (auto [j, id] : face_facets) {
    std::vector<int> verts;
    for (int v : lattice.face(id).vertex_ids) verts.push_back(inverse_vertex[v]);
    std::sort(verts.begin(), verts.end());
    out.face_polytope.facets.push_back(std::move(verts));
    out.parent_facet.push_back(j);
    out.schar.values.push_back(quotient_image(schar.values[j]));
  }

  out.face_lattice = build_face_lattice(out.face_polytope);
  ScharCheck chk = validate_schar(out.face_lattice, out.schar);
  if (!chk.ok)
    throw std::runtime_error("restrict_to_face: induced function failed validation");
  return out;
}

namespace {

Int int_determinant(IntMatrix m) {
  // Fraction-free elimination tracking the determinant exactly.
  const int s = m.rows();
  if (s != m.cols()) throw std::invalid_argument("determinant: square matrix required");
  Int det = 1;
  Int denom = 1;
  for (int col = 0; col < s; ++col) {
    int p = -1;
    for (int i = col; i < s; ++i)
      if (m.at(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != col) {
      for (int j = 0; j < s; ++j) std::swap(m.at(p, j), m.at(col, j));
      det = -det;
    }
    for (int i = col + 1; i < s; ++i) {
      if (m.at(i, col) == 0) continue;
      Int a = m.at(col, col), b = m.at(i, col);
      for (int j = col; j < s; ++j) m.at(i, j) = a * m.at(i, j) - b * m.at(col, j);
      denom *= a;
    }
  }
  for (int i = 0; i < s; ++i) det *= m.at(i, i);
  return det / denom;
}

}  // namespace

IsotropyCheck validate_isotropy(const FaceLattice& lattice, const IsotropyFunction& psi) {
  const int n = lattice.n;
  if (static_cast<int>(psi.values.size()) != lattice.facet_count)
    throw std::invalid_argument("validate_isotropy: one value per facet required");
  for (size_t j = 0; j < psi.values.size(); ++j)
    if (static_cast<int>(psi.values[j].size()) != n - 1)
      throw std::invalid_argument("validate_isotropy: value length mismatch at facet " +
                                  std::to_string(j));

  IsotropyCheck res;
  res.ok = true;
  res.loose_ok = true;
  for (int v = 0; v < lattice.vertex_count && (res.ok || res.loose_ok); ++v) {
    const auto& vf = lattice.vertex_facets(v);
    for (int k = 0; k < n; ++k) {
      IntMatrix m(n - 1, n - 1);
      int r = 0;
      for (int t = 0; t < n; ++t) {
        if (t == k) continue;
        for (int c = 0; c < n - 1; ++c) m.at(r, c) = psi.values[vf[t]][c];
        ++r;
      }
      Int det = int_determinant(std::move(m));
      if (det != 1 && det != -1) {
        bool in_loose_range = (k >= 1 && k <= n - 2);
        if (res.ok) {
          std::ostringstream os;
          os << "vertex " << v << ", omitting facet " << vf[k] << ": determinant " << det;
          res.first_violation = os.str();
        }
        res.ok = false;
        if (in_loose_range) res.loose_ok = false;
      }
    }
  }
  return res;
}

SCharFunction mod2_reduction(const IsotropyFunction& psi, int n) {
  SCharFunction out;
  out.dim = n - 1;
  for (const auto& val : psi.values) {
    GF2Vector v(n - 1);
    for (int i = 0; i < n - 1; ++i)
      if (val[i] % 2 != 0) v.set(i, true);
    out.values.push_back(v);
  }
  return out;
}

}  // namespace smallorb
