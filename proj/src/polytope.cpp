#include "smallorb/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace smallorb {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ValidationReport validate_simple(const SimplePolytope& p) {
  ValidationReport rep;
  auto fail = [&rep](const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(msg);
  };

  if (p.n < 1) fail("dimension must be positive");
  if (p.vertex_count < 1) fail("vertex count must be positive");

  const int m = static_cast<int>(p.facets.size());
  std::vector<std::vector<int>> facets(m);
  for (int j = 0; j < m; ++j) {
    facets[j] = sorted_unique(p.facets[j]);
    if (facets[j].empty()) fail("facet " + std::to_string(j) + " is empty");
    for (int v : facets[j])
      if (v < 0 || v >= p.vertex_count)
        fail("facet " + std::to_string(j) + " references vertex " + std::to_string(v) +
             " out of range");
  }

  // Simplicity: every vertex lies in exactly n facets.
  std::vector<int> count(p.vertex_count, 0);
  for (const auto& f : facets)
    for (int v : f)
      if (v >= 0 && v < p.vertex_count) ++count[v];
  for (int v = 0; v < p.vertex_count; ++v)
    if (count[v] != p.n)
      fail("vertex " + std::to_string(v) + " lies in " + std::to_string(count[v]) +
           " facets, expected " + std::to_string(p.n));

  // Facets form an antichain.
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (a == b || facets[a].empty() || facets[b].empty()) continue;
      if (std::includes(facets[a].begin(), facets[a].end(), facets[b].begin(),
                        facets[b].end()))
        fail("facet " + std::to_string(a) + " contains facet " + std::to_string(b));
    }

  if (!rep.ok) return rep;

  // Connectivity of the 1-skeleton: two vertices are adjacent when they
  // share exactly n-1 facets.
  std::vector<std::vector<int>> vfac(p.vertex_count);
  for (int j = 0; j < m; ++j)
    for (int v : facets[j]) vfac[v].push_back(j);
  UnionFind uf(p.vertex_count);
  for (int u = 0; u < p.vertex_count; ++u)
    for (int v = u + 1; v < p.vertex_count; ++v)
      if (static_cast<int>(intersect_sorted(vfac[u], vfac[v]).size()) == p.n - 1)
        uf.unite(u, v);
  for (int v = 1; v < p.vertex_count; ++v)
    if (uf.find(v) != uf.find(0)) {
      fail("1-skeleton is disconnected (vertex " + std::to_string(v) +
           " unreachable from vertex 0)");
      break;
    }

  if (p.coords) {
    if (static_cast<int>(p.coords->size()) != p.vertex_count)
      fail("coordinate row count does not match vertex count");
    else
      for (int v = 0; v < p.vertex_count; ++v)
        if (static_cast<int>((*p.coords)[v].size()) != p.n)
          fail("coordinate row " + std::to_string(v) + " has wrong length");
  }
  return rep;
}

int FaceLattice::face_with_facets(std::uint64_t facet_bits) const {
  for (const auto& f : faces_)
    if (f.facet_bits == facet_bits) return f.id;
  return -1;
}

int FaceLattice::edge_between(int u, int v) const {
  for (int id : by_dim_[1]) {
    const auto& vs = faces_[id].vertex_ids;
    if (vs.size() == 2 && ((vs[0] == u && vs[1] == v) || (vs[0] == v && vs[1] == u)))
      return id;
  }
  return -1;
}

std::vector<std::pair<int, int>> FaceLattice::containment_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& a : faces_)
    for (const auto& b : faces_) {
      if (a.id == b.id) continue;
      if (is_subface(a.id, b.id)) out.emplace_back(a.id, b.id);
    }
  return out;
}

FaceLattice build_face_lattice(const SimplePolytope& p) {
  const int m = static_cast<int>(p.facets.size());
  if (m > 64) throw std::invalid_argument("build_face_lattice: at most 64 facets supported");

  std::vector<std::vector<int>> facets(m);
  for (int j = 0; j < m; ++j) facets[j] = sorted_unique(p.facets[j]);

  std::vector<int> all_vertices(p.vertex_count);
  std::iota(all_vertices.begin(), all_vertices.end(), 0);

  // Closure of a vertex set: all facets containing it.
  auto closure_bits = [&](const std::vector<int>& verts) {
    std::uint64_t bits = 0;
    for (int j = 0; j < m; ++j)
      if (std::includes(facets[j].begin(), facets[j].end(), verts.begin(), verts.end()))
        bits |= (std::uint64_t(1) << j);
    return bits;
  };

  struct Node {
    std::uint64_t bits;
    std::vector<int> verts;
  };
  std::map<std::uint64_t, std::vector<int>> found;  // closed facet set -> vertices
  std::vector<std::uint64_t> queue;

  std::uint64_t top_bits = closure_bits(all_vertices);
  found[top_bits] = all_vertices;
  queue.push_back(top_bits);

  // BFS downward: refine each face by one more facet.
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    std::uint64_t bits = queue[qi];
    std::vector<int> verts = found[bits];
    for (int j = 0; j < m; ++j) {
      if (bits & (std::uint64_t(1) << j)) continue;
      std::vector<int> w = intersect_sorted(verts, facets[j]);
      if (w.empty()) continue;
      std::uint64_t cb = closure_bits(w);
      if (__builtin_popcountll(cb) > p.n)
        throw std::runtime_error(
            "build_face_lattice: nonempty intersection of more than n facets "
            "contradicts simplicity");
      if (!found.count(cb)) {
        found[cb] = w;
        queue.push_back(cb);
      }
    }
  }

  FaceLattice lat;
  lat.n = p.n;
  lat.vertex_count = p.vertex_count;
  lat.facet_count = m;
  lat.by_dim_.assign(p.n + 1, {});
  lat.vertex_face_.assign(p.vertex_count, -1);
  lat.vertex_facets_.assign(p.vertex_count, {});
  for (int j = 0; j < m; ++j)
    for (int v : facets[j]) lat.vertex_facets_[v].push_back(j);

  // Deterministic face ordering: by dimension descending, facets of the
  // top dimension in input order, then by facet set.
  std::vector<std::pair<std::uint64_t, std::vector<int>>> items(found.begin(), found.end());
  std::sort(items.begin(), items.end(), [&](const auto& a, const auto& b) {
    int da = __builtin_popcountll(a.first), db = __builtin_popcountll(b.first);
    if (da != db) return da < db;
    if (da == 1)  // facets in input order
      return __builtin_ctzll(a.first) < __builtin_ctzll(b.first);
    return a.second < b.second;  // by vertex set, keeps vertices in index order
  });

  for (auto& [bits, verts] : items) {
    Face f;
    f.id = static_cast<int>(lat.faces_.size());
    f.facet_bits = bits;
    for (int j = 0; j < m; ++j)
      if (bits & (std::uint64_t(1) << j)) f.facet_ids.push_back(j);
    f.vertex_ids = verts;
    f.dim = p.n - static_cast<int>(f.facet_ids.size());
    lat.by_dim_[f.dim].push_back(f.id);
    if (f.dim == 0) {
      if (verts.size() != 1)
        throw std::runtime_error("build_face_lattice: codimension-n face with " +
                                 std::to_string(verts.size()) + " vertices");
      lat.vertex_face_[verts[0]] = f.id;
    }
    lat.faces_.push_back(std::move(f));
  }
  // Dimension-0 faces in vertex order for stable ids.
  std::sort(lat.by_dim_[0].begin(), lat.by_dim_[0].end(), [&](int a, int b) {
    return lat.faces_[a].vertex_ids[0] < lat.faces_[b].vertex_ids[0];
  });
  return lat;
}

std::vector<long long> f_vector(const FaceLattice& lattice) {
  std::vector<long long> f(lattice.n, 0);
  for (int j = 0; j < lattice.n; ++j)
    f[j] = static_cast<long long>(lattice.faces_of_dim(lattice.n - 1 - j).size());
  return f;
}

std::vector<long long> h_vector_from_f(const std::vector<long long>& f, int n) {
  // Expand (t-1)^n + sum_{j=0}^{n-1} f_j (t-1)^{n-1-j}; h_i = coeff of t^{n-i}.
  std::vector<long long> poly(n + 1, 0);  // poly[k] = coeff of t^k
  auto add_binomial = [&poly](int power, long long scale) {
    // scale * (t-1)^power
    long long coef = 1;
    for (int k = power; k >= 0; --k) {
      // C(power, k) * (-1)^(power-k)
      poly[k] += scale * coef * (((power - k) % 2) ? -1 : 1);
      coef = coef * k / (power - k + 1);
    }
  };
  add_binomial(n, 1);
  for (int j = 0; j < n; ++j) add_binomial(n - 1 - j, f[j]);
  std::vector<long long> h(n + 1, 0);
  for (int i = 0; i <= n; ++i) h[i] = poly[n - i];
  return h;
}

std::vector<long long> h_vector(const FaceLattice& lattice) {
  return h_vector_from_f(f_vector(lattice), lattice.n);
}

SkeletonGraph skeleton_graph(const FaceLattice& lattice) {
  SkeletonGraph g;
  g.vertex_count = lattice.vertex_count;
  for (int id : lattice.faces_of_dim(1)) {
    const auto& vs = lattice.face(id).vertex_ids;
    if (vs.size() != 2)
      throw std::runtime_error("skeleton_graph: dimension-1 face " + std::to_string(id) +
                               " has " + std::to_string(vs.size()) + " vertices");
    g.edges.emplace_back(vs[0], vs[1]);
    g.edge_face_ids.push_back(id);
  }
  return g;
}

}  // namespace smallorb
