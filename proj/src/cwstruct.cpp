#include "smallorb/cwstruct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace smallorb {

int IndexedSkeleton::top_vertex() const {
  int best = 0;
  for (size_t v = 1; v < rank.size(); ++v)
    if (rank[v] > rank[best]) best = static_cast<int>(v);
  return best;
}

namespace {

std::vector<int> ranks_from_objective(const SimplePolytope& p, const Objective& obj) {
  const int vc = p.vertex_count;
  if (obj.vertex_order) {
    const auto& ord = *obj.vertex_order;
    if (static_cast<int>(ord.size()) != vc)
      throw std::invalid_argument("objective: vertex order must list every vertex once");
    std::vector<int> rank(vc, -1);
    for (int pos = 0; pos < vc; ++pos) {
      int v = ord[pos];
      if (v < 0 || v >= vc || rank[v] != -1)
        throw std::invalid_argument("objective: vertex order is not a permutation");
      rank[v] = pos;
    }
    return rank;
  }
  if (!obj.functional) throw std::invalid_argument("objective: functional or order required");
  if (!p.coords)
    throw std::invalid_argument("objective: functional requires vertex coordinates");
  if (static_cast<int>(obj.functional->size()) != p.n)
    throw std::invalid_argument("objective: functional length must equal the dimension");

  std::vector<Rat> value(vc, Rat(0));
  for (int v = 0; v < vc; ++v)
    for (int j = 0; j < p.n; ++j) value[v] += (*obj.functional)[j] * (*p.coords)[v][j];

  std::vector<int> order(vc);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return value[a] < value[b]; });
  for (int pos = 0; pos + 1 < vc; ++pos)
    if (value[order[pos]] == value[order[pos + 1]])
      throw NonGenericObjective("objective does not distinguish vertices " +
                                std::to_string(order[pos]) + " and " +
                                std::to_string(order[pos + 1]));
  std::vector<int> rank(vc);
  for (int pos = 0; pos < vc; ++pos) rank[order[pos]] = pos;
  return rank;
}

// Top two vertices of a face under the rank order.
std::pair<int, int> face_top_two(const Face& f, const std::vector<int>& rank) {
  int best = -1, second = -1;
  for (int v : f.vertex_ids) {
    if (best < 0 || rank[v] > rank[best]) {
      second = best;
      best = v;
    } else if (second < 0 || rank[v] > rank[second]) {
      second = v;
    }
  }
  return {best, second};
}

}  // namespace

IndexedSkeleton orient_skeleton(const SimplePolytope& p, const FaceLattice& lattice,
                                const Objective& obj) {
  IndexedSkeleton skel;
  skel.rank = ranks_from_objective(p, obj);
  skel.ind.assign(p.vertex_count, 0);

  for (int id : lattice.faces_of_dim(1)) {
    const auto& vs = lattice.face(id).vertex_ids;
    int tail = vs[0], head = vs[1];
    if (skel.rank[tail] > skel.rank[head]) std::swap(tail, head);
    skel.directed_edges.emplace_back(tail, head);
    skel.edge_face_ids.push_back(id);
    ++skel.ind[head];
  }

  // Index distribution must match the reversed h-vector.
  std::vector<long long> h = h_vector(lattice);
  std::vector<long long> dist(p.n + 1, 0);
  for (int v = 0; v < p.vertex_count; ++v) {
    if (skel.ind[v] > p.n)
      throw NonGenericObjective("vertex " + std::to_string(v) + " has index " +
                                std::to_string(skel.ind[v]) + " > n");
    ++dist[skel.ind[v]];
  }
  for (int i = 0; i <= p.n; ++i)
    if (dist[i] != h[p.n - i]) {
      std::ostringstream os;
      os << "index distribution mismatch: " << dist[i] << " vertices of index " << i
         << ", expected h_" << (p.n - i) << " = " << h[p.n - i];
      throw NonGenericObjective(os.str());
    }

  // On every face the top two vertices are adjacent within that face.
  for (const auto& f : lattice.faces()) {
    if (f.dim < 1) continue;
    auto [u, w] = face_top_two(f, skel.rank);
    int e = lattice.edge_between(u, w);
    if (e < 0 || !lattice.is_subface(e, f.id))
      throw NonGenericObjective("top two vertices of face " + std::to_string(f.id) +
                                " are not adjacent in the face");
  }
  return skel;
}

namespace {

struct LevelError {
  int level;
  std::string what;
};

void level_fail(int level, const std::string& what) {
  throw NonGenericObjective("Q^" + std::to_string(level) + ": " + what);
}

}  // namespace

CellStructure build_cell_structure_raw(const FaceLattice& lattice,
                                       const IndexedSkeleton& skel) {
  const int n = lattice.n;
  std::vector<long long> h = h_vector(lattice);
  auto h_tail = [&h, n](int k) {
    long long s = 0;
    for (int i = k; i <= n; ++i) s += h[i];
    return s;
  };

  CellStructure cs;
  cs.records.assign(n + 1, {});
  cs.q_levels.assign(n + 1, {});
  cs.q_levels[n] = {lattice.top_face()};

  for (int k = n; k >= 1; --k) {
    const auto& level = cs.q_levels[k];
    if (level.empty()) level_fail(k, "empty level");

    // One record per k-face: its top vertex and top edge.
    std::set<int> tops;
    for (int gid : level) {
      const Face& g = lattice.face(gid);
      auto [v, y] = face_top_two(g, skel.rank);
      int e = lattice.edge_between(v, y);
      if (e < 0 || !lattice.is_subface(e, gid))
        level_fail(k, "top edge of face " + std::to_string(gid) + " missing");
      if (!tops.insert(v).second)
        level_fail(k, "two k-faces share the top vertex " + std::to_string(v));
      CellRecord rec;
      rec.dim = k;
      rec.vertex = v;
      rec.second_vertex = y;
      rec.edge_face_id = e;
      rec.carrier_face_id = gid;
      cs.records[k].push_back(rec);
    }

    // 1-skeleton of Q^k: edges contained in some member face.
    std::vector<int> q_edges;
    for (int id : lattice.faces_of_dim(1))
      for (int gid : level)
        if (lattice.is_subface(id, gid)) {
          q_edges.push_back(id);
          break;
        }

    // Vertices covered, connectivity, and the index-k census.
    std::vector<char> seen(lattice.vertex_count, 0);
    for (int gid : level)
      for (int v : lattice.face(gid).vertex_ids) seen[v] = 1;
    if (std::count(seen.begin(), seen.end(), char(1)) != lattice.vertex_count)
      level_fail(k, "level does not contain every vertex of P");

    std::vector<int> ind_q(lattice.vertex_count, 0);
    std::vector<int> parent(lattice.vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int id : q_edges) {
      const auto& vs = lattice.face(id).vertex_ids;
      int head = skel.higher(vs[0], vs[1]) ? vs[0] : vs[1];
      ++ind_q[head];
      parent[find(vs[0])] = find(vs[1]);
    }
    for (int v = 1; v < lattice.vertex_count; ++v)
      if (find(v) != find(0)) level_fail(k, "level is disconnected");

    long long index_k_count = 0;
    for (int v = 0; v < lattice.vertex_count; ++v)
      if (ind_q[v] == k) ++index_k_count;
    for (const auto& rec : cs.records[k])
      if (ind_q[rec.vertex] != k)
        level_fail(k, "top vertex " + std::to_string(rec.vertex) + " has Q-index " +
                          std::to_string(ind_q[rec.vertex]) + ", expected " +
                          std::to_string(k));
    if (index_k_count != static_cast<long long>(level.size()))
      level_fail(k, "index-k vertices and k-faces disagree");

    if (static_cast<long long>(cs.records[k].size()) != h_tail(k))
      level_fail(k, "cell count " + std::to_string(cs.records[k].size()) +
                        " differs from sum_{i>=k} h_i = " + std::to_string(h_tail(k)));

    if (k == 1) break;

    // Q^{k-1} = Q^k minus the designated open sets U_{e_v}: the (k-1)-faces
    // of the member faces that contain none of this level's designated
    // edges.  The exclusion is global over the level; an edge designated in
    // one carrier may well lie in a face of another.
    std::vector<int> level_edges;
    for (const auto& rec : cs.records[k]) level_edges.push_back(rec.edge_face_id);
    std::set<int> next;
    for (const auto& rec : cs.records[k])
      for (int hid : lattice.faces_of_dim(k - 1)) {
        if (!lattice.is_subface(hid, rec.carrier_face_id)) continue;
        bool blocked = false;
        for (int e : level_edges)
          if (lattice.is_subface(e, hid)) {
            blocked = true;
            break;
          }
        if (!blocked) next.insert(hid);
      }
    cs.q_levels[k - 1].assign(next.begin(), next.end());
  }

  // Q^1 is a spanning tree; Q^0 = V(P).
  cs.tree_edges = cs.q_levels[1];
  if (static_cast<int>(cs.tree_edges.size()) != lattice.vertex_count - 1)
    level_fail(1, "spanning set has " + std::to_string(cs.tree_edges.size()) +
                      " edges, expected " + std::to_string(lattice.vertex_count - 1));

  for (int v = 0; v < lattice.vertex_count; ++v) {
    CellRecord rec;
    rec.dim = 0;
    rec.vertex = v;
    rec.carrier_face_id = lattice.vertex_face(v);
    cs.records[0].push_back(rec);
    cs.q_levels[0].push_back(lattice.vertex_face(v));
  }
  if (h_tail(0) != lattice.vertex_count)
    level_fail(0, "h-vector sum does not count the vertices");
  return cs;
}

CellStructure build_cell_structure(const FaceLattice& lattice, const SCharFunction& schar,
                                   const IndexedSkeleton& skel) {
  ScharCheck chk = validate_schar(lattice, schar);
  if (!chk.ok)
    throw std::invalid_argument(
        "build_cell_structure: characteristic function fails at vertex " +
        std::to_string(chk.vertex));
  return build_cell_structure_raw(lattice, skel);
}

int boundary_degree(const FaceLattice& lattice, const CellRecord& cell_v,
                    const CellRecord& cell_w) {
  const int k = cell_v.dim;
  if (k < 2 || cell_w.dim != k - 1)
    throw std::invalid_argument("boundary_degree: dimensions must be (k, k-1) with k >= 2");
  if (k % 2 == 0) return 0;
  const int fv = cell_v.carrier_face_id;
  const int fw = cell_w.carrier_face_id;
  if (!lattice.is_subface(fw, fv)) return 0;
  if (lattice.face(fw).facet_ids.size() != lattice.face(fv).facet_ids.size() + 1)
    return 0;  // not a facet of F_v^k
  if (lattice.is_subface(cell_v.edge_face_id, fw)) return 0;  // meets U_{e_v}
  return 2;
}

ChainComplexZ build_chain_complex(const FaceLattice& lattice, const IndexedSkeleton& skel,
                                  const CellStructure& cells) {
  const int n = lattice.n;
  ChainComplexZ cc;
  cc.ranks.resize(n + 1);
  for (int k = 0; k <= n; ++k) cc.ranks[k] = static_cast<int>(cells.records[k].size());

  // d_1: signed incidence of the tree edges, +1 at the phi-larger endpoint.
  IntMatrix d1(cc.ranks[0], cc.ranks[1]);
  for (int c = 0; c < cc.ranks[1]; ++c) {
    const auto& rec = cells.records[1][c];
    d1.at(rec.vertex, c) += 1;
    d1.at(rec.second_vertex, c) -= 1;
  }
  cc.boundaries.push_back(std::move(d1));

  for (int k = 2; k <= n; ++k) {
    IntMatrix dk(cc.ranks[k - 1], cc.ranks[k]);
    for (int c = 0; c < cc.ranks[k]; ++c)
      for (int r = 0; r < cc.ranks[k - 1]; ++r)
        dk.at(r, c) = boundary_degree(lattice, cells.records[k][c], cells.records[k - 1][r]);
    cc.boundaries.push_back(std::move(dk));
  }

  for (int k = 2; k <= n; ++k)
    if (!cc.d(k - 1).multiply(cc.d(k)).is_zero())
      throw std::logic_error("build_chain_complex: d_" + std::to_string(k - 1) + " d_" +
                             std::to_string(k) + " != 0");
  return cc;
}

ChainComplexZ build_toric_chain_complex(const FaceLattice& lattice,
                                        const IndexedSkeleton& skel) {
  const int n = lattice.n;
  CellStructure cells = build_cell_structure_raw(lattice, skel);
  std::vector<long long> h = h_vector(lattice);
  auto h_tail = [&h, n](int k) {
    long long s = 0;
    for (int i = k; i <= n; ++i) s += h[i];
    return s;
  };

  ChainComplexZ cc;
  cc.ranks.assign(2 * n, 0);
  cc.ranks[0] = static_cast<int>(h_tail(0));
  for (int l = 1; l <= n; ++l) cc.ranks[2 * l - 1] = static_cast<int>(h_tail(l));

  IntMatrix d1(cc.ranks[0], cc.ranks[1]);
  for (int c = 0; c < cc.ranks[1]; ++c) {
    const auto& rec = cells.records[1][c];
    d1.at(rec.vertex, c) += 1;
    d1.at(rec.second_vertex, c) -= 1;
  }
  cc.boundaries.push_back(std::move(d1));
  for (int k = 2; k <= 2 * n - 1; ++k)
    cc.boundaries.emplace_back(cc.ranks[k - 1], cc.ranks[k]);
  return cc;
}

PreparedObjective prepare_objective(const SimplePolytope& p, const FaceLattice& lattice,
                                    const std::optional<Objective>& given,
                                    std::uint64_t seed) {
  if (given) {
    PreparedObjective out;
    out.objective = *given;
    out.skeleton = orient_skeleton(p, lattice, out.objective);
    out.cells = build_cell_structure_raw(lattice, out.skeleton);
    return out;
  }
  if (!p.coords)
    throw std::invalid_argument(
        "prepare_objective: no objective given and the polytope has no coordinates");

  std::mt19937_64 rng(seed);
  const int max_attempts = 64;
  std::string last_error;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    long long box = 8LL << std::min(attempt / 8, 20);
    std::uniform_int_distribution<long long> dist(-box, box);
    Objective obj;
    obj.functional = std::vector<Rat>();
    for (int j = 0; j < p.n; ++j) obj.functional->push_back(Rat(dist(rng)));
    try {
      PreparedObjective out;
      out.objective = obj;
      out.skeleton = orient_skeleton(p, lattice, obj);
      out.cells = build_cell_structure_raw(lattice, out.skeleton);
      out.attempts = attempt;
      return out;
    } catch (const NonGenericObjective& e) {
      last_error = e.what();
    }
  }
  throw NonGenericObjective("no generic objective found after " +
                            std::to_string(max_attempts) + " attempts; last: " + last_error);
}

}  // namespace smallorb
