#include "smallorb/quotient.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace smallorb {

namespace {

using SimplexKey = std::pair<std::vector<int>, std::uint64_t>;

}  // namespace

int DeltaComplex::orbifold_point_count() const {
  int count = 0;
  for (const auto& s : simplices[0])
    if (lattice->face(s.flag[0]).dim == 0) ++count;
  return count;
}

long long DeltaComplex::euler_characteristic() const {
  long long chi = 0;
  for (size_t k = 0; k < simplices.size(); ++k) {
    long long c = simplex_count(static_cast<int>(k));
    chi += (k % 2 == 0) ? c : -c;
  }
  return chi;
}

std::vector<SparseIntCol> DeltaComplex::boundary_columns(int k) const {
  std::vector<SparseIntCol> cols(simplices[k].size());
  for (size_t i = 0; i < simplices[k].size(); ++i) {
    const auto& faces = face_maps[k][i];
    for (size_t j = 0; j < faces.size(); ++j) {
      Int sign = (j % 2 == 0) ? 1 : -1;
      auto& cell = cols[i][faces[j]];
      cell += sign;
      if (cell == 0) cols[i].erase(faces[j]);
    }
  }
  return cols;
}

SparseChainComplex DeltaComplex::sparse_complex() const {
  SparseChainComplex s;
  s.sizes.resize(simplices.size());
  s.boundary.resize(simplices.size());
  for (size_t k = 0; k < simplices.size(); ++k)
    s.sizes[k] = static_cast<int>(simplices[k].size());
  for (size_t k = 1; k < simplices.size(); ++k)
    s.boundary[k] = boundary_columns(static_cast<int>(k));
  return s;
}

std::vector<int> DeltaComplex::simplices_over_face(int k, int face_id) const {
  std::vector<int> out;
  for (size_t i = 0; i < simplices[k].size(); ++i)
    if (lattice->is_subface(simplices[k][i].flag.back(), face_id))
      out.push_back(static_cast<int>(i));
  return out;
}

DeltaComplex build_quotient_complex(const FaceLattice& lattice, const SCharFunction& schar) {
  ScharCheck chk = validate_schar(lattice, schar);
  if (!chk.ok)
    throw std::invalid_argument(
        "build_quotient_complex: characteristic function fails at vertex " +
        std::to_string(chk.vertex));
  const int n = lattice.n;
  const int d = n - 1;

  DeltaComplex dc;
  dc.n = n;
  dc.lattice = &lattice;
  dc.simplices.resize(n + 1);
  dc.face_maps.resize(n + 1);

  for (const auto& f : lattice.faces()) {
    GF2Span span(d);
    for (int j : f.facet_ids) span.add(schar.values[j]);
    if (f.dim == 0 && span.rank() != d)
      throw std::logic_error("build_quotient_complex: vertex subgroup not full");
    if (static_cast<int>(f.id) != static_cast<int>(dc.subgroup.size()))
      throw std::logic_error("build_quotient_complex: face ids not contiguous");
    dc.subgroup.push_back(span);
  }

  // Canonical coset representatives per face: vectors fixed by reduction.
  std::vector<std::vector<GF2Vector>> reps(lattice.face_count());
  for (const auto& f : lattice.faces()) {
    const std::uint64_t total = std::uint64_t(1) << d;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      GF2Vector v(d, bits);
      if (dc.subgroup[f.id].reduce(v) == v) reps[f.id].push_back(v);
    }
    std::sort(reps[f.id].begin(), reps[f.id].end());
  }

  // All flags of the face poset, grouped by length.
  std::vector<std::vector<std::vector<int>>> flags(n + 1);
  std::vector<std::vector<int>> stack_flags;
  std::vector<int> chain;
  auto extend = [&](auto&& self, int last) -> void {
    const Face& f = lattice.face(last);
    flags[static_cast<int>(chain.size()) - 1].push_back(chain);
    for (const auto& g : lattice.faces()) {
      if (g.dim <= f.dim || !lattice.is_subface(last, g.id)) continue;
      chain.push_back(g.id);
      self(self, g.id);
      chain.pop_back();
    }
  };
  for (const auto& f : lattice.faces()) {
    chain = {f.id};
    extend(extend, f.id);
  }
  for (auto& bucket : flags) std::sort(bucket.begin(), bucket.end());

  std::vector<std::map<SimplexKey, int>> index(n + 1);
  for (int k = 0; k <= n; ++k) {
    for (const auto& flag : flags[k]) {
      int top = flag.back();
      for (const auto& rep : reps[top]) {
        QuotientSimplex s;
        s.flag = flag;
        s.coset = rep;
        index[k][{flag, rep.raw()}] = static_cast<int>(dc.simplices[k].size());
        dc.simplices[k].push_back(std::move(s));
      }
    }
  }

  for (int k = 1; k <= n; ++k) {
    dc.face_maps[k].resize(dc.simplices[k].size());
    for (size_t i = 0; i < dc.simplices[k].size(); ++i) {
      const auto& s = dc.simplices[k][i];
      for (int drop = 0; drop <= k; ++drop) {
        std::vector<int> sub;
        for (int t = 0; t <= k; ++t)
          if (t != drop) sub.push_back(s.flag[t]);
        GF2Vector coset = s.coset;
        if (drop == k) coset = dc.subgroup[sub.back()].reduce(coset);
        auto it = index[k - 1].find({sub, coset.raw()});
        if (it == index[k - 1].end())
          throw std::logic_error("build_quotient_complex: missing face simplex");
        dc.face_maps[k][i].push_back(it->second);
      }
    }
  }

  // Simplicial identities: the boundary of a boundary cancels.
  SparseChainComplex s = dc.sparse_complex();
  for (int k = 2; k <= n; ++k) {
    for (size_t i = 0; i < s.boundary[k].size(); ++i) {
      SparseIntCol acc;
      for (const auto& [mid, v] : s.boundary[k][i])
        for (const auto& [low, w] : s.boundary[k - 1][mid]) {
          acc[low] += v * w;
          if (acc[low] == 0) acc.erase(low);
        }
      if (!acc.empty())
        throw std::logic_error("build_quotient_complex: dd != 0 at dimension " +
                               std::to_string(k));
    }
  }
  return dc;
}

HomologyProfile simplicial_homology(const DeltaComplex& d, Coefficient coeff) {
  return homology_from_sparse(d.sparse_complex(), coeff);
}

FundamentalCycle face_fundamental_cycle(const DeltaComplex& d, int face_id) {
  const Face& f = d.lattice->face(face_id);
  FundamentalCycle out;
  out.degree = f.dim;
  if (f.dim % 2 != 0) {
    out.error = "face dimension must be even";
    return out;
  }
  std::vector<int> tops = d.simplices_over_face(f.dim, face_id);
  if (tops.empty()) {
    out.error = "no simplices over the face";
    return out;
  }
  std::vector<SparseIntCol> cols;
  cols.reserve(tops.size());
  if (f.dim == 0) {
    out.ok = true;
    out.chain[tops[0]] = 1;
    return out;
  }
  auto all_cols = d.boundary_columns(f.dim);
  for (int t : tops) cols.push_back(all_cols[t]);
  long long rows = d.simplex_count(f.dim - 1);
  KernelOneResult ker = kernel_one(cols, static_cast<int>(rows));
  if (!ker.ok) {
    out.error = ker.error;
    return out;
  }
  out.ok = true;
  for (size_t i = 0; i < tops.size(); ++i)
    if (ker.vec[i] != 0) out.chain[tops[i]] = ker.vec[i];
  return out;
}

std::optional<std::vector<Rat>> express_in_basis(const DeltaComplex& d, int degree,
                                                 const SparseRatCol& cycle,
                                                 const std::vector<SparseRatCol>& basis) {
  std::vector<SparseIntCol> bd;
  if (degree + 1 <= d.n) bd = d.boundary_columns(degree + 1);
  return express_modulo(basis, bd, cycle);
}

}  // namespace smallorb
