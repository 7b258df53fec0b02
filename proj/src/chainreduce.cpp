#include "smallorb/chainreduce.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace smallorb {

ChainReducer::ChainReducer(const SparseChainComplex& complex) {
  top_ = complex.top_dim();
  mat_.resize(top_ + 1);
  alive_.resize(top_ + 1);
  eliminated_.assign(top_ + 1, 0);
  for (int k = 0; k <= top_; ++k)
    for (int c = 0; c < complex.sizes[k]; ++c) alive_[k][c] = 1;
  for (int k = 1; k <= top_; ++k) {
    for (int c = 0; c < complex.sizes[k]; ++c) {
      const auto& col = complex.boundary[k][c];
      if (col.empty()) continue;
      mat_[k].cols[c] = col;
      for (const auto& [r, v] : col) mat_[k].rows[r][c] = v;
    }
  }
}

void ChainReducer::eliminate(int k, int row, int col) {
  Matrix& m = mat_[k];
  const Int u = m.rows[row][col];
  SparseIntCol pivot_col = m.cols[col];

  // Zero out the pivot row in every other column.
  std::vector<std::pair<int, Int>> row_entries(m.rows[row].begin(), m.rows[row].end());
  for (const auto& [c, v] : row_entries) {
    if (c == col) continue;
    Int alpha = v / u;  // exact: |u| == 1
    for (const auto& [r, pv] : pivot_col) {
      Int delta = alpha * pv;
      auto& target = m.cols[c];
      auto it = target.find(r);
      Int nv = (it == target.end() ? Int(0) : it->second) - delta;
      if (nv == 0) {
        if (it != target.end()) target.erase(it);
        m.rows[r].erase(c);
      } else {
        target[r] = nv;
        m.rows[r][c] = nv;
      }
    }
    if (m.cols[c].empty()) m.cols.erase(c);
  }

  // Drop row `row` and column `col` of d_k.
  for (const auto& [r, v] : pivot_col) m.rows[r].erase(col);
  m.cols.erase(col);
  for (const auto& [c, v] : std::map<int, Int>(m.rows[row])) {
    auto it = m.cols.find(c);
    if (it != m.cols.end()) {
      it->second.erase(row);
      if (it->second.empty()) m.cols.erase(it);
    }
  }
  m.rows.erase(row);

  // The pair removed a (k-1)-cell and a k-cell: drop the former as a column
  // of d_{k-1} and the latter as a row of d_{k+1}.
  if (k - 1 >= 1) {
    Matrix& lower = mat_[k - 1];
    auto it = lower.cols.find(row);
    if (it != lower.cols.end()) {
      for (const auto& [r, v] : it->second) lower.rows[r].erase(row);
      lower.cols.erase(it);
    }
  }
  if (k + 1 <= top_) {
    Matrix& upper = mat_[k + 1];
    auto rit = upper.rows.find(col);
    if (rit != upper.rows.end()) {
      for (const auto& [c, v] : std::map<int, Int>(rit->second)) {
        auto cit = upper.cols.find(c);
        if (cit != upper.cols.end()) {
          cit->second.erase(col);
          if (cit->second.empty()) upper.cols.erase(cit);
        }
      }
      upper.rows.erase(rit);
    }
  }

  alive_[k - 1].erase(row);
  alive_[k].erase(col);
  ++eliminated_[k];
}

bool ChainReducer::sweep() {
  struct Cand {
    long long cost;
    int k, row, col;
  };
  std::vector<Cand> cands;
  for (int k = 1; k <= top_; ++k) {
    for (const auto& [c, col] : mat_[k].cols) {
      long long best_cost = -1;
      int best_row = -1;
      for (const auto& [r, v] : col) {
        if (v != 1 && v != -1) continue;
        long long cost = (static_cast<long long>(mat_[k].rows[r].size()) - 1) *
                         (static_cast<long long>(col.size()) - 1);
        if (best_cost < 0 || cost < best_cost) {
          best_cost = cost;
          best_row = r;
        }
      }
      if (best_row >= 0) cands.push_back({best_cost, k, best_row, c});
    }
  }
  if (cands.empty()) return false;
  std::sort(cands.begin(), cands.end(),
            [](const Cand& a, const Cand& b) { return a.cost < b.cost; });
  bool any = false;
  for (const auto& cand : cands) {
    auto cit = mat_[cand.k].cols.find(cand.col);
    if (cit == mat_[cand.k].cols.end()) continue;
    auto eit = cit->second.find(cand.row);
    if (eit == cit->second.end() || (eit->second != 1 && eit->second != -1)) continue;
    eliminate(cand.k, cand.row, cand.col);
    any = true;
  }
  return any;
}

void ChainReducer::run() {
  while (sweep()) {
  }
}

IntMatrix ChainReducer::residual_matrix(int k) const {
  std::vector<int> row_ids, col_ids;
  for (const auto& [c, flag] : alive_[k - 1]) row_ids.push_back(c);
  for (const auto& [c, flag] : alive_[k]) col_ids.push_back(c);
  std::map<int, int> row_pos;
  for (size_t i = 0; i < row_ids.size(); ++i) row_pos[row_ids[i]] = static_cast<int>(i);
  IntMatrix out(static_cast<int>(row_ids.size()), static_cast<int>(col_ids.size()));
  for (size_t j = 0; j < col_ids.size(); ++j) {
    auto it = mat_[k].cols.find(col_ids[j]);
    if (it == mat_[k].cols.end()) continue;
    for (const auto& [r, v] : it->second) out.at(row_pos.at(r), static_cast<int>(j)) = v;
  }
  return out;
}

int ChainReducer::alive_count(int k) const { return static_cast<int>(alive_[k].size()); }

int mod2_rank_sparse(const std::vector<SparseIntCol>& cols, int rows) {
  const int words = (rows + 63) / 64;
  std::vector<std::vector<std::uint64_t>> ech;  // echelon columns
  std::vector<int> leads;
  int rank = 0;
  std::vector<std::uint64_t> x(words);
  for (const auto& col : cols) {
    std::fill(x.begin(), x.end(), 0);
    bool nonzero = false;
    for (const auto& [r, v] : col)
      if (v % 2 != 0) {
        x[r / 64] ^= (std::uint64_t(1) << (r % 64));
        nonzero = true;
      }
    if (!nonzero) continue;
    for (size_t k = 0; k < ech.size(); ++k) {
      int lead = leads[k];
      if ((x[lead / 64] >> (lead % 64)) & 1u)
        for (int w = 0; w < words; ++w) x[w] ^= ech[k][w];
    }
    int lead = -1;
    for (int w = 0; w < words && lead < 0; ++w)
      if (x[w]) lead = w * 64 + __builtin_ctzll(x[w]);
    if (lead >= 0) {
      ech.push_back(x);
      leads.push_back(lead);
      ++rank;
    }
  }
  return rank;
}

int rational_rank_sparse(const std::vector<SparseIntCol>& cols, int rows) {
  SparseChainComplex c;
  c.sizes = {rows, static_cast<int>(cols.size())};
  c.boundary.resize(2);
  c.boundary[1] = cols;
  ChainReducer red(c);
  red.run();
  return red.eliminated_pairs(1) + integer_rank(red.residual_matrix(1));
}

std::optional<SparseRatCol> RationalColumnSpace::add(SparseRatCol col, SparseRatCol combo) {
  while (!col.empty()) {
    int lead = col.rbegin()->first;
    auto it = by_lead_.find(lead);
    if (it == by_lead_.end()) {
      by_lead_[lead] = {std::move(col), std::move(combo)};
      return std::nullopt;
    }
    Rat f = col.rbegin()->second / it->second.col.rbegin()->second;
    for (const auto& [r, v] : it->second.col) {
      auto jt = col.find(r);
      Rat nv = (jt == col.end() ? Rat(0) : jt->second) - f * v;
      if (nv == 0) {
        if (jt != col.end()) col.erase(jt);
      } else {
        col[r] = nv;
      }
    }
    for (const auto& [r, v] : it->second.combo) {
      auto jt = combo.find(r);
      Rat nv = (jt == combo.end() ? Rat(0) : jt->second) - f * v;
      if (nv == 0) {
        if (jt != combo.end()) combo.erase(jt);
      } else {
        combo[r] = nv;
      }
    }
  }
  return combo;
}

std::pair<SparseRatCol, SparseRatCol> RationalColumnSpace::reduce(SparseRatCol col) const {
  SparseRatCol combo;
  while (!col.empty()) {
    int lead = col.rbegin()->first;
    auto it = by_lead_.find(lead);
    if (it == by_lead_.end()) break;
    Rat f = col.rbegin()->second / it->second.col.rbegin()->second;
    for (const auto& [r, v] : it->second.col) {
      auto jt = col.find(r);
      Rat nv = (jt == col.end() ? Rat(0) : jt->second) - f * v;
      if (nv == 0) {
        if (jt != col.end()) col.erase(jt);
      } else {
        col[r] = nv;
      }
    }
    for (const auto& [r, v] : it->second.combo) {
      auto jt = combo.find(r);
      Rat nv = (jt == combo.end() ? Rat(0) : jt->second) + f * v;
      if (nv == 0) {
        if (jt != combo.end()) combo.erase(jt);
      } else {
        combo[r] = nv;
      }
    }
  }
  return {std::move(col), std::move(combo)};
}

std::optional<std::vector<Rat>> express_modulo(const std::vector<SparseRatCol>& basis,
                                               const std::vector<SparseIntCol>& cols,
                                               const SparseRatCol& z) {
  RationalColumnSpace space;
  for (size_t i = 0; i < basis.size(); ++i) {
    SparseRatCol combo;
    combo[static_cast<int>(i)] = 1;
    space.add(basis[i], std::move(combo));
  }
  for (const auto& col : cols) {
    SparseRatCol rc;
    for (const auto& [r, v] : col) rc[r] = Rat(v);
    space.add(std::move(rc), {});
  }
  auto [residue, combo] = space.reduce(z);
  if (!residue.empty()) return std::nullopt;
  std::vector<Rat> lambda(basis.size(), Rat(0));
  for (const auto& [i, v] : combo) lambda[i] = v;
  return lambda;
}

namespace {

// Weighted union-find over Q: value(x) = ratio(x) * value(root(x)).
struct RatioForest {
  std::vector<int> parent;
  std::vector<Rat> ratio;  // value relative to parent
  explicit RatioForest(int n) : parent(n), ratio(n, Rat(1)) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  std::pair<int, Rat> find(int x) {
    if (parent[x] == x) return {x, Rat(1)};
    auto [root, r] = find(parent[x]);
    parent[x] = root;
    ratio[x] *= r;
    return {root, ratio[x]};
  }
  // Impose value(a) * wa + value(b) * wb = 0.  Returns false on conflict.
  bool relate(int a, int b, const Rat& wa, const Rat& wb, std::vector<char>& zero) {
    auto [ra, qa] = find(a);
    auto [rb, qb] = find(b);
    // value(a) = qa * value(ra), value(b) = qb * value(rb)
    if (ra == rb) {
      if (wa * qa + wb * qb != 0) zero[ra] = 1;  // forces the component to zero
      return true;
    }
    // value(rb) = -(wa*qa)/(wb*qb) * value(ra)
    parent[rb] = ra;
    ratio[rb] = -(wa * qa) / (wb * qb);
    if (zero[rb]) zero[ra] = 1;
    return true;
  }
};

}  // namespace

KernelOneResult kernel_one(const std::vector<SparseIntCol>& cols, int rows) {
  const int nc = static_cast<int>(cols.size());
  KernelOneResult res;
  if (nc == 0) {
    res.error = "kernel dimension 0 (no columns)";
    return res;
  }

  // Row view with per-row combined coefficients.
  std::vector<std::map<int, Int>> row_entries(rows);
  for (int c = 0; c < nc; ++c)
    for (const auto& [r, v] : cols[c]) row_entries[r][c] += v;

  RatioForest forest(nc);
  std::vector<char> zero(nc, 0);
  std::vector<const std::map<int, Int>*> higher_arity;
  for (int r = 0; r < rows; ++r) {
    std::vector<std::pair<int, Int>> nz;
    for (const auto& [c, v] : row_entries[r])
      if (v != 0) nz.emplace_back(c, v);
    if (nz.empty()) continue;
    if (nz.size() == 1) {
      auto [root, q] = forest.find(nz[0].first);
      zero[root] = 1;
    } else if (nz.size() == 2) {
      forest.relate(nz[0].first, nz[1].first, Rat(nz[0].second), Rat(nz[1].second), zero);
    } else {
      higher_arity.push_back(&row_entries[r]);
    }
  }

  // Zero flags live on roots; push through final roots.
  std::vector<int> root_of(nc);
  for (int c = 0; c < nc; ++c) root_of[c] = forest.find(c).first;
  std::vector<char> root_zero(nc, 0);
  for (int c = 0; c < nc; ++c)
    if (zero[c]) root_zero[forest.find(c).first] = 1;

  std::vector<int> free_roots;
  for (int c = 0; c < nc; ++c)
    if (root_of[c] == c && !root_zero[c]) free_roots.push_back(c);

  auto finish = [&](std::vector<Rat> vec) {
    // Verify the candidate is a genuine kernel vector.
    std::map<int, Rat> image;
    for (int c = 0; c < nc; ++c) {
      if (vec[c] == 0) continue;
      for (const auto& [r, v] : cols[c]) image[r] += vec[c] * Rat(v);
    }
    for (const auto& [r, v] : image)
      if (v != 0) return false;
    // Normalize: coprime integers, first nonzero positive.
    Int lcm_den = 1;
    for (const auto& q : vec)
      lcm_den = lcm(lcm_den, Int(denominator(q)));
    std::vector<Int> ints(nc);
    Int g = 0;
    for (int c = 0; c < nc; ++c) {
      Rat scaled = vec[c] * Rat(lcm_den);
      ints[c] = Int(numerator(scaled));
      g = gcd(g, ints[c]);
    }
    if (g == 0) return false;
    int first = -1;
    for (int c = 0; c < nc && first < 0; ++c)
      if (ints[c] != 0) first = c;
    if (ints[first] < 0) g = -g;
    res.vec.assign(nc, Rat(0));
    for (int c = 0; c < nc; ++c) res.vec[c] = Rat(ints[c] / g);
    res.ok = true;
    return true;
  };

  if (free_roots.size() == 1) {
    std::vector<Rat> vec(nc, Rat(0));
    for (int c = 0; c < nc; ++c) {
      auto [root, q] = forest.find(c);
      if (root == free_roots[0] && !root_zero[root]) vec[c] = q;
    }
    if (finish(std::move(vec))) return res;
    res.error = "kernel dimension 0 (propagated cycle fails a boundary constraint)";
    // fall through to the exact elimination to double-check
  }

  // General exact path: incremental reduction with full combination tracking.
  RationalColumnSpace space;
  std::vector<std::vector<Rat>> kernel;
  for (int c = 0; c < nc; ++c) {
    SparseRatCol col;
    for (const auto& [r, v] : cols[c]) col[r] = Rat(v);
    SparseRatCol combo;
    combo[c] = 1;
    auto dep = space.add(std::move(col), std::move(combo));
    if (dep) {
      std::vector<Rat> vec(nc, Rat(0));
      for (const auto& [i, v] : *dep) vec[i] = v;
      kernel.push_back(std::move(vec));
    }
  }
  if (kernel.size() == 1 && finish(std::move(kernel[0]))) return res;
  res.ok = false;
  res.vec.clear();
  res.error = "kernel dimension " + std::to_string(kernel.size()) + ", expected 1";
  return res;
}

}  // namespace smallorb
