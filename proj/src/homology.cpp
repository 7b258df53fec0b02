#include "smallorb/homology.hpp"

#include <sstream>
#include <stdexcept>

namespace smallorb {

std::string coefficient_name(Coefficient c) {
  switch (c) {
    case Coefficient::Z: return "Z";
    case Coefficient::Q: return "Q";
    case Coefficient::Z2: return "Z2";
  }
  return "?";
}

std::vector<Int> AbelianGroup::prime_power_torsion() const {
  std::vector<Int> out;
  for (Int d : invariant_factors) {
    for (Int p = 2; p * p <= d; ++p) {
      if (d % p != 0) continue;
      Int q = 1;
      while (d % p == 0) {
        q *= p;
        d /= p;
      }
      out.push_back(q);
    }
    if (d > 1) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string AbelianGroup::to_string(Coefficient c) const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  auto sep = [&]() {
    if (!first) os << " + ";
    first = false;
  };
  if (free_rank > 0) {
    sep();
    os << coefficient_name(c);
    if (free_rank > 1) os << "^" << free_rank;
  }
  if (c == Coefficient::Z2 && !invariant_factors.empty()) {
    // Field coefficients: everything is a vector space; show the dimension.
    sep();
    os << "Z2^" << invariant_factors.size();
    return os.str();
  }
  for (const Int& q : prime_power_torsion()) {
    sep();
    os << "Z/" << q;
  }
  return os.str();
}

std::string HomologyProfile::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t k = 0; k < groups.size(); ++k) {
    if (k) os << ", ";
    os << groups[k].to_string(coeff);
  }
  os << ")";
  return os.str();
}

SparseChainComplex to_sparse(const ChainComplexZ& complex) {
  SparseChainComplex s;
  s.sizes = complex.ranks;
  s.boundary.resize(complex.ranks.size());
  for (int k = 1; k <= complex.top_dim(); ++k) {
    const IntMatrix& d = complex.d(k);
    s.boundary[k].resize(d.cols());
    for (int c = 0; c < d.cols(); ++c)
      for (int r = 0; r < d.rows(); ++r)
        if (d.at(r, c) != 0) s.boundary[k][c][r] = d.at(r, c);
  }
  return s;
}

HomologyProfile homology_from_sparse(const SparseChainComplex& complex, Coefficient coeff) {
  const int top = complex.top_dim();
  HomologyProfile prof;
  prof.coeff = coeff;
  prof.groups.resize(top + 1);

  if (coeff == Coefficient::Z2) {
    // Independent route: ranks over F_2 of the original matrices.
    std::vector<int> rank(top + 2, 0);
    for (int k = 1; k <= top; ++k)
      rank[k] = mod2_rank_sparse(complex.boundary[k], complex.sizes[k - 1]);
    for (int k = 0; k <= top; ++k) {
      long long dim = complex.sizes[k] - rank[k] - rank[k + 1];
      prof.groups[k] = AbelianGroup::z2_power(dim);
    }
    return prof;
  }

  ChainReducer red(complex);
  red.run();
  std::vector<int> rank(top + 2, 0);
  std::vector<SmithForm> snf(top + 1);
  for (int k = 1; k <= top; ++k) {
    snf[k] = smith_normal_form(red.residual_matrix(k));
    rank[k] = red.eliminated_pairs(k) + snf[k].rank;
  }
  for (int k = 0; k <= top; ++k) {
    long long free_rank = complex.sizes[k] - rank[k] - rank[k + 1];
    if (free_rank < 0)
      throw std::logic_error("homology_from_sparse: negative free rank (broken complex)");
    AbelianGroup g;
    g.free_rank = free_rank;
    if (coeff == Coefficient::Z && k + 1 <= top) g.invariant_factors = snf[k + 1].torsion();
    prof.groups[k] = g;
  }
  return prof;
}

HomologyProfile homology_from_chain(const ChainComplexZ& complex, Coefficient coeff) {
  return homology_from_sparse(to_sparse(complex), coeff);
}

namespace {

long long h_tail(const std::vector<long long>& h, int from, int n) {
  long long s = 0;
  for (int i = from; i <= n; ++i) s += h[i];
  return s;
}

}  // namespace

HomologyProfile theorem_homology(const std::vector<long long>& h, int n, Coefficient coeff) {
  HomologyProfile prof;
  prof.coeff = coeff;
  prof.groups.resize(n + 1);
  if (coeff == Coefficient::Z2) {
    for (int k = 0; k <= n; ++k) {
      long long dim;
      if (k == 0 || k == n)
        dim = 1;
      else if (k == 1)
        dim = 0;
      else
        dim = h_tail(h, k, n);
      prof.groups[k] = AbelianGroup::z2_power(dim);
    }
    return prof;
  }
  for (int k = 0; k <= n; ++k) {
    AbelianGroup g;
    if (k == 0) {
      g.free_rank = 1;
    } else if (k == n) {
      g.free_rank = (n % 2 == 0) ? 1 : 0;
    } else if (k % 2 == 0) {
      g.free_rank = h[k];
      if (coeff == Coefficient::Z)
        g.invariant_factors.assign(h_tail(h, k + 1, n), Int(2));
    }
    prof.groups[k] = g;
  }
  return prof;
}

long long euler_mod2(const std::vector<long long>& h, int n) {
  long long total = 0;
  for (int i = 0; 2 * i <= n; ++i) total += h[2 * i];
  // Cross-check against the alternating sum of the mod-2 Betti numbers.
  HomologyProfile z2 = theorem_homology(h, n, Coefficient::Z2);
  long long alt = 0;
  for (int k = 0; k <= n; ++k) {
    long long dim = static_cast<long long>(z2.groups[k].invariant_factors.size());
    alt += (k % 2 == 0) ? dim : -dim;
  }
  if (alt != total)
    throw std::logic_error("euler_mod2: Betti alternating sum disagrees with sum of even h");
  return total;
}

HomologyProfile theorem_toric_homology(const std::vector<long long>& h, int n) {
  HomologyProfile prof;
  prof.coeff = Coefficient::Z;
  prof.groups.resize(2 * n);
  prof.groups[0] = AbelianGroup::free(1);
  for (int l = 2; l <= n; ++l)
    prof.groups[2 * l - 1] = AbelianGroup::free(h_tail(h, l, n));
  return prof;
}

long long toric_euler_characteristic(const std::vector<long long>& h, int n) {
  long long chi = h[0];
  for (int i = 2; i <= n; ++i) chi -= (i - 1) * h[i];
  // Alternating sum of the toric cell counts gives the same value.
  long long alt = h_tail(h, 0, n);
  for (int l = 1; l <= n; ++l) alt -= h_tail(h, l, n);
  if (alt != chi)
    throw std::logic_error("toric_euler_characteristic: cell count check failed");
  return chi;
}

bool universal_coefficients_consistent(const HomologyProfile& integral,
                                       const HomologyProfile& mod2) {
  if (integral.groups.size() != mod2.groups.size()) return false;
  auto t2 = [](const AbelianGroup& g) {
    long long c = 0;
    for (const Int& d : g.invariant_factors)
      if (d % 2 == 0) ++c;
    return c;
  };
  for (size_t k = 0; k < integral.groups.size(); ++k) {
    long long expected = integral.groups[k].free_rank + t2(integral.groups[k]);
    if (k > 0) expected += t2(integral.groups[k - 1]);
    long long got = static_cast<long long>(mod2.groups[k].invariant_factors.size()) +
                    mod2.groups[k].free_rank;
    if (got != expected) return false;
  }
  return true;
}

}  // namespace smallorb
