#include "smallorb/exactalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace smallorb {

GF2Vector::GF2Vector(std::initializer_list<int> coords) : len_(0), bits_(0) {
  for (int c : coords) {
    if (c) bits_ |= (std::uint64_t(1) << len_);
    ++len_;
  }
}

bool GF2Vector::operator<(const GF2Vector& o) const {
  if (len_ != o.len_) return len_ < o.len_;
  return lex_rank() < o.lex_rank();
}

int GF2Vector::leading() const {
  if (bits_ == 0) return -1;
  return __builtin_ctzll(bits_);
}

std::uint64_t GF2Vector::lex_rank() const {
  std::uint64_t r = 0;
  for (int i = 0; i < len_; ++i)
    if (get(i)) r |= (std::uint64_t(1) << (len_ - 1 - i));
  return r;
}

GF2Vector GF2Vector::from_lex_rank(int len, std::uint64_t rank) {
  GF2Vector v(len);
  for (int i = 0; i < len; ++i)
    if ((rank >> (len - 1 - i)) & 1u) v.set(i, true);
  return v;
}

std::string GF2Vector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < len_; ++i) {
    if (i) os << ',';
    os << (get(i) ? 1 : 0);
  }
  os << ')';
  return os.str();
}

void GF2Matrix::add_row(const GF2Vector& r) {
  if (r.size() != cols) throw std::invalid_argument("GF2Matrix: row length mismatch");
  rows.push_back(r);
}

int gf2_rank(const std::vector<GF2Vector>& vecs) {
  std::vector<std::uint64_t> basis;  // echelon by lowest set bit
  int rank = 0;
  for (const auto& v : vecs) {
    std::uint64_t x = v.raw();
    for (std::uint64_t b : basis) {
      std::uint64_t lead = b & (~b + 1);
      if (x & lead) x ^= b;
    }
    if (x) {
      basis.push_back(x);
      ++rank;
    }
  }
  return rank;
}

int gf2_rank(const GF2Matrix& m) { return gf2_rank(m.rows); }

bool is_basis(const std::vector<GF2Vector>& vecs, int d) {
  if (static_cast<int>(vecs.size()) != d) return false;
  for (const auto& v : vecs)
    if (v.size() != d) throw std::invalid_argument("is_basis: vector length mismatch");
  return gf2_rank(vecs) == d;
}

bool GF2Span::add(const GF2Vector& v) {
  if (v.size() != dim_) throw std::invalid_argument("GF2Span: length mismatch");
  GF2Vector r = reduce(v);
  if (r.is_zero()) return false;
  // Insert keeping the basis reduced and sorted by leading coordinate.
  for (auto& b : basis_)
    if (b.get(r.leading())) b += r;
  basis_.push_back(r);
  std::sort(basis_.begin(), basis_.end(),
            [](const GF2Vector& a, const GF2Vector& b) { return a.leading() < b.leading(); });
  return true;
}

GF2Vector GF2Span::reduce(GF2Vector v) const {
  for (const auto& b : basis_)
    if (v.get(b.leading())) v += b;
  return v;
}

std::vector<GF2Vector> GF2Span::members() const {
  std::vector<GF2Vector> out;
  out.reserve(size_t(1) << basis_.size());
  out.push_back(GF2Vector(dim_));
  for (const auto& b : basis_) {
    size_t k = out.size();
    for (size_t i = 0; i < k; ++i) out.push_back(out[i] + b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw std::invalid_argument("IntMatrix: ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

IntMatrix IntMatrix::multiply(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix: shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j)
        if (rhs.at(k, j) != 0) out.at(i, j) += x * rhs.at(k, j);
    }
  return out;
}

std::vector<Int> SmithForm::torsion() const {
  std::vector<Int> t;
  for (const auto& d : diag)
    if (d > 1) t.push_back(d);
  return t;
}

namespace {

void swap_rows(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

}  // namespace

SmithForm smith_normal_form(IntMatrix m) {
  const int r = m.rows(), c = m.cols();
  const int steps = std::min(r, c);
  SmithForm out;
  out.diag.assign(steps, Int(0));

  for (int t = 0; t < steps; ++t) {
    // Smallest nonzero absolute value as pivot.
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j) {
        const Int& x = m.at(i, j);
        if (x == 0) continue;
        Int ax = abs(x);
        if (pi < 0 || ax < best) {
          best = ax;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    swap_rows(m, pi, t);
    swap_cols(m, pj, t);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      // Clear the pivot column.
      for (int i = t + 1; i < r; ++i) {
        if (m.at(i, t) == 0) continue;
        Int q = m.at(i, t) / m.at(t, t);
        if (q != 0)
          for (int j = t; j < c; ++j) m.at(i, j) -= q * m.at(t, j);
        if (m.at(i, t) != 0) {  // remainder smaller than pivot: swap up
          swap_rows(m, i, t);
          dirty = true;
        }
      }
      // Clear the pivot row.
      for (int j = t + 1; j < c; ++j) {
        if (m.at(t, j) == 0) continue;
        Int q = m.at(t, j) / m.at(t, t);
        if (q != 0)
          for (int i = t; i < r; ++i) m.at(i, j) -= q * m.at(i, t);
        if (m.at(t, j) != 0) {
          swap_cols(m, j, t);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Make the pivot divide the whole remaining submatrix.
      for (int i = t + 1; i < r && !dirty; ++i)
        for (int j = t + 1; j < c && !dirty; ++j)
          if (m.at(i, j) % m.at(t, t) != 0) {
            for (int jj = t; jj < c; ++jj) m.at(t, jj) += m.at(i, jj);
            dirty = true;
          }
    }
    if (m.at(t, t) < 0)
      for (int j = t; j < c; ++j) m.at(t, j) = -m.at(t, j);
    out.diag[t] = m.at(t, t);
    ++out.rank;
  }
  return out;
}

int integer_rank(IntMatrix m) {
  // Fraction-free Gaussian elimination (Bareiss-style without the division
  // optimisation; sizes here are small after sparse preprocessing).
  int rank = 0;
  int r = m.rows(), c = m.cols();
  int row = 0;
  for (int col = 0; col < c && row < r; ++col) {
    int p = -1;
    for (int i = row; i < r; ++i)
      if (m.at(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    swap_rows(m, p, row);
    for (int i = row + 1; i < r; ++i) {
      if (m.at(i, col) == 0) continue;
      Int a = m.at(row, col), b = m.at(i, col);
      Int g = gcd(a, b);
      Int fa = b / g, fb = a / g;
      for (int j = col; j < c; ++j) m.at(i, j) = fb * m.at(i, j) - fa * m.at(row, j);
    }
    ++row;
    ++rank;
  }
  return rank;
}

int mod2_rank(const IntMatrix& m) {
  const int words = (m.cols() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(m.rows(),
                                               std::vector<std::uint64_t>(words, 0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) % 2 != 0) rows[i][j / 64] ^= (std::uint64_t(1) << (j % 64));

  int rank = 0;
  std::vector<int> pivot_of_row;
  std::vector<size_t> pivots;  // indices into rows[], echelon so far
  for (int i = 0; i < m.rows(); ++i) {
    auto& x = rows[i];
    for (size_t k = 0; k < pivots.size(); ++k) {
      int p = pivot_of_row[k];
      if ((x[p / 64] >> (p % 64)) & 1u) {
        const auto& b = rows[pivots[k]];
        for (int w = 0; w < words; ++w) x[w] ^= b[w];
      }
    }
    int lead = -1;
    for (int w = 0; w < words && lead < 0; ++w)
      if (x[w]) lead = w * 64 + __builtin_ctzll(x[w]);
    if (lead >= 0) {
      pivots.push_back(i);
      pivot_of_row.push_back(lead);
      ++rank;
    }
  }
  return rank;
}

std::optional<std::vector<Rat>> solve_rational(const RatMatrix& a,
                                               const std::vector<Rat>& b) {
  if (static_cast<int>(b.size()) != a.rows())
    throw std::invalid_argument("solve_rational: dimension mismatch");
  int r = a.rows(), c = a.cols();
  RatMatrix m(r, c + 1);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) m.at(i, j) = a.at(i, j);
    m.at(i, c) = b[i];
  }
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < c && row < r; ++col) {
    int p = -1;
    for (int i = row; i < r; ++i)
      if (m.at(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    for (int j = 0; j <= c; ++j) std::swap(m.at(p, j), m.at(row, j));
    Rat inv = Rat(1) / m.at(row, col);
    for (int j = col; j <= c; ++j) m.at(row, j) *= inv;
    for (int i = 0; i < r; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      Rat f = m.at(i, col);
      for (int j = col; j <= c; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (int i = row; i < r; ++i)
    if (m.at(i, c) != 0) return std::nullopt;  // inconsistent
  std::vector<Rat> x(c, Rat(0));
  for (int k = 0; k < row; ++k) x[pivot_col[k]] = m.at(k, c);
  return x;
}

int rational_rank(RatMatrix m) {
  int r = m.rows(), c = m.cols();
  int rank = 0, row = 0;
  for (int col = 0; col < c && row < r; ++col) {
    int p = -1;
    for (int i = row; i < r; ++i)
      if (m.at(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    for (int j = 0; j < c; ++j) std::swap(m.at(p, j), m.at(row, j));
    for (int i = row + 1; i < r; ++i) {
      if (m.at(i, col) == 0) continue;
      Rat f = m.at(i, col) / m.at(row, col);
      for (int j = col; j < c; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace smallorb
