/*
 * Exact linear algebra kernel: GF(2) bit vectors and matrices, dense
 * arbitrary-precision integer matrices with Smith normal form, and exact
 * rational solving.  Everything here is deterministic and allocation-light;
 * the GF(2) pieces sit in the hot loop of the characteristic-function search.
 */

#ifndef SMALLORB_EXACTALG_HPP
#define SMALLORB_EXACTALG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace smallorb {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

/// Vector over F_2 of fixed length d (d <= 64), packed into one word.
/// Bit 0 is the first coordinate and is the most significant position for
/// lexicographic comparisons.
class GF2Vector {
 public:
  GF2Vector() : len_(0), bits_(0) {}
  explicit GF2Vector(int len) : len_(len), bits_(0) {}
  GF2Vector(int len, std::uint64_t bits) : len_(len), bits_(bits) {}
  GF2Vector(std::initializer_list<int> coords);

  int size() const { return len_; }
  bool get(int i) const { return (bits_ >> i) & 1u; }
  void set(int i, bool v) {
    if (v)
      bits_ |= (std::uint64_t(1) << i);
    else
      bits_ &= ~(std::uint64_t(1) << i);
  }
  bool is_zero() const { return bits_ == 0; }
  GF2Vector operator+(const GF2Vector& o) const {
    return GF2Vector(len_, bits_ ^ o.bits_);
  }
  void operator+=(const GF2Vector& o) { bits_ ^= o.bits_; }
  bool operator==(const GF2Vector& o) const {
    return len_ == o.len_ && bits_ == o.bits_;
  }
  bool operator!=(const GF2Vector& o) const { return !(*this == o); }
  bool operator<(const GF2Vector& o) const;  // lex, coordinate 0 first

  /// Index of the first nonzero coordinate, or -1 for the zero vector.
  int leading() const;

  std::uint64_t raw() const { return bits_; }

  /// Rank of the vector in the lexicographic enumeration of F_2^d
  /// (zero vector has rank 0).
  std::uint64_t lex_rank() const;
  static GF2Vector from_lex_rank(int len, std::uint64_t rank);

  std::string to_string() const;  // e.g. "(1,0,1)"

 private:
  int len_;
  std::uint64_t bits_;
};

struct GF2Matrix {
  int cols = 0;
  std::vector<GF2Vector> rows;

  GF2Matrix() = default;
  explicit GF2Matrix(int cols) : cols(cols) {}
  void add_row(const GF2Vector& r);
};

int gf2_rank(const GF2Matrix& m);
int gf2_rank(const std::vector<GF2Vector>& vecs);

/// True iff |vecs| == d and the vectors span F_2^d.
bool is_basis(const std::vector<GF2Vector>& vecs, int d);

/// Row-echelon span of a set of GF(2) vectors.  Used for the face subgroups
/// G_F: membership tests, coset canonicalization (reduce() returns the
/// lexicographic minimum of v + span) and enumeration of all members.
class GF2Span {
 public:
  explicit GF2Span(int dim) : dim_(dim) {}

  /// Insert v; returns true if the span grew.
  bool add(const GF2Vector& v);
  bool contains(const GF2Vector& v) const { return reduce(v).is_zero(); }
  GF2Vector reduce(GF2Vector v) const;
  int dim_ambient() const { return dim_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  std::uint64_t order() const { return std::uint64_t(1) << basis_.size(); }
  const std::vector<GF2Vector>& echelon_basis() const { return basis_; }
  /// All 2^rank members, sorted lexicographically.
  std::vector<GF2Vector> members() const;

  bool operator==(const GF2Span& o) const {
    return dim_ == o.dim_ && basis_ == o.basis_;
  }

 private:
  int dim_;
  std::vector<GF2Vector> basis_;  // reduced row echelon, sorted by leading bit
};

/// Dense matrix over the integers (arbitrary precision).
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  bool is_zero() const;
  IntMatrix multiply(const IntMatrix& rhs) const;

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

struct SmithForm {
  /// d_1 | d_2 | ... ; nonnegative, zeros trailing; length = min(rows, cols).
  std::vector<Int> diag;
  int rank = 0;  // count of nonzero diagonal entries

  /// Invariant factors > 1 (the torsion part of the cokernel).
  std::vector<Int> torsion() const;
};

/// Smith normal form via unimodular row/column operations.  Pivot choice is
/// the smallest nonzero absolute value in the remaining submatrix.
SmithForm smith_normal_form(IntMatrix m);

/// Rank over Q of an integer matrix (fraction-free elimination).
int integer_rank(IntMatrix m);

/// Rank over F_2 of the mod-2 reduction (cols must be <= 64 per row chunk
/// is not required: handled by chunked rows internally).
int mod2_rank(const IntMatrix& m);

/// Dense matrix over Q, for the small exact systems (ring relations,
/// kernel/basis expression residuals).
class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

/// Any exact solution x of A x = b, or nullopt when inconsistent.
/// Throws std::invalid_argument on dimension mismatch.
std::optional<std::vector<Rat>> solve_rational(const RatMatrix& a,
                                               const std::vector<Rat>& b);

int rational_rank(RatMatrix m);

}  // namespace smallorb

#endif  // SMALLORB_EXACTALG_HPP
