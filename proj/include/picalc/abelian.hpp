// Integer matrices, Smith normal form, abelianization invariants, and
// integer-lattice membership.
#ifndef PICALC_ABELIAN_HPP
#define PICALC_ABELIAN_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "picalc/words.hpp"

namespace picalc {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  BigInt& operator()(int i, int j) { return data_.at(static_cast<std::size_t>(i) * cols_ + j); }
  const BigInt& operator()(int i, int j) const { return data_.at(static_cast<std::size_t>(i) * cols_ + j); }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const BigInt& a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  void swap_rows(int a, int b) {
    for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(int a, int b) {
    for (int i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row a += c * row b
  void add_row(int a, int b, const BigInt& c) {
    for (int j = 0; j < cols_; ++j) (*this)(a, j) += c * (*this)(b, j);
  }
  void add_col(int a, int b, const BigInt& c) {
    for (int i = 0; i < rows_; ++i) (*this)(i, a) += c * (*this)(i, b);
  }
  void negate_row(int a) {
    for (int j = 0; j < cols_; ++j) (*this)(a, j) = -(*this)(a, j);
  }
  void negate_col(int a) {
    for (int i = 0; i < rows_; ++i) (*this)(i, a) = -(*this)(i, a);
  }

  BigInt determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    // Fraction-free Gaussian elimination (Bareiss).
    IntMatrix m = *this;
    int n = rows_;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
      if (m(k, k) == 0) {
        int p = -1;
        for (int i = k + 1; i < n; ++i)
          if (m(i, k) != 0) { p = i; break; }
        if (p < 0) return 0;
        m.swap_rows(k, p);
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j)
          m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      prev = m(k, k);
    }
    return n == 0 ? BigInt(1) : BigInt(sign) * m(n - 1, n - 1);
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<BigInt> data_;
};

/// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ...
struct SNFResult {
  IntMatrix u, d, v;
};

inline SNFResult smith_normal_form(const IntMatrix& a) {
  int m = a.rows(), n = a.cols();
  SNFResult r{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& d = r.d;
  int t = 0;
  int lim = std::min(m, n);
  while (t < lim) {
    // Pivot: minimal nonzero absolute value in the remaining block.
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (d(i, j) != 0 &&
            (pi < 0 || abs(d(i, j)) < abs(d(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    if (pi != t) { d.swap_rows(t, pi); r.u.swap_rows(t, pi); }
    if (pj != t) { d.swap_cols(t, pj); r.v.swap_cols(t, pj); }
    bool clean = true;
    for (int i = t + 1; i < m; ++i) {
      if (d(i, t) == 0) continue;
      BigInt q = d(i, t) / d(t, t);
      d.add_row(i, t, -q);
      r.u.add_row(i, t, -q);
      if (d(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < n; ++j) {
      if (d(t, j) == 0) continue;
      BigInt q = d(t, j) / d(t, t);
      d.add_col(j, t, -q);
      r.v.add_col(j, t, -q);
      if (d(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders appeared; re-pivot
    // Divisibility: fold any non-divisible entry into the pivot position.
    bool redo = false;
    for (int i = t + 1; i < m && !redo; ++i)
      for (int j = t + 1; j < n && !redo; ++j)
        if (d(i, j) % d(t, t) != 0) {
          d.add_row(t, i, 1);
          r.u.add_row(t, i, 1);
          redo = true;
        }
    if (redo) continue;
    if (d(t, t) < 0) { d.negate_row(t); r.u.negate_row(t); }
    ++t;
  }
  return r;
}

/// Invariants of the abelian group Z^cols / (row span of A).
struct AbelianInvariants {
  int free_rank = 0;
  std::vector<BigInt> torsion;  // each >= 2, divisibility chain

  bool operator==(const AbelianInvariants& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
};

inline AbelianInvariants quotient_invariants(const IntMatrix& a) {
  SNFResult s = smith_normal_form(a);
  AbelianInvariants inv;
  int lim = std::min(a.rows(), a.cols());
  int nonzero = 0;
  for (int i = 0; i < lim; ++i) {
    const BigInt& di = s.d(i, i);
    if (di == 0) break;
    ++nonzero;
    if (di >= 2) inv.torsion.push_back(di);
  }
  inv.free_rank = a.cols() - nonzero;
  return inv;
}

/// True iff v lies in the integer row span of A.
inline bool lattice_membership(const std::vector<BigInt>& v, const IntMatrix& a) {
  if (static_cast<int>(v.size()) != a.cols())
    throw std::invalid_argument("lattice_membership: dimension mismatch");
  SNFResult s = smith_normal_form(a);
  // x A = v  <=>  y D = v V for some integer y.
  std::vector<BigInt> w(a.cols());
  for (int j = 0; j < a.cols(); ++j)
    for (int k = 0; k < a.cols(); ++k) w[j] += v[k] * s.v(k, j);
  int lim = std::min(a.rows(), a.cols());
  for (int j = 0; j < a.cols(); ++j) {
    if (j < lim && s.d(j, j) != 0) {
      if (w[j] % s.d(j, j) != 0) return false;
    } else if (w[j] != 0) {
      return false;
    }
  }
  return true;
}

// Matrix text format: one row per line, whitespace-separated integers.
inline IntMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<BigInt>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<BigInt> row;
    std::string tok;
    while (ls >> tok) row.emplace_back(tok);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) return IntMatrix();
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::invalid_argument("ragged matrix at line " + std::to_string(i + 1));
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return m;
}

}  // namespace picalc

#endif  // PICALC_ABELIAN_HPP
