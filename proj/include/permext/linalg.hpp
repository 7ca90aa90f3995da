#ifndef PERMEXT_LINALG_HPP
#define PERMEXT_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permext/errors.hpp"
#include "permext/rational.hpp"

namespace permext {

class RatVector {
 public:
  RatVector() = default;
  explicit RatVector(std::size_t dim) : entries_(dim) {}
  RatVector(std::initializer_list<Rational> init) : entries_(init) {}
  explicit RatVector(std::vector<Rational> entries)
      : entries_(std::move(entries)) {}

  std::size_t dim() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  Rational& operator[](std::size_t i) { return entries_[i]; }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }

  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  const std::vector<Rational>& entries() const { return entries_; }
  void push_back(Rational r) { entries_.push_back(std::move(r)); }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  /// Comma-separated exact entries, e.g. "1,-3/7,0".
  std::string str(char sep = ',') const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += sep;
      out += entries_[i].str();
    }
    return out;
  }

  friend bool operator==(const RatVector&, const RatVector&) = default;

 private:
  std::vector<Rational> entries_;
};

inline void require_same_dim(const RatVector& a, const RatVector& b) {
  if (a.dim() != b.dim())
    throw InvalidInput("vector dimension mismatch: " + std::to_string(a.dim()) +
                       " vs " + std::to_string(b.dim()));
}

inline Rational dot(const RatVector& a, const RatVector& b) {
  require_same_dim(a, b);
  Rational s;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

inline RatVector operator+(RatVector a, const RatVector& b) {
  require_same_dim(a, b);
  for (std::size_t i = 0; i < a.dim(); ++i) a[i] += b[i];
  return a;
}

inline RatVector operator-(RatVector a, const RatVector& b) {
  require_same_dim(a, b);
  for (std::size_t i = 0; i < a.dim(); ++i) a[i] -= b[i];
  return a;
}

inline RatVector operator*(const Rational& c, RatVector v) {
  for (auto& e : v) e *= c;
  return v;
}

inline RatVector operator*(RatVector v, const Rational& c) { return c * std::move(v); }

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t nrows, std::size_t ncols)
      : rows_(nrows, RatVector(ncols)), ncols_(ncols) {}

  static RatMatrix from_rows(std::vector<RatVector> rows, std::size_t ncols) {
    RatMatrix m(0, ncols);
    for (auto& r : rows) m.append_row(std::move(r));
    return m;
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t nrows() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }

  void append_row(RatVector row) {
    if (row.dim() != ncols_)
      throw InvalidInput("row of length " + std::to_string(row.dim()) +
                         " appended to matrix with " + std::to_string(ncols_) +
                         " columns");
    rows_.push_back(std::move(row));
  }

  void erase_row(std::size_t i) { rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i)); }

  const RatVector& row(std::size_t i) const { return rows_[i]; }
  RatVector& row(std::size_t i) { return rows_[i]; }
  const std::vector<RatVector>& rows() const { return rows_; }

  Rational& operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return rows_[i][j];
  }

  RatVector column(std::size_t j) const {
    RatVector c(nrows());
    for (std::size_t i = 0; i < nrows(); ++i) c[i] = rows_[i][j];
    return c;
  }

  RatVector operator*(const RatVector& y) const {
    if (y.dim() != ncols_)
      throw InvalidInput("matrix-vector dimension mismatch");
    RatVector out(nrows());
    for (std::size_t i = 0; i < nrows(); ++i) out[i] = dot(rows_[i], y);
    return out;
  }

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::vector<RatVector> rows_;
  std::size_t ncols_ = 0;
};

/// Solution set {particular + span(nullspace)} of a consistent system A y = b.
struct AffineSolution {
  RatVector particular;
  std::vector<RatVector> nullspace;
};

/**
 * Exact Gauss-Jordan elimination. Returns std::nullopt when the system is
 * inconsistent. Free variables are set to zero in the particular solution and
 * each contributes one nullspace basis vector.
 */
inline std::optional<AffineSolution> solve_linear_system(const RatMatrix& a,
                                                         const RatVector& b) {
  if (a.nrows() != b.dim())
    throw InvalidInput("solve_linear_system: A has " +
                       std::to_string(a.nrows()) + " rows but b has dim " +
                       std::to_string(b.dim()));
  const std::size_t m = a.nrows();
  const std::size_t n = a.ncols();
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a(i, j);
    t[i][n] = b[i];
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && t[p][c].is_zero()) ++p;
    if (p == m) continue;
    std::swap(t[p], t[r]);
    const Rational inv = Rational(1) / t[r][c];
    for (std::size_t j = c; j <= n; ++j) t[r][j] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || t[i][c].is_zero()) continue;
      const Rational f = t[i][c];
      for (std::size_t j = c; j <= n; ++j)
        if (!t[r][j].is_zero()) t[i][j].sub_mul(f, t[r][j]);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (!t[i][n].is_zero()) return std::nullopt;

  AffineSolution sol{RatVector(n), {}};
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
    sol.particular[pivot_cols[i]] = t[i][n];
    is_pivot[pivot_cols[i]] = true;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -t[i][f];
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

}  // namespace permext

#endif  // PERMEXT_LINALG_HPP
