#ifndef PERMEXT_LP_HPP
#define PERMEXT_LP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permext/errors.hpp"
#include "permext/linalg.hpp"
#include "permext/rational.hpp"

namespace permext {

enum class LPSense { maximize, minimize };
enum class LPStatus { optimal, infeasible, unbounded };

inline const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::optimal: return "optimal";
    case LPStatus::infeasible: return "infeasible";
    case LPStatus::unbounded: return "unbounded";
  }
  return "?";
}

/// optimize c.y  s.t.  eq_lhs y = eq_rhs,  ineq_lhs y <= ineq_rhs,
///                     y_j >= 0 for every j with nonneg[j].
struct LinearProgram {
  RatVector objective;
  RatMatrix eq_lhs;
  RatVector eq_rhs;
  RatMatrix ineq_lhs;
  RatVector ineq_rhs;
  std::vector<bool> nonneg;
  LPSense sense = LPSense::maximize;

  /// An LP over `d` free variables with no constraints and zero objective.
  static LinearProgram over(std::size_t d) {
    LinearProgram lp;
    lp.objective = RatVector(d);
    lp.eq_lhs = RatMatrix(0, d);
    lp.ineq_lhs = RatMatrix(0, d);
    lp.nonneg.assign(d, false);
    return lp;
  }

  std::size_t num_vars() const { return objective.dim(); }

  void add_eq(RatVector row, Rational rhs) {
    eq_lhs.append_row(std::move(row));
    eq_rhs.push_back(std::move(rhs));
  }
  void add_le(RatVector row, Rational rhs) {
    ineq_lhs.append_row(std::move(row));
    ineq_rhs.push_back(std::move(rhs));
  }
};

struct LPResult {
  LPStatus status = LPStatus::infeasible;
  std::optional<Rational> value;
  std::optional<RatVector> optimizer;
};

namespace detail {

// Dense tableau for max c.z s.t. T z = rhs, z >= 0; reduced costs kept in
// `cost`. Entering and leaving choices follow Bland's rule.
class SimplexTableau {
 public:
  SimplexTableau(std::size_t rows, std::size_t cols)
      : a_(rows, std::vector<Rational>(cols + 1)), cost_(cols + 1),
        basis_(rows, 0), cols_(cols) {}

  Rational& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  Rational& rhs(std::size_t r) { return a_[r][cols_]; }
  const Rational& rhs(std::size_t r) const { return a_[r][cols_]; }
  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void set_costs(const std::vector<Rational>& c) {
    for (std::size_t j = 0; j < cols_; ++j) cost_[j] = c[j];
    cost_[cols_] = 0;
    for (std::size_t r = 0; r < rows(); ++r) {
      const Rational cb = c[basis_[r]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (!a_[r][j].is_zero()) cost_[j].sub_mul(cb, a_[r][j]);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    std::vector<Rational>& prow = a_[r];
    const Rational inv = Rational(1) / prow[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (prow[j].is_zero()) continue;
      prow[j] *= inv;
      nz.push_back(j);
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[c].is_zero()) return;
      const Rational f = row[c];
      for (std::size_t j : nz) row[j].sub_mul(f, prow[j]);
    };
    for (std::size_t i = 0; i < rows(); ++i)
      if (i != r) eliminate(a_[i]);
    eliminate(cost_);
    basis_[r] = c;
  }

  /// Returns false when the objective is unbounded along an entering column.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed[j] && cost_[j].sign() > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (a_[i][enter].sign() <= 0) continue;
        Rational ratio = a_[i][cols_] / a_[i][enter];
        if (leave == rows() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
    }
  }

  void erase_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace detail

/**
 * Exact two-phase primal simplex with Bland's rule. Free variables are split
 * into differences of nonnegative ones and every inequality row receives a
 * slack; the result is mapped back to the caller's variables.
 */
inline LPResult solve_exact_lp(const LinearProgram& lp) {
  const std::size_t d = lp.num_vars();
  if (lp.eq_lhs.ncols() != d || lp.ineq_lhs.ncols() != d ||
      lp.nonneg.size() != d || lp.eq_lhs.nrows() != lp.eq_rhs.dim() ||
      lp.ineq_lhs.nrows() != lp.ineq_rhs.dim())
    throw InvalidInput("solve_exact_lp: inconsistent dimensions");

  // Column layout: one column per nonnegative variable, two per free one,
  // then one slack per inequality row, then artificials.
  std::vector<std::size_t> pos_col(d), neg_col(d, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < d; ++j) {
    pos_col[j] = ncols++;
    if (!lp.nonneg[j]) neg_col[j] = ncols++;
  }
  const std::size_t n_eq = lp.eq_lhs.nrows();
  const std::size_t n_le = lp.ineq_lhs.nrows();
  const std::size_t m = n_eq + n_le;
  const std::size_t first_slack = ncols;
  ncols += n_le;

  // Rows that can start with their slack in the basis need no artificial.
  std::vector<bool> needs_artificial(m, true);
  for (std::size_t i = 0; i < n_le; ++i)
    if (lp.ineq_rhs[i].sign() >= 0) needs_artificial[n_eq + i] = false;
  const std::size_t first_artificial = ncols;
  for (std::size_t i = 0; i < m; ++i)
    if (needs_artificial[i]) ++ncols;

  detail::SimplexTableau t(m, ncols);
  std::size_t next_art = first_artificial;
  for (std::size_t i = 0; i < m; ++i) {
    const RatVector& row = i < n_eq ? lp.eq_lhs.row(i) : lp.ineq_lhs.row(i - n_eq);
    Rational rhs = i < n_eq ? lp.eq_rhs[i] : lp.ineq_rhs[i - n_eq];
    const bool flip = rhs.sign() < 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (row[j].is_zero()) continue;
      const Rational c = flip ? -row[j] : row[j];
      t.at(i, pos_col[j]) = c;
      if (neg_col[j] != SIZE_MAX) t.at(i, neg_col[j]) = -c;
    }
    if (i >= n_eq) t.at(i, first_slack + (i - n_eq)) = flip ? -1 : 1;
    t.rhs(i) = flip ? -rhs : rhs;
    if (needs_artificial[i]) {
      t.at(i, next_art) = 1;
      t.basis()[i] = next_art++;
    } else {
      t.basis()[i] = first_slack + (i - n_eq);
    }
  }

  auto is_artificial = [&](std::size_t c) { return c >= first_artificial; };
  std::vector<bool> allowed(ncols, true);

  // Phase 1: maximize -(sum of artificials).
  if (first_artificial < ncols) {
    std::vector<Rational> c1(ncols);
    for (std::size_t c = first_artificial; c < ncols; ++c) c1[c] = -1;
    t.set_costs(c1);
    t.optimize(allowed);  // bounded above by zero
    for (std::size_t r = 0; r < t.rows(); ++r)
      if (is_artificial(t.basis()[r]) && !t.rhs(r).is_zero())
        return LPResult{LPStatus::infeasible, std::nullopt, std::nullopt};
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < t.rows();) {
      if (!is_artificial(t.basis()[r])) {
        ++r;
        continue;
      }
      std::size_t c = 0;
      while (c < first_artificial && t.at(r, c).is_zero()) ++c;
      if (c < first_artificial) {
        t.pivot(r, c);
        ++r;
      } else {
        t.erase_row(r);
      }
    }
    for (std::size_t c = first_artificial; c < ncols; ++c) allowed[c] = false;
  }

  // Phase 2.
  std::vector<Rational> c2(ncols);
  const bool maximize = lp.sense == LPSense::maximize;
  for (std::size_t j = 0; j < d; ++j) {
    const Rational c = maximize ? lp.objective[j] : -lp.objective[j];
    c2[pos_col[j]] = c;
    if (neg_col[j] != SIZE_MAX) c2[neg_col[j]] = -c;
  }
  t.set_costs(c2);
  if (!t.optimize(allowed))
    return LPResult{LPStatus::unbounded, std::nullopt, std::nullopt};

  std::vector<Rational> z(ncols);
  for (std::size_t r = 0; r < t.rows(); ++r) z[t.basis()[r]] = t.rhs(r);
  RatVector y(d);
  for (std::size_t j = 0; j < d; ++j) {
    y[j] = z[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) y[j] -= z[neg_col[j]];
  }
  Rational value = dot(lp.objective, y);
  return LPResult{LPStatus::optimal, std::move(value), std::move(y)};
}

/// Exact substitution check of every constraint of `lp` at `y`.
inline bool satisfies_constraints(const LinearProgram& lp, const RatVector& y) {
  if (y.dim() != lp.num_vars()) return false;
  for (std::size_t i = 0; i < lp.eq_lhs.nrows(); ++i)
    if (dot(lp.eq_lhs.row(i), y) != lp.eq_rhs[i]) return false;
  for (std::size_t i = 0; i < lp.ineq_lhs.nrows(); ++i)
    if (dot(lp.ineq_lhs.row(i), y) > lp.ineq_rhs[i]) return false;
  for (std::size_t j = 0; j < y.dim(); ++j)
    if (lp.nonneg[j] && y[j].sign() < 0) return false;
  return true;
}

}  // namespace permext

#endif  // PERMEXT_LP_HPP
