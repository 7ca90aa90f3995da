#ifndef PERMEXT_FORMULATION_HPP
#define PERMEXT_FORMULATION_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "permext/errors.hpp"
#include "permext/linalg.hpp"
#include "permext/lp.hpp"
#include "permext/perm_group.hpp"
#include "permext/polytope.hpp"
#include "permext/rational.hpp"

namespace permext {

/**
 * Extended formulation Q = { y in R^d : eq_lhs y = eq_rhs, ineq_lhs y <= ineq_rhs }
 * together with the linear projection p : R^d -> R^m (an m x d matrix).
 */
struct Formulation {
  int m = 0;
  int d = 0;
  RatMatrix eq_lhs;
  RatVector eq_rhs;
  RatMatrix ineq_lhs;
  RatVector ineq_rhs;
  RatMatrix projection;
  std::vector<std::string> var_names;

  std::size_t num_eq() const { return eq_lhs.nrows(); }
  std::size_t num_ineq() const { return ineq_lhs.nrows(); }

  void validate() const {
    const auto ud = static_cast<std::size_t>(d);
    if (d < 1 || m < 1) throw InvalidInput("formulation needs d >= 1 and m >= 1");
    if (eq_lhs.ncols() != ud || ineq_lhs.ncols() != ud || projection.ncols() != ud)
      throw InvalidInput("formulation: column count differs from d");
    if (eq_lhs.nrows() != eq_rhs.dim() || ineq_lhs.nrows() != ineq_rhs.dim())
      throw InvalidInput("formulation: row count differs from rhs length");
    if (projection.nrows() != static_cast<std::size_t>(m))
      throw InvalidInput("formulation: projection must have m rows");
    if (!var_names.empty() && var_names.size() != ud)
      throw InvalidInput("formulation: one name per variable expected");
  }
};

/// Q = { y >= 0 : lhs y = rhs } with projection p.
struct SubspaceExtension {
  int m = 0;
  int d = 0;
  RatMatrix lhs;
  RatVector rhs;
  RatMatrix projection;
  std::vector<std::string> var_names;

  void validate() const {
    const auto ud = static_cast<std::size_t>(d);
    if (d < 1 || m < 1) throw InvalidInput("subspace extension needs d, m >= 1");
    if (lhs.ncols() != ud || projection.ncols() != ud)
      throw InvalidInput("subspace extension: column count differs from d");
    if (lhs.nrows() != rhs.dim())
      throw InvalidInput("subspace extension: row count differs from rhs length");
    if (projection.nrows() != static_cast<std::size_t>(m))
      throw InvalidInput("subspace extension: projection must have m rows");
    if (!var_names.empty() && var_names.size() != ud)
      throw InvalidInput("subspace extension: one name per variable expected");
  }
};

/// Column of x_v (0-based v) in the Birkhoff formulation.
inline std::size_t birkhoff_x_index(int /*n*/, int v) { return static_cast<std::size_t>(v); }

/// Column of z_{i,v} (0-based i, v): the x block comes first, then z row-major.
inline std::size_t birkhoff_z_index(int n, int i, int v) {
  return static_cast<std::size_t>(n + i * n + v);
}

/**
 * The Birkhoff-polytope formulation of the permutahedron:
 *   sum_i i z_{i,v} = x_v,  sum_v z_{i,v} = 1,  sum_i z_{i,v} = 1,  z >= 0.
 * Equality rows: n linking rows, n row sums, n column sums (in that order);
 * inequality rows: -z_{i,v} <= 0 in column order.
 */
inline Formulation build_birkhoff_extension(int n) {
  if (n < 1) throw InvalidInput("build_birkhoff_extension: n must be >= 1");
  const int d = n * n + n;
  const auto ud = static_cast<std::size_t>(d);
  Formulation f;
  f.m = n;
  f.d = d;
  f.eq_lhs = RatMatrix(0, ud);
  f.ineq_lhs = RatMatrix(0, ud);
  f.projection = RatMatrix(static_cast<std::size_t>(n), ud);
  for (int v = 0; v < n; ++v) f.var_names.push_back("x" + std::to_string(v + 1));
  for (int i = 0; i < n; ++i)
    for (int v = 0; v < n; ++v)
      f.var_names.push_back("z" + std::to_string(i + 1) + "_" + std::to_string(v + 1));

  for (int v = 0; v < n; ++v) {
    RatVector row(ud);
    for (int i = 0; i < n; ++i) row[birkhoff_z_index(n, i, v)] = i + 1;
    row[birkhoff_x_index(n, v)] = -1;
    f.eq_lhs.append_row(std::move(row));
    f.eq_rhs.push_back(0);
  }
  for (int i = 0; i < n; ++i) {
    RatVector row(ud);
    for (int v = 0; v < n; ++v) row[birkhoff_z_index(n, i, v)] = 1;
    f.eq_lhs.append_row(std::move(row));
    f.eq_rhs.push_back(1);
  }
  for (int v = 0; v < n; ++v) {
    RatVector row(ud);
    for (int i = 0; i < n; ++i) row[birkhoff_z_index(n, i, v)] = 1;
    f.eq_lhs.append_row(std::move(row));
    f.eq_rhs.push_back(1);
  }
  for (int i = 0; i < n; ++i) {
    for (int v = 0; v < n; ++v) {
      RatVector row(ud);
      row[birkhoff_z_index(n, i, v)] = -1;
      f.ineq_lhs.append_row(std::move(row));
      f.ineq_rhs.push_back(0);
    }
  }
  for (int v = 0; v < n; ++v) f.projection(static_cast<std::size_t>(v), birkhoff_x_index(n, v)) = 1;
  return f;
}

/// z-only variant: d = n^2 (z_{i,v} at i*n + v), 2n doubly-stochastic rows
/// (row sums, then column sums), p(z)_v = sum_i i z_{i,v}.
inline SubspaceExtension birkhoff_z_extension(int n) {
  if (n < 1) throw InvalidInput("birkhoff_z_extension: n must be >= 1");
  const auto ud = static_cast<std::size_t>(n * n);
  auto idx = [n](int i, int v) { return static_cast<std::size_t>(i * n + v); };
  SubspaceExtension e;
  e.m = n;
  e.d = n * n;
  e.lhs = RatMatrix(0, ud);
  e.projection = RatMatrix(static_cast<std::size_t>(n), ud);
  for (int i = 0; i < n; ++i)
    for (int v = 0; v < n; ++v)
      e.var_names.push_back("z" + std::to_string(i + 1) + "_" + std::to_string(v + 1));
  for (int i = 0; i < n; ++i) {
    RatVector row(ud);
    for (int v = 0; v < n; ++v) row[idx(i, v)] = 1;
    e.lhs.append_row(std::move(row));
    e.rhs.push_back(1);
  }
  for (int v = 0; v < n; ++v) {
    RatVector row(ud);
    for (int i = 0; i < n; ++i) row[idx(i, v)] = 1;
    e.lhs.append_row(std::move(row));
    e.rhs.push_back(1);
  }
  for (int i = 0; i < n; ++i)
    for (int v = 0; v < n; ++v) e.projection(static_cast<std::size_t>(v), idx(i, v)) = i + 1;
  return e;
}

/// The permutahedron's own facet system as a (trivial) formulation with
/// identity projection; inequalities in "<=" orientation.
inline Formulation facets_as_formulation(const FacetSystem& fs) {
  const auto n = static_cast<std::size_t>(fs.n);
  Formulation f;
  f.m = fs.n;
  f.d = fs.n;
  f.eq_lhs = RatMatrix(0, n);
  f.ineq_lhs = RatMatrix(0, n);
  f.projection = RatMatrix::identity(n);
  for (std::size_t v = 0; v < n; ++v) f.var_names.push_back("x" + std::to_string(v + 1));
  f.eq_lhs.append_row(fs.equation_coefficients);
  f.eq_rhs.push_back(fs.equation_rhs);
  for (const auto& ineq : fs.inequalities) {
    RatVector row(n);
    for (int v : subset_points(ineq.subset)) row[static_cast<std::size_t>(v)] = -1;
    f.ineq_lhs.append_row(std::move(row));
    f.ineq_rhs.push_back(-ineq.rhs);
  }
  return f;
}

/// Same polyhedron with the sign constraints written as rows -y_j <= 0.
inline Formulation as_formulation(const SubspaceExtension& e) {
  e.validate();
  const auto ud = static_cast<std::size_t>(e.d);
  Formulation f;
  f.m = e.m;
  f.d = e.d;
  f.eq_lhs = e.lhs;
  f.eq_rhs = e.rhs;
  f.ineq_lhs = RatMatrix(0, ud);
  for (std::size_t j = 0; j < ud; ++j) {
    RatVector row(ud);
    row[j] = -1;
    f.ineq_lhs.append_row(std::move(row));
    f.ineq_rhs.push_back(0);
  }
  f.projection = e.projection;
  f.var_names = e.var_names;
  return f;
}

/// Variable j when row `r` reads -c y_j <= 0 with c > 0, otherwise nullopt.
inline std::optional<std::size_t> sign_row_variable(const RatMatrix& lhs,
                                                    const RatVector& rhs,
                                                    std::size_t r) {
  if (!rhs[r].is_zero()) return std::nullopt;
  std::optional<std::size_t> var;
  for (std::size_t j = 0; j < lhs.ncols(); ++j) {
    if (lhs(r, j).is_zero()) continue;
    if (var || lhs(r, j).sign() > 0) return std::nullopt;
    var = j;
  }
  return var;
}

/// A subspace extension plus the bookkeeping that relates it to its source.
struct SubspaceConversion {
  SubspaceExtension ext;
  std::vector<std::vector<std::size_t>> var_cols;  // 1 column, or (plus, minus)
  std::vector<std::optional<std::size_t>> slack_col;  // per source inequality row
  std::vector<std::optional<std::size_t>> slack_row;  // equality row carrying it
};

/**
 * Rewrites a formulation as { y' >= 0 : A' y' = b' }. Variables with a
 * dedicated sign row -c y_j <= 0 stay as they are (those rows are dropped);
 * every other variable becomes y_j+ - y_j-; each remaining inequality row
 * gets one slack. The result has at most 2 d + f variables.
 */
inline SubspaceConversion to_subspace_extension_mapped(const Formulation& f) {
  f.validate();
  const auto d = static_cast<std::size_t>(f.d);
  std::vector<bool> signed_var(d, false);
  std::vector<bool> consumed(f.num_ineq(), false);
  for (std::size_t r = 0; r < f.num_ineq(); ++r) {
    if (auto j = sign_row_variable(f.ineq_lhs, f.ineq_rhs, r)) {
      signed_var[*j] = true;
      consumed[r] = true;
    }
  }

  SubspaceConversion out;
  std::size_t cols = 0;
  std::vector<std::string> names;
  auto name_of = [&](std::size_t j) {
    return f.var_names.empty() ? "y" + std::to_string(j + 1) : f.var_names[j];
  };
  for (std::size_t j = 0; j < d; ++j) {
    if (signed_var[j]) {
      out.var_cols.push_back({cols++});
      names.push_back(name_of(j));
    } else {
      out.var_cols.push_back({cols, cols + 1});
      cols += 2;
      names.push_back(name_of(j) + "+");
      names.push_back(name_of(j) + "-");
    }
  }
  out.slack_col.assign(f.num_ineq(), std::nullopt);
  out.slack_row.assign(f.num_ineq(), std::nullopt);
  for (std::size_t r = 0; r < f.num_ineq(); ++r) {
    if (consumed[r]) continue;
    out.slack_col[r] = cols++;
    names.push_back("s" + std::to_string(r + 1));
  }

  auto lift_row = [&](const RatVector& row) {
    RatVector lifted(cols);
    for (std::size_t j = 0; j < d; ++j) {
      if (row[j].is_zero()) continue;
      lifted[out.var_cols[j][0]] = row[j];
      if (out.var_cols[j].size() == 2) lifted[out.var_cols[j][1]] = -row[j];
    }
    return lifted;
  };

  SubspaceExtension& e = out.ext;
  e.m = f.m;
  e.d = static_cast<int>(cols);
  e.lhs = RatMatrix(0, cols);
  for (std::size_t r = 0; r < f.num_eq(); ++r) {
    e.lhs.append_row(lift_row(f.eq_lhs.row(r)));
    e.rhs.push_back(f.eq_rhs[r]);
  }
  for (std::size_t r = 0; r < f.num_ineq(); ++r) {
    if (consumed[r]) continue;
    RatVector row = lift_row(f.ineq_lhs.row(r));
    row[*out.slack_col[r]] = 1;
    out.slack_row[r] = e.lhs.nrows();
    e.lhs.append_row(std::move(row));
    e.rhs.push_back(f.ineq_rhs[r]);
  }
  e.projection = RatMatrix(0, cols);
  for (std::size_t v = 0; v < f.projection.nrows(); ++v)
    e.projection.append_row(lift_row(f.projection.row(v)));
  e.var_names = std::move(names);
  return out;
}

inline SubspaceExtension to_subspace_extension(const Formulation& f) {
  return to_subspace_extension_mapped(f).ext;
}

/// Constraint system of a formulation as an LP with zero objective. Dedicated
/// sign rows become variable bounds.
inline LinearProgram constraint_program(const Formulation& f) {
  f.validate();
  LinearProgram lp = LinearProgram::over(static_cast<std::size_t>(f.d));
  for (std::size_t r = 0; r < f.num_eq(); ++r) lp.add_eq(f.eq_lhs.row(r), f.eq_rhs[r]);
  for (std::size_t r = 0; r < f.num_ineq(); ++r) {
    if (auto j = sign_row_variable(f.ineq_lhs, f.ineq_rhs, r)) {
      lp.nonneg[*j] = true;
      continue;
    }
    lp.add_le(f.ineq_lhs.row(r), f.ineq_rhs[r]);
  }
  return lp;
}

inline LinearProgram constraint_program(const SubspaceExtension& e) {
  e.validate();
  LinearProgram lp = LinearProgram::over(static_cast<std::size_t>(e.d));
  for (std::size_t r = 0; r < e.lhs.nrows(); ++r) lp.add_eq(e.lhs.row(r), e.rhs[r]);
  lp.nonneg.assign(static_cast<std::size_t>(e.d), true);
  return lp;
}

struct ProjectionOptions {
  int cap = kDefaultEnumerationCap;
  unsigned jobs = 1;
};

struct ProjectionReport {
  struct CoverageFailure {
    std::string vertex;  // one-line form of the vertex coordinates
  };
  struct FacetFailure {
    std::optional<SubsetMask> subset;  // nullopt: the equation sum x = n(n+1)/2
    std::string detail;

    std::string name() const {
      return subset ? "S=" + subset_str(*subset) : std::string("equation");
    }
  };

  int n = 0;
  std::size_t vertices_checked = 0;
  std::size_t facets_checked = 0;
  std::vector<CoverageFailure> coverage_failures;
  std::vector<FacetFailure> facet_failures;

  bool passed() const { return coverage_failures.empty() && facet_failures.empty(); }
};

namespace detail {

template <class Task>
void run_indexed(std::size_t count, unsigned jobs, Task&& task) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  const unsigned nthreads = std::min<unsigned>(jobs, static_cast<unsigned>(count));
  for (unsigned t = 0; t < nthreads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
  for (auto& w : workers) w.join();
}

inline ProjectionReport verify_projection_impl(const LinearProgram& base,
                                               const RatMatrix& projection,
                                               const FacetSystem& target,
                                               const ProjectionOptions& opt) {
  const int n = target.n;
  if (projection.nrows() != static_cast<std::size_t>(n))
    throw InvalidInput("verify_projection: projection has " +
                       std::to_string(projection.nrows()) +
                       " rows but the target lives in dimension " + std::to_string(n));
  const auto vertices = permutahedron_vertices(n, opt.cap);
  const std::size_t d = base.num_vars();

  auto image_row = [&](const RatVector& c) {  // c^T p as a row over y
    RatVector row(d);
    for (std::size_t v = 0; v < projection.nrows(); ++v) {
      if (c[v].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (!projection(v, j).is_zero()) row[j] += c[v] * projection(v, j);
    }
    return row;
  };

  // Tasks: vertices, then the equation (min and max), then the inequalities.
  const std::size_t nv = vertices.size();
  const std::size_t nf = target.inequalities.size();
  std::vector<std::optional<ProjectionReport::CoverageFailure>> cov(nv);
  std::vector<std::optional<ProjectionReport::FacetFailure>> fac(nf + 1);

  run_indexed(nv + nf + 1, opt.jobs, [&](std::size_t task) {
    if (task < nv) {
      LinearProgram lp = base;
      for (std::size_t v = 0; v < projection.nrows(); ++v)
        lp.add_eq(projection.row(v), vertices[task][v]);
      if (solve_exact_lp(lp).status != LPStatus::optimal)
        cov[task] = ProjectionReport::CoverageFailure{vertices[task].str()};
      return;
    }
    const std::size_t k = task - nv;
    LinearProgram lp = base;
    if (k == 0) {
      lp.objective = image_row(target.equation_coefficients);
      for (LPSense sense : {LPSense::minimize, LPSense::maximize}) {
        lp.sense = sense;
        const LPResult res = solve_exact_lp(lp);
        if (res.status != LPStatus::optimal) {
          fac[0] = ProjectionReport::FacetFailure{
              std::nullopt, std::string(sense == LPSense::minimize ? "min" : "max") +
                                " of sum x is " + to_string(res.status)};
          return;
        }
        if (*res.value != target.equation_rhs) {
          fac[0] = ProjectionReport::FacetFailure{
              std::nullopt, std::string(sense == LPSense::minimize ? "min" : "max") +
                                " of sum x is " + res.value->str() + ", expected " +
                                target.equation_rhs.str()};
          return;
        }
      }
      return;
    }
    const SubsetInequality& ineq = target.inequalities[k - 1];
    RatVector c(static_cast<std::size_t>(n));
    for (int v : subset_points(ineq.subset)) c[static_cast<std::size_t>(v)] = 1;
    lp.objective = image_row(c);
    lp.sense = LPSense::minimize;
    const LPResult res = solve_exact_lp(lp);
    if (res.status != LPStatus::optimal) {
      fac[k] = ProjectionReport::FacetFailure{
          ineq.subset, std::string("minimum is ") + to_string(res.status)};
    } else if (*res.value < ineq.rhs) {
      fac[k] = ProjectionReport::FacetFailure{
          ineq.subset, "minimum " + res.value->str() + " < " + ineq.rhs.str()};
    }
  });

  ProjectionReport report;
  report.n = n;
  report.vertices_checked = nv;
  report.facets_checked = nf;
  for (auto& c : cov)
    if (c) report.coverage_failures.push_back(std::move(*c));
  for (auto& f : fac)
    if (f) report.facet_failures.push_back(std::move(*f));
  return report;
}

}  // namespace detail

/**
 * Certifies p(Q) = target exactly: every vertex of the target has a preimage
 * in Q (one feasibility LP per vertex), and min over Q of every facet's
 * left-hand side composed with p is at least its right-hand side, with the
 * equation constant on Q. Convexity makes the two directions sufficient.
 */
inline ProjectionReport verify_projection(const Formulation& f, const FacetSystem& target,
                                          const ProjectionOptions& opt = {}) {
  return detail::verify_projection_impl(constraint_program(f), f.projection, target, opt);
}

inline ProjectionReport verify_projection(const SubspaceExtension& e,
                                          const FacetSystem& target,
                                          const ProjectionOptions& opt = {}) {
  return detail::verify_projection_impl(constraint_program(e), e.projection, target, opt);
}

/// ceil(log2(n!)): every extension has at least this many facets.
inline Integer face_count_lower_bound(int n) {
  if (n < 1) throw InvalidInput("face_count_lower_bound: n must be >= 1");
  const Integer f = factorial(static_cast<unsigned>(n));
  const auto bits = static_cast<unsigned long>(mpz_sizeinbase(f.get_mpz_t(), 2));
  const bool power_of_two = mpz_popcount(f.get_mpz_t()) == 1;
  return Integer(power_of_two ? bits - 1 : bits);
}

/// n(n-1)/2: fewest variables of a weakly symmetric subspace extension (n >= 6).
inline Rational symmetric_variable_bound(int n) {
  if (n < 1) throw InvalidInput("symmetric_variable_bound: n must be >= 1");
  return Rational::normalize(Integer(n) * (n - 1), 2);
}

/// n(n-1)/4: fewest variables plus constraints of a symmetric formulation (n >= 6).
inline Rational combined_lower_bound(int n) {
  if (n < 1) throw InvalidInput("combined_lower_bound: n must be >= 1");
  return Rational::normalize(Integer(n) * (n - 1), 4);
}

/// 2^n - 2.
inline Integer permutahedron_facet_count(int n) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return p - 2;
}

}  // namespace permext

#endif  // PERMEXT_FORMULATION_HPP
