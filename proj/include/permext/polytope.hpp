#ifndef PERMEXT_POLYTOPE_HPP
#define PERMEXT_POLYTOPE_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permext/errors.hpp"
#include "permext/linalg.hpp"
#include "permext/perm_group.hpp"
#include "permext/rational.hpp"

namespace permext {

/// Subsets of [n] are bitmasks; bit v is point v (0-based).
using SubsetMask = std::uint32_t;

inline std::vector<int> subset_points(SubsetMask mask) {
  std::vector<int> out;
  for (int v = 0; mask; ++v, mask >>= 1)
    if (mask & 1u) out.push_back(v);
  return out;
}

/// "{1,3}" (1-based).
inline std::string subset_str(SubsetMask mask) {
  std::string out = "{";
  bool first = true;
  for (int v : subset_points(mask)) {
    if (!first) out += ',';
    out += std::to_string(v + 1);
    first = false;
  }
  return out + "}";
}

inline Rational triangular(long k) { return Rational(k * (k + 1) / 2); }

/// sum_{v in S} x_v >= |S|(|S|+1)/2
struct SubsetInequality {
  SubsetMask subset = 0;
  Rational rhs;
};

/**
 * Minimal H-description of the permutahedron: sum_v x_v = n(n+1)/2 and one
 * inequality per proper nonempty subset, ordered by increasing bitmask.
 */
struct FacetSystem {
  int n = 0;
  RatVector equation_coefficients;
  Rational equation_rhs;
  std::vector<SubsetInequality> inequalities;
};

inline FacetSystem permutahedron_facets(int n) {
  if (n < 2) throw InvalidInput("permutahedron_facets: n must be >= 2");
  if (n > 30) throw InvalidInput("permutahedron_facets: n must be <= 30");
  FacetSystem fs;
  fs.n = n;
  fs.equation_coefficients = RatVector(static_cast<std::size_t>(n));
  for (auto& c : fs.equation_coefficients) c = 1;
  fs.equation_rhs = triangular(n);
  const SubsetMask full = (SubsetMask{1} << n) - 1;
  fs.inequalities.reserve(full - 1);
  for (SubsetMask s = 1; s < full; ++s)
    fs.inequalities.push_back({s, triangular(std::popcount(s))});
  return fs;
}

inline std::vector<RatVector> permutahedron_vertices(int n,
                                                     int cap = kDefaultEnumerationCap) {
  std::vector<RatVector> out;
  for (const auto& zeta : all_permutations(n, cap)) out.push_back(lambda_vertex(zeta));
  return out;
}

struct FacetViolation {
  enum class Kind { equation, inequality };
  Kind kind = Kind::equation;
  SubsetMask subset = 0;  // meaningful for inequalities
  Rational amount;        // |lhs - rhs| for the equation, rhs - lhs otherwise

  std::string describe() const {
    if (kind == Kind::equation) return "equation sum x = rhs off by " + amount.str();
    return "facet S=" + subset_str(subset) + " short by " + amount.str();
  }
};

inline Rational subset_sum(const RatVector& x, SubsetMask s) {
  Rational sum;
  for (int v : subset_points(s)) sum += x[static_cast<std::size_t>(v)];
  return sum;
}

/// First violated constraint: the equation, then inequalities by bitmask.
inline std::optional<FacetViolation> facet_violation(const RatVector& x,
                                                     const FacetSystem& fs) {
  if (x.dim() != static_cast<std::size_t>(fs.n))
    throw InvalidInput("facet_violation: dimension mismatch");
  const Rational total = dot(fs.equation_coefficients, x);
  if (total != fs.equation_rhs)
    return FacetViolation{FacetViolation::Kind::equation, 0,
                          abs(total - fs.equation_rhs)};
  for (const auto& ineq : fs.inequalities) {
    const Rational lhs = subset_sum(x, ineq.subset);
    if (lhs < ineq.rhs)
      return FacetViolation{FacetViolation::Kind::inequality, ineq.subset,
                            ineq.rhs - lhs};
  }
  return std::nullopt;
}

}  // namespace permext

#endif  // PERMEXT_POLYTOPE_HPP
