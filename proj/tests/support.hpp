#ifndef PERMEXT_TESTS_SUPPORT_HPP
#define PERMEXT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "permext/audit.hpp"
#include "permext/formulation.hpp"
#include "permext/section.hpp"

namespace testing_support {

using namespace permext;

inline std::mt19937& rng() {
  static std::mt19937 gen(20240611u);
  return gen;
}

inline int uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng());
}

/// p/q with |p| <= span, 1 <= q <= max_den.
inline Rational random_rational(int span, int max_den) {
  return Rational::normalize(uniform(-span, span), uniform(1, max_den));
}

inline Rational random_nonneg_rational(int span, int max_den) {
  return Rational::normalize(uniform(0, span), uniform(1, max_den));
}

inline Permutation random_permutation(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) img[static_cast<std::size_t>(v)] = v;
  std::shuffle(img.begin(), img.end(), rng());
  return Permutation(img);
}

/// Determinant by cofactor expansion (small matrices only).
inline Rational determinant(const std::vector<std::vector<Rational>>& m) {
  const std::size_t k = m.size();
  if (k == 1) return m[0][0];
  Rational det;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::vector<Rational>> minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<Rational> row;
      for (std::size_t cc = 0; cc < k; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(row);
    }
    const Rational term = m[0][c] * determinant(minor);
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

/// Cramer's rule; nullopt for a singular system.
inline std::optional<std::vector<Rational>> cramer(const std::vector<std::vector<Rational>>& a,
                                                   const std::vector<Rational>& b) {
  const Rational det = determinant(a);
  if (det.is_zero()) return std::nullopt;
  std::vector<Rational> x;
  for (std::size_t c = 0; c < a.size(); ++c) {
    auto m = a;
    for (std::size_t r = 0; r < a.size(); ++r) m[r][c] = b[r];
    x.push_back(determinant(m) / det);
  }
  return x;
}

/// H*_w from its definition: even permutations mapping [w] into itself.
inline std::vector<Permutation> h_star_by_definition(int n, int w) {
  std::vector<Permutation> h;
  for (const auto& p : all_permutations(n, n)) {
    if (!p.is_even()) continue;
    bool keeps = true;
    for (int v = 0; v < w; ++v)
      if (p(v) >= w) keeps = false;
    if (keeps) h.push_back(p);
  }
  return h;
}

/// s*(Lambda(zeta), w) straight from its definition: the mean of s(pi.x) over H*_w.
inline RatVector definitional_average(const Section& s, const Permutation& zeta,
                                      const std::vector<Permutation>& h) {
  RatVector sum(static_cast<std::size_t>(s.d()));
  for (const auto& p : h) sum = sum + s.value_at(p * zeta);
  return sum * Rational::normalize(1, static_cast<long>(h.size()));
}

inline RatVector definitional_average(const Section& s, const Permutation& zeta, int w) {
  return definitional_average(s, zeta, h_star_by_definition(s.n(), w));
}

/// Two blocks of n components at n = 6 whose values at Lambda(id) are
/// (0,0,0,0,0,1) and (1,0,0,0,0,0), moved by zeta as the partition requires:
/// s_{a_t}(Lambda(zeta)) = s_{a_{zeta^-1(t)}}(Lambda(id)).
inline Section indicator_section() {
  const int n = 6;
  return Section::from_rule(n, 2 * n, [n](const Permutation& zeta) {
    RatVector y(2 * n);
    y[static_cast<std::size_t>(zeta(n - 1))] = 1;
    y[static_cast<std::size_t>(n + zeta(0))] = 1;
    return y;
  });
}

/// Components x_t and (n+1) - x_t of the vertex x.
inline Section mirrored_section(int n) {
  return Section::from_rule(n, 2 * n, [n](const Permutation& zeta) {
    const RatVector x = lambda_vertex(zeta);
    RatVector y(static_cast<std::size_t>(2 * n));
    for (int t = 0; t < n; ++t) {
      y[static_cast<std::size_t>(t)] = x[static_cast<std::size_t>(t)];
      y[static_cast<std::size_t>(n + t)] = Rational(n + 1) - x[static_cast<std::size_t>(t)];
    }
    return y;
  }, n);
}

/// { y >= 0 : y_t + y_{n+t} = n+1, sum_t y_t = n(n+1)/2 }, p keeps the first
/// block. The section above lies in it, yet p(Q) is larger than the permutahedron.
inline SubspaceExtension mirrored_extension(int n) {
  const auto d = static_cast<std::size_t>(2 * n);
  SubspaceExtension e;
  e.m = n;
  e.d = 2 * n;
  e.lhs = RatMatrix(0, d);
  e.projection = RatMatrix(static_cast<std::size_t>(n), d);
  RatVector total(d);
  for (int t = 0; t < n; ++t) {
    RatVector row(d);
    row[static_cast<std::size_t>(t)] = 1;
    row[static_cast<std::size_t>(n + t)] = 1;
    e.lhs.append_row(row);
    e.rhs.push_back(n + 1);
    e.projection(static_cast<std::size_t>(t), static_cast<std::size_t>(t)) = 1;
    total[static_cast<std::size_t>(t)] = 1;
  }
  e.lhs.append_row(total);
  e.rhs.push_back(n * (n + 1) / 2);
  return e;
}

/// The canonical Birkhoff section with every component repeated: columns
/// j and n^2 + j agree.
inline Section doubled_birkhoff_section(int n) {
  const Section base = canonical_birkhoff_section(n, n);
  const auto nn = static_cast<std::size_t>(n * n);
  return Section::from_rule(n, 2 * n * n, [&](const Permutation& zeta) {
    const RatVector& y = base.value_at(zeta);
    RatVector out(2 * nn);
    for (std::size_t j = 0; j < nn; ++j) out[j] = out[nn + j] = y[j];
    return out;
  }, n);
}

/// The canonical Birkhoff section followed by one constant component.
inline Section birkhoff_with_constant(int n) {
  const Section base = canonical_birkhoff_section(n, n);
  return Section::from_rule(n, n * n + 1, [&](const Permutation& zeta) {
    RatVector y = base.value_at(zeta);
    y.push_back(Rational::normalize(1, 2));
    return y;
  }, n);
}

/// kappa for the Birkhoff section: (i, u) -> (i, pi(u)), column i*n + u.
inline Permutation birkhoff_kappa(const Permutation& pi) {
  const int n = pi.degree();
  std::vector<int> img(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int u = 0; u < n; ++u) img[static_cast<std::size_t>(i * n + u)] = i * n + pi(u);
  return Permutation(img);
}

inline std::vector<NormalizedKappa> normalized_rho_kappas(const Section& s) {
  const auto w = derive_weak_symmetry_witness(s, rho_generators(s.n()));
  const auto ess = essential_elements(s);
  std::vector<NormalizedKappa> out;
  for (std::size_t q = 0; q < w->generators.size(); ++q)
    out.push_back(normalize_kappa_cycles(w->kappas[q], w->generators[q], s, ess));
  return out;
}

}  // namespace testing_support

#endif  // PERMEXT_TESTS_SUPPORT_HPP
