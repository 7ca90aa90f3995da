#ifndef PERMEXT_AUDIT_HPP
#define PERMEXT_AUDIT_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "permext/errors.hpp"
#include "permext/formulation.hpp"
#include "permext/linalg.hpp"
#include "permext/perm_group.hpp"
#include "permext/permutation.hpp"
#include "permext/polytope.hpp"
#include "permext/rational.hpp"
#include "permext/section.hpp"

namespace permext {

using Triple = std::array<std::size_t, 3>;

inline std::vector<EssentialElement> essential_elements(const Section& s) {
  std::vector<EssentialElement> out;
  for (std::size_t j = 0; j < static_cast<std::size_t>(s.d()); ++j)
    out.push_back(essential_element(s, j));
  return out;
}

/// Permutation of [d] whose nontrivial cycles are exactly `cycles`.
inline Permutation kappa_from_cycles(int d, const std::vector<Triple>& cycles) {
  std::vector<int> img(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) img[static_cast<std::size_t>(j)] = j;
  for (const auto& c : cycles)
    for (std::size_t t = 0; t < 3; ++t) img[c[t]] = static_cast<int>(c[(t + 1) % 3]);
  return Permutation(std::move(img));
}

/// kappa and kappa' act identically on every section value:
/// s_{kappa^-1(j)} = s_{kappa'^-1(j)} for all j.
inline bool equivalent_kappas(const Section& s, const Permutation& a, const Permutation& b) {
  const Permutation ia = a.inverse();
  const Permutation ib = b.inverse();
  for (int j = 0; j < s.d(); ++j)
    if (!s.same_component(static_cast<std::size_t>(ia(j)), static_cast<std::size_t>(ib(j))))
      return false;
  return true;
}

/**
 * kappa_pi for a 3-cycle pi = (w1 w2 w3), rewritten into an equivalent
 * permutation made of 3-cycles (j1 j2 j3) with v_{j_t} = w_t.
 * `identical` lists the deleted 3-cycles whose components coincide.
 */
struct NormalizedKappa {
  Permutation pi;
  std::array<int, 3> w{};
  std::vector<Triple> cycles;
  std::vector<Triple> identical;

  Permutation kappa(int d) const { return kappa_from_cycles(d, cycles); }
};

inline NormalizedKappa normalize_kappa_cycles(const Permutation& kappa, const Permutation& pi,
                                              const Section& s,
                                              const std::vector<EssentialElement>& ess) {
  const auto pc = pi.cycles();
  if (pc.size() != 1 || pc[0].size() != 3)
    throw InvalidInput("normalize_kappa_cycles: " + pi.cycle_str() + " is not a 3-cycle");
  if (!satisfies_weak_symmetry(s, pi, kappa))
    throw InvalidInput("normalize_kappa_cycles: kappa " + kappa.str() +
                       " does not satisfy s(pi.x) = kappa.s(x) for pi = " + pi.cycle_str());
  if (ess.size() != static_cast<std::size_t>(s.d()))
    throw InvalidInput("normalize_kappa_cycles: one essential element per component expected");
  const char* lemma = "cycle normalization";
  NormalizedKappa out;
  out.pi = pi;
  out.w = {pc[0][0], pc[0][1], pc[0][2]};
  auto identical = [&](const std::vector<int>& c) {
    for (int j : c)
      if (!s.same_component(static_cast<std::size_t>(j), static_cast<std::size_t>(c[0])))
        return false;
    return true;
  };
  auto name = [](const std::vector<int>& c) {
    std::string out = "(";
    for (std::size_t k = 0; k < c.size(); ++k) out += (k ? " " : "") + std::to_string(c[k] + 1);
    return out + ")";
  };
  for (const auto& c : kappa.cycles()) {
    if (c.size() % 3 != 0) {
      if (!identical(c))
        throw HypothesisViolation(lemma, "cycle " + name(c) + " of length " +
                                             std::to_string(c.size()) +
                                             " moves distinct component functions");
      continue;
    }
    for (std::size_t k = 0; k < c.size(); k += 3) {
      const std::vector<int> t{c[k], c[k + 1], c[k + 2]};
      const Triple tri{static_cast<std::size_t>(t[0]), static_cast<std::size_t>(t[1]),
                       static_cast<std::size_t>(t[2])};
      if (identical(t)) {
        out.identical.push_back(tri);
        continue;
      }
      std::array<int, 3> v{};
      for (std::size_t q = 0; q < 3; ++q) {
        const auto& e = ess[tri[q]];
        if (e.kind == EssentialElement::Kind::none || !e.unique)
          throw HypothesisViolation("essential element",
                                    "component " + std::to_string(tri[q] + 1) + " has " +
                                        (e.kind == EssentialElement::Kind::none
                                             ? std::string("no essential element")
                                             : "no unique essential element"));
        if (e.kind == EssentialElement::Kind::all)
          throw HypothesisViolation(lemma, "cycle " + name(t) +
                                               " contains an A_n-invariant component but its "
                                               "components differ");
        v[q] = e.v;
      }
      std::size_t rot = 3;
      for (std::size_t q = 0; q < 3; ++q)
        if (v[q] == out.w[0]) rot = q;
      if (rot == 3 || v[(rot + 1) % 3] != out.w[1] || v[(rot + 2) % 3] != out.w[2])
        throw HypothesisViolation(lemma, "cycle " + name(t) + " has essential elements (" +
                                             std::to_string(v[0] + 1) + "," +
                                             std::to_string(v[1] + 1) + "," +
                                             std::to_string(v[2] + 1) + "), not aligned with " +
                                             pi.cycle_str());
      out.cycles.push_back({tri[rot], tri[(rot + 1) % 3], tri[(rot + 2) % 3]});
    }
  }
  if (!equivalent_kappas(s, kappa, out.kappa(s.d())))
    throw HypothesisViolation(lemma, "rewritten permutation is not equivalent to " +
                                         kappa.str());
  return out;
}

inline NormalizedKappa normalize_kappa_cycles(const Permutation& kappa, const Permutation& pi,
                                              const Section& s) {
  return normalize_kappa_cycles(kappa, pi, s, essential_elements(s));
}

/// A_i = (a^i_1, ..., a^i_n) and singletons b_j, all 0-based component indices.
struct Partition {
  std::vector<std::vector<std::size_t>> a_sets;
  std::vector<std::size_t> b_singletons;

  /// Throws InvalidInput unless the sets partition [d] with |A_i| = n.
  void check_shape(int n, int d) const {
    std::vector<int> seen(static_cast<std::size_t>(d), 0);
    auto mark = [&](std::size_t j) {
      if (j >= seen.size())
        throw InvalidInput("partition index " + std::to_string(j + 1) + " exceeds d");
      if (seen[j]++) throw InvalidInput("partition index " + std::to_string(j + 1) + " repeated");
    };
    for (const auto& a : a_sets) {
      if (a.size() != static_cast<std::size_t>(n))
        throw InvalidInput("partition set of size " + std::to_string(a.size()) +
                           ", expected " + std::to_string(n));
      for (auto j : a) mark(j);
    }
    for (auto j : b_singletons) mark(j);
    for (std::size_t j = 0; j < seen.size(); ++j)
      if (!seen[j]) throw InvalidInput("partition misses index " + std::to_string(j + 1));
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < a_sets.size(); ++i) {
      out += "A" + std::to_string(i + 1) + ":";
      for (auto j : a_sets[i]) out += " " + std::to_string(j + 1);
      out += "\n";
    }
    out += "B:";
    for (auto j : b_singletons) out += " " + std::to_string(j + 1);
    return out + "\n";
  }
};

/**
 * Grows a set (j1, ..., jn) from each cycle of kappa_{rho_1} by walking the
 * normalized kappa_{rho_v}, v = 2..n-2. When the next cycle does not continue
 * the chain, the two cycles through j_v and j_{v+1} are rewired after
 * checking the component equalities that justify it. `kappas[q]` belongs to
 * rho_q (0-based q) and is modified by the rewiring.
 */
inline Partition chain_partition(std::vector<NormalizedKappa>& kappas, const Section& s) {
  const int n = s.n();
  const auto ud = static_cast<std::size_t>(s.d());
  const char* lemma = "structure lemma";
  if (kappas.size() != static_cast<std::size_t>(std::max(n - 2, 0)))
    throw InvalidInput("chain_partition: expected one kappa per generator rho_v");
  for (std::size_t q = 0; q < kappas.size(); ++q)
    if (kappas[q].pi != rho_generator(static_cast<int>(q), n))
      throw InvalidInput("chain_partition: kappa " + std::to_string(q + 1) +
                         " does not belong to rho_" + std::to_string(q + 1));
  Partition part;
  std::vector<bool> used(ud, false);
  if (!kappas.empty()) {
    // where[q][j] = (cycle, position) of j in kappas[q]
    std::vector<std::vector<std::pair<int, int>>> where(
        kappas.size(), std::vector<std::pair<int, int>>(ud, {-1, -1}));
    auto index = [&](std::size_t q, std::size_t c) {
      for (int t = 0; t < 3; ++t)
        where[q][kappas[q].cycles[c][static_cast<std::size_t>(t)]] = {static_cast<int>(c), t};
    };
    for (std::size_t q = 0; q < kappas.size(); ++q)
      for (std::size_t c = 0; c < kappas[q].cycles.size(); ++c) index(q, c);
    for (const auto& start : kappas[0].cycles) {
      std::vector<std::size_t> chain{start[0], start[1], start[2]};
      for (std::size_t q = 1; q < kappas.size(); ++q) {
        const std::size_t jv = chain[q];
        const std::size_t jn = chain[q + 1];
        const auto [c1, p1] = where[q][jv];
        const auto [c2, p2] = where[q][jn];
        if (c1 < 0 || c2 < 0 || p1 != 0 || p2 != 1)
          throw HypothesisViolation(lemma, "rho_" + std::to_string(q + 1) +
                                               " has no cycle continuing (" +
                                               std::to_string(jv + 1) + " " +
                                               std::to_string(jn + 1) + ")");
        auto& cyc1 = kappas[q].cycles[static_cast<std::size_t>(c1)];
        if (c1 != c2) {
          auto& cyc2 = kappas[q].cycles[static_cast<std::size_t>(c2)];
          const std::size_t j3p = cyc1[1];
          const std::size_t j2pp = cyc2[0];
          if (!s.same_component(jn, j3p) || !s.same_component(jv, j2pp))
            throw HypothesisViolation(
                lemma, "cycles (" + std::to_string(jv + 1) + " " + std::to_string(j3p + 1) +
                           " " + std::to_string(cyc1[2] + 1) + ") and (" +
                           std::to_string(j2pp + 1) + " " + std::to_string(jn + 1) + " " +
                           std::to_string(cyc2[2] + 1) +
                           ") of rho_" + std::to_string(q + 1) +
                           " cannot be rewired: components differ");
          cyc1[1] = jn;
          cyc2[1] = j3p;
          index(q, static_cast<std::size_t>(c1));
          index(q, static_cast<std::size_t>(c2));
        }
        chain.push_back(cyc1[2]);
      }
      for (auto j : chain) {
        if (used[j])
          throw HypothesisViolation(lemma, "component " + std::to_string(j + 1) +
                                               " lies on two chains");
        used[j] = true;
      }
      part.a_sets.push_back(std::move(chain));
    }
  }
  for (std::size_t j = 0; j < ud; ++j)
    if (!used[j]) part.b_singletons.push_back(j);
  return part;
}

/// Checks s_{a_t}(rho.x) = s_{a_{rho^-1(t)}}(x) and s_b(rho.x) = s_b(x) for every
/// rho_v and every vertex; these generate A_n.
inline bool verify_partition(const Partition& part, const Section& s) {
  try {
    part.check_shape(s.n(), s.d());
  } catch (const InvalidInput&) {
    return false;
  }
  for (const auto& rho : rho_generators(s.n())) {
    const auto act = s.action(rho);
    const Permutation inv = rho.inverse();
    for (std::size_t r = 0; r < s.num_vertices(); ++r) {
      for (const auto& a : part.a_sets)
        for (int t = 0; t < s.n(); ++t)
          if (s.value_id(a[static_cast<std::size_t>(t)], act[r]) !=
              s.value_id(a[static_cast<std::size_t>(inv(t))], r))
            return false;
      for (auto b : part.b_singletons)
        if (s.value_id(b, act[r]) != s.value_id(b, r)) return false;
    }
  }
  return true;
}

/// A partition that passed verify_partition for a section of shape (n, d).
class VerifiedPartition {
 public:
  static std::optional<VerifiedPartition> check(Partition part, const Section& s) {
    if (!verify_partition(part, s)) return std::nullopt;
    return VerifiedPartition(std::move(part), s.n(), s.d());
  }
  const Partition& get() const { return part_; }
  int n() const { return n_; }
  int d() const { return d_; }

 private:
  VerifiedPartition(Partition p, int n, int d) : part_(std::move(p)), n_(n), d_(d) {}
  Partition part_;
  int n_;
  int d_;
};

/// s*(x, w) by the closed forms: a^i_t gets the mean of s_{a^i_v}(x) over
/// v <= w when t <= w and over v > w otherwise; b_j keeps s_{b_j}(x).
inline RatVector average_section(const Section& s, const VerifiedPartition& vp,
                                 const Permutation& zeta, int w) {
  const int n = s.n();
  if (vp.n() != n || vp.d() != s.d())
    throw InvalidInput("average_section: partition was verified for another section shape");
  if (w < 1 || w > n - 1)
    throw InvalidInput("average_section: w = " + std::to_string(w) + " outside [1, " +
                       std::to_string(n - 1) + "]");
  const RatVector& x = s.value_at(zeta);
  RatVector y(x.dim());
  for (auto b : vp.get().b_singletons) y[b] = x[b];
  for (const auto& a : vp.get().a_sets) {
    Rational low, high;
    for (int v = 0; v < n; ++v) (v < w ? low : high) += x[a[static_cast<std::size_t>(v)]];
    low = low / Rational(w);
    high = high / Rational(n - w);
    for (int t = 0; t < n; ++t) y[a[static_cast<std::size_t>(t)]] = t < w ? low : high;
  }
  return y;
}

inline RatVector average_section(const Section& s, const Partition& part,
                                 const RatVector& vertex, int w) {
  const auto vp = VerifiedPartition::check(part, s);
  if (!vp) throw InvalidInput("average_section: partition does not verify");
  const auto zeta = vertex_permutation(vertex);
  if (!zeta) throw InvalidInput("average_section: not a vertex: " + vertex.str());
  return average_section(s, *vp, *zeta, w);
}

/// The condition (end) or (start) that `w` fails for some row, if any.
/// Rows hold s_{a^i_1}(Lambda(id)), ..., s_{a^i_n}(Lambda(id)).
inline std::optional<std::string> split_condition_failure(
    const std::vector<std::vector<Rational>>& rows, int w) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const int n = static_cast<int>(r.size());
    if (w < 1 || w > n - 1) return "w = " + std::to_string(w) + " outside [1, n-1]";
    Rational low, high;
    for (int v = 0; v < n; ++v) (v < w ? low : high) += r[static_cast<std::size_t>(v)];
    if (r[static_cast<std::size_t>(w - 1)].sign() > 0 && high.sign() <= 0)
      return "(end) fails for set " + std::to_string(i + 1) + " at w = " + std::to_string(w);
    if (r[static_cast<std::size_t>(w)].sign() > 0 && low.sign() <= 0)
      return "(start) fails for set " + std::to_string(i + 1) + " at w = " + std::to_string(w);
  }
  return std::nullopt;
}

/// Smallest w in [1, n-1] meeting (end) and (start) for every row.
inline std::optional<int> find_split_element(const std::vector<std::vector<Rational>>& rows,
                                             int n) {
  for (const auto& r : rows)
    if (r.size() != static_cast<std::size_t>(n))
      throw InvalidInput("find_split_element: row of length " + std::to_string(r.size()));
  for (int w = 1; w <= n - 1; ++w)
    if (!split_condition_failure(rows, w)) return w;
  return std::nullopt;
}

/// w -> w+2 -> w+1 -> w (1-based w), for 1 <= w <= n-2.
inline Permutation default_zeta(int w, int n) {
  if (w < 1 || w > n - 2)
    throw InvalidInput("default_zeta: w = " + std::to_string(w) + " outside [1, " +
                       std::to_string(n - 2) + "]");
  return Permutation::from_cycles(n, {{w, w + 2, w + 1}});
}

/// Which requirement zeta misses: even, zeta([w-1]) inside [w], zeta(w+1) in [w].
inline std::optional<std::string> zeta_condition_failure(const Permutation& zeta, int w) {
  const int n = zeta.degree();
  if (w < 1 || w > n - 1) return "w = " + std::to_string(w) + " outside [1, n-1]";
  if (!zeta.is_even()) return "zeta " + zeta.str() + " is odd";
  for (int v = 0; v < w - 1; ++v)
    if (zeta(v) >= w)
      return "zeta maps " + std::to_string(v + 1) + " outside [" + std::to_string(w) + "]";
  if (zeta(w) >= w)
    return "zeta(" + std::to_string(w + 1) + ") = " + std::to_string(zeta(w) + 1) +
           " outside [" + std::to_string(w) + "]";
  return std::nullopt;
}

/// default_zeta when available, else the first suitable even permutation in
/// rank order.
inline std::optional<Permutation> choose_zeta(int w, int n, int cap = kDefaultEnumerationCap) {
  if (w >= 1 && w <= n - 2) return default_zeta(w, n);
  for (const auto& z : alternating_group(n, cap))
    if (!zeta_condition_failure(z, w)) return z;
  return std::nullopt;
}

struct ViolationCertificate {
  int n = 0;
  int w = 0;
  Permutation zeta;
  Rational epsilon;
  RatVector y;
  Rational facet_rhs;        // w(w+1)/2
  Rational projected_value;  // sum_{v <= w} p(y)_v

  SubsetMask facet() const { return (SubsetMask{1} << w) - 1; }
  Rational violation() const { return facet_rhs - projected_value; }
};

struct ViolatingPoint {
  ViolationCertificate certificate;
  bool nonnegative = false;
  std::optional<Rational> max_epsilon;  // nullopt: every epsilon >= 0 keeps y >= 0
};

/// y = c + eps * e for the closed-form components.
struct EpsilonProfile {
  RatVector base;
  RatVector slope;

  std::optional<Rational> max_epsilon() const {
    std::optional<Rational> best;
    for (std::size_t j = 0; j < base.dim(); ++j)
      if (slope[j].sign() < 0) {
        const Rational bound = base[j] / (Rational(0) - slope[j]);
        if (!best || bound < *best) best = bound;
      }
    return best;
  }
};

inline EpsilonProfile epsilon_profile(const Section& s, const VerifiedPartition& vp, int w) {
  const int n = s.n();
  if (w < 1 || w > n - 1) throw InvalidInput("w outside [1, n-1]");
  const RatVector& x = s.value_at(Permutation::identity(n));
  EpsilonProfile p{RatVector(x.dim()), RatVector(x.dim())};
  for (auto b : vp.get().b_singletons) p.base[b] = x[b];
  for (const auto& a : vp.get().a_sets) {
    auto at = [&](int t) { return x[a[static_cast<std::size_t>(t - 1)]]; };
    Rational low, high;
    for (int v = 1; v <= n; ++v) (v <= w ? low : high) += at(v);
    const Rational diff = at(w) - at(w + 1);
    for (int t = 1; t <= n; ++t) {
      const auto j = a[static_cast<std::size_t>(t - 1)];
      if (t <= w) {
        p.base[j] = low / Rational(w);
        p.slope[j] = diff / Rational(w);
      } else {
        p.base[j] = high / Rational(n - w);
        p.slope[j] = (Rational(0) - diff) / Rational(n - w);
      }
    }
  }
  return p;
}

/// sum_{v <= w} of the H*_w-average of pi.Lambda(zeta), i.e. of p(s*(Lambda(zeta), w)).
inline Rational averaged_prefix_sum(const Permutation& zeta, int w, int cap = kDefaultEnumerationCap) {
  const PermSet h = h_star_subgroup(w, zeta.degree(), cap);
  Rational total;
  for (const auto& pi : h) {
    const RatVector x = lambda_vertex(pi * zeta);
    for (int v = 0; v < w; ++v) total += x[static_cast<std::size_t>(v)];
  }
  return total / Rational(static_cast<long>(h.size()));
}

/**
 * y = (1+eps) s*(Lambda(id), w) - eps s*(Lambda(zeta), w), computed from the
 * section table and again from the closed forms at Lambda(id); the two must
 * agree. The facet sum_{v <= w} x_v >= w(w+1)/2 is evaluated through the
 * vertex averages, which p(s(x)) = x makes exact.
 */
inline ViolatingPoint build_violating_point(const Section& s, const VerifiedPartition& vp,
                                            int w, const Permutation& zeta,
                                            const Rational& epsilon) {
  const int n = s.n();
  if (vp.n() != n || vp.d() != s.d())
    throw InvalidInput("build_violating_point: partition was verified for another section shape");
  if (epsilon.sign() < 0) throw InvalidInput("build_violating_point: epsilon must be >= 0");
  if (zeta.degree() != n) throw InvalidInput("build_violating_point: zeta has wrong degree");
  std::vector<std::vector<Rational>> rows;
  const RatVector& at_id = s.value_at(Permutation::identity(n));
  for (const auto& a : vp.get().a_sets) {
    rows.emplace_back();
    for (auto j : a) rows.back().push_back(at_id[j]);
  }
  if (const auto why = split_condition_failure(rows, w))
    throw InvalidInput("build_violating_point: " + *why);
  if (const auto why = zeta_condition_failure(zeta, w))
    throw InvalidInput("build_violating_point: " + *why);

  const RatVector avg_id = average_section(s, vp, Permutation::identity(n), w);
  const RatVector avg_zeta = average_section(s, vp, zeta, w);
  const RatVector y = avg_id * (Rational(1) + epsilon) - avg_zeta * epsilon;
  const EpsilonProfile prof = epsilon_profile(s, vp, w);
  if (y != prof.base + prof.slope * epsilon)
    throw HypothesisViolation("partition", "affine combination and closed forms disagree at " +
                                               zeta.str());
  ViolatingPoint out;
  out.max_epsilon = prof.max_epsilon();
  out.nonnegative = true;
  for (const auto& c : y)
    if (c.sign() < 0) out.nonnegative = false;
  auto& cert = out.certificate;
  cert.n = n;
  cert.w = w;
  cert.zeta = zeta;
  cert.epsilon = epsilon;
  cert.y = y;
  cert.facet_rhs = triangular(w);
  cert.projected_value = (Rational(1) + epsilon) * averaged_prefix_sum(Permutation::identity(n), w, n) -
                         epsilon * averaged_prefix_sum(zeta, w, n);
  return out;
}

/// First reason why `cert` is not a valid refutation for extension `e`.
inline std::optional<std::string> certificate_defect(const ViolationCertificate& cert,
                                                     const SubspaceExtension& e) {
  e.validate();
  if (cert.y.dim() != static_cast<std::size_t>(e.d)) return "y has the wrong dimension";
  if (e.m != cert.n) return "extension projects to the wrong dimension";
  if (cert.epsilon.sign() <= 0) return "epsilon is not positive";
  for (std::size_t j = 0; j < cert.y.dim(); ++j)
    if (cert.y[j].sign() < 0) return "y_" + std::to_string(j + 1) + " is negative";
  const RatVector lhs = e.lhs * cert.y;
  for (std::size_t k = 0; k < lhs.dim(); ++k)
    if (lhs[k] != e.rhs[k]) return "affine row " + std::to_string(k + 1) + " violated by y";
  const RatVector x = e.projection * cert.y;
  const Rational prefix = subset_sum(x, cert.facet());
  if (prefix != cert.projected_value)
    return "projected value " + prefix.str() + " differs from the recorded " +
           cert.projected_value.str();
  if (cert.facet_rhs != triangular(cert.w)) return "facet right-hand side is wrong";
  if (!(prefix < cert.facet_rhs)) return "facet " + subset_str(cert.facet()) + " is not violated";
  if (!facet_violation(x, permutahedron_facets(cert.n)))
    return "p(y) satisfies every facet";
  return std::nullopt;
}

/// First reason why `cert` does not follow from section `s`: y is recomputed
/// from the definitional H*_w averages.
inline std::optional<std::string> certificate_defect(const ViolationCertificate& cert,
                                                     const Section& s) {
  const int n = s.n();
  if (cert.n != n || cert.y.dim() != static_cast<std::size_t>(s.d()))
    return "certificate shape differs from the section";
  if (cert.epsilon.sign() <= 0) return "epsilon is not positive";
  if (const auto why = zeta_condition_failure(cert.zeta, cert.w)) return *why;
  const PermSet h = h_star_subgroup(cert.w, n, n);
  const Rational size(static_cast<long>(h.size()));
  RatVector avg_id(cert.y.dim()), avg_zeta(cert.y.dim());
  for (const auto& pi : h) {
    avg_id = avg_id + s.value_at(pi);
    avg_zeta = avg_zeta + s.value_at(pi * cert.zeta);
  }
  const Rational inv = Rational(1) / size;
  const RatVector y = avg_id * ((Rational(1) + cert.epsilon) * inv) -
                      avg_zeta * (cert.epsilon * inv);
  if (y != cert.y) return "y differs from the recomputed affine combination";
  for (std::size_t j = 0; j < y.dim(); ++j)
    if (y[j].sign() < 0) return "y_" + std::to_string(j + 1) + " is negative";
  const Rational prefix =
      (Rational(1) + cert.epsilon) * averaged_prefix_sum(Permutation::identity(n), cert.w, n) -
      cert.epsilon * averaged_prefix_sum(cert.zeta, cert.w, n);
  if (prefix != cert.projected_value) return "projected value does not match";
  if (!(prefix < triangular(cert.w))) return "facet is not violated";
  return std::nullopt;
}

enum class Verdict { consistent, refuted, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: break;
  }
  return "inconclusive";
}

struct AuditReport {
  int n = 0;
  int d = 0;
  Rational bound;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
  std::optional<Partition> partition;
  std::optional<ViolationCertificate> certificate;
};

/**
 * Runs the lower-bound pipeline on a subspace extension with a section and a
 * weak-symmetry witness. Input defects throw InvalidInput; a lemma that does
 * not apply yields an inconclusive report naming it.
 */
inline AuditReport audit_extension(const SubspaceExtension& e, const Section& s,
                                   const WeakSymmetryWitness& witness) {
  AuditReport rep;
  rep.n = s.n();
  rep.d = e.d;
  rep.bound = symmetric_variable_bound(s.n());
  if (const auto why = section_defect(s, e)) throw InvalidInput("section: " + *why);
  if (!verify_weak_symmetry_witness(s, witness))
    throw InvalidInput("witness does not satisfy s(pi.x) = kappa_pi.s(x)");
  const int n = s.n();
  if (n < 6) {
    rep.note = "theorem stated for n >= 6";
    return rep;
  }
  if (Rational(e.d) >= rep.bound) {
    rep.verdict = Verdict::consistent;
    rep.note = "d = " + std::to_string(e.d) + " >= " + rep.bound.str();
    return rep;
  }
  try {
    const KappaTable table = KappaTable::expand(witness, n, s.d(), n);
    const auto ess = essential_elements(s);
    std::vector<NormalizedKappa> kappas;
    for (const auto& rho : rho_generators(n)) {
      if (!table.contains(rho))
        throw InvalidInput("witness generators do not generate " + rho.cycle_str());
      kappas.push_back(normalize_kappa_cycles(table.at(rho), rho, s, ess));
    }
    Partition part = chain_partition(kappas, s);
    rep.partition = part;
    const auto vp = VerifiedPartition::check(part, s);
    if (!vp) throw HypothesisViolation("partition", "extracted partition does not verify");
    std::vector<std::vector<Rational>> rows;
    const RatVector& at_id = s.value_at(Permutation::identity(n));
    for (const auto& a : vp->get().a_sets) {
      rows.emplace_back();
      for (auto j : a) rows.back().push_back(at_id[j]);
    }
    const auto w = find_split_element(rows, n);
    if (!w)
      throw HypothesisViolation("split element", "no w satisfies (end) and (start) for " +
                                                     std::to_string(rows.size()) + " sets");
    const auto zeta = choose_zeta(*w, n, n);
    if (!zeta) throw HypothesisViolation("violating point", "no admissible zeta");
    const auto max_eps = epsilon_profile(s, *vp, *w).max_epsilon();
    const Rational eps = max_eps ? *max_eps / Rational(2) : Rational(1);
    if (eps.sign() <= 0)
      throw HypothesisViolation("violating point", "no positive epsilon keeps y >= 0");
    const ViolatingPoint vpnt = build_violating_point(s, *vp, *w, *zeta, eps);
    const auto& cert = vpnt.certificate;
    if (!vpnt.nonnegative)
      throw HypothesisViolation("violating point", "y has a negative component");
    if (const auto why = certificate_defect(cert, e))
      throw HypothesisViolation("violating point", *why);
    rep.verdict = Verdict::refuted;
    rep.note = "facet " + subset_str(cert.facet()) + " violated by " + cert.violation().str();
    rep.certificate = cert;
  } catch (const HypothesisViolation& h) {
    rep.verdict = Verdict::inconclusive;
    rep.note = h.what();
  }
  return rep;
}

}  // namespace permext

#endif  // PERMEXT_AUDIT_HPP
