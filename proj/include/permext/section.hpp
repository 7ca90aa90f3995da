#ifndef PERMEXT_SECTION_HPP
#define PERMEXT_SECTION_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "permext/errors.hpp"
#include "permext/formulation.hpp"
#include "permext/linalg.hpp"
#include "permext/perm_group.hpp"
#include "permext/permutation.hpp"
#include "permext/rational.hpp"

namespace permext {

/// The values s_j(Lambda(zeta)) of one component over all vertices, in rank
/// order of zeta.
struct ComponentFingerprint {
  std::size_t j = 0;
  std::vector<Rational> signature;

  friend bool operator==(const ComponentFingerprint& a, const ComponentFingerprint& b) {
    return a.signature == b.signature;
  }
};

/**
 * A section s : X -> R^d of the permutahedron's vertex set, stored as a table
 * indexed by the rank of zeta (vertex Lambda(zeta)).
 *
 * Values are interned, so component functions are compared as integer
 * signatures; components with equal signatures share a class id.
 */
class Section {
 public:
  Section() = default;

  static Section from_table(int n, int d, std::vector<RatVector> by_rank,
                            int cap = kDefaultEnumerationCap) {
    Section s(n, d, cap);
    if (by_rank.size() != s.zetas_.size())
      throw InvalidInput("section table has " + std::to_string(by_rank.size()) +
                         " rows, expected " + std::to_string(s.zetas_.size()));
    for (const auto& v : by_rank)
      if (v.dim() != static_cast<std::size_t>(d))
        throw InvalidInput("section value of dimension " + std::to_string(v.dim()) +
                           ", expected " + std::to_string(d));
    s.values_ = std::move(by_rank);
    s.intern();
    return s;
  }

  /// `rule(zeta)` gives the value at Lambda(zeta).
  template <class Rule>
  static Section from_rule(int n, int d, Rule&& rule, int cap = kDefaultEnumerationCap) {
    Section s(n, d, cap);
    s.values_.reserve(s.zetas_.size());
    for (const auto& z : s.zetas_) {
      RatVector v = rule(z);
      if (v.dim() != static_cast<std::size_t>(d))
        throw InvalidInput("section rule returned dimension " + std::to_string(v.dim()));
      s.values_.push_back(std::move(v));
    }
    s.intern();
    return s;
  }

  int n() const { return n_; }
  int d() const { return d_; }
  std::size_t num_vertices() const { return zetas_.size(); }

  const Permutation& zeta(std::size_t r) const { return zetas_[r]; }
  const RatVector& value(std::size_t r) const { return values_[r]; }
  const RatVector& value_at(const Permutation& zeta) const {
    check_degree(zeta);
    return values_[zeta.rank()];
  }
  const RatVector& value_at_vertex(const RatVector& x) const {
    const auto zeta = vertex_permutation(x);
    if (!zeta || zeta->degree() != n_)
      throw InvalidInput("not a vertex of the permutahedron: " + x.str());
    return values_[zeta->rank()];
  }
  const std::vector<RatVector>& table() const { return values_; }

  const Rational& component(std::size_t j, std::size_t r) const { return values_[r][j]; }
  int value_id(std::size_t j, std::size_t r) const { return ids_[j * zetas_.size() + r]; }

  int component_class(std::size_t j) const { return class_of_[j]; }
  std::size_t num_classes() const { return class_index_.size(); }
  bool same_component(std::size_t j, std::size_t k) const {
    return class_of_[j] == class_of_[k];
  }

  ComponentFingerprint fingerprint(std::size_t j) const {
    ComponentFingerprint fp{j, {}};
    fp.signature.reserve(zetas_.size());
    for (const auto& v : values_) fp.signature.push_back(v[j]);
    return fp;
  }

  /// Rank of pi * zeta_r, so that pi.Lambda(zeta_r) = Lambda(zeta_{result}).
  std::size_t rank_after(const Permutation& pi, std::size_t r) const {
    return (pi * zetas_[r]).rank();
  }

  /// Rank map r -> rank(pi * zeta_r).
  std::vector<std::uint32_t> action(const Permutation& pi) const {
    check_degree(pi);
    std::vector<std::uint32_t> out(zetas_.size());
    for (std::size_t r = 0; r < zetas_.size(); ++r)
      out[r] = static_cast<std::uint32_t>(rank_after(pi, r));
    return out;
  }

  /// s_j(pi.x) = s_j(x) for every vertex x.
  bool invariant_under(std::size_t j, const Permutation& pi) const {
    check_degree(pi);
    for (std::size_t r = 0; r < zetas_.size(); ++r)
      if (value_id(j, rank_after(pi, r)) != value_id(j, r)) return false;
    return true;
  }

  bool invariant_under(std::size_t j, const std::vector<std::uint32_t>& act) const {
    for (std::size_t r = 0; r < zetas_.size(); ++r)
      if (value_id(j, act[r]) != value_id(j, r)) return false;
    return true;
  }

  /// Class id of the function x -> s_j(pi.x), if it is some component of s.
  std::optional<int> shifted_class(std::size_t j,
                                   const std::vector<std::uint32_t>& act) const {
    std::vector<int> sig(zetas_.size());
    for (std::size_t r = 0; r < zetas_.size(); ++r) sig[r] = value_id(j, act[r]);
    const auto it = class_index_.find(sig);
    if (it == class_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Components of class c, ascending.
  const std::vector<std::size_t>& class_members(int c) const {
    return members_[static_cast<std::size_t>(c)];
  }

 private:
  Section(int n, int d, int cap) : n_(n), d_(d) {
    if (n < 1) throw InvalidInput("section: n must be >= 1");
    if (d < 1) throw InvalidInput("section: d must be >= 1");
    zetas_ = all_permutations(n, cap);
  }

  void check_degree(const Permutation& p) const {
    if (p.degree() != n_)
      throw InvalidInput("permutation " + p.str() + " is not of degree " +
                         std::to_string(n_));
  }

  void intern() {
    const std::size_t nv = zetas_.size();
    const auto ud = static_cast<std::size_t>(d_);
    std::unordered_map<Rational, int> pool;
    ids_.assign(ud * nv, 0);
    for (std::size_t r = 0; r < nv; ++r)
      for (std::size_t j = 0; j < ud; ++j) {
        const auto [it, fresh] = pool.try_emplace(values_[r][j], static_cast<int>(pool.size()));
        ids_[j * nv + r] = it->second;
      }
    class_of_.assign(ud, 0);
    class_index_.clear();
    members_.clear();
    for (std::size_t j = 0; j < ud; ++j) {
      std::vector<int> sig(ids_.begin() + static_cast<std::ptrdiff_t>(j * nv),
                           ids_.begin() + static_cast<std::ptrdiff_t>((j + 1) * nv));
      const auto [it, fresh] =
          class_index_.try_emplace(std::move(sig), static_cast<int>(class_index_.size()));
      if (fresh) members_.emplace_back();
      class_of_[j] = it->second;
      members_[static_cast<std::size_t>(it->second)].push_back(j);
    }
  }

  int n_ = 0;
  int d_ = 0;
  std::vector<Permutation> zetas_;
  std::vector<RatVector> values_;
  std::vector<int> ids_;
  std::vector<int> class_of_;
  std::map<std::vector<int>, int> class_index_;
  std::vector<std::vector<std::size_t>> members_;
};

/// s(Lambda(zeta))_{(i,v)} = [zeta(i) = v], column i*n + v: the permutation
/// matrix of zeta, a section of birkhoff_z_extension(n).
inline Section canonical_birkhoff_section(int n, int cap = kDefaultEnumerationCap) {
  const auto nn = static_cast<std::size_t>(n);
  return Section::from_rule(
      n, n * n,
      [nn](const Permutation& zeta) {
        RatVector y(nn * nn);
        for (std::size_t i = 0; i < nn; ++i)
          y[i * nn + static_cast<std::size_t>(zeta(static_cast<int>(i)))] = 1;
        return y;
      },
      cap);
}

/// First reason why `s` is not a section of `e`, if any.
inline std::optional<std::string> section_defect(const Section& s,
                                                 const SubspaceExtension& e) {
  e.validate();
  if (s.d() != e.d) return "section dimension " + std::to_string(s.d()) +
                           " differs from extension dimension " + std::to_string(e.d);
  if (e.m != s.n()) return "extension projects to dimension " + std::to_string(e.m) +
                           ", section is over n = " + std::to_string(s.n());
  for (std::size_t r = 0; r < s.num_vertices(); ++r) {
    const RatVector& y = s.value(r);
    const std::string at = " at vertex " + lambda_vertex(s.zeta(r)).str();
    for (std::size_t j = 0; j < y.dim(); ++j)
      if (y[j].sign() < 0) return "component " + std::to_string(j + 1) + " negative" + at;
    const RatVector lhs = e.lhs * y;
    for (std::size_t k = 0; k < lhs.dim(); ++k)
      if (lhs[k] != e.rhs[k]) return "affine row " + std::to_string(k + 1) + " violated" + at;
    if (e.projection * y != lambda_vertex(s.zeta(r))) return "projection mismatch" + at;
  }
  return std::nullopt;
}

inline bool verify_section(const Section& s, const SubspaceExtension& e) {
  return !section_defect(s, e);
}

/// kappa_pi for each listed generator pi, with s(pi.x) = kappa_pi.s(x).
struct WeakSymmetryWitness {
  std::vector<Permutation> generators;
  std::vector<Permutation> kappas;

  std::optional<Permutation> kappa_for(const Permutation& pi) const {
    for (std::size_t k = 0; k < generators.size(); ++k)
      if (generators[k] == pi) return kappas[k];
    return std::nullopt;
  }
};

/// s_j(pi.x) = s_{kappa^-1(j)}(x) for all j and all vertices x.
inline bool satisfies_weak_symmetry(const Section& s, const Permutation& pi,
                                    const Permutation& kappa) {
  if (pi.degree() != s.n() || kappa.degree() != s.d()) return false;
  const auto act = s.action(pi);
  const Permutation inv = kappa.inverse();
  for (std::size_t j = 0; j < static_cast<std::size_t>(s.d()); ++j) {
    const auto src = static_cast<std::size_t>(inv(static_cast<int>(j)));
    for (std::size_t r = 0; r < s.num_vertices(); ++r)
      if (s.value_id(j, act[r]) != s.value_id(src, r)) return false;
  }
  return true;
}

inline bool verify_weak_symmetry_witness(const Section& s, const WeakSymmetryWitness& w) {
  if (w.generators.size() != w.kappas.size()) return false;
  for (std::size_t k = 0; k < w.generators.size(); ++k)
    if (!satisfies_weak_symmetry(s, w.generators[k], w.kappas[k])) return false;
  return true;
}

/// A kappa for pi, matching components by class with lowest-index ties.
inline std::optional<Permutation> derive_kappa(const Section& s, const Permutation& pi) {
  const auto act = s.action(pi);
  const auto ud = static_cast<std::size_t>(s.d());
  std::vector<std::size_t> used(s.num_classes(), 0);
  std::vector<int> inv(ud);
  for (std::size_t j = 0; j < ud; ++j) {
    const auto c = s.shifted_class(j, act);
    if (!c) return std::nullopt;
    const auto& pool = s.class_members(*c);
    auto& k = used[static_cast<std::size_t>(*c)];
    if (k >= pool.size()) return std::nullopt;
    inv[j] = static_cast<int>(pool[k++]);
  }
  return Permutation(std::move(inv)).inverse();
}

inline std::optional<WeakSymmetryWitness> derive_weak_symmetry_witness(
    const Section& s, const std::vector<Permutation>& generators) {
  WeakSymmetryWitness w;
  for (const auto& g : generators) {
    auto kappa = derive_kappa(s, g);
    if (!kappa) return std::nullopt;
    w.generators.push_back(g);
    w.kappas.push_back(std::move(*kappa));
  }
  return w;
}

/// kappa_pi for every pi in the group generated by a witness, via
/// kappa_{g pi} = kappa_g kappa_pi.
class KappaTable {
 public:
  static KappaTable expand(const WeakSymmetryWitness& w, int n, int d,
                           int cap = kDefaultEnumerationCap) {
    check_cap(n, cap, "KappaTable");
    KappaTable t;
    t.n_ = n;
    t.by_rank_.assign(factorial(static_cast<unsigned>(n)).get_ui(), std::nullopt);
    std::deque<Permutation> queue;
    const Permutation id = Permutation::identity(n);
    t.by_rank_[id.rank()] = Permutation::identity(d);
    queue.push_back(id);
    while (!queue.empty()) {
      const Permutation g = std::move(queue.front());
      queue.pop_front();
      const Permutation kg = *t.by_rank_[g.rank()];
      for (std::size_t k = 0; k < w.generators.size(); ++k) {
        Permutation h = w.generators[k] * g;
        auto& slot = t.by_rank_[h.rank()];
        if (slot) continue;
        slot = w.kappas[k] * kg;
        queue.push_back(std::move(h));
      }
    }
    return t;
  }

  bool contains(const Permutation& pi) const {
    return pi.degree() == n_ && by_rank_[pi.rank()].has_value();
  }

  const Permutation& at(const Permutation& pi) const {
    if (!contains(pi))
      throw InvalidInput(pi.str() + " is not generated by the witness generators");
    return *by_rank_[pi.rank()];
  }

 private:
  int n_ = 0;
  std::vector<std::optional<Permutation>> by_rank_;
};

/// Index j' with pi.s_j = s_{j'}, where (pi.s_j)(x) = s_j(pi^-1.x), i.e.
/// j' = kappa_{pi^-1}^-1(j).
inline std::size_t component_action(const Permutation& pi, std::size_t j,
                                    const KappaTable& kappas) {
  const Permutation& k = kappas.at(pi.inverse());
  if (j >= static_cast<std::size_t>(k.degree())) throw InvalidInput("component index out of range");
  return static_cast<std::size_t>(k.inverse()(static_cast<int>(j)));
}

inline std::size_t component_action(const Permutation& pi, std::size_t j,
                                    const WeakSymmetryWitness& w, const Section& s) {
  return component_action(pi, j, KappaTable::expand(w, s.n(), s.d(), s.n()));
}

/// Iso(s_j) within G: all pi in G with s_j(pi.x) = s_j(x) on every vertex.
inline PermSet isotropy_group(const Section& s, std::size_t j, const PermSet& G) {
  if (G.degree() != s.n()) throw InvalidInput("isotropy_group: group degree mismatch");
  if (j >= static_cast<std::size_t>(s.d())) throw InvalidInput("component index out of range");
  return PermSet::from_elements(
      s.n(), G.select([&](const Permutation& p) { return s.invariant_under(j, p); }));
}

struct EssentialElement {
  enum class Kind { element, all, none };
  Kind kind = Kind::none;
  int v = -1;          // 0-based; meaningful for Kind::element
  bool unique = true;  // false when several v qualify (only possible for small n)

  std::string str() const {
    switch (kind) {
      case Kind::element: return "v=" + std::to_string(v + 1);
      case Kind::all: return "ALL";
      case Kind::none: break;
    }
    return "NONE";
  }
};

/// The v with stab_{A_n}(v) inside Iso(s_j); ALL when A_n is inside Iso(s_j).
/// Containments are decided on generating 3-cycles.
inline EssentialElement essential_element(const Section& s, std::size_t j) {
  if (j >= static_cast<std::size_t>(s.d())) throw InvalidInput("component index out of range");
  const int n = s.n();
  auto all_fix = [&](const std::vector<Permutation>& gens) {
    for (const auto& g : gens)
      if (!s.invariant_under(j, g)) return false;
    return true;
  };
  EssentialElement out;
  if (all_fix(rho_generators(n))) {
    out.kind = EssentialElement::Kind::all;
    return out;
  }
  for (int v = 0; v < n; ++v) {
    if (!all_fix(alternating_generators_on(complement_points({v}, n), n))) continue;
    if (out.kind == EssentialElement::Kind::element) {
      out.unique = false;
      break;
    }
    out.kind = EssentialElement::Kind::element;
    out.v = v;
  }
  return out;
}

/// Smallest W (ties lexicographic, 0-based) with |W| <= k and
/// stab_{A_n}(W) inside U.
inline std::optional<std::vector<int>> yannakakis_witness(const PermSet& U, int k, int n) {
  if (U.degree() != n) throw InvalidInput("yannakakis_witness: group degree mismatch");
  auto fits = [&](const std::vector<int>& w) {
    for (const auto& g : alternating_generators_on(complement_points(w, n), n))
      if (!U.contains(g)) return false;
    return true;
  };
  for (int size = 0; size <= std::min(k, n); ++size) {
    std::vector<int> w(static_cast<std::size_t>(size));
    for (int t = 0; t < size; ++t) w[static_cast<std::size_t>(t)] = t;
    while (true) {
      if (fits(w)) return w;
      int t = size - 1;
      while (t >= 0 && w[static_cast<std::size_t>(t)] == n - size + t) --t;
      if (t < 0) break;
      ++w[static_cast<std::size_t>(t)];
      for (int u = t + 1; u < size; ++u)
        w[static_cast<std::size_t>(u)] = w[static_cast<std::size_t>(u - 1)] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace permext

#endif  // PERMEXT_SECTION_HPP
