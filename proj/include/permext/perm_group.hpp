#ifndef PERMEXT_PERM_GROUP_HPP
#define PERMEXT_PERM_GROUP_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "permext/errors.hpp"
#include "permext/linalg.hpp"
#include "permext/permutation.hpp"
#include "permext/rational.hpp"

namespace permext {

inline constexpr int kDefaultEnumerationCap = 8;

inline void check_cap(int n, int cap, const char* what) {
  if (n > cap)
    throw CapExceeded(std::string(what) + ": degree " + std::to_string(n) +
                      " exceeds cap " + std::to_string(cap) + " (up to " +
                      factorial(static_cast<unsigned>(n)).get_str() +
                      " elements)");
}

/// All permutations of degree n in lexicographic (= rank) order.
inline std::vector<Permutation> all_permutations(int n,
                                                 int cap = kDefaultEnumerationCap) {
  check_cap(n, cap, "all_permutations");
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i;
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

/**
 * An explicitly enumerated subgroup of S_n. Elements are kept sorted; lookups
 * go through a rank-indexed membership bitmap.
 */
class PermSet {
 public:
  /// Wraps `elements` after checking that they form a group (contains the
  /// identity, closed under composition). Throws InvalidInput otherwise.
  static PermSet from_elements(int n, std::vector<Permutation> elements) {
    PermSet s(n, std::move(elements));
    if (!s.contains(Permutation::identity(n)))
      throw InvalidInput("permutation set does not contain the identity");
    for (const auto& a : s.elements_)
      for (const auto& b : s.elements_)
        if (!s.contains(a * b))
          throw InvalidInput("permutation set is not closed: " + a.str() +
                             " * " + b.str());
    return s;
  }

  /// For sets that are groups by construction (closures, known subgroups).
  static PermSet trusted(int n, std::vector<Permutation> elements) {
    return PermSet(n, std::move(elements));
  }

  int degree() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Permutation>& elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool contains(const Permutation& p) const {
    if (p.degree() != n_) return false;
    return member_[p.rank()];
  }

  bool is_subset_of(const PermSet& other) const {
    for (const auto& p : elements_)
      if (!other.contains(p)) return false;
    return true;
  }

  /// Index (S_n : this) as an exact integer.
  Integer index_in_symmetric() const {
    return factorial(static_cast<unsigned>(n_)) / Integer(static_cast<unsigned long>(size()));
  }

  template <class Pred>
  std::vector<Permutation> select(Pred&& pred) const {
    std::vector<Permutation> out;
    for (const auto& p : elements_)
      if (pred(p)) out.push_back(p);
    return out;
  }

 private:
  PermSet(int n, std::vector<Permutation> elements)
      : n_(n), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()),
                    elements_.end());
    member_.assign(factorial(static_cast<unsigned>(n)).get_ui(), false);
    for (const auto& p : elements_) {
      if (p.degree() != n)
        throw InvalidInput("element " + p.str() + " has wrong degree");
      member_[p.rank()] = true;
    }
  }

  int n_ = 0;
  std::vector<Permutation> elements_;
  std::vector<bool> member_;
};

/// Closure of `gens` under composition, by breadth-first products.
inline PermSet enumerate_group(const std::vector<Permutation>& gens, int n,
                               int cap = kDefaultEnumerationCap) {
  check_cap(n, cap, "enumerate_group");
  for (const auto& g : gens)
    if (g.degree() != n)
      throw InvalidInput("generator " + g.str() + " is not of degree " +
                         std::to_string(n));
  std::vector<bool> seen(factorial(static_cast<unsigned>(n)).get_ui(), false);
  std::vector<Permutation> out;
  std::deque<Permutation> queue;
  const Permutation id = Permutation::identity(n);
  seen[id.rank()] = true;
  queue.push_back(id);
  while (!queue.empty()) {
    Permutation g = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      Permutation h = s * g;
      const auto r = h.rank();
      if (!seen[r]) {
        seen[r] = true;
        queue.push_back(std::move(h));
      }
    }
    out.push_back(std::move(g));
  }
  return PermSet::trusted(n, std::move(out));
}

inline PermSet symmetric_group(int n, int cap = kDefaultEnumerationCap) {
  return PermSet::trusted(n, all_permutations(n, cap));
}

/// A_n: every even permutation of [n].
inline PermSet alternating_group(int n, int cap = kDefaultEnumerationCap) {
  if (n < 1) throw InvalidInput("alternating_group: n must be >= 1");
  std::vector<Permutation> even;
  for (auto& p : all_permutations(n, cap))
    if (p.is_even()) even.push_back(std::move(p));
  return PermSet::trusted(n, std::move(even));
}

/// The 3-cycle v -> v+1 -> v+2 -> v, with 0-based v in [0, n-3].
inline Permutation rho_generator(int v, int n) {
  if (v < 0 || v + 2 >= n)
    throw InvalidInput("rho_generator: v = " + std::to_string(v + 1) +
                       " outside [1, " + std::to_string(n - 2) + "]");
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) img[static_cast<std::size_t>(u)] = u;
  img[static_cast<std::size_t>(v)] = v + 1;
  img[static_cast<std::size_t>(v + 1)] = v + 2;
  img[static_cast<std::size_t>(v + 2)] = v;
  return Permutation(std::move(img));
}

inline std::vector<Permutation> rho_generators(int n) {
  std::vector<Permutation> out;
  for (int v = 0; v + 2 < n; ++v) out.push_back(rho_generator(v, n));
  return out;
}

/// Consecutive 3-cycles over the sorted `points`; they generate the
/// alternating group on those points (empty when fewer than three points).
inline std::vector<Permutation> alternating_generators_on(
    const std::vector<int>& points, int n) {
  std::vector<Permutation> out;
  for (std::size_t k = 0; k + 2 < points.size(); ++k) {
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) img[static_cast<std::size_t>(u)] = u;
    img[static_cast<std::size_t>(points[k])] = points[k + 1];
    img[static_cast<std::size_t>(points[k + 1])] = points[k + 2];
    img[static_cast<std::size_t>(points[k + 2])] = points[k];
    out.emplace_back(std::move(img));
  }
  return out;
}

inline std::vector<int> complement_points(const std::vector<int>& w, int n) {
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (int v : w) {
    if (v < 0 || v >= n) throw InvalidInput("point outside [n]");
    in[static_cast<std::size_t>(v)] = true;
  }
  std::vector<int> rest;
  for (int v = 0; v < n; ++v)
    if (!in[static_cast<std::size_t>(v)]) rest.push_back(v);
  return rest;
}

/// H*_w = { pi in A_n : pi([w]) = [w] }, 1 <= w <= n-1 (w counts points).
inline PermSet h_star_subgroup(int w, int n, int cap = kDefaultEnumerationCap) {
  if (w < 1 || w > n - 1)
    throw InvalidInput("h_star_subgroup: w = " + std::to_string(w) +
                       " outside [1, " + std::to_string(n - 1) + "]");
  const PermSet an = alternating_group(n, cap);
  return PermSet::trusted(n, an.select([w](const Permutation& p) {
    for (int v = 0; v < w; ++v)
      if (p(v) >= w) return false;
    return true;
  }));
}

/// { pi in A_n : pi(v) = v for all v in W }, W given 0-based.
inline PermSet pointwise_stabilizer_in_alternating(
    const std::vector<int>& w, int n, int cap = kDefaultEnumerationCap) {
  complement_points(w, n);  // range check
  const PermSet an = alternating_group(n, cap);
  return PermSet::trusted(n, an.select([&w](const Permutation& p) {
    for (int v : w)
      if (p(v) != v) return false;
    return true;
  }));
}

/// Lambda(zeta) = (zeta^-1(1), ..., zeta^-1(n)), a vertex of the permutahedron.
inline RatVector lambda_vertex(const Permutation& zeta) {
  const Permutation inv = zeta.inverse();
  RatVector x(static_cast<std::size_t>(zeta.degree()));
  for (int v = 0; v < zeta.degree(); ++v)
    x[static_cast<std::size_t>(v)] = inv(v) + 1;
  return x;
}

/// Inverse of lambda_vertex; nullopt when x is not a permutahedron vertex.
inline std::optional<Permutation> vertex_permutation(const RatVector& x) {
  std::vector<int> inv;
  for (const auto& c : x) {
    if (!c.is_integer() || c < 1 || c > static_cast<long>(x.dim()))
      return std::nullopt;
    inv.push_back(static_cast<int>(c.numerator().get_si()) - 1);
  }
  try {
    return Permutation(std::move(inv)).inverse();
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
}

/// (pi.x)_v = x_{pi^-1(v)}; pi.Lambda(zeta) = Lambda(pi zeta).
inline RatVector act_on_vertex(const Permutation& pi, const RatVector& x) {
  if (x.dim() != static_cast<std::size_t>(pi.degree()))
    throw InvalidInput("act_on_vertex: dimension " + std::to_string(x.dim()) +
                       " vs degree " + std::to_string(pi.degree()));
  RatVector out(x.dim());
  for (int v = 0; v < pi.degree(); ++v)
    out[static_cast<std::size_t>(pi(v))] = x[static_cast<std::size_t>(v)];
  return out;
}

}  // namespace permext

#endif  // PERMEXT_PERM_GROUP_HPP
