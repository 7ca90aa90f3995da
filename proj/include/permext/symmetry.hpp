#ifndef PERMEXT_SYMMETRY_HPP
#define PERMEXT_SYMMETRY_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permext/errors.hpp"
#include "permext/formulation.hpp"
#include "permext/permutation.hpp"

namespace permext {

/// pi acts on [m]; kappa on the d variables; rho_eq / rho_ineq on the rows.
struct SymmetryCertificate {
  Permutation pi;
  Permutation kappa;
  Permutation rho_eq;
  Permutation rho_ineq;
};

/**
 * True iff A[rho(r)][kappa(c)] = A[r][c] and b[rho(r)] = b[r] for both row
 * blocks, and P[pi(u)][kappa(c)] = P[u][c], i.e. p(kappa.y) = pi.p(y) for
 * every y. Comparison is exact; rows are not rescaled.
 */
inline bool verify_symmetry_certificate(const Formulation& f,
                                        const SymmetryCertificate& cert) {
  f.validate();
  if (cert.pi.degree() != f.m || cert.kappa.degree() != f.d ||
      cert.rho_eq.degree() != static_cast<int>(f.num_eq()) ||
      cert.rho_ineq.degree() != static_cast<int>(f.num_ineq()))
    return false;
  auto block_ok = [&](const RatMatrix& a, const RatVector& b, const Permutation& rho) {
    for (std::size_t r = 0; r < a.nrows(); ++r) {
      const auto r2 = static_cast<std::size_t>(rho(static_cast<int>(r)));
      if (b[r2] != b[r]) return false;
      for (std::size_t c = 0; c < a.ncols(); ++c)
        if (a(r2, static_cast<std::size_t>(cert.kappa(static_cast<int>(c)))) != a(r, c))
          return false;
    }
    return true;
  };
  if (!block_ok(f.eq_lhs, f.eq_rhs, cert.rho_eq)) return false;
  if (!block_ok(f.ineq_lhs, f.ineq_rhs, cert.rho_ineq)) return false;
  for (std::size_t u = 0; u < f.projection.nrows(); ++u) {
    const auto u2 = static_cast<std::size_t>(cert.pi(static_cast<int>(u)));
    for (std::size_t c = 0; c < f.projection.ncols(); ++c)
      if (f.projection(u2, static_cast<std::size_t>(cert.kappa(static_cast<int>(c)))) !=
          f.projection(u, c))
        return false;
  }
  return true;
}

/// Certificate for pi * sigma from certificates for pi and sigma.
inline SymmetryCertificate compose(const SymmetryCertificate& a,
                                   const SymmetryCertificate& b) {
  return {a.pi * b.pi, a.kappa * b.kappa, a.rho_eq * b.rho_eq, a.rho_ineq * b.rho_ineq};
}

inline SymmetryCertificate identity_certificate(const Formulation& f) {
  return {Permutation::identity(f.m), Permutation::identity(f.d),
          Permutation::identity(static_cast<int>(f.num_eq())),
          Permutation::identity(static_cast<int>(f.num_ineq()))};
}

struct SymmetrySearchOptions {
  int max_variables = 4096;
  std::size_t max_nodes = 200000;
};

namespace detail {

// Colour refinement on the bipartite row/column incidence structure, run on
// two copies at once: a "source" copy whose columns are coloured by their
// pi-permuted projection columns and a "target" copy coloured by the plain
// projection columns. Any kappa mapping source colours to equal target
// colours is a candidate; individualisation explores the remaining choices.
class CertificateSearch {
 public:
  CertificateSearch(const Formulation& f, const Permutation& pi,
                    const SymmetrySearchOptions& opt)
      : f_(f), pi_(pi), opt_(opt) {
    d_ = static_cast<std::size_t>(f.d);
    rows_ = f.num_eq() + f.num_ineq();
    row_nbrs_.resize(rows_);
    col_nbrs_.resize(d_);
    for (std::size_t r = 0; r < rows_; ++r) {
      const RatVector& row = row_of(r);
      for (std::size_t c = 0; c < d_; ++c) {
        if (row[c].is_zero()) continue;
        const int id = coef_id(row[c]);
        row_nbrs_[r].push_back({static_cast<int>(c), id});
        col_nbrs_[c].push_back({static_cast<int>(r), id});
      }
    }
  }

  std::optional<SymmetryCertificate> run() {
    State s;
    s.row_src.resize(rows_);
    s.row_tgt.resize(rows_);
    s.col_src.resize(d_);
    s.col_tgt.resize(d_);
    std::map<std::vector<int>, int> row_init, col_init;
    for (std::size_t r = 0; r < rows_; ++r) {
      const bool eq = r < f_.num_eq();
      const Rational& rhs = eq ? f_.eq_rhs[r] : f_.ineq_rhs[r - f_.num_eq()];
      const std::vector<int> key{eq ? 0 : 1, coef_id(rhs)};
      const int id = intern(row_init, key);
      s.row_src[r] = s.row_tgt[r] = id;
    }
    for (std::size_t c = 0; c < d_; ++c) {
      std::vector<int> plain(static_cast<std::size_t>(f_.m)), twisted(plain.size());
      for (int u = 0; u < f_.m; ++u) {
        const int id = coef_id(f_.projection(static_cast<std::size_t>(u), c));
        plain[static_cast<std::size_t>(u)] = id;
        twisted[static_cast<std::size_t>(pi_(u))] = id;
      }
      s.col_tgt[c] = intern(col_init, plain);
      s.col_src[c] = intern(col_init, twisted);
    }
    fresh_ = static_cast<int>(2 * (rows_ + d_) + 1);  // above any refined colour id
    return search(std::move(s));
  }

 private:
  struct State {
    std::vector<int> row_src, row_tgt, col_src, col_tgt;
  };
  using Nbrs = std::vector<std::vector<std::pair<int, int>>>;

  const RatVector& row_of(std::size_t r) const {
    return r < f_.num_eq() ? f_.eq_lhs.row(r) : f_.ineq_lhs.row(r - f_.num_eq());
  }

  int coef_id(const Rational& q) {
    auto [it, inserted] = coefs_.try_emplace(q, static_cast<int>(coefs_.size()));
    return it->second;
  }

  static int intern(std::map<std::vector<int>, int>& dict, const std::vector<int>& key) {
    auto [it, inserted] = dict.try_emplace(key, static_cast<int>(dict.size()));
    return it->second;
  }

  static std::vector<int> recolour(const std::vector<int>& own, const Nbrs& nbrs,
                                   const std::vector<int>& other,
                                   std::map<std::vector<int>, int>& dict) {
    std::vector<int> out(own.size());
    std::vector<std::pair<int, int>> sig;
    for (std::size_t x = 0; x < own.size(); ++x) {
      sig.clear();
      for (auto [y, coef] : nbrs[x])
        sig.emplace_back(coef, other[static_cast<std::size_t>(y)]);
      std::sort(sig.begin(), sig.end());
      std::vector<int> key{own[x]};
      for (auto [a, b] : sig) {
        key.push_back(a);
        key.push_back(b);
      }
      out[x] = intern(dict, key);
    }
    return out;
  }

  static bool same_histogram(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> sa(a), sb(b);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
  }

  static std::size_t distinct(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> all(a);
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
  }

  bool refine(State& s) const {
    std::size_t classes = distinct(s.row_src, s.row_tgt) + distinct(s.col_src, s.col_tgt);
    for (;;) {
      if (!same_histogram(s.row_src, s.row_tgt) || !same_histogram(s.col_src, s.col_tgt))
        return false;
      std::map<std::vector<int>, int> row_dict, col_dict;
      s.row_src = recolour(s.row_src, row_nbrs_, s.col_src, row_dict);
      s.row_tgt = recolour(s.row_tgt, row_nbrs_, s.col_tgt, row_dict);
      s.col_src = recolour(s.col_src, col_nbrs_, s.row_src, col_dict);
      s.col_tgt = recolour(s.col_tgt, col_nbrs_, s.row_tgt, col_dict);
      const std::size_t now = distinct(s.row_src, s.row_tgt) + distinct(s.col_src, s.col_tgt);
      if (now == classes)
        return same_histogram(s.row_src, s.row_tgt) && same_histogram(s.col_src, s.col_tgt);
      classes = now;
    }
  }

  std::optional<SymmetryCertificate> search(State s) {
    if (++nodes_ > opt_.max_nodes)
      throw CapExceeded("find_symmetry_certificate: search node limit reached");
    if (!refine(s)) return std::nullopt;

    // Smallest non-singleton source column class, ties by colour.
    std::map<int, std::vector<std::size_t>> src_classes;
    for (std::size_t c = 0; c < d_; ++c) src_classes[s.col_src[c]].push_back(c);
    const std::vector<std::size_t>* branch = nullptr;
    int branch_colour = 0;
    for (const auto& [colour, members] : src_classes) {
      if (members.size() > 1 && (!branch || members.size() < branch->size())) {
        branch = &members;
        branch_colour = colour;
      }
    }
    if (!branch) return leaf(s);

    const std::size_t c = branch->front();
    for (std::size_t t = 0; t < d_; ++t) {
      if (s.col_tgt[t] != branch_colour) continue;
      State next = s;
      const int mark = fresh_++;
      next.col_src[c] = mark;
      next.col_tgt[t] = mark;
      if (auto cert = search(std::move(next))) return cert;
    }
    return std::nullopt;
  }

  std::optional<SymmetryCertificate> leaf(const State& s) const {
    std::map<int, std::size_t> tgt_of_colour;
    for (std::size_t c = 0; c < d_; ++c) tgt_of_colour[s.col_tgt[c]] = c;
    std::vector<int> kappa(d_);
    for (std::size_t c = 0; c < d_; ++c)
      kappa[c] = static_cast<int>(tgt_of_colour.at(s.col_src[c]));

    // Rows: match each row's kappa-image against rows with identical content.
    auto content = [&](std::size_t r, const std::vector<int>* map) {
      std::vector<std::pair<int, int>> key;
      for (auto [c, coef] : row_nbrs_[r])
        key.emplace_back(map ? (*map)[static_cast<std::size_t>(c)] : c, coef);
      std::sort(key.begin(), key.end());
      return key;
    };
    auto match_block = [&](std::size_t begin, std::size_t end)
        -> std::optional<std::vector<int>> {
      std::map<std::pair<int, std::vector<std::pair<int, int>>>, std::deque<std::size_t>> pool;
      for (std::size_t r = begin; r < end; ++r)
        pool[{rhs_id(r), content(r, nullptr)}].push_back(r);
      std::vector<int> rho(end - begin);
      for (std::size_t r = begin; r < end; ++r) {
        auto it = pool.find({rhs_id(r), content(r, &kappa)});
        if (it == pool.end() || it->second.empty()) return std::nullopt;
        rho[r - begin] = static_cast<int>(it->second.front() - begin);
        it->second.pop_front();
      }
      return rho;
    };
    auto rho_eq = match_block(0, f_.num_eq());
    auto rho_ineq = match_block(f_.num_eq(), rows_);
    if (!rho_eq || !rho_ineq) return std::nullopt;
    SymmetryCertificate cert{pi_, Permutation(std::move(kappa)),
                             Permutation(std::move(*rho_eq)),
                             Permutation(std::move(*rho_ineq))};
    if (!verify_symmetry_certificate(f_, cert)) return std::nullopt;
    return cert;
  }

  int rhs_id(std::size_t r) const {
    const Rational& rhs = r < f_.num_eq() ? f_.eq_rhs[r] : f_.ineq_rhs[r - f_.num_eq()];
    return coefs_.at(rhs);
  }

  const Formulation& f_;
  const Permutation& pi_;
  SymmetrySearchOptions opt_;
  std::size_t d_ = 0;
  std::size_t rows_ = 0;
  Nbrs row_nbrs_, col_nbrs_;
  std::map<Rational, int> coefs_;
  int fresh_ = 0;
  std::size_t nodes_ = 0;
};

}  // namespace detail

/**
 * Searches for kappa and row permutations completing `pi` to a symmetry of
 * the formulation. Returns a certificate that has passed
 * verify_symmetry_certificate, or nullopt when none exists.
 */
inline std::optional<SymmetryCertificate> find_symmetry_certificate(
    const Formulation& f, const Permutation& pi, const SymmetrySearchOptions& opt = {}) {
  f.validate();
  if (pi.degree() != f.m)
    throw InvalidInput("find_symmetry_certificate: pi has degree " +
                       std::to_string(pi.degree()) + ", expected " + std::to_string(f.m));
  if (f.d > opt.max_variables)
    throw CapExceeded("find_symmetry_certificate: d = " + std::to_string(f.d) +
                      " exceeds search cap " + std::to_string(opt.max_variables));
  if (pi.is_identity()) return identity_certificate(f);
  return detail::CertificateSearch(f, pi, opt).run();
}

/**
 * Transports a certificate of `source` to as_formulation(conv.ext), where
 * conv = to_subspace_extension_mapped(source): split pairs follow kappa
 * componentwise, slacks follow rho_ineq, and the sign rows follow the new kappa.
 */
inline SymmetryCertificate lift_certificate(const SubspaceConversion& conv,
                                            const SymmetryCertificate& cert) {
  const auto cols = static_cast<std::size_t>(conv.ext.d);
  std::vector<int> kappa(cols, -1);
  for (std::size_t j = 0; j < conv.var_cols.size(); ++j) {
    const auto& from = conv.var_cols[j];
    const auto& to = conv.var_cols[static_cast<std::size_t>(cert.kappa(static_cast<int>(j)))];
    if (from.size() != to.size())
      throw InvalidInput("lift_certificate: kappa maps a sign-constrained variable to a free one");
    for (std::size_t k = 0; k < from.size(); ++k) kappa[from[k]] = static_cast<int>(to[k]);
  }
  std::vector<int> rho_eq(conv.ext.lhs.nrows(), -1);
  const std::size_t source_eq = static_cast<std::size_t>(cert.rho_eq.degree());
  for (std::size_t r = 0; r < source_eq; ++r) rho_eq[r] = cert.rho_eq(static_cast<int>(r));
  for (std::size_t r = 0; r < conv.slack_col.size(); ++r) {
    const auto r2 = static_cast<std::size_t>(cert.rho_ineq(static_cast<int>(r)));
    if (conv.slack_col[r].has_value() != conv.slack_col[r2].has_value())
      throw InvalidInput("lift_certificate: rho_ineq maps a sign row to a general row");
    if (!conv.slack_col[r]) continue;
    kappa[*conv.slack_col[r]] = static_cast<int>(*conv.slack_col[r2]);
    rho_eq[*conv.slack_row[r]] = static_cast<int>(*conv.slack_row[r2]);
  }
  Permutation k(std::move(kappa));
  return {cert.pi, k, Permutation(std::move(rho_eq)), k};
}

}  // namespace permext

#endif  // PERMEXT_SYMMETRY_HPP
