#ifndef PERMEXT_PERMUTATION_HPP
#define PERMEXT_PERMUTATION_HPP

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "permext/errors.hpp"

namespace permext {

/**
 * A permutation of {0, ..., n-1} in one-line notation: images()[v] = pi(v).
 *
 * Points are 0-based in code; the text forms are 1-based:
 * one-line "[2,3,1]" and cycle form "(1 2 3)(4 5)".
 *
 * Composition follows function composition, (a * b)(v) = a(b(v)).
 */
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
      if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)])
        throw InvalidInput("not a bijection: " + one_line_of(images_));
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img), Unchecked{});
  }

  /// Images given 1-based, as in the text form.
  static Permutation from_one_based(const std::vector<int>& images) {
    std::vector<int> img(images);
    for (int& v : img) --v;
    return Permutation(std::move(img));
  }

  /// Cycles given 1-based. Points not mentioned are fixed.
  static Permutation from_cycles(int n,
                                 const std::vector<std::vector<int>>& cycles) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const auto& cyc : cycles) {
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        const int a = cyc[k] - 1;
        const int b = cyc[(k + 1) % cyc.size()] - 1;
        if (a < 0 || a >= n || b < 0 || b >= n)
          throw InvalidInput("cycle point out of range for degree " +
                             std::to_string(n));
        if (used[static_cast<std::size_t>(a)])
          throw InvalidInput("cycles are not disjoint");
        used[static_cast<std::size_t>(a)] = true;
        img[static_cast<std::size_t>(a)] = b;
      }
    }
    return Permutation(std::move(img));
  }

  /**
   * Parses "[2,3,1]" (one-line) or "(1 2 3)(4 5)" (cycles; "()" is the
   * identity). For cycle form the degree is `n` when positive, otherwise the
   * largest point mentioned.
   */
  static Permutation parse(std::string_view text, int n = 0) {
    const std::string_view s = trim(text);
    if (s.empty()) throw InvalidInput("empty permutation");
    if (s.front() == '[') {
      if (s.back() != ']') throw InvalidInput("unterminated one-line form");
      std::vector<int> img;
      const std::string_view body = trim(s.substr(1, s.size() - 2));
      if (!body.empty()) {
        std::size_t pos = 0;
        while (pos <= body.size()) {
          std::size_t comma = body.find(',', pos);
          if (comma == std::string_view::npos) comma = body.size();
          img.push_back(parse_point(body.substr(pos, comma - pos)));
          pos = comma + 1;
        }
      }
      Permutation p = from_one_based(img);
      if (n > 0 && p.degree() != n)
        throw InvalidInput("one-line form has degree " +
                           std::to_string(p.degree()) + ", expected " +
                           std::to_string(n));
      return p;
    }
    if (s.front() != '(') throw InvalidInput("unrecognised permutation syntax");
    std::vector<std::vector<int>> cycles;
    int max_point = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[pos]))) {
        ++pos;
        continue;
      }
      if (s[pos] != '(') throw InvalidInput("expected '(' in cycle form");
      const std::size_t close = s.find(')', pos);
      if (close == std::string_view::npos)
        throw InvalidInput("unterminated cycle");
      std::vector<int> cyc;
      std::string_view body = s.substr(pos + 1, close - pos - 1);
      std::size_t i = 0;
      while (i < body.size()) {
        while (i < body.size() &&
               (std::isspace(static_cast<unsigned char>(body[i])) || body[i] == ','))
          ++i;
        std::size_t j = i;
        while (j < body.size() &&
               !std::isspace(static_cast<unsigned char>(body[j])) && body[j] != ',')
          ++j;
        if (j > i) {
          cyc.push_back(parse_point(body.substr(i, j - i)));
          max_point = std::max(max_point, cyc.back());
        }
        i = j;
      }
      if (!cyc.empty()) cycles.push_back(std::move(cyc));
      pos = close + 1;
    }
    if (n > 0 && max_point > n)
      throw InvalidInput("cycle point " + std::to_string(max_point) +
                         " exceeds degree " + std::to_string(n));
    return from_cycles(n > 0 ? n : max_point, cycles);
  }

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int v) const { return images_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t v = 0; v < images_.size(); ++v)
      inv[static_cast<std::size_t>(images_[v])] = static_cast<int>(v);
    return Permutation(std::move(inv), Unchecked{});
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree())
      throw InvalidInput("composing permutations of degree " +
                         std::to_string(a.degree()) + " and " +
                         std::to_string(b.degree()));
    std::vector<int> img(b.images_.size());
    for (std::size_t v = 0; v < img.size(); ++v)
      img[v] = a.images_[static_cast<std::size_t>(b.images_[v])];
    return Permutation(std::move(img), Unchecked{});
  }

  bool is_identity() const {
    for (std::size_t v = 0; v < images_.size(); ++v)
      if (images_[v] != static_cast<int>(v)) return false;
    return true;
  }

  /// Disjoint cycles of length >= 2, each starting at its smallest point,
  /// ordered by that point.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images_.size(), false);
    for (int v = 0; v < degree(); ++v) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      std::vector<int> cyc;
      for (int u = v; !seen[static_cast<std::size_t>(u)]; u = (*this)(u)) {
        seen[static_cast<std::size_t>(u)] = true;
        cyc.push_back(u);
      }
      if (cyc.size() > 1) out.push_back(std::move(cyc));
    }
    return out;
  }

  bool is_even() const {
    std::size_t transpositions = 0;
    for (const auto& c : cycles()) transpositions += c.size() - 1;
    return transpositions % 2 == 0;
  }

  /// Lexicographic rank among all permutations of the same degree.
  std::uint64_t rank() const {
    std::uint64_t r = 0;
    const std::size_t n = images_.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t smaller = 0;
      for (std::size_t j = i + 1; j < n; ++j)
        if (images_[j] < images_[i]) ++smaller;
      r = r * (n - i) + smaller;
    }
    return r;
  }

  static Permutation unrank(int n, std::uint64_t r) {
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
      const auto base = static_cast<std::uint64_t>(n - i);
      digits[static_cast<std::size_t>(i)] = static_cast<int>(r % base);
      r /= base;
    }
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> img;
    for (int i = 0; i < n; ++i) {
      const auto it = pool.begin() + digits[static_cast<std::size_t>(i)];
      img.push_back(*it);
      pool.erase(it);
    }
    return Permutation(std::move(img), Unchecked{});
  }

  /// "[2,3,1]" (1-based).
  std::string str() const { return one_line_of(images_); }

  /// "(1 2 3)(4 5)" (1-based); "()" for the identity.
  std::string cycle_str() const {
    std::string out;
    for (const auto& c : cycles()) {
      out += '(';
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) out += ' ';
        out += std::to_string(c[k] + 1);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> images, Unchecked) : images_(std::move(images)) {}

  static std::string one_line_of(const std::vector<int>& img) {
    std::string out = "[";
    for (std::size_t i = 0; i < img.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(img[i] + 1);
    }
    return out + "]";
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  }

  static int parse_point(std::string_view tok) {
    tok = trim(tok);
    if (tok.empty() || tok.size() > 6)
      throw InvalidInput("malformed permutation point '" + std::string(tok) + "'");
    int v = 0;
    for (char c : tok) {
      if (c < '0' || c > '9')
        throw InvalidInput("malformed permutation point '" + std::string(tok) + "'");
      v = v * 10 + (c - '0');
    }
    if (v < 1) throw InvalidInput("permutation points are 1-based");
    return v;
  }

  std::vector<int> images_;
};

}  // namespace permext

#endif  // PERMEXT_PERMUTATION_HPP
