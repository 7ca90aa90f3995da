#ifndef PERMEXT_RATIONAL_HPP
#define PERMEXT_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "permext/errors.hpp"

namespace permext {

using Integer = mpz_class;

/**
 * Exact rational number in canonical form: gcd(|num|, den) = 1, den > 0 and
 * zero is 0/1. Every arithmetic result is canonical again.
 *
 * The text form is "p/q", or "p" when q = 1.
 */
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      q_ = static_cast<long>(value);
    } else {
      q_ = static_cast<unsigned long>(value);
    }
  }

  Rational(const Integer& value) : q_(value) {}  // NOLINT

  /// num/den reduced to canonical form. Throws InvalidInput when den == 0.
  static Rational normalize(const Integer& num, const Integer& den) {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q));
  }

  /// Parses "p/q" or "p" (optional leading '-' or '+', decimal digits only).
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num_text = text.substr(0, slash);
    if (!is_integer_literal(num_text))
      throw InvalidInput("malformed rational '" + std::string(text) + "'");
    const Integer num(std::string(strip_plus(num_text)), 10);
    if (slash == std::string_view::npos) return Rational(num);
    const std::string_view den_text = text.substr(slash + 1);
    if (!is_integer_literal(den_text))
      throw InvalidInput("malformed rational '" + std::string(text) + "'");
    return normalize(num, Integer(std::string(strip_plus(den_text)), 10));
  }

  Integer numerator() const { return q_.get_num(); }
  Integer denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  /// Display only; never used by any algorithm.
  double approx() const { return q_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InvalidInput("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  /// this -= a * b without a temporary Rational.
  void sub_mul(const Rational& a, const Rational& b) {
    mpq_class t(a.q_ * b.q_);
    q_ -= t;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

  std::size_t hash() const {
    const std::size_t h1 = std::hash<std::string>{}(q_.get_num().get_str(16));
    const std::size_t h2 = std::hash<std::string>{}(q_.get_den().get_str(16));
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}

  static bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  }

  static std::string_view strip_plus(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return s;
  }

  mpq_class q_;
};

inline Rational rational_normalize(const Integer& num, const Integer& den) {
  return Rational::normalize(num, den);
}

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

inline Integer binomial(unsigned n, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace permext

template <>
struct std::hash<permext::Rational> {
  std::size_t operator()(const permext::Rational& r) const { return r.hash(); }
};

#endif  // PERMEXT_RATIONAL_HPP
