#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace valconv {

using Rational = mpq_class;

// Parses "p", "-p" or "p/q" into a canonical rational. Throws InputError.
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& q);

// Laurent polynomial in the transcendental symbol pi with rational
// coefficients. Terms are kept sorted by exponent with no zero entries.
class Scalar {
 public:
  using Term = std::pair<int, Rational>;

  Scalar() = default;
  Scalar(long value);  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& value);  // NOLINT(google-explicit-constructor)

  static Scalar pi_power(int exponent, const Rational& coefficient = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const std::vector<Term>& terms() const { return terms_; }
  Rational coefficient(int exponent) const;
  int min_exponent() const;
  int max_exponent() const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator*=(const Rational& factor);
  Scalar& operator/=(const Rational& divisor);
  // this += a * b without building the product.
  void add_product(const Scalar& a, const Scalar& b);
  // this += a * factor.
  void add_scaled(const Scalar& a, const Rational& factor);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator*(Scalar a, const Rational& b) { return a *= b; }
  friend Scalar operator*(const Rational& b, Scalar a) { return a *= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Human-readable form such as "1/2 + 3*pi^2" or "-pi^-1".
  std::string to_string() const;

 private:
  void add_term(int exponent, const Rational& coefficient);
  std::vector<Term> terms_;
};

// Exact division in the Laurent ring. Throws InputError when b does not
// divide a (or b is zero).
Scalar divide_exact(const Scalar& a, const Scalar& b);

// Scalar raised to a non-negative integer power.
Scalar power(const Scalar& base, unsigned exponent);

}  // namespace valconv
