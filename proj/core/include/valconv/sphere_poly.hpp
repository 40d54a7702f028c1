#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "valconv/scalar.hpp"

namespace valconv {

// Exponent vector packed 8 bits per variable; variable v (0-based) sits in bits [8v, 8v+8).
using Monomial = std::uint64_t;

namespace mono {
inline int exponent(Monomial m, int var) { return static_cast<int>((m >> (8 * var)) & 0xFFU); }
inline Monomial unit(int var) { return Monomial{1} << (8 * var); }
int degree(Monomial m);
Monomial make(const std::vector<int>& exponents);
std::vector<int> exponents(Monomial m, int n);
}  // namespace mono

// A homogeneous coefficient function on g* minus the origin, represented by
// its restriction to the unit sphere: a polynomial in xi_1..xi_n reduced
// modulo |xi|^2 = 1 so that the last variable has exponent at most 1. The
// scaling weight is carried by the owner; the homogeneous extension of a
// monomial xi^a of weight w is xi^a r^{w-|a|}.
class ProductAccumulator;

class SpherePoly {
 public:
  SpherePoly() = default;
  explicit SpherePoly(int dim) : dim_(dim) {}
  static SpherePoly constant(int dim, const Scalar& value);
  static SpherePoly from_monomial(int dim, Monomial m, const Scalar& value);

  int dim() const { return dim_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  int max_degree() const;

  // Adds value * xi^m, reducing m to normal form.
  void add_monomial(Monomial m, const Scalar& value);
  // this += factor * a * b, reducing each distinct raw monomial once.
  void add_product(const SpherePoly& a, const SpherePoly& b, const Rational& factor = 1);
  // this += factor * a.
  void add_scaled(const SpherePoly& a, const Rational& factor);

  SpherePoly& operator+=(const SpherePoly& other);
  SpherePoly& operator-=(const SpherePoly& other);
  SpherePoly& operator*=(const Scalar& factor);
  SpherePoly operator-() const;
  friend SpherePoly operator+(SpherePoly a, const SpherePoly& b) { return a += b; }
  friend SpherePoly operator-(SpherePoly a, const SpherePoly& b) { return a -= b; }
  friend SpherePoly operator*(const SpherePoly& a, const SpherePoly& b);
  friend SpherePoly operator*(SpherePoly a, const Scalar& s) { return a *= s; }
  friend bool operator==(const SpherePoly& a, const SpherePoly& b) { return a.terms_ == b.terms_; }
  friend class ProductAccumulator;

  SpherePoly times_variable(int var) const;
  // Partial derivative d/dxi_var of the homogeneous extension of the given weight,
  // restricted back to the sphere (the result has weight - 1).
  SpherePoly derivative(int var, int weight) const;
  // Integral over the unit sphere S^{n-1} against the standard area measure.
  Scalar integrate() const;

  std::string to_string() const;

 private:
  int dim_ = 0;
  std::map<Monomial, Scalar> terms_;
};

// Integer image of a polynomial over a denominator shared by several polynomials.
struct ScaledPoly {
  std::vector<std::tuple<Monomial, int, mpz_class>> terms;  // (monomial, pi exponent, numerator)
};
// Least common denominator of all rational coefficients.
void lcm_denominators(const SpherePoly& p, mpz_class& den);
ScaledPoly scale_to(const SpherePoly& p, const mpz_class& den);

// Sums of products of ScaledPolys with exact integer accumulation; the
// reduction modulo |xi|^2 = 1 and the final division happen once in finish().
class ProductAccumulator {
 public:
  explicit ProductAccumulator(int dim) : dim_(dim) {}
  void add(const ScaledPoly& a, const ScaledPoly& b, int sign);
  // Reduced sum times scale.
  SpherePoly finish(const Rational& scale) const;

 private:
  struct Key {
    Monomial m;
    int pi;
    bool operator==(const Key& o) const { return m == o.m && pi == o.pi; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  int dim_;
  std::unordered_map<Key, mpz_class, KeyHash> raw_;
};

// Integral of xi^alpha over S^{n-1}: 0 if some exponent is odd, otherwise
// 2 * prod Gamma((a_i+1)/2) / Gamma((n+|a|)/2).
Scalar sphere_moment(int dim, const std::vector<int>& alpha);

// Number of normal-form monomials of degree <= max_degree (and the list itself).
std::vector<Monomial> normal_monomials(int dim, int max_degree);

}  // namespace valconv
