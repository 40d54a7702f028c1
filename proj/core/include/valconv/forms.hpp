#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valconv/exterior.hpp"
#include "valconv/lie.hpp"
#include "valconv/sphere_poly.hpp"

namespace valconv {

enum class ValueSpace { Primal, Dual, Scalar };

std::string to_string(ValueSpace space);

struct FormKey {
  IndexSet dxi;    // sphere slot: dxi_I
  IndexSet value;  // value slot: e_J, e*_J, or empty for scalar values
  friend auto operator<=>(const FormKey&, const FormKey&) = default;
};

// Basic (horizontal, scale-invariant) k-form on g* minus the origin with values
// in a fixed grade of the exterior algebra. The coefficient of dxi_I has weight -|I|.
class BasicForm {
 public:
  BasicForm() = default;
  BasicForm(int dim, ValueSpace space, int sphere_degree, int value_grade);

  int dim() const { return dim_; }
  ValueSpace space() const { return space_; }
  int sphere_degree() const { return sphere_degree_; }
  int value_grade() const { return value_grade_; }
  const std::map<FormKey, SpherePoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  SpherePoly coefficient(IndexSet dxi, IndexSet value) const;
  int max_coeff_degree() const;

  void add(IndexSet dxi, IndexSet value, const SpherePoly& coefficient);
  void add(IndexSet dxi, IndexSet value, SpherePoly&& coefficient);
  void add_scaled(IndexSet dxi, IndexSet value, const SpherePoly& coefficient, const Scalar& factor);
  // Adds factor * a * b at (dxi, value).
  void add_product(IndexSet dxi, IndexSet value, const SpherePoly& a, const SpherePoly& b, const Rational& factor);

  BasicForm& operator+=(const BasicForm& other);
  BasicForm& operator+=(BasicForm&& other);
  BasicForm& operator-=(const BasicForm& other);
  BasicForm& operator*=(const Scalar& factor);
  BasicForm operator-() const;
  friend BasicForm operator+(BasicForm a, const BasicForm& b) { return a += b; }
  friend BasicForm operator-(BasicForm a, const BasicForm& b) { return a -= b; }
  friend BasicForm operator*(BasicForm a, const Scalar& s) { return a *= s; }
  friend bool operator==(const BasicForm& a, const BasicForm& b);

  std::string to_string() const;

 private:
  void check_key(IndexSet dxi, IndexSet value, const SpherePoly& coefficient) const;
  void require_compatible(const BasicForm& other) const;

  int dim_ = 0;
  ValueSpace space_ = ValueSpace::Scalar;
  int sphere_degree_ = 0;
  int value_grade_ = 0;
  std::map<FormKey, SpherePoly> terms_;
};

// --- operations on basic forms ---

BasicForm d_sphere(const BasicForm& form);
// Interior product with the ambient linear field xi -> A xi.
BasicForm contract_field(const RationalMatrix& field, const BasicForm& form);
// Interior product with the Euler field E = sum xi_i d/dxi_i.
BasicForm contract_euler(const BasicForm& form);
// Lie derivative along xi -> A xi by Cartan's formula.
BasicForm lie_derivative(const RationalMatrix& field, const BasicForm& form);
// (alpha (x) X) ^ (beta (x) Y) = (alpha ^ beta) (x) (X ^ Y); scalar values act as units.
BasicForm wedge(const BasicForm& a, const BasicForm& b);
// iota_{e*_K} on the value slot of a primal-valued form.
BasicForm interior_value(IndexSet k, const BasicForm& form);
// Koszul boundary / coboundary / ad-derivation applied to the value slot.
BasicForm boundary_values(const LieAlgebra& lie, const BasicForm& form);
BasicForm coboundary_values(const LieAlgebra& lie, const BasicForm& form);
BasicForm ad_values(const LieAlgebra& lie, int i, const BasicForm& form);
// Value slot wedged on the left by xi = sum xi_i e*_i (dual values); the
// coefficient weight is not tracked, the result only serves zero tests.
BasicForm wedge_xi_values(const BasicForm& form);
// Hodge maps on the value slot.
BasicForm hodge_inverse_values(const BasicForm& form);
BasicForm hodge_values(const BasicForm& form);

// P(w) = w - (sum xi_i dxi_i / r^2) ^ iota_E w.
BasicForm basic_projection(const BasicForm& form);
bool is_basic(const BasicForm& form);

// Integral over S^{n-1} of a top-degree form: integrand of dr ^ w at r = 1.
Scalar sphere_integrate(const BasicForm& form);
// Same, per value blade, for valued top-degree forms.
MultiVector integrate_values(const BasicForm& form);

// iota_E(dxi_1 ^ ... ^ dxi_n) / r^n as a scalar (n-1)-form (area form of the sphere).
BasicForm sphere_area_form(int dim);

// --- bigraded forms ---

// Left-invariant p-form on the cosphere bundle, split by sphere degree k.
// Dual values: tau_k has value grade p - k.  Primal (tilde) values: grade n - p + k.
// Scalar: a plain sphere form of degree p.
class BigradedForm {
 public:
  BigradedForm() = default;
  BigradedForm(int dim, int degree, ValueSpace space);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  ValueSpace space() const { return space_; }
  int k_min() const;
  int k_max() const;
  bool has_component(int k) const { return k >= k_min() && k <= k_max(); }
  int value_grade(int k) const;

  // Component k; an empty form of the right shape for any k in [0, n-1].
  const BasicForm& component(int k) const;
  void set_component(int k, BasicForm form);
  void add_to_component(int k, BasicForm form);

  bool is_zero() const;
  // Largest k with a non-zero component, -1 if the form vanishes.
  int highest_nonzero() const;
  int max_coeff_degree() const;

  BigradedForm& operator+=(const BigradedForm& other);
  BigradedForm& operator-=(const BigradedForm& other);
  BigradedForm& operator*=(const Scalar& factor);
  friend BigradedForm operator+(BigradedForm a, const BigradedForm& b) { return a += b; }
  friend BigradedForm operator-(BigradedForm a, const BigradedForm& b) { return a -= b; }
  friend BigradedForm operator*(BigradedForm a, const Scalar& s) { return a *= s; }
  friend bool operator==(const BigradedForm& a, const BigradedForm& b);

  std::string to_string() const;

 private:
  void require_compatible(const BigradedForm& other) const;
  BasicForm empty_component(int k) const;

  int dim_ = 0;
  int degree_ = 0;
  ValueSpace space_ = ValueSpace::Dual;
  std::vector<BasicForm> components_;  // index k = 0 .. n-1
};

BigradedForm tilde(const BigradedForm& form);
BigradedForm untilde(const BigradedForm& form);

// (d tau)_k = d tau_{k-1} + (-1)^{k+1} d* tau_k on dual-valued forms.
BigradedForm d_total(const LieAlgebra& lie, const BigradedForm& form);
// (d~tau)_k = d tau~_{k-1} + (-1)^{n-p+1} boundary tau~_k on primal-valued forms.
BigradedForm tilde_d_total(const LieAlgebra& lie, const BigradedForm& form);

// Closedness of a dual n-form through d tau~_{k-1} = boundary tau~_k (unimodular algebras).
bool is_closed_n_form(const LieAlgebra& lie, const BigradedForm& form);

struct VerticalityResult {
  bool vertical = true;
  int component = -1;  // first failing k
  BasicForm witness;   // xi ^ tau_k, non-zero on failure
};
VerticalityResult check_vertical(const BigradedForm& form);
inline bool is_vertical(const BigradedForm& form) { return check_vertical(form).vertical; }

// Integral of the top sphere component tau_{n-1} (dual, grade p - n + 1 values).
MultiVector top_integral(const BigradedForm& form);

}  // namespace valconv
