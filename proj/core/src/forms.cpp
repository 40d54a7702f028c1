#include "valconv/forms.hpp"

#include "valconv/error.hpp"

namespace valconv {

std::string to_string(ValueSpace space) {
  switch (space) {
    case ValueSpace::Primal:
      return "primal";
    case ValueSpace::Dual:
      return "dual";
    case ValueSpace::Scalar:
      return "scalar";
  }
  return "?";
}

namespace {

inline Scalar signed_unit(int sign) { return Scalar(static_cast<long>(sign)); }

int sign_of_parity(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

}  // namespace

// ---------------------------------------------------------------- BasicForm

BasicForm::BasicForm(int dim, ValueSpace space, int sphere_degree, int value_grade)
    : dim_(dim), space_(space), sphere_degree_(sphere_degree), value_grade_(value_grade) {
  if (dim < 1 || dim > kMaxDim) throw InputError("form dimension out of range");
  if (sphere_degree < 0 || sphere_degree > dim) throw InputError("sphere degree out of range");
  if (space == ValueSpace::Scalar && value_grade != 0) throw InputError("scalar-valued forms have value grade 0");
  if (value_grade < 0 || value_grade > dim) throw InputError("value grade out of range");
}

SpherePoly BasicForm::coefficient(IndexSet dxi, IndexSet value) const {
  auto it = terms_.find(FormKey{dxi, value});
  return it == terms_.end() ? SpherePoly(dim_) : it->second;
}

int BasicForm::max_coeff_degree() const {
  int d = 0;
  for (const auto& [key, poly] : terms_) d = std::max(d, poly.max_degree());
  return d;
}

void BasicForm::check_key(IndexSet dxi, IndexSet value, const SpherePoly& coefficient) const {
  if (coefficient.dim() != dim_) throw InputError("coefficient dimension mismatch");
  if (dxi.size() != sphere_degree_ || dxi.max_index() > dim_) throw InputError("dxi index set does not match the sphere degree");
  if (value.size() != value_grade_ || value.max_index() > dim_) throw InputError("value index set does not match the value grade");
}

void BasicForm::add(IndexSet dxi, IndexSet value, const SpherePoly& coefficient) {
  if (coefficient.is_zero()) return;
  check_key(dxi, value, coefficient);
  auto [it, inserted] = terms_.try_emplace(FormKey{dxi, value}, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void BasicForm::add(IndexSet dxi, IndexSet value, SpherePoly&& coefficient) {
  if (coefficient.is_zero()) return;
  check_key(dxi, value, coefficient);
  auto [it, inserted] = terms_.try_emplace(FormKey{dxi, value}, std::move(coefficient));
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void BasicForm::add_scaled(IndexSet dxi, IndexSet value, const SpherePoly& coefficient, const Scalar& factor) {
  if (factor.is_zero() || coefficient.is_zero()) return;
  if (!factor.is_rational()) {
    add(dxi, value, coefficient * factor);
    return;
  }
  check_key(dxi, value, coefficient);
  auto [it, inserted] = terms_.try_emplace(FormKey{dxi, value}, dim_);
  it->second.add_scaled(coefficient, factor.coefficient(0));
  if (it->second.is_zero()) terms_.erase(it);
}

void BasicForm::add_product(IndexSet dxi, IndexSet value, const SpherePoly& a, const SpherePoly& b,
                            const Rational& factor) {
  if (a.is_zero() || b.is_zero() || factor == 0) return;
  check_key(dxi, value, a);
  auto [it, inserted] = terms_.try_emplace(FormKey{dxi, value}, dim_);
  it->second.add_product(a, b, factor);
  if (it->second.is_zero()) terms_.erase(it);
}

void BasicForm::require_compatible(const BasicForm& other) const {
  if (dim_ != other.dim_ || space_ != other.space_ || sphere_degree_ != other.sphere_degree_ ||
      value_grade_ != other.value_grade_) {
    throw InputError("basic forms of different shape cannot be added");
  }
}

BasicForm& BasicForm::operator+=(const BasicForm& other) {
  if (other.is_zero()) return *this;
  require_compatible(other);
  for (const auto& [key, poly] : other.terms_) add(key.dxi, key.value, poly);
  return *this;
}

BasicForm& BasicForm::operator+=(BasicForm&& other) {
  if (other.is_zero()) return *this;
  require_compatible(other);
  for (auto& [key, poly] : other.terms_) add(key.dxi, key.value, std::move(poly));
  other.terms_.clear();
  return *this;
}

BasicForm& BasicForm::operator-=(const BasicForm& other) {
  if (other.is_zero()) return *this;
  require_compatible(other);
  for (const auto& [key, poly] : other.terms_) add(key.dxi, key.value, -poly);
  return *this;
}

BasicForm& BasicForm::operator*=(const Scalar& factor) {
  if (factor.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, poly] : terms_) poly *= factor;
  return *this;
}

BasicForm BasicForm::operator-() const {
  BasicForm out = *this;
  for (auto& [key, poly] : out.terms_) poly = -poly;
  return out;
}

bool operator==(const BasicForm& a, const BasicForm& b) {
  if (a.is_zero() && b.is_zero()) return a.dim_ == b.dim_;
  return a.dim_ == b.dim_ && a.space_ == b.space_ && a.sphere_degree_ == b.sphere_degree_ &&
         a.value_grade_ == b.value_grade_ && a.terms_ == b.terms_;
}

std::string BasicForm::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  const char* base = space_ == ValueSpace::Primal ? "e" : "e*";
  for (const auto& [key, poly] : terms_) {
    if (!out.empty()) out += "\n";
    out += "[" + poly.to_string() + "] dxi" + key.dxi.to_string();
    if (space_ != ValueSpace::Scalar) out += std::string(" ") + base + key.value.to_string();
  }
  return out;
}

// ---------------------------------------------------------------- operations

BasicForm d_sphere(const BasicForm& form) {
  const int n = form.dim();
  BasicForm out(n, form.space(), std::min(form.sphere_degree() + 1, n), form.value_grade());
  if (form.sphere_degree() >= n) return out;
  const int weight = -form.sphere_degree();
  for (const auto& [key, poly] : form.terms()) {
    for (int j = 1; j <= n; ++j) {
      if (key.dxi.contains(j)) continue;
      int s = perm_sign(IndexSet::single(j), key.dxi);
      SpherePoly dj = poly.derivative(j - 1, weight);
      out.add_scaled(key.dxi.with(j), key.value, dj, signed_unit(s));
    }
  }
  return out;
}

BasicForm contract_field(const RationalMatrix& field, const BasicForm& form) {
  const int n = form.dim();
  if (field.n != n) throw InputError("vector field dimension mismatch");
  BasicForm out(n, form.space(), std::max(form.sphere_degree() - 1, 0), form.value_grade());
  if (form.sphere_degree() == 0) return out;
  for (const auto& [key, poly] : form.terms()) {
    for (int j : key.dxi.indices()) {
      SpherePoly component(n);
      for (int m = 1; m <= n; ++m) {
        const Rational& a = field.at(j - 1, m - 1);
        if (a == 0) continue;
        component += poly.times_variable(m - 1) * Scalar(a);
      }
      if (component.is_zero()) continue;
      int s = sign_of_parity(key.dxi.count_below(j));
      out.add_scaled(key.dxi.without(j), key.value, component, signed_unit(s));
    }
  }
  return out;
}

BasicForm contract_euler(const BasicForm& form) {
  RationalMatrix id(form.dim());
  for (int i = 0; i < form.dim(); ++i) id.at(i, i) = 1;
  return contract_field(id, form);
}

BasicForm lie_derivative(const RationalMatrix& field, const BasicForm& form) {
  BasicForm out = contract_field(field, d_sphere(form));
  if (form.sphere_degree() > 0) out += d_sphere(contract_field(field, form));
  return out;
}

BasicForm wedge(const BasicForm& a, const BasicForm& b) {
  if (a.dim() != b.dim()) throw InputError("wedge of forms of different dimension");
  ValueSpace space = a.space();
  if (a.space() == ValueSpace::Scalar) {
    space = b.space();
  } else if (b.space() != ValueSpace::Scalar && b.space() != a.space()) {
    throw InputError("wedge of forms with different value spaces");
  }
  const int n = a.dim();
  const int k = a.sphere_degree() + b.sphere_degree();
  const int grade = a.value_grade() + b.value_grade();
  BasicForm out(n, space, std::min(k, n), std::min(grade, n));
  if (k > n - 1 || grade > n) return out;
  if (a.is_zero() || b.is_zero()) return out;
  // Products are summed per output key over the common denominators of a and b.
  mpz_class da = 1, db = 1;
  for (const auto& [key, p] : a.terms()) lcm_denominators(p, da);
  for (const auto& [key, p] : b.terms()) lcm_denominators(p, db);
  std::vector<ScaledPoly> sb;
  sb.reserve(b.terms().size());
  for (const auto& [key, p] : b.terms()) sb.push_back(scale_to(p, db));
  std::map<FormKey, ProductAccumulator> sums;
  for (const auto& [ka, pa] : a.terms()) {
    const ScaledPoly sa = scale_to(pa, da);
    std::size_t index = 0;
    for (const auto& [kb, pb] : b.terms()) {
      const ScaledPoly& scaled_b = sb[index++];
      int s1 = perm_sign(ka.dxi, kb.dxi);
      if (s1 == 0) continue;
      int s2 = perm_sign(ka.value, kb.value);
      if (s2 == 0) continue;
      sums.try_emplace(FormKey{ka.dxi | kb.dxi, ka.value | kb.value}, n).first->second.add(sa, scaled_b, s1 * s2);
    }
  }
  Rational scale(1, mpz_class(da * db));
  scale.canonicalize();
  for (const auto& [key, sum] : sums) out.add(key.dxi, key.value, sum.finish(scale));
  return out;
}

BasicForm interior_value(IndexSet k, const BasicForm& form) {
  if (form.space() != ValueSpace::Primal) throw InputError("interior_value expects primal values");
  BasicForm out(form.dim(), form.space(), form.sphere_degree(), std::max(form.value_grade() - k.size(), 0));
  if (k.size() > form.value_grade()) return out;
  for (const auto& [key, poly] : form.terms()) {
    int s = interior_sign(k, key.value);
    if (s == 0) continue;
    out.add_scaled(key.dxi, key.value - k, poly, signed_unit(s));
  }
  return out;
}

BasicForm boundary_values(const LieAlgebra& lie, const BasicForm& form) {
  if (form.space() != ValueSpace::Primal) throw InputError("boundary_values expects primal values");
  if (lie.dim() != form.dim()) throw InputError("Lie algebra and form dimension differ");
  BasicForm out(form.dim(), form.space(), form.sphere_degree(), std::max(form.value_grade() - 1, 0));
  if (form.value_grade() < 2) return out;
  for (const auto& [key, poly] : form.terms()) {
    for (const auto& [target, c] : lie.boundary_of(key.value)) out.add_scaled(key.dxi, target, poly, Scalar(c));
  }
  return out;
}

BasicForm coboundary_values(const LieAlgebra& lie, const BasicForm& form) {
  if (form.space() != ValueSpace::Dual) throw InputError("coboundary_values expects dual values");
  if (lie.dim() != form.dim()) throw InputError("Lie algebra and form dimension differ");
  BasicForm out(form.dim(), form.space(), form.sphere_degree(), std::min(form.value_grade() + 1, form.dim()));
  if (form.value_grade() >= form.dim()) return out;
  for (const auto& [key, poly] : form.terms()) {
    for (const auto& [target, c] : lie.coboundary_of(key.value)) out.add_scaled(key.dxi, target, poly, Scalar(c));
  }
  return out;
}

BasicForm ad_values(const LieAlgebra& lie, int i, const BasicForm& form) {
  if (form.space() != ValueSpace::Primal) throw InputError("ad_values expects primal values");
  BasicForm out(form.dim(), form.space(), form.sphere_degree(), form.value_grade());
  for (const auto& [key, poly] : form.terms()) {
    for (const auto& [target, c] : lie.ad_on_blade(i, key.value)) out.add_scaled(key.dxi, target, poly, Scalar(c));
  }
  return out;
}

BasicForm wedge_xi_values(const BasicForm& form) {
  if (form.space() != ValueSpace::Dual) throw InputError("wedge_xi_values expects dual values");
  const int n = form.dim();
  BasicForm out(n, form.space(), form.sphere_degree(), std::min(form.value_grade() + 1, n));
  if (form.value_grade() >= n) return out;
  for (const auto& [key, poly] : form.terms()) {
    for (int i = 1; i <= n; ++i) {
      int s = perm_sign(IndexSet::single(i), key.value);
      if (s == 0) continue;
      out.add_scaled(key.dxi, key.value.with(i), poly.times_variable(i - 1), signed_unit(s));
    }
  }
  return out;
}

BasicForm hodge_inverse_values(const BasicForm& form) {
  if (form.space() != ValueSpace::Dual) throw InputError("tilde expects dual values");
  const int n = form.dim();
  BasicForm out(n, ValueSpace::Primal, form.sphere_degree(), n - form.value_grade());
  for (const auto& [key, poly] : form.terms()) {
    out.add_scaled(key.dxi, key.value.complement(n), poly, signed_unit(hodge_inverse_sign(key.value, n)));
  }
  return out;
}

BasicForm hodge_values(const BasicForm& form) {
  if (form.space() != ValueSpace::Primal) throw InputError("untilde expects primal values");
  const int n = form.dim();
  BasicForm out(n, ValueSpace::Dual, form.sphere_degree(), n - form.value_grade());
  for (const auto& [key, poly] : form.terms()) {
    out.add_scaled(key.dxi, key.value.complement(n), poly, signed_unit(hodge_sign(key.value, n)));
  }
  return out;
}

BasicForm basic_projection(const BasicForm& form) {
  if (form.sphere_degree() == 0) return form;
  const int n = form.dim();
  BasicForm alpha(n, ValueSpace::Scalar, 1, 0);
  for (int i = 1; i <= n; ++i) {
    alpha.add(IndexSet::single(i), IndexSet(), SpherePoly::from_monomial(n, mono::unit(i - 1), Scalar(1L)));
  }
  return form - wedge(alpha, contract_euler(form));
}

bool is_basic(const BasicForm& form) { return contract_euler(form).is_zero(); }

namespace {

// Density f with dr ^ w = f dxi_1 ^ ... ^ dxi_n at r = 1, per value blade.
std::map<IndexSet, SpherePoly> top_density(const BasicForm& form) {
  const int n = form.dim();
  if (form.sphere_degree() != n - 1) throw InputError("sphere integration needs a form of degree n-1");
  std::map<IndexSet, SpherePoly> density;
  for (const auto& [key, poly] : form.terms()) {
    int i = key.dxi.complement(n).min_index();
    int s = perm_sign(IndexSet::single(i), key.dxi);
    auto [it, inserted] = density.try_emplace(key.value, SpherePoly(n));
    it->second += poly.times_variable(i - 1) * signed_unit(s);
  }
  return density;
}

}  // namespace

Scalar sphere_integrate(const BasicForm& form) {
  if (form.value_grade() != 0) throw InputError("sphere_integrate expects scalar values");
  Scalar total;
  for (const auto& [value, f] : top_density(form)) total += f.integrate();
  return total;
}

MultiVector integrate_values(const BasicForm& form) {
  if (form.space() == ValueSpace::Scalar) throw InputError("integrate_values expects valued forms");
  MultiVector out(form.space() == ValueSpace::Primal ? Space::Primal : Space::Dual, form.dim());
  for (const auto& [value, f] : top_density(form)) out.add(value, f.integrate());
  return out;
}

BasicForm sphere_area_form(int dim) {
  BasicForm out(dim, ValueSpace::Scalar, dim - 1, 0);
  IndexSet all = IndexSet::full(dim);
  for (int i = 1; i <= dim; ++i) {
    out.add(all.without(i), IndexSet(),
            SpherePoly::from_monomial(dim, mono::unit(i - 1), signed_unit(sign_of_parity(i - 1))));
  }
  return out;
}

// ---------------------------------------------------------------- BigradedForm

BigradedForm::BigradedForm(int dim, int degree, ValueSpace space) : dim_(dim), degree_(degree), space_(space) {
  if (dim < 1 || dim > kMaxDim) throw InputError("form dimension out of range");
  if (degree < 0 || degree > 2 * dim) throw InputError("form degree out of range");
  if (space == ValueSpace::Scalar && degree > dim - 1) throw InputError("scalar sphere form degree out of range");
  components_.reserve(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) components_.push_back(empty_component(k));
}

int BigradedForm::k_min() const {
  if (space_ == ValueSpace::Scalar) return degree_;
  return std::max(0, degree_ - dim_);
}

int BigradedForm::k_max() const {
  if (space_ == ValueSpace::Scalar) return degree_;
  return std::min(degree_, dim_ - 1);
}

int BigradedForm::value_grade(int k) const {
  switch (space_) {
    case ValueSpace::Dual:
      return degree_ - k;
    case ValueSpace::Primal:
      return dim_ - degree_ + k;
    case ValueSpace::Scalar:
      return 0;
  }
  return 0;
}

BasicForm BigradedForm::empty_component(int k) const {
  int grade = has_component(k) ? value_grade(k) : 0;
  return BasicForm(dim_, space_, k, std::clamp(grade, 0, dim_));
}

const BasicForm& BigradedForm::component(int k) const {
  if (k < 0 || k >= dim_) throw InputError("component index out of range: " + std::to_string(k));
  return components_[static_cast<std::size_t>(k)];
}

void BigradedForm::set_component(int k, BasicForm form) {
  if (k < 0 || k >= dim_) throw InputError("component index out of range: " + std::to_string(k));
  if (form.is_zero()) {
    components_[static_cast<std::size_t>(k)] = empty_component(k);
    return;
  }
  if (!has_component(k)) throw DegreeError("component " + std::to_string(k) + " is not allowed in degree " + std::to_string(degree_));
  if (form.dim() != dim_ || form.space() != space_ || form.sphere_degree() != k || form.value_grade() != value_grade(k)) {
    throw InputError("component shape does not match the bigraded form");
  }
  components_[static_cast<std::size_t>(k)] = std::move(form);
}

void BigradedForm::add_to_component(int k, BasicForm form) {
  if (form.is_zero()) return;
  if (k < 0 || k >= dim_) throw InputError("component index out of range: " + std::to_string(k));
  BasicForm& slot = components_[static_cast<std::size_t>(k)];
  if (slot.is_zero()) {
    set_component(k, std::move(form));
    return;
  }
  slot += std::move(form);
}

bool BigradedForm::is_zero() const {
  for (const auto& c : components_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

int BigradedForm::highest_nonzero() const {
  for (int k = dim_ - 1; k >= 0; --k) {
    if (!components_[static_cast<std::size_t>(k)].is_zero()) return k;
  }
  return -1;
}

int BigradedForm::max_coeff_degree() const {
  int d = 0;
  for (const auto& c : components_) d = std::max(d, c.max_coeff_degree());
  return d;
}

void BigradedForm::require_compatible(const BigradedForm& other) const {
  if (dim_ != other.dim_ || degree_ != other.degree_ || space_ != other.space_) {
    throw InputError("bigraded forms of different shape");
  }
}

BigradedForm& BigradedForm::operator+=(const BigradedForm& other) {
  require_compatible(other);
  for (int k = 0; k < dim_; ++k) add_to_component(k, other.component(k));
  return *this;
}

BigradedForm& BigradedForm::operator-=(const BigradedForm& other) {
  require_compatible(other);
  for (int k = 0; k < dim_; ++k) add_to_component(k, -other.component(k));
  return *this;
}

BigradedForm& BigradedForm::operator*=(const Scalar& factor) {
  for (auto& c : components_) c *= factor;
  return *this;
}

bool operator==(const BigradedForm& a, const BigradedForm& b) {
  if (a.dim_ != b.dim_ || a.degree_ != b.degree_ || a.space_ != b.space_) return false;
  for (int k = 0; k < a.dim_; ++k) {
    if (a.components_[static_cast<std::size_t>(k)].terms() != b.components_[static_cast<std::size_t>(k)].terms()) {
      return false;
    }
  }
  return true;
}

std::string BigradedForm::to_string() const {
  std::string out = "degree " + std::to_string(degree_) + " (" + valconv::to_string(space_) + ")";
  for (int k = 0; k < dim_; ++k) {
    const auto& c = components_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    out += "\n k=" + std::to_string(k) + ":\n" + c.to_string();
  }
  return out;
}

BigradedForm tilde(const BigradedForm& form) {
  if (form.space() != ValueSpace::Dual) throw InputError("tilde expects a dual-valued form");
  BigradedForm out(form.dim(), form.degree(), ValueSpace::Primal);
  for (int k = form.k_min(); k <= form.k_max(); ++k) out.set_component(k, hodge_inverse_values(form.component(k)));
  return out;
}

BigradedForm untilde(const BigradedForm& form) {
  if (form.space() != ValueSpace::Primal) throw InputError("untilde expects a primal-valued form");
  BigradedForm out(form.dim(), form.degree(), ValueSpace::Dual);
  for (int k = form.k_min(); k <= form.k_max(); ++k) out.set_component(k, hodge_values(form.component(k)));
  return out;
}

BigradedForm d_total(const LieAlgebra& lie, const BigradedForm& form) {
  if (form.space() != ValueSpace::Dual) throw InputError("d_total expects a dual-valued form");
  if (lie.dim() != form.dim()) throw InputError("Lie algebra and form dimension differ");
  BigradedForm out(form.dim(), form.degree() + 1, ValueSpace::Dual);
  for (int k = out.k_min(); k <= out.k_max(); ++k) {
    if (form.has_component(k - 1)) out.add_to_component(k, d_sphere(form.component(k - 1)));
    if (form.has_component(k) && !lie.is_abelian()) {
      BasicForm cob = coboundary_values(lie, form.component(k));
      if ((k + 1) % 2 != 0) cob = -cob;
      out.add_to_component(k, cob);
    }
  }
  return out;
}

BigradedForm tilde_d_total(const LieAlgebra& lie, const BigradedForm& form) {
  if (form.space() != ValueSpace::Primal) throw InputError("tilde_d_total expects a primal-valued form");
  if (lie.dim() != form.dim()) throw InputError("Lie algebra and form dimension differ");
  const int n = form.dim();
  const int p = form.degree();
  BigradedForm out(n, p + 1, ValueSpace::Primal);
  for (int k = out.k_min(); k <= out.k_max(); ++k) {
    if (form.has_component(k - 1)) out.add_to_component(k, d_sphere(form.component(k - 1)));
    if (form.has_component(k) && !lie.is_abelian()) {
      BasicForm b = boundary_values(lie, form.component(k));
      if ((n - p + 1) % 2 != 0) b = -b;
      out.add_to_component(k, b);
    }
  }
  return out;
}

bool is_closed_n_form(const LieAlgebra& lie, const BigradedForm& form) {
  if (form.space() != ValueSpace::Dual || form.degree() != form.dim()) {
    throw DegreeError("is_closed_n_form expects a dual-valued form of degree n");
  }
  if (!lie.is_unimodular().unimodular) throw InputError("the closedness criterion requires a unimodular Lie algebra");
  const BigradedForm t = tilde(form);
  const int n = form.dim();
  for (int k = 1; k < n; ++k) {
    BasicForm lhs = d_sphere(t.component(k - 1));
    BasicForm rhs = boundary_values(lie, t.component(k));
    if (lhs.terms() != rhs.terms()) return false;
  }
  return d_sphere(t.component(n - 1)).is_zero();
}

VerticalityResult check_vertical(const BigradedForm& form) {
  if (form.space() != ValueSpace::Dual) throw InputError("verticality is defined for dual-valued forms");
  VerticalityResult result;
  for (int k = form.k_min(); k <= form.k_max(); ++k) {
    BasicForm w = wedge_xi_values(form.component(k));
    if (!w.is_zero()) {
      result.vertical = false;
      result.component = k;
      result.witness = std::move(w);
      return result;
    }
  }
  return result;
}

MultiVector top_integral(const BigradedForm& form) {
  if (form.space() != ValueSpace::Dual) throw InputError("top_integral expects a dual-valued form");
  const int n = form.dim();
  if (!form.has_component(n - 1)) return MultiVector(Space::Dual, n);
  return integrate_values(form.component(n - 1));
}

}  // namespace valconv
