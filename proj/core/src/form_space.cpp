#include "valconv/form_space.hpp"

#include <map>
#include <tuple>

#include "valconv/convolution.hpp"
#include "valconv/error.hpp"

namespace valconv {

namespace {

// (constraint, generator index, k, dxi, value, monomial, pi exponent)
using RowKey = std::tuple<int, int, int, std::uint32_t, std::uint32_t, Monomial, int>;
using Rows = std::map<RowKey, std::vector<std::pair<int, Rational>>>;

void add_form(Rows& rows, int constraint, int gen, int k, const BasicForm& form, int column) {
  for (const auto& [key, poly] : form.terms()) {
    for (const auto& [m, s] : poly.terms()) {
      for (const auto& [e, q] : s.terms()) {
        rows[RowKey{constraint, gen, k, key.dxi.bits(), key.value.bits(), m, e}].emplace_back(column, q);
      }
    }
  }
}

}  // namespace

FormSpace::FormSpace(const LieAlgebra& lie, int degree, int max_degree)
    : lie_(&lie), degree_(degree), max_degree_(max_degree) {
  const int n = lie.dim();
  if (max_degree < 0) throw InputError("negative coefficient degree bound");
  BigradedForm shape(n, degree, ValueSpace::Dual);
  const auto monomials = normal_monomials(n, max_degree);
  for (int k = shape.k_min(); k <= shape.k_max(); ++k) {
    for (IndexSet dxi : subsets_of_size(n, k)) {
      for (IndexSet value : subsets_of_size(n, shape.value_grade(k))) {
        for (Monomial m : monomials) coords_.push_back({k, dxi, value, m});
      }
    }
  }
}

BigradedForm FormSpace::unit_vector(std::size_t index) const {
  std::vector<Rational> v(coords_.size(), Rational(0));
  v[index] = 1;
  return element(v);
}

BigradedForm FormSpace::element(const std::vector<Rational>& values) const {
  const int n = lie_->dim();
  if (values.size() != coords_.size()) throw InputError("coordinate vector size mismatch");
  BigradedForm out(n, degree_, ValueSpace::Dual);
  std::vector<BasicForm> parts;
  for (int k = 0; k < n; ++k) {
    parts.emplace_back(n, ValueSpace::Dual, k, out.has_component(k) ? out.value_grade(k) : 0);
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (values[i] == 0) continue;
    const Coordinate& c = coords_[i];
    parts[static_cast<std::size_t>(c.k)].add(c.dxi, c.value, SpherePoly::from_monomial(n, c.monomial, Scalar(values[i])));
  }
  for (int k = out.k_min(); k <= out.k_max(); ++k) out.set_component(k, std::move(parts[static_cast<std::size_t>(k)]));
  return out;
}

std::vector<BigradedForm> FormSpace::solution_basis(const FormSpaceConstraints& constraints) const {
  const LieAlgebra& lie = *lie_;
  const int n = lie.dim();
  Rows rows;
  for (std::size_t col = 0; col < coords_.size(); ++col) {
    const int column = static_cast<int>(col);
    const BigradedForm e = unit_vector(col);
    const int k = coords_[col].k;
    const BasicForm& comp = e.component(k);
    if (constraints.basic && k > 0) add_form(rows, 0, 0, k, contract_euler(comp), column);
    if (constraints.vertical) add_form(rows, 1, 0, k, wedge_xi_values(comp), column);
    if (constraints.closed) {
      BigradedForm d = d_total(lie, e);
      for (int j = d.k_min(); j <= d.k_max(); ++j) add_form(rows, 2, 0, j, d.component(j), column);
    }
    if (constraints.zero_top_integral && n >= 2 && k == n - 1) {
      MultiVector integral = top_integral(e);
      for (const auto& [blade, s] : integral.terms()) {
        for (const auto& [pe, q] : s.terms()) rows[RowKey{3, 0, 0, 0, blade.bits(), 0, pe}].emplace_back(column, q);
      }
    }
    // On S^0 the odd part of the degree-0 component is the obstruction instead.
    if (constraints.zero_top_integral && n == 1 && k == 0) {
      for (const auto& [key, poly] : comp.terms()) {
        for (const auto& [m, s] : poly.terms()) {
          if (mono::exponent(m, 0) % 2 == 0) continue;
          for (const auto& [pe, q] : s.terms()) rows[RowKey{3, 0, 0, 0, key.value.bits(), m, pe}].emplace_back(column, q);
        }
      }
    }
    if (constraints.ad_invariant && !lie.is_abelian()) {
      BigradedForm t = tilde(e);
      for (int i = 1; i <= n; ++i) {
        BigradedForm defect = ad_invariance_defect(lie, i, t);
        for (int j = defect.k_min(); j <= defect.k_max(); ++j) add_form(rows, 4, i, j, defect.component(j), column);
      }
    }
  }
  ExactLinearSystem system(size(), 0);
  for (const auto& [key, entries] : rows) system.add_row(entries);
  std::vector<BigradedForm> basis;
  for (const auto& v : system.nullspace()) basis.push_back(element(v));
  return basis;
}

BigradedForm random_combination(Rng& rng, const std::vector<BigradedForm>& basis, long bound, unsigned density) {
  if (basis.empty()) throw InputError("random_combination of an empty basis");
  BigradedForm out(basis.front().dim(), basis.front().degree(), basis.front().space());
  for (const auto& b : basis) {
    if (!rng.chance(density)) continue;
    long c = 0;
    while (c == 0) c = rng.uniform(-bound, bound);
    out += b * Scalar(c);
  }
  return out;
}

}  // namespace valconv
