#include "valconv/valuation.hpp"

#include <map>
#include <optional>
#include <tuple>

#include "valconv/error.hpp"

namespace valconv {

namespace {

void require_same_shape(const InvariantValuation& a, const InvariantValuation& b) {
  if (a.tau.dim() != b.tau.dim()) throw InputError("valuations over different dimensions");
}

void require_unimodular(const LieAlgebra& lie) {
  auto verdict = lie.is_unimodular();
  if (!verdict.unimodular) {
    throw InputError("Lie algebra '" + lie.name() + "' is not unimodular (tr ad_e" + std::to_string(verdict.witness) +
                     " = " + verdict.trace.get_str() + ")");
  }
}

void require_degree_n(const LieAlgebra& lie, const BigradedForm& tau) {
  if (tau.dim() != lie.dim()) throw InputError("Lie algebra and form dimension differ");
  if (tau.space() != ValueSpace::Dual || tau.degree() != tau.dim()) {
    throw DegreeError("expected a dual-valued form of degree n");
  }
}

BigradedForm without_tau0(const BigradedForm& tau) {
  BigradedForm rest = tau;
  rest.set_component(0, BasicForm(tau.dim(), ValueSpace::Dual, 0, tau.value_grade(0)));
  return rest;
}

bool top_integral_vanishes(const BigradedForm& rest) {
  if (rest.dim() < 2) return true;
  const MultiVector integral = top_integral(rest);
  for (const auto& [blade, s] : integral.terms()) {
    if (!s.is_zero()) return false;
  }
  return true;
}

// Solves d(w) = rhs for a basic primal-valued k-form w with coefficients of degree <= window.
std::optional<BasicForm> solve_d(const BasicForm& rhs, int k, int window, const PrimitiveOptions& gauge) {
  const int n = rhs.dim();
  BasicForm out(n, ValueSpace::Primal, k, rhs.value_grade());
  if (rhs.is_zero()) return out;

  std::vector<IndexSet> blades;
  {
    std::map<IndexSet, int> seen;
    for (const auto& [key, poly] : rhs.terms()) seen.emplace(key.value, 0);
    for (const auto& [b, unused] : seen) blades.push_back(b);
  }
  std::map<IndexSet, int> blade_index;
  for (std::size_t i = 0; i < blades.size(); ++i) blade_index[blades[i]] = static_cast<int>(i);

  struct Unknown {
    IndexSet dxi;
    Monomial m;
  };
  std::vector<Unknown> unknowns;
  for (IndexSet dxi : subsets_of_size(n, k)) {
    for (Monomial m : normal_monomials(n, window)) unknowns.push_back({dxi, m});
  }

  using Key = std::tuple<int, std::uint32_t, Monomial>;
  struct RowData {
    std::vector<std::pair<int, Rational>> coeffs;
    std::vector<Scalar> rhs;
  };
  std::map<Key, RowData> rows;
  auto row = [&](const Key& key) -> RowData& {
    auto [it, inserted] = rows.try_emplace(key);
    if (inserted) it->second.rhs.assign(blades.size(), Scalar());
    return it->second;
  };
  for (std::size_t col = 0; col < unknowns.size(); ++col) {
    BasicForm u(n, ValueSpace::Scalar, k, 0);
    u.add(unknowns[col].dxi, IndexSet(), SpherePoly::from_monomial(n, unknowns[col].m, Scalar(1L)));
    const BasicForm du = d_sphere(u);
    for (const auto& [key, poly] : du.terms()) {
      for (const auto& [m, s] : poly.terms()) row(Key{0, key.dxi.bits(), m}).coeffs.emplace_back(col, s.coefficient(0));
    }
    if (k > 0) {
      const BasicForm eu = contract_euler(u);
      for (const auto& [key, poly] : eu.terms()) {
        for (const auto& [m, s] : poly.terms()) row(Key{1, key.dxi.bits(), m}).coeffs.emplace_back(col, s.coefficient(0));
      }
    }
  }
  for (const auto& [key, poly] : rhs.terms()) {
    const int b = blade_index.at(key.value);
    for (const auto& [m, s] : poly.terms()) row(Key{0, key.dxi.bits(), m}).rhs[static_cast<std::size_t>(b)] += s;
  }

  ExactLinearSystem system(static_cast<int>(unknowns.size()), static_cast<int>(blades.size()));
  for (const auto& [key, data] : rows) system.add_row(data.coeffs, data.rhs);
  auto sol = system.solve(gauge.gauge, gauge.free_value);
  if (!sol.consistent) return std::nullopt;
  for (std::size_t b = 0; b < blades.size(); ++b) {
    for (std::size_t col = 0; col < unknowns.size(); ++col) {
      const Scalar& x = sol.values[b][col];
      if (x.is_zero()) continue;
      out.add(unknowns[col].dxi, blades[b], SpherePoly::from_monomial(n, unknowns[col].m, x));
    }
  }
  return out;
}

}  // namespace

InvariantValuation& InvariantValuation::operator+=(const InvariantValuation& other) {
  require_same_shape(*this, other);
  c += other.c;
  tau += other.tau;
  return *this;
}

InvariantValuation& InvariantValuation::operator-=(const InvariantValuation& other) {
  require_same_shape(*this, other);
  c -= other.c;
  tau -= other.tau;
  return *this;
}

InvariantValuation& InvariantValuation::operator*=(const Scalar& factor) {
  c *= factor;
  tau *= factor;
  return *this;
}

InvariantValuation haar_valuation(const LieAlgebra& lie) { return {Scalar(), unit_form(lie.dim()), lie.name()}; }

InvariantValuation euler_characteristic(const LieAlgebra& lie) {
  return {Scalar(1L), BigradedForm(lie.dim(), lie.dim(), ValueSpace::Dual), lie.name()};
}

BigradedForm volume_primitive(int dim) {
  BigradedForm out(dim, dim - 1, ValueSpace::Dual);
  const BasicForm area = sphere_area_form(dim);
  const Scalar inverse_mass = divide_exact(Scalar(1L), sphere_integrate(area));
  BasicForm top(dim, ValueSpace::Dual, dim - 1, 0);
  for (const auto& [key, poly] : area.terms()) top.add_scaled(key.dxi, IndexSet(), poly, inverse_mass);
  out.set_component(dim - 1, std::move(top));
  return out;
}

PrimitivePair find_primitive(const LieAlgebra& lie, const BigradedForm& tau, const PrimitiveOptions& options) {
  require_degree_n(lie, tau);
  require_unimodular(lie);
  if (!is_closed_n_form(lie, tau)) throw InvalidValuation("find_primitive: the form is not closed");
  const int n = lie.dim();
  const BigradedForm rest = without_tau0(tau);
  if (!top_integral_vanishes(rest)) {
    throw InvalidValuation("find_primitive: the top sphere component has non-zero integral");
  }
  const int base_window = options.window >= 0 ? options.window : tau.max_coeff_degree() + 2;
  const BigradedForm sigma = tilde(rest);

  BigradedForm omega_tilde(n, n - 1, ValueSpace::Primal);
  int used = 0;
  for (int k = n - 2; k >= 0; --k) {
    BasicForm rhs = sigma.component(k + 1);
    if (!lie.is_abelian()) rhs -= boundary_values(lie, omega_tilde.component(k + 1));
    std::optional<BasicForm> solved;
    int window = base_window;
    for (int attempt = 0; attempt <= options.escalations; ++attempt, window += 2) {
      solved = solve_d(rhs, k, window, options);
      if (solved) break;
    }
    if (!solved) {
      throw SolverError("find_primitive: no primitive in degree window " + std::to_string(window - 2) +
                        " for sphere degree " + std::to_string(k));
    }
    used = std::max(used, window);
    omega_tilde.set_component(k, std::move(*solved));
  }
  PrimitivePair out{untilde(omega_tilde), used};
  if (!(d_total(lie, out.omega) == rest)) throw SolverError("find_primitive: non-zero residual");
  return out;
}

ValidationReport validate(const LieAlgebra& lie, const InvariantValuation& v, const PrimitiveOptions& options) {
  ValidationReport report;
  require_degree_n(lie, v.tau);
  require_unimodular(lie);
  report.vertical_witness = check_vertical(v.tau);
  report.vertical = report.vertical_witness.vertical;
  if (!report.vertical) report.detail = "not vertical in component " + std::to_string(report.vertical_witness.component);
  report.closed = is_closed_n_form(lie, v.tau);
  if (!report.closed && report.detail.empty()) report.detail = "not closed";
  report.zero_top_integral = top_integral_vanishes(without_tau0(v.tau));
  if (!report.zero_top_integral && report.detail.empty()) report.detail = "non-zero top sphere integral";
  if (report.closed && report.zero_top_integral) {
    try {
      find_primitive(lie, v.tau, options);
      report.primitive = true;
    } catch (const SolverError& e) {
      if (report.detail.empty()) report.detail = e.what();
    }
  }
  return report;
}

Scalar mu_of(const InvariantValuation& v) { return mu_component(v.tau); }

InvariantValuation convolve_valuations(const LieAlgebra& lie, const InvariantValuation& phi,
                                       const InvariantValuation& psi, const ValuationConvolveOptions& options) {
  require_degree_n(lie, phi.tau);
  require_degree_n(lie, psi.tau);
  require_unimodular(lie);
  if (options.strict_invariance && !is_ad_invariant(lie, phi.tau)) {
    throw InvalidValuation("left convolution factor is not Ad-invariant");
  }
  const int n = lie.dim();
  const Scalar mu_psi = mu_of(psi);
  BigradedForm omega = find_primitive(lie, psi.tau, options.primitive).omega;
  if (!psi.c.is_zero()) omega += volume_primitive(n) * psi.c;

  ConvolveOptions plain;
  InvariantValuation out;
  out.lie = lie.name();
  out.c = phi.c * mu_psi;
  const BigradedForm pushed = convolve_forms(lie, phi.tau, omega, plain);
  out.c += top_integral(pushed).coefficient(IndexSet());
  out.tau = convolve_forms(lie, phi.tau, psi.tau, plain);
  return out;
}

}  // namespace valconv
