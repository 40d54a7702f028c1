#include "valconv/convolution.hpp"

#include <unordered_map>

#include "valconv/error.hpp"

namespace valconv {

int epsilon_sign(int n, int p, int q, int k, int l, int j) {
  long e = static_cast<long>(n + q) * (n + p + l + j) + static_cast<long>(k) * (l + j + 1);
  return (e % 2 == 0) ? 1 : -1;
}

BasicForm hat_S(const LieAlgebra& lie, int r, const BasicForm& t, const BasicForm& z) {
  if (t.space() != ValueSpace::Primal || z.space() != ValueSpace::Primal) throw InputError("hat_S expects primal values");
  const int n = lie.dim();
  if (t.dim() != n || z.dim() != n) throw InputError("hat_S dimension mismatch");
  if (r < 0) throw InputError("hat_S order must be non-negative");
  if (r == 0) return wedge(t, z);

  const int k = t.sphere_degree() - r;
  const int grade = t.value_grade() + z.value_grade() - r;
  BasicForm out(n, ValueSpace::Primal, std::clamp(k + z.sphere_degree(), 0, n), std::clamp(grade, 0, n));
  if (lie.is_abelian() || k < 0 || r > z.value_grade() || t.is_zero() || z.is_zero()) return out;

  // iota_{e_K^#} t = iota_{k_1}( iota_{e_{K - k_1}^#} t ), memoized over subsets.
  std::unordered_map<std::uint32_t, BasicForm> contracted;
  contracted.emplace(0U, t);
  auto sphere_part = [&](auto&& self, IndexSet set) -> const BasicForm& {
    if (auto it = contracted.find(set.bits()); it != contracted.end()) return it->second;
    int first = set.min_index();
    BasicForm value = contract_field(lie.coadjoint_field(first), self(self, set.without(first)));
    return contracted.emplace(set.bits(), std::move(value)).first->second;
  };

  for (IndexSet set : subsets_of_size(n, r)) {
    const BasicForm& left = sphere_part(sphere_part, set);
    if (left.is_zero()) continue;
    BasicForm right = interior_value(set, z);
    if (right.is_zero()) continue;
    out += wedge(left, right);
  }
  return out;
}

BigradedForm convolve_tilde(const LieAlgebra& lie, const BigradedForm& t, const BigradedForm& z,
                            const ConvolveOptions& options) {
  if (t.space() != ValueSpace::Primal || z.space() != ValueSpace::Primal) {
    throw InputError("convolve_tilde expects primal-valued forms");
  }
  const int n = lie.dim();
  if (t.dim() != n || z.dim() != n) throw InputError("convolution: Lie algebra and form dimensions differ");
  const int p = t.degree();
  const int q = z.degree();
  if (p + q < n) {
    throw DegreeError("convolution degree underflow: " + std::to_string(p) + " + " + std::to_string(q) + " < " +
                      std::to_string(n));
  }
  if (p + q - n > 2 * n) throw DegreeError("convolution degree overflow: " + std::to_string(p + q - n) + " > 2n");
  if (options.strict_invariance && !is_ad_invariant(lie, t)) {
    throw InvalidValuation("left convolution factor is not Ad-invariant");
  }
  BigradedForm out(n, p + q - n, ValueSpace::Primal);
  for (int k = t.k_min(); k <= t.k_max(); ++k) {
    const BasicForm& tk = t.component(k);
    if (tk.is_zero()) continue;
    for (int l = z.k_min(); l <= z.k_max(); ++l) {
      const BasicForm& zl = z.component(l);
      if (zl.is_zero()) continue;
      for (int j = out.k_min(); j <= std::min(out.k_max(), k + l); ++j) {
        int r = k + l - j;
        if (r > k || r > zl.value_grade()) continue;
        BasicForm piece = hat_S(lie, r, tk, zl);
        if (piece.is_zero()) continue;
        if (epsilon_sign(n, p, q, k, l, j) < 0) piece *= Scalar(-1L);
        out.add_to_component(j, std::move(piece));
      }
    }
  }
  return out;
}

BigradedForm convolve_forms(const LieAlgebra& lie, const BigradedForm& tau, const BigradedForm& zeta,
                            const ConvolveOptions& options) {
  if (tau.space() != ValueSpace::Dual || zeta.space() != ValueSpace::Dual) {
    throw InputError("convolve_forms expects dual-valued forms");
  }
  return untilde(convolve_tilde(lie, tilde(tau), tilde(zeta), options));
}

BigradedForm unit_form(int dim) {
  BigradedForm out(dim, dim, ValueSpace::Dual);
  BasicForm c(dim, ValueSpace::Dual, 0, dim);
  c.add(IndexSet(), IndexSet::full(dim), SpherePoly::constant(dim, Scalar(1L)));
  out.set_component(0, std::move(c));
  return out;
}

BigradedForm ad_invariance_defect(const LieAlgebra& lie, int i, const BigradedForm& t) {
  if (t.space() != ValueSpace::Primal) throw InputError("ad_invariance_defect expects primal values");
  BigradedForm out(t.dim(), t.degree(), ValueSpace::Primal);
  const RationalMatrix& field = lie.coadjoint_field(i);
  for (int k = t.k_min(); k <= t.k_max(); ++k) {
    const BasicForm& c = t.component(k);
    if (c.is_zero()) continue;
    BasicForm defect = lie_derivative(field, c);
    defect -= ad_values(lie, i, c);
    out.set_component(k, std::move(defect));
  }
  return out;
}

bool is_ad_invariant(const LieAlgebra& lie, const BigradedForm& form) {
  if (lie.is_abelian()) return true;
  BigradedForm t = form.space() == ValueSpace::Dual ? tilde(form) : form;
  if (t.space() != ValueSpace::Primal) throw InputError("is_ad_invariant expects valued forms");
  for (int i = 1; i <= lie.dim(); ++i) {
    if (!ad_invariance_defect(lie, i, t).is_zero()) return false;
  }
  return true;
}

Scalar mu_component(const BigradedForm& tau) {
  if (tau.space() != ValueSpace::Dual || tau.degree() != tau.dim()) {
    throw DegreeError("mu_component expects a dual-valued form of degree n");
  }
  BasicForm t0 = hodge_inverse_values(tau.component(0));
  SpherePoly c = t0.coefficient(IndexSet(), IndexSet());
  if (!c.is_constant()) throw InvalidValuation("the degree-0 component is not constant");
  return c.constant_term();
}

}  // namespace valconv
