#include "valconv/bernig_fu.hpp"

#include <vector>

#include "valconv/error.hpp"

namespace valconv {

namespace {

int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }
long choose2(long m) { return m * (m - 1) / 2; }

// gamma ^ kappa with gamma a translation-invariant form of degree |gamma|.
struct Term {
  IndexSet gamma;
  IndexSet kappa;
  SpherePoly coeff;
};

// Storage (kappa ^ e*_J) -> *_1 applied to (gamma ^ kappa).
std::vector<Term> starred_terms(const BigradedForm& form) {
  const int n = form.dim();
  std::vector<Term> out;
  for (int l = form.k_min(); l <= form.k_max(); ++l) {
    for (const auto& [key, coeff] : form.component(l).terms()) {
      const int k = key.value.size();
      int sign = parity_sign(static_cast<long>(k) * l);              // kappa ^ gamma = +- gamma ^ kappa
      sign *= parity_sign(choose2(n - k));                            // *_1
      const IndexSet comp = key.value.complement(n);
      sign *= perm_sign(comp, key.value);                             // *e*_J = eps(J^c, J) e_{J^c}
      SpherePoly c = coeff;
      if (sign < 0) c = -c;
      out.push_back({comp, key.dxi, std::move(c)});
    }
  }
  return out;
}

}  // namespace

BigradedForm bernig_fu_convolve(const BigradedForm& tau, const BigradedForm& zeta) {
  if (tau.space() != ValueSpace::Dual || zeta.space() != ValueSpace::Dual) {
    throw InputError("bernig_fu_convolve expects dual-valued forms");
  }
  const int n = tau.dim();
  if (zeta.dim() != n) throw InputError("bernig_fu_convolve dimension mismatch");
  const int degree = tau.degree() + zeta.degree() - n;
  if (degree < 0) throw DegreeError("convolution degree underflow");
  BigradedForm out(n, degree, ValueSpace::Dual);

  std::vector<BasicForm> parts;
  for (int l = 0; l < n; ++l) {
    int grade = degree - l;
    parts.emplace_back(n, ValueSpace::Dual, l, (grade >= 0 && grade <= n) ? grade : 0);
  }

  const auto lhs = starred_terms(tau);
  const auto rhs = starred_terms(zeta);
  for (const Term& a : lhs) {
    for (const Term& b : rhs) {
      if (a.gamma.intersects(b.gamma) || a.kappa.intersects(b.kappa)) continue;
      const int l = a.kappa.size() + b.kappa.size();
      if (l > n - 1) continue;
      int sign = parity_sign(static_cast<long>(a.kappa.size()) * b.gamma.size());
      sign *= perm_sign(a.gamma, b.gamma) * perm_sign(a.kappa, b.kappa);
      const IndexSet beta = a.gamma | b.gamma;
      const int m = beta.size();
      // *_1^{-1}(e_B ^ kappa) = (-1)^{C(m,2)} eps(B, B^c) e*_{B^c} ^ kappa
      const IndexSet gamma = beta.complement(n);
      sign *= parity_sign(choose2(m)) * perm_sign(beta, gamma);
      // back to storage order kappa ^ gamma
      sign *= parity_sign(static_cast<long>(gamma.size()) * l);
      const int grade = gamma.size();
      if (grade != degree - l) continue;
      parts[static_cast<std::size_t>(l)].add_scaled(a.kappa | b.kappa, gamma, a.coeff * b.coeff, Scalar(static_cast<long>(sign)));
    }
  }
  for (int l = 0; l < n; ++l) {
    if (!parts[static_cast<std::size_t>(l)].is_zero()) out.add_to_component(l, parts[static_cast<std::size_t>(l)]);
  }
  return out;
}

}  // namespace valconv
