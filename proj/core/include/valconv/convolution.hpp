#pragma once

#include "valconv/forms.hpp"
#include "valconv/lie.hpp"

namespace valconv {

// (-1)^{(n+q)(n+p+l+j) + k(l+j+1)}
int epsilon_sign(int n, int p, int q, int k, int l, int j);

// S_r(t (x) z) = sum_{|K| = r} iota_{e_K^#} t ^ iota_{e*_K} z, primal-valued inputs.
BasicForm hat_S(const LieAlgebra& lie, int r, const BasicForm& t, const BasicForm& z);

struct ConvolveOptions {
  // Reject a left factor that is not Ad-invariant.
  bool strict_invariance = false;
};

// Convolution of primal-valued (tilde) forms of declared degrees p and q.
BigradedForm convolve_tilde(const LieAlgebra& lie, const BigradedForm& t, const BigradedForm& z,
                            const ConvolveOptions& options = {});
// Convolution of dual-valued forms: untilde(convolve_tilde(tilde(tau), tilde(zeta))).
BigradedForm convolve_forms(const LieAlgebra& lie, const BigradedForm& tau, const BigradedForm& zeta,
                            const ConvolveOptions& options = {});

// vol (x) vol*: degree n, only tau_0, with tilde(tau)_0 = 1.
BigradedForm unit_form(int dim);

// L_{x#} t - ad_x t for x = e_i on a primal-valued form (zero iff invariant under e_i).
BigradedForm ad_invariance_defect(const LieAlgebra& lie, int i, const BigradedForm& t);
// Infinitesimal Ad-invariance; accepts dual or primal values.
bool is_ad_invariant(const LieAlgebra& lie, const BigradedForm& form);

// The constant tilde(tau)_0 of a dual n-form. Throws InvalidValuation if not constant.
Scalar mu_component(const BigradedForm& tau);

}  // namespace valconv
