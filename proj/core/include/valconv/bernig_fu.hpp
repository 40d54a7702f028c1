#pragma once

#include "valconv/forms.hpp"

namespace valconv {

// Translation-invariant convolution on R^n x S^{n-1} in the wedge-product
// conventions of Bernig and Fu: tau * zeta = *_1^{-1}(*_1 tau ^ *_1 zeta), with
//   *_1(gamma ^ kappa) = (-1)^{C(n-k,2)} (*gamma) ^ kappa,  gamma of degree k,
//   (g1 ^ k1) ^ (g2 ^ k2) = (-1)^{l1 k2} (g1 ^ g2) ^ (k1 ^ k2).
// Inputs use the library storage (sphere factor first, dual values) and are
// converted term by term; the result is returned in the same storage.
BigradedForm bernig_fu_convolve(const BigradedForm& tau, const BigradedForm& zeta);

}  // namespace valconv
