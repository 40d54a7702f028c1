#include <gtest/gtest.h>

#include "valconv/bernig_fu.hpp"
#include "valconv/convolution.hpp"
#include "valconv/error.hpp"
#include "valconv/form_space.hpp"
#include "valconv/random.hpp"
#include "valconv/valuation.hpp"

namespace valconv {
namespace {

int epsilon_reference(int n, int p, int q, int k, int l, int j) {
  const long e = static_cast<long>(n + q) * (n + p + l + j) + static_cast<long>(k) * (l + j + 1);
  return e % 2 == 0 ? 1 : -1;
}

TEST(EpsilonSign, Grid) {
  for (int n = 1; n <= 5; ++n)
    for (int p = 0; p <= 2 * n; ++p)
      for (int q = 0; q <= 2 * n; ++q)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            for (int j = 0; j < n; ++j) ASSERT_EQ(epsilon_sign(n, p, q, k, l, j), epsilon_reference(n, p, q, k, l, j));
}

TEST(EpsilonSign, CompatibilityValues) {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (int l = 0; l <= n; ++l) EXPECT_EQ(epsilon_sign(n, n, n, n - k, n - l, 2 * n - k - l), 1);
      // Lowest-term case j = (n-k) + (n-l-1) = n-1, i.e. l = n-k.
      const int l = n - k;
      if (l >= 0 && n - l - 1 >= 0) { EXPECT_EQ(epsilon_sign(n, n, n - 1, n - k, n - l - 1, n - 1), (n + k) % 2 ? -1 : 1); }
    }
    for (int q = 0; q <= 2 * n; ++q)
      for (int l = 0; l < n; ++l) EXPECT_EQ(epsilon_sign(n, n, q, 0, l, l), 1);
  }
}

TEST(HatS, DegenerateCases) {
  Rng rng(3);
  RandomFormOptions opt;
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  const LieAlgebra ab = builtin_lie_algebra("abelian3");
  for (int t = 0; t < 30; ++t) {
    const BasicForm a = random_basic_form(rng, 3, ValueSpace::Primal, static_cast<int>(rng.uniform(0, 2)), 2, opt);
    const BasicForm b = random_basic_form(rng, 3, ValueSpace::Primal, static_cast<int>(rng.uniform(0, 2)), 1, opt);
    EXPECT_EQ(hat_S(so3, 0, a, b), wedge(a, b));
    EXPECT_TRUE(hat_S(ab, 1, a, b).is_zero());
    EXPECT_TRUE(hat_S(ab, 2, a, b).is_zero());
    const BasicForm a0 = random_basic_form(rng, 3, ValueSpace::Primal, 0, 2, opt);
    EXPECT_TRUE(hat_S(so3, 1, a0, b).is_zero());
  }
}

TEST(Convolve, UnitForm) {
  for (const char* name : {"abelian2", "so3", "h3"}) {
    const LieAlgebra lie = builtin_lie_algebra(name);
    const int n = lie.dim();
    const BigradedForm u = unit_form(n);
    EXPECT_EQ(tilde(u).component(0).coefficient(IndexSet{}, IndexSet{}), SpherePoly::constant(n, Scalar(1L)));
    EXPECT_EQ(convolve_forms(lie, u, u), u);
    EXPECT_TRUE(is_closed_n_form(lie, u));
    EXPECT_TRUE(is_ad_invariant(lie, u));
    EXPECT_EQ(mu_component(u), Scalar(1L));
    Rng rng(9);
    RandomFormOptions opt;
    for (int t = 0; t < 40; ++t) {
      const BigradedForm z = random_bigraded_form(rng, n, static_cast<int>(rng.uniform(0, 2 * n)), ValueSpace::Dual, opt);
      EXPECT_EQ(convolve_forms(lie, u, z), z) << name;
      EXPECT_EQ(convolve_forms(lie, z, u), z) << name;
    }
  }
}

TEST(Convolve, DegreeBookkeeping) {
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  const BigradedForm a(3, 1, ValueSpace::Dual), b(3, 1, ValueSpace::Dual);
  EXPECT_THROW(convolve_forms(so3, a, b), DegreeError);
  const BigradedForm big(3, 6, ValueSpace::Dual);
  EXPECT_THROW(convolve_forms(so3, big, BigradedForm(3, 4, ValueSpace::Dual)), DegreeError);
  EXPECT_EQ(convolve_forms(so3, BigradedForm(3, 2, ValueSpace::Dual), BigradedForm(3, 4, ValueSpace::Dual)).degree(), 3);
  EXPECT_THROW(convolve_forms(builtin_lie_algebra("abelian2"), a, b), InputError);
}

TEST(Convolve, StrictModeRejectsNonInvariantLeftFactor) {
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  BigradedForm tau(3, 3, ValueSpace::Dual);
  BasicForm c(3, ValueSpace::Dual, 0, 3);
  c.add(IndexSet{}, IndexSet::full(3), SpherePoly::from_monomial(3, mono::unit(0), Scalar(1L)));
  tau.set_component(0, c);
  EXPECT_FALSE(is_ad_invariant(so3, tau));
  ConvolveOptions strict;
  strict.strict_invariance = true;
  EXPECT_THROW(convolve_forms(so3, tau, unit_form(3), strict), InvalidValuation);
  EXPECT_NO_THROW(convolve_forms(so3, tau, unit_form(3)));
}

TEST(Invariance, Examples) {
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  EXPECT_TRUE(is_ad_invariant(so3, volume_primitive(3)));
  const LieAlgebra ab = builtin_lie_algebra("abelian3");
  Rng rng(13);
  RandomFormOptions opt;
  for (int t = 0; t < 20; ++t)
    EXPECT_TRUE(is_ad_invariant(ab, random_bigraded_form(rng, 3, static_cast<int>(rng.uniform(0, 6)), ValueSpace::Dual, opt)));
}

TEST(Invariance, PreservedByConvolution) {
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  FormSpaceConstraints cons;
  cons.ad_invariant = true;
  const auto basis = FormSpace(so3, 3, 2).solution_basis(cons);
  ASSERT_FALSE(basis.empty());
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    const BigradedForm a = random_combination(rng, basis, 3), b = random_combination(rng, basis, 3);
    EXPECT_TRUE(is_ad_invariant(so3, a));
    EXPECT_TRUE(is_ad_invariant(so3, convolve_forms(so3, a, b)));
  }
}

TEST(Convolve, AssociativitySmall) {
  for (const char* name : {"abelian2", "so3", "h3"}) {
    const LieAlgebra lie = builtin_lie_algebra(name);
    const int n = lie.dim();
    Rng rng(19);
    RandomFormOptions opt;
    for (int t = 0; t < 10; ++t) {
      const BigradedForm a = random_bigraded_form(rng, n, n + static_cast<int>(rng.uniform(0, 1)), ValueSpace::Dual, opt);
      const BigradedForm b = random_bigraded_form(rng, n, n + static_cast<int>(rng.uniform(-1, 1)), ValueSpace::Dual, opt);
      const BigradedForm c = random_bigraded_form(rng, n, n, ValueSpace::Dual, opt);
      EXPECT_EQ(convolve_forms(lie, convolve_forms(lie, a, b), c), convolve_forms(lie, a, convolve_forms(lie, b, c))) << name;
    }
  }
}

TEST(Convolve, LowestTermIsSignedWedge) {
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  Rng rng(23);
  RandomFormOptions opt;
  for (int t = 0; t < 30; ++t) {
    const int p = static_cast<int>(rng.uniform(2, 4)), q = static_cast<int>(rng.uniform(2, 4));
    const BigradedForm a = tilde(random_bigraded_form(rng, 3, p, ValueSpace::Dual, opt));
    const BigradedForm b = tilde(random_bigraded_form(rng, 3, q, ValueSpace::Dual, opt));
    const int k = a.highest_nonzero(), l = b.highest_nonzero();
    if (k < 0 || l < 0) continue;
    const BigradedForm out = convolve_tilde(so3, a, b);
    if (k + l > out.k_max()) continue;
    BasicForm expected = wedge(a.component(k), b.component(l));
    if (epsilon_sign(3, p, q, k, l, k + l) < 0) expected = -expected;
    EXPECT_EQ(out.component(k + l), expected);
  }
}

TEST(Convolve, BernigFuAgreementOnAbelian) {
  for (const char* name : {"abelian1", "abelian2", "abelian3"}) {
    const LieAlgebra lie = builtin_lie_algebra(name);
    const int n = lie.dim();
    Rng rng(29);
    RandomFormOptions opt;
    for (int t = 0; t < 20; ++t) {
      const int p = static_cast<int>(rng.uniform(0, 2 * n));
      const int q = static_cast<int>(rng.uniform(std::max(0, n - p), std::min(2 * n, 3 * n - p)));
      const BigradedForm a = random_bigraded_form(rng, n, p, ValueSpace::Dual, opt);
      const BigradedForm b = random_bigraded_form(rng, n, q, ValueSpace::Dual, opt);
      EXPECT_EQ(convolve_forms(lie, a, b), bernig_fu_convolve(a, b)) << name;
    }
  }
}

TEST(MuComponent, Examples) {
  EXPECT_TRUE(mu_component(BigradedForm(3, 3, ValueSpace::Dual)).is_zero());
  BigradedForm tau(3, 3, ValueSpace::Dual);
  BasicForm c(3, ValueSpace::Dual, 0, 3);
  c.add(IndexSet{}, IndexSet::full(3), SpherePoly::from_monomial(3, mono::unit(1), Scalar(1L)));
  tau.set_component(0, c);
  EXPECT_THROW(mu_component(tau), InvalidValuation);
  EXPECT_THROW(mu_component(BigradedForm(3, 2, ValueSpace::Dual)), DegreeError);
}

}  // namespace
}  // namespace valconv
