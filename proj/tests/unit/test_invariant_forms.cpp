#include <gtest/gtest.h>

#include "oracle.hpp"
#include "valconv/convolution.hpp"
#include "valconv/error.hpp"
#include "valconv/forms.hpp"
#include "valconv/random.hpp"

namespace valconv {
namespace {

const Scalar kPi = Scalar::pi_power(1);

SpherePoly xi(int n, int var) { return SpherePoly::from_monomial(n, mono::unit(var), Scalar(1L)); }
SpherePoly one(int n) { return SpherePoly::constant(n, Scalar(1L)); }

// xi_1 dxi_2 - xi_2 dxi_1 with scalar values.
BasicForm circle_form() {
  BasicForm w(2, ValueSpace::Scalar, 1, 0);
  w.add(IndexSet{2}, IndexSet{}, xi(2, 0));
  w.add(IndexSet{1}, IndexSet{}, -xi(2, 1));
  return w;
}

std::vector<LieAlgebra> corpus() {
  std::vector<LieAlgebra> out;
  for (const auto& name : builtin_lie_names()) out.push_back(builtin_lie_algebra(name));
  return out;
}

TEST(SphereIntegrate, AreaForms) {
  EXPECT_EQ(sphere_integrate(circle_form()), kPi * Scalar(2L));
  EXPECT_EQ(sphere_integrate(sphere_area_form(2)), kPi * Scalar(2L));
  EXPECT_EQ(sphere_integrate(sphere_area_form(3)), kPi * Scalar(4L));
  EXPECT_EQ(sphere_integrate(sphere_area_form(4)), Scalar::pi_power(2, 2));
  BasicForm odd(3, ValueSpace::Scalar, 2, 0);
  const BasicForm area = sphere_area_form(3);
  for (const auto& [key, poly] : area.terms()) odd.add(key.dxi, key.value, poly * xi(3, 1));
  EXPECT_TRUE(sphere_integrate(odd).is_zero());
  EXPECT_THROW(sphere_integrate(BasicForm(3, ValueSpace::Scalar, 1, 0)), InputError);
}

TEST(SphereIntegrate, AreaFormDensityOracle) {
  // The oracle's alpha = 0 moments are the sphere areas.
  for (const auto& row : testing::oracle()["sphere_moments"]) {
    const auto alpha = row[1].get<std::vector<int>>();
    if (std::any_of(alpha.begin(), alpha.end(), [](int a) { return a != 0; })) continue;
    const int n = row[0].get<int>();
    EXPECT_EQ(sphere_integrate(sphere_area_form(n)), testing::oracle_scalar(row[2])) << n;
  }
}

TEST(SphereIntegrate, Stokes) {
  Rng rng(21);
  RandomFormOptions opt;
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(rng.uniform(2, 4));
    const BasicForm w = random_basic_form(rng, n, ValueSpace::Scalar, n - 2, 0, opt);
    ASSERT_TRUE(is_basic(w));
    EXPECT_TRUE(sphere_integrate(d_sphere(w)).is_zero());
  }
}

TEST(DSphere, ConstantsAndSquare) {
  BasicForm c(3, ValueSpace::Scalar, 0, 0);
  c.add(IndexSet{}, IndexSet{}, SpherePoly::constant(3, Scalar(7L)));
  EXPECT_TRUE(d_sphere(c).is_zero());
  Rng rng(2);
  RandomFormOptions opt;
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(rng.uniform(2, 4));
    const int k = static_cast<int>(rng.uniform(0, n - 1));
    const BasicForm w = random_basic_form(rng, n, ValueSpace::Dual, k, static_cast<int>(rng.uniform(0, n)), opt);
    const BasicForm dw = d_sphere(w);
    EXPECT_TRUE(is_basic(dw));
    EXPECT_TRUE(d_sphere(dw).is_zero());
  }
}

TEST(ContractField, Examples) {
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  BasicForm zero_form(3, ValueSpace::Dual, 0, 1);
  zero_form.add(IndexSet{}, IndexSet{2}, xi(3, 0));
  EXPECT_TRUE(contract_field(so3.coadjoint_field(1), zero_form).is_zero());

  const LieAlgebra ab = builtin_lie_algebra("abelian3");
  Rng rng(8);
  RandomFormOptions opt;
  for (int t = 0; t < 30; ++t) {
    const BasicForm w = random_basic_form(rng, 3, ValueSpace::Dual, static_cast<int>(rng.uniform(1, 2)), 1, opt);
    for (int i = 1; i <= 3; ++i) {
      EXPECT_TRUE(contract_field(ab.coadjoint_field(i), w).is_zero());
      const BasicForm once = contract_field(so3.coadjoint_field(i), w);
      EXPECT_TRUE(contract_field(so3.coadjoint_field(i), once).is_zero());
    }
  }
  EXPECT_TRUE(contract_euler(circle_form()).is_zero());
}

TEST(Basic, ProjectionAndDetection) {
  BasicForm raw(2, ValueSpace::Scalar, 1, 0);
  raw.add(IndexSet{1}, IndexSet{}, one(2));
  EXPECT_FALSE(is_basic(raw));
  const BasicForm p = basic_projection(raw);
  EXPECT_TRUE(is_basic(p));
  EXPECT_EQ(basic_projection(p), p);
  EXPECT_TRUE(is_basic(circle_form()));
}

TEST(Tilde, BladeExampleAndUnit) {
  BigradedForm tau(3, 1, ValueSpace::Dual);
  BasicForm c(3, ValueSpace::Dual, 0, 1);
  c.add(IndexSet{}, IndexSet{1}, one(3));
  tau.set_component(0, c);
  const BigradedForm t = tilde(tau);
  EXPECT_EQ(t.space(), ValueSpace::Primal);
  EXPECT_EQ(t.component(0).coefficient(IndexSet{}, IndexSet{2, 3}), one(3));

  const BigradedForm u = tilde(unit_form(3));
  EXPECT_EQ(u.component(0).value_grade(), 0);
  EXPECT_EQ(u.component(0).coefficient(IndexSet{}, IndexSet{}), one(3));
}

TEST(Tilde, RoundTripOnRandomForms) {
  for (const auto& lie : corpus()) {
    Rng rng(31);
    RandomFormOptions opt;
    opt.pi_powers = true;
    const int n = lie.dim();
    for (int t = 0; t < 100; ++t) {
      const BigradedForm a = random_bigraded_form(rng, n, static_cast<int>(rng.uniform(0, 2 * n)), ValueSpace::Dual, opt);
      EXPECT_EQ(untilde(tilde(a)), a);
    }
  }
}

TEST(DTotal, SquaresToZero) {
  for (const auto& lie : corpus()) {
    Rng rng(41);
    RandomFormOptions opt;
    const int n = lie.dim();
    for (int t = 0; t < 100; ++t) {
      const BigradedForm a = random_bigraded_form(rng, n, static_cast<int>(rng.uniform(0, 2 * n - 2)), ValueSpace::Dual, opt);
      EXPECT_TRUE(d_total(lie, d_total(lie, a)).is_zero()) << lie.name();
    }
  }
}

TEST(DTotal, TildeIntertwining) {
  for (const auto& lie : corpus()) {
    if (!lie.is_unimodular().unimodular) continue;
    Rng rng(43);
    RandomFormOptions opt;
    const int n = lie.dim();
    for (int t = 0; t < 60; ++t) {
      const BigradedForm a = random_bigraded_form(rng, n, static_cast<int>(rng.uniform(0, 2 * n - 1)), ValueSpace::Dual, opt);
      EXPECT_EQ(tilde(d_total(lie, a)), tilde_d_total(lie, tilde(a))) << lie.name();
    }
  }
}

TEST(Closedness, ExamplesAndCrossCheck) {
  for (const auto& lie : corpus()) {
    if (!lie.is_unimodular().unimodular) continue;
    const int n = lie.dim();
    EXPECT_TRUE(is_closed_n_form(lie, unit_form(n)));
    Rng rng(47);
    RandomFormOptions opt;
    int closed = 0, open = 0;
    for (int t = 0; t < 100; ++t) {
      const BigradedForm exact = d_total(lie, random_bigraded_form(rng, n, n - 1, ValueSpace::Dual, opt));
      EXPECT_TRUE(is_closed_n_form(lie, exact));
      const BigradedForm perturbed = exact + random_bigraded_form(rng, n, n, ValueSpace::Dual, opt);
      const bool direct = d_total(lie, perturbed).is_zero();
      EXPECT_EQ(is_closed_n_form(lie, perturbed), direct) << lie.name();
      (direct ? closed : open)++;
    }
    // In dimension one every 1-form is closed.
    if (n >= 2) { EXPECT_GT(open, 0) << lie.name(); }
  }
}

TEST(Vertical, Examples) {
  EXPECT_TRUE(is_vertical(unit_form(3)));

  // n = 2: area form with value e*_1 is not vertical.
  BigradedForm bad(2, 2, ValueSpace::Dual);
  BasicForm comp(2, ValueSpace::Dual, 1, 1);
  const auto circle = circle_form();
  for (const auto& [key, poly] : circle.terms()) comp.add(key.dxi, IndexSet{1}, poly);
  bad.set_component(1, comp);
  const auto verdict = check_vertical(bad);
  EXPECT_FALSE(verdict.vertical);
  EXPECT_EQ(verdict.component, 1);
  EXPECT_FALSE(verdict.witness.is_zero());

  // Values xi ^ w are vertical.
  BigradedForm good(2, 2, ValueSpace::Dual);
  BasicForm g(2, ValueSpace::Dual, 1, 1);
  for (const auto& [key, poly] : circle.terms()) {
    g.add(key.dxi, IndexSet{1}, poly * xi(2, 0));
    g.add(key.dxi, IndexSet{2}, poly * xi(2, 1));
  }
  good.set_component(1, g);
  EXPECT_TRUE(is_vertical(good));
}

TEST(Filtration, WedgeDegreesAdd) {
  Rng rng(53);
  RandomFormOptions opt;
  for (int t = 0; t < 50; ++t) {
    const int n = static_cast<int>(rng.uniform(2, 4));
    const int a = static_cast<int>(rng.uniform(0, n - 1)), b = static_cast<int>(rng.uniform(0, n - 1));
    const BasicForm x = random_basic_form(rng, n, ValueSpace::Primal, a, static_cast<int>(rng.uniform(0, 1)), opt);
    const BasicForm y = random_basic_form(rng, n, ValueSpace::Primal, b, static_cast<int>(rng.uniform(0, 1)), opt);
    const BasicForm w = wedge(x, y);
    if (a + b > n - 1) {
      EXPECT_TRUE(w.is_zero());
    } else {
      EXPECT_EQ(w.sphere_degree(), a + b);
    }
  }
}

TEST(FormJson, RoundTrip) {
  Rng rng(61);
  RandomFormOptions opt;
  opt.pi_powers = true;
  for (int t = 0; t < 60; ++t) {
    const int n = static_cast<int>(rng.uniform(1, 4));
    const BigradedForm a = random_bigraded_form(rng, n, static_cast<int>(rng.uniform(0, 2 * n)), ValueSpace::Dual, opt);
    EXPECT_EQ(form_from_json(form_to_json(a)), a);
  }
  EXPECT_EQ(form_from_json(form_to_json(unit_form(3))), unit_form(3));
}

TEST(FormJson, RejectsInconsistentTerms) {
  auto make = [](Json term) {
    return Json{{"degree", 2}, {"dim", 2}, {"values", "dual"}, {"terms", Json::array({std::move(term)})}};
  };
  Json weight = {{"k", 1}, {"dxi", {1}}, {"value", {1}}, {"num", {{"(1,0;0)", "1"}}}, {"rpow", -1}};
  EXPECT_THROW(form_from_json(make(weight)), InputError);
  Json not_basic = {{"k", 1}, {"dxi", {1}}, {"value", {1}}, {"num", {{"(0,0;0)", "1"}}}, {"rpow", -1}};
  EXPECT_THROW(form_from_json(make(not_basic)), InputError);
  Json grade = {{"k", 1}, {"dxi", {1}}, {"value", {1, 2}}, {"num", {{"(0,1;0)", "1"}}}, {"rpow", -2}};
  EXPECT_THROW(form_from_json(make(grade)), InputError);
  Json dxi = {{"k", 1}, {"dxi", {1, 2}}, {"value", {1}}, {"num", {{"(0,0;0)", "1"}}}, {"rpow", -1}};
  EXPECT_THROW(form_from_json(make(dxi)), InputError);
  EXPECT_THROW(form_from_json(Json{{"degree", 1}, {"values", "sideways"}, {"terms", Json::array()}}, 2), InputError);
}

}  // namespace
}  // namespace valconv
