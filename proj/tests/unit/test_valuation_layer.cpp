#include <gtest/gtest.h>

#include "constructions.hpp"
#include "valconv/error.hpp"
#include "valconv/io.hpp"

namespace valconv {
namespace {

using testing::exact_input;
using testing::random_valuation;
using testing::valuation_bases;

class ValuationLaws : public ::testing::TestWithParam<std::string> {
 protected:
  void SetUp() override {
    lie_ = std::make_unique<LieAlgebra>(builtin_lie_algebra(GetParam()));
    bases_ = valuation_bases(*lie_);
  }
  std::unique_ptr<LieAlgebra> lie_;
  testing::ValuationBases bases_;
};

TEST_P(ValuationLaws, BuiltinsAreValid) {
  const LieAlgebra& lie = *lie_;
  EXPECT_TRUE(validate(lie, haar_valuation(lie)).ok());
  EXPECT_TRUE(validate(lie, euler_characteristic(lie)).ok());
  EXPECT_EQ(mu_of(haar_valuation(lie)), Scalar(1L));
  EXPECT_TRUE(mu_of(euler_characteristic(lie)).is_zero());
  EXPECT_EQ(euler_characteristic(lie).c, Scalar(1L));
  EXPECT_TRUE(euler_characteristic(lie).tau.is_zero());
}

TEST_P(ValuationLaws, UnitAndEulerLaws) {
  const LieAlgebra& lie = *lie_;
  Rng rng(101);
  const auto haar = haar_valuation(lie), chi = euler_characteristic(lie);
  for (int t = 0; t < 6; ++t) {
    const auto phi = random_valuation(lie, rng, bases_.bi);
    const auto psi = random_valuation(lie, rng, bases_.left);
    ASSERT_TRUE(validate(lie, psi).ok());
    EXPECT_EQ(convolve_valuations(lie, haar, psi), psi);
    EXPECT_EQ(convolve_valuations(lie, phi, haar), phi);
    EXPECT_EQ(convolve_valuations(lie, phi, chi), chi * mu_of(phi));
    EXPECT_EQ(convolve_valuations(lie, chi, psi), chi * mu_of(psi));
  }
  EXPECT_EQ(convolve_valuations(lie, chi, chi), chi * Scalar(0L));
}

TEST_P(ValuationLaws, CharacterGaugeAndFiltration) {
  const LieAlgebra& lie = *lie_;
  Rng rng(103);
  ValuationConvolveOptions gauge;
  gauge.primitive.gauge = PivotOrder::Reversed;
  gauge.primitive.free_value = 1;
  for (int t = 0; t < 6; ++t) {
    const auto phi = random_valuation(lie, rng, bases_.bi);
    const auto psi = random_valuation(lie, rng, bases_.left);
    const auto r = convolve_valuations(lie, phi, psi);
    EXPECT_EQ(mu_of(r), mu_of(phi) * mu_of(psi));
    EXPECT_TRUE(validate(lie, r).ok());
    EXPECT_EQ(convolve_valuations(lie, phi, psi, gauge), r);
    const int bound = phi.tau.highest_nonzero() + psi.tau.highest_nonzero();
    EXPECT_LE(r.tau.highest_nonzero(), std::max(bound, -1));
  }
}

TEST_P(ValuationLaws, AssociativeOnInvariantTriples) {
  const LieAlgebra& lie = *lie_;
  Rng rng(107);
  for (int t = 0; t < 3; ++t) {
    const auto a = random_valuation(lie, rng, bases_.bi);
    const auto b = random_valuation(lie, rng, bases_.bi);
    const auto c = random_valuation(lie, rng, bases_.left);
    EXPECT_EQ(convolve_valuations(lie, convolve_valuations(lie, a, b), c),
              convolve_valuations(lie, a, convolve_valuations(lie, b, c)));
  }
}

TEST_P(ValuationLaws, PrimitiveRoundTrip) {
  const LieAlgebra& lie = *lie_;
  const int n = lie.dim();
  Rng rng(109);
  RandomFormOptions opt;
  PrimitiveOptions other;
  other.gauge = PivotOrder::Reversed;
  other.free_value = 1;
  for (int t = 0; t < 5; ++t) {
    const auto in = exact_input(lie, rng, opt, rng.uniform(-2, 2));
    const BigradedForm rest = in.tau - unit_form(n) * mu_component(in.tau);
    for (const auto& options : {PrimitiveOptions{}, other}) {
      const PrimitivePair out = find_primitive(lie, in.tau, options);
      EXPECT_EQ(d_total(lie, out.omega), rest);
      EXPECT_TRUE(top_integral(out.omega).is_zero());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, ValuationLaws, ::testing::Values("abelian2", "abelian3", "so3", "h3"));

TEST(FindPrimitive, Examples) {
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  EXPECT_TRUE(find_primitive(so3, unit_form(3) * Scalar(5L)).omega.is_zero());

  // A closed form whose top component has non-zero integral has no primitive.
  const LieAlgebra ab = builtin_lie_algebra("abelian3");
  BigradedForm flux(3, 3, ValueSpace::Dual);
  BasicForm top(3, ValueSpace::Dual, 2, 1);
  const auto vp3 = volume_primitive(3).component(2);
  for (const auto& [key, poly] : vp3.terms()) top.add(key.dxi, IndexSet{1}, poly);
  flux.set_component(2, top);
  ASSERT_TRUE(d_total(ab, flux).is_zero());
  EXPECT_THROW(find_primitive(ab, flux), InvalidValuation);
}

TEST(Validate, RejectsNonVerticalForms) {
  const LieAlgebra ab = builtin_lie_algebra("abelian2");
  BigradedForm tau(2, 2, ValueSpace::Dual);
  BasicForm comp(2, ValueSpace::Dual, 1, 1);
  const auto vp2 = volume_primitive(2).component(1);
  for (const auto& [key, poly] : vp2.terms()) comp.add(key.dxi, IndexSet{1}, poly);
  tau.set_component(1, comp);
  const ValidationReport report = validate(ab, InvariantValuation{Scalar(0L), tau, "abelian2"});
  EXPECT_FALSE(report.ok());
  EXPECT_FALSE(report.vertical);
  EXPECT_FALSE(report.vertical_witness.witness.is_zero());
}

TEST(Convolve, RejectsNonUnimodularAndMismatchedInput) {
  const LieAlgebra aff = builtin_lie_algebra("aff1");
  EXPECT_THROW(convolve_valuations(aff, haar_valuation(builtin_lie_algebra("abelian2")), euler_characteristic(builtin_lie_algebra("abelian2"))),
               InputError);
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  EXPECT_THROW(convolve_valuations(so3, haar_valuation(so3), haar_valuation(builtin_lie_algebra("abelian2"))), InputError);
}

TEST(ValuationJson, RoundTripAndShapeChecks) {
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  const auto bases = valuation_bases(so3);
  Rng rng(113);
  for (int t = 0; t < 5; ++t) {
    const auto v = random_valuation(so3, rng, bases.left);
    EXPECT_EQ(valuation_from_json(valuation_to_json(v), 3), v);
  }
  Json bad = valuation_to_json(haar_valuation(so3));
  bad["tau"] = form_to_json(BigradedForm(3, 2, ValueSpace::Dual));
  EXPECT_THROW(valuation_from_json(bad, 3), InputError);
}

}  // namespace
}  // namespace valconv
