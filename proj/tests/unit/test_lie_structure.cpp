#include <gtest/gtest.h>

#include <map>

#include "oracle.hpp"
#include "valconv/error.hpp"
#include "valconv/lie.hpp"

namespace valconv {
namespace {

using testing::data_file;
using testing::oracle;
using testing::oracle_multivector;
using testing::oracle_set;

MultiVector e(int n, IndexSet s) { return MultiVector::blade(Space::Primal, n, s); }

LieAlgebra so21() {
  // so(3) with the sign of [e1,e2] flipped: the split real form, still a Lie algebra.
  return LieAlgebra("so21", 3, {{1, 2, {{3, Rational(-1)}}}, {2, 3, {{1, Rational(1)}}}, {1, 3, {{2, Rational(-1)}}}});
}

TEST(Bracket, Examples) {
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  EXPECT_EQ(so3.bracket(e(3, {1}), e(3, {2})), e(3, {3}));
  EXPECT_EQ(so3.bracket(e(3, {2}), e(3, {1})), e(3, {3}) * Scalar(-1L));
  const LieAlgebra h3 = builtin_lie_algebra("h3");
  EXPECT_TRUE(h3.bracket(e(3, {1}), e(3, {3})).is_zero());
  const LieAlgebra ab = builtin_lie_algebra("abelian4");
  EXPECT_TRUE(ab.is_abelian());
  EXPECT_TRUE(ab.bracket(e(4, {1}) + e(4, {3}), e(4, {2})).is_zero());
}

TEST(Bracket, StructureConstantsAntisymmetric) {
  for (const auto& name : builtin_lie_names()) {
    const LieAlgebra lie = builtin_lie_algebra(name);
    const int n = lie.dim();
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) EXPECT_EQ(lie.structure_constant(i, j, k), -lie.structure_constant(j, i, k));
  }
}

TEST(Unimodular, TracesMatchOracle) {
  for (const auto& [name, entry] : oracle()["lie"].items()) {
    const LieAlgebra lie = builtin_lie_algebra(name);
    const auto verdict = lie.is_unimodular();
    ASSERT_EQ(static_cast<int>(verdict.traces.size()), lie.dim());
    bool all_zero = true;
    for (int i = 0; i < lie.dim(); ++i) {
      const Rational expected = parse_rational(entry["traces"][static_cast<std::size_t>(i)].get<std::string>());
      EXPECT_EQ(verdict.traces[static_cast<std::size_t>(i)], expected) << name;
      all_zero = all_zero && expected == 0;
    }
    EXPECT_EQ(verdict.unimodular, all_zero) << name;
  }
  const auto aff = builtin_lie_algebra("aff1").is_unimodular();
  EXPECT_FALSE(aff.unimodular);
  EXPECT_EQ(aff.witness, 1);
  EXPECT_EQ(aff.trace, Rational(1));
  EXPECT_TRUE(builtin_lie_algebra("abelian2").is_unimodular().unimodular);
}

TEST(Boundary, Examples) {
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  EXPECT_EQ(so3.koszul_boundary(e(3, {1, 2})), e(3, {3}));
  EXPECT_TRUE(so3.koszul_boundary(e(3, {1, 2, 3})).is_zero());
  const LieAlgebra ab = builtin_lie_algebra("abelian3");
  EXPECT_TRUE(ab.koszul_boundary(e(3, {1, 2}) + e(3, {1, 2, 3})).is_zero());
}

TEST(Boundary, MatchesDefiningSumOracle) {
  for (const auto& [name, entry] : oracle()["lie"].items()) {
    const LieAlgebra lie = builtin_lie_algebra(name);
    const int n = entry["dim"].get<int>();
    for (const auto& row : entry["boundary"]) {
      const IndexSet blade = oracle_set(row[0]);
      EXPECT_EQ(lie.koszul_boundary(e(n, blade)), oracle_multivector(row[1], Space::Primal, n))
          << name << " e_" << blade.to_string();
    }
  }
}

TEST(Boundary, SquaresToZeroExhaustively) {
  std::vector<LieAlgebra> algebras;
  for (const auto& name : builtin_lie_names()) algebras.push_back(builtin_lie_algebra(name));
  algebras.push_back(so21());
  for (const auto& lie : algebras) {
    const int n = lie.dim();
    for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
      EXPECT_TRUE(lie.koszul_boundary(lie.koszul_boundary(e(n, IndexSet(bits)))).is_zero()) << lie.name();
    }
  }
}

TEST(Coboundary, Examples) {
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  EXPECT_EQ(so3.koszul_coboundary(MultiVector::blade(Space::Dual, 3, {3})), MultiVector::blade(Space::Dual, 3, {1, 2}));
  EXPECT_TRUE(so3.koszul_coboundary(MultiVector::blade(Space::Dual, 3, IndexSet::full(3))).is_zero());
}

TEST(Coboundary, IsTransposeOfBoundary) {
  for (const auto& name : builtin_lie_names()) {
    const LieAlgebra lie = builtin_lie_algebra(name);
    const int n = lie.dim();
    for (std::uint32_t v = 0; v < (1U << n); ++v) {
      const MultiVector cov = MultiVector::blade(Space::Dual, n, IndexSet(v));
      const MultiVector dv = lie.koszul_coboundary(cov);
      for (std::uint32_t y = 0; y < (1U << n); ++y) {
        EXPECT_EQ(pairing(dv, e(n, IndexSet(y))), pairing(cov, lie.koszul_boundary(e(n, IndexSet(y))))) << name;
      }
    }
  }
}

TEST(Coboundary, HodgeConjugationIdentity) {
  // d* v = (-1)^{n-g} * d *^{-1} v on grade-g dual blades of a unimodular algebra.
  std::vector<LieAlgebra> algebras;
  for (const auto& name : builtin_lie_names()) {
    LieAlgebra lie = builtin_lie_algebra(name);
    if (lie.is_unimodular().unimodular) algebras.push_back(std::move(lie));
  }
  algebras.push_back(so21());
  for (const auto& lie : algebras) {
    const int n = lie.dim();
    for (int g = 0; g <= n; ++g) {
      for (IndexSet s : subsets_of_size(n, g)) {
        const MultiVector v = MultiVector::blade(Space::Dual, n, s);
        const Scalar sign((n - g) % 2 ? -1L : 1L);
        EXPECT_EQ(lie.koszul_coboundary(v), hodge(lie.koszul_boundary(hodge_inverse(v))) * sign) << lie.name();
      }
    }
  }
  // The identity needs unimodularity: aff(1) breaks it on some blade.
  const LieAlgebra aff = builtin_lie_algebra("aff1");
  int broken = 0;
  for (std::uint32_t bits = 0; bits < 4; ++bits) {
    const MultiVector v = MultiVector::blade(Space::Dual, 2, IndexSet(bits));
    const Scalar sign((2 - IndexSet(bits).size()) % 2 ? -1L : 1L);
    if (!(aff.koszul_coboundary(v) == hodge(aff.koszul_boundary(hodge_inverse(v))) * sign)) ++broken;
  }
  EXPECT_GT(broken, 0);
}

TEST(Coadjoint, IsMinusTransposeOfAd) {
  for (const auto& name : builtin_lie_names()) {
    const LieAlgebra lie = builtin_lie_algebra(name);
    const int n = lie.dim();
    for (int i = 1; i <= n; ++i) {
      const RationalMatrix ad = lie.ad_matrix(i);
      const RationalMatrix& co = lie.coadjoint_field(i);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) EXPECT_EQ(co.at(r, c), -ad.at(c, r));
      if (lie.is_abelian()) { EXPECT_TRUE(co.is_zero()); }
    }
  }
}

TEST(Leibniz, Examples) {
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  EXPECT_TRUE(so3.leibniz_defect(e(3, {1, 2}), e(3, {2, 3})).is_zero());
  const LieAlgebra aff = builtin_lie_algebra("aff1");
  EXPECT_EQ(aff.leibniz_defect(e(2, {1}), e(2, {1, 2})), Scalar(1L));
}

TEST(Leibniz, AllComplementaryPairsMatchOracle) {
  for (const auto& [name, entry] : oracle()["lie"].items()) {
    const LieAlgebra lie = builtin_lie_algebra(name);
    const int n = lie.dim();
    std::map<std::pair<IndexSet, IndexSet>, Rational> expected;
    for (const auto& row : entry["leibniz_nonzero"])
      expected[{oracle_set(row[0]), oracle_set(row[1])}] = parse_rational(row[2].get<std::string>());
    for (int k = 0; k < n; ++k) {
      for (IndexSet xs : subsets_of_size(n, k + 1)) {
        for (IndexSet ys : subsets_of_size(n, n - k)) {
          auto it = expected.find({xs, ys});
          const Scalar want = it == expected.end() ? Scalar() : Scalar(it->second);
          EXPECT_EQ(lie.leibniz_defect(e(n, xs), e(n, ys)), want) << name;
        }
      }
    }
    EXPECT_EQ(expected.empty(), lie.is_unimodular().unimodular) << name;
  }
}

TEST(Jacobi, RejectsCorruptedTables) {
  const std::vector<BracketEntry> bad = {{1, 2, {{1, Rational(1)}, {3, Rational(1)}}},
                                         {2, 3, {{1, Rational(1)}}},
                                         {1, 3, {{2, Rational(-1)}}}};
  EXPECT_THROW(LieAlgebra("bad", 3, bad), InputError);
  const LieAlgebra kept = LieAlgebra::unchecked("bad", 3, bad);
  const auto violation = kept.jacobi_violation();
  ASSERT_TRUE(violation.has_value());
  EXPECT_EQ(violation->i, 1);
  EXPECT_EQ(violation->j, 2);
  EXPECT_EQ(violation->k, 3);
  EXPECT_FALSE(so21().jacobi_violation().has_value());
  EXPECT_THROW(lie_from_json(read_json_file(data_file("lie/so3_corrupted.json"))), InputError);
}

TEST(LieJson, NormalizesReversedPairsAndRejectsInconsistentSlots) {
  Json j = {{"name", "so3r"},
            {"dim", 3},
            {"brackets",
             {{{"i", 1}, {"j", 2}, {"coeffs", {{"3", "1"}}}},
              {{"i", 3}, {"j", 2}, {"coeffs", {{"1", "-1"}}}},
              {{"i", 3}, {"j", 1}, {"coeffs", {{"2", "1"}}}}}}};
  const LieAlgebra lie = lie_from_json(j);
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  for (int i = 1; i <= 3; ++i)
    for (int jj = 1; jj <= 3; ++jj)
      for (int k = 1; k <= 3; ++k) EXPECT_EQ(lie.structure_constant(i, jj, k), so3.structure_constant(i, jj, k));

  // c_12^3 flipped in one slot only: both orderings given with the same sign.
  Json slot = j;
  slot["brackets"].push_back({{"i", 2}, {"j", 1}, {"coeffs", {{"3", "1"}}}});
  EXPECT_THROW(lie_from_json(slot), InputError);

  Json diag = j;
  diag["brackets"].push_back({{"i", 2}, {"j", 2}, {"coeffs", {{"1", "1"}}}});
  EXPECT_THROW(lie_from_json(diag), InputError);

  Json big = {{"name", "x"}, {"dim", 9}, {"brackets", Json::array()}};
  EXPECT_THROW(lie_from_json(big), InputError);
  Json range = {{"name", "x"}, {"dim", 2}, {"brackets", {{{"i", 1}, {"j", 2}, {"coeffs", {{"3", "1"}}}}}}};
  EXPECT_THROW(lie_from_json(range), InputError);
}

TEST(LieJson, RoundTripAndDataFiles) {
  for (const auto& name : builtin_lie_names()) {
    const LieAlgebra lie = builtin_lie_algebra(name);
    const LieAlgebra back = lie_from_json(lie_to_json(lie));
    EXPECT_EQ(back.dim(), lie.dim());
    EXPECT_EQ(lie_to_json(back), lie_to_json(lie));
  }
  for (const char* file : {"so3", "heisenberg", "aff1", "abelian2"}) {
    const LieAlgebra from_file = load_lie(data_file(std::string("lie/") + file + ".json"));
    EXPECT_EQ(lie_to_json(from_file)["brackets"], lie_to_json(builtin_lie_algebra(file))["brackets"]) << file;
  }
  EXPECT_THROW(read_json_file(data_file("lie/malformed.json")), InputError);
  EXPECT_THROW(load_lie("no_such_algebra"), InputError);
}

}  // namespace
}  // namespace valconv
