#include <benchmark/benchmark.h>

#include "valconv/bernig_fu.hpp"
#include "valconv/convolution.hpp"
#include "valconv/form_space.hpp"
#include "valconv/random.hpp"
#include "valconv/s3.hpp"
#include "valconv/valuation.hpp"

namespace {

using namespace valconv;

const char* const kAlgebras[] = {"abelian2", "abelian3", "abelian4", "h3", "so3"};

BigradedForm sample(Rng& rng, int n, int degree) {
  RandomFormOptions opt;
  return random_bigraded_form(rng, n, degree, ValueSpace::Dual, opt);
}

void BM_ConvolveForms(benchmark::State& state) {
  const LieAlgebra lie = builtin_lie_algebra(kAlgebras[state.range(0)]);
  const int n = lie.dim();
  Rng rng(1);
  const BigradedForm a = sample(rng, n, n), b = sample(rng, n, n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(convolve_forms(lie, a, b));
  state.SetLabel(lie.name());
}
BENCHMARK(BM_ConvolveForms)->DenseRange(0, 4);

void BM_BernigFu(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  const BigradedForm a = sample(rng, n, n), b = sample(rng, n, n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(bernig_fu_convolve(a, b));
}
BENCHMARK(BM_BernigFu)->DenseRange(2, 4);

void BM_DTotal(benchmark::State& state) {
  const LieAlgebra lie = builtin_lie_algebra(kAlgebras[state.range(0)]);
  const int n = lie.dim();
  Rng rng(3);
  const BigradedForm a = sample(rng, n, n - 1);
  for (auto _ : state) benchmark::DoNotOptimize(d_total(lie, a));
  state.SetLabel(lie.name());
}
BENCHMARK(BM_DTotal)->DenseRange(0, 4);

void BM_FindPrimitive(benchmark::State& state) {
  const LieAlgebra lie = builtin_lie_algebra(kAlgebras[state.range(0)]);
  const int n = lie.dim();
  Rng rng(4);
  BigradedForm w = sample(rng, n, n - 1);
  w.set_component(n - 1, BasicForm(n, ValueSpace::Dual, n - 1, w.value_grade(n - 1)));
  const BigradedForm tau = d_total(lie, w) + unit_form(n);
  for (auto _ : state) benchmark::DoNotOptimize(find_primitive(lie, tau));
  state.SetLabel(lie.name());
}
BENCHMARK(BM_FindPrimitive)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_ConvolveValuations(benchmark::State& state) {
  const LieAlgebra lie = builtin_lie_algebra("so3");
  FormSpaceConstraints bi;
  bi.ad_invariant = true;
  const FormSpace space(lie, 3, 2);
  Rng rng(5);
  const InvariantValuation phi{Scalar(1L), random_combination(rng, space.solution_basis(bi), 3), "so3"};
  const InvariantValuation psi{Scalar(2L), random_combination(rng, space.solution_basis({}), 3), "so3"};
  for (auto _ : state) benchmark::DoNotOptimize(convolve_valuations(lie, phi, psi));
}
BENCHMARK(BM_ConvolveValuations)->Unit(benchmark::kMillisecond);

void BM_S3Nilradical(benchmark::State& state) {
  const FinDimAlgebra nu = nu_table();
  for (auto _ : state) benchmark::DoNotOptimize(nilradical_dim(nu));
}
BENCHMARK(BM_S3Nilradical);

void BM_S3Transport(benchmark::State& state) {
  const FinDimAlgebra nu = nu_table();
  const ScalarMatrix b = basis_change();
  for (auto _ : state) benchmark::DoNotOptimize(change_basis(nu, b, "mu", {"mu0", "mu1", "mu2", "mu3"}));
}
BENCHMARK(BM_S3Transport);

}  // namespace

BENCHMARK_MAIN();
