#pragma once

#include <cstdint>
#include <random>

#include "valconv/forms.hpp"

namespace valconv {

// Seeded generator with platform-independent integer sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform integer in [lo, hi].
  long uniform(long lo, long hi);
  bool chance(unsigned percent) { return uniform(0, 99) < static_cast<long>(percent); }
  // Independent stream derived from this seed and a label.
  static Rng derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

struct RandomFormOptions {
  int max_degree = 2;        // coefficient degree of the raw terms
  unsigned density = 35;     // percent of candidate terms kept
  long coeff_bound = 3;      // integer coefficients in [-bound, bound]
  bool pi_powers = false;    // allow coefficients c * pi^e with e in {-1, 0, 1}
};

Scalar random_scalar(Rng& rng, const RandomFormOptions& opt);
SpherePoly random_sphere_poly(Rng& rng, int dim, int max_degree, const RandomFormOptions& opt);
// Sparse random terms with coefficient degree <= opt.max_degree, projected onto basic forms.
BasicForm random_basic_form(Rng& rng, int dim, ValueSpace space, int sphere_degree, int value_grade,
                            const RandomFormOptions& opt);
BigradedForm random_bigraded_form(Rng& rng, int dim, int degree, ValueSpace space, const RandomFormOptions& opt);
MultiVector random_multivector(Rng& rng, Space space, int dim, int grade, long coeff_bound = 3);

}  // namespace valconv
