#include "valconv/random.hpp"

#include <algorithm>

#include "valconv/error.hpp"

namespace valconv {

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw InputError("empty random range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection sampling keeps the result independent of the standard library's distributions.
  const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} - (~std::uint64_t{0} % span));
  std::uint64_t x = engine_();
  while (limit != 0 && x >= limit) x = engine_();
  return lo + static_cast<long>(span == 0 ? x : x % span);
}

Rng Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return Rng((static_cast<std::uint64_t>(words[0]) << 32) | words[1]);
}

Scalar random_scalar(Rng& rng, const RandomFormOptions& opt) {
  long c = 0;
  while (c == 0) c = rng.uniform(-opt.coeff_bound, opt.coeff_bound);
  if (opt.pi_powers) return Scalar::pi_power(static_cast<int>(rng.uniform(-1, 1)), Rational(c));
  return Scalar(c);
}

SpherePoly random_sphere_poly(Rng& rng, int dim, int max_degree, const RandomFormOptions& opt) {
  SpherePoly out(dim);
  for (Monomial m : normal_monomials(dim, std::max(0, max_degree))) {
    if (rng.chance(opt.density)) out.add_monomial(m, random_scalar(rng, opt));
  }
  return out;
}

BasicForm random_basic_form(Rng& rng, int dim, ValueSpace space, int sphere_degree, int value_grade,
                            const RandomFormOptions& opt) {
  BasicForm raw(dim, space, sphere_degree, value_grade);
  std::vector<IndexSet> values =
      space == ValueSpace::Scalar ? std::vector<IndexSet>{IndexSet()} : subsets_of_size(dim, value_grade);
  for (IndexSet dxi : subsets_of_size(dim, sphere_degree)) {
    for (IndexSet value : values) {
      SpherePoly c = random_sphere_poly(rng, dim, opt.max_degree, opt);
      if (!c.is_zero()) raw.add(dxi, value, c);
    }
  }
  return basic_projection(raw);
}

BigradedForm random_bigraded_form(Rng& rng, int dim, int degree, ValueSpace space, const RandomFormOptions& opt) {
  BigradedForm out(dim, degree, space);
  for (int k = out.k_min(); k <= out.k_max(); ++k) {
    out.set_component(k, random_basic_form(rng, dim, space, k, out.value_grade(k), opt));
  }
  return out;
}

MultiVector random_multivector(Rng& rng, Space space, int dim, int grade, long coeff_bound) {
  MultiVector out(space, dim);
  for (IndexSet blade : subsets_of_size(dim, grade)) {
    long c = rng.uniform(-coeff_bound, coeff_bound);
    if (c != 0) out.add(blade, Scalar(c));
  }
  return out;
}

}  // namespace valconv
