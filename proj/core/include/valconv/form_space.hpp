#pragma once

#include <vector>

#include "valconv/forms.hpp"
#include "valconv/lie.hpp"
#include "valconv/linsolve.hpp"
#include "valconv/random.hpp"

namespace valconv {

struct FormSpaceConstraints {
  bool basic = true;
  bool vertical = true;
  bool closed = true;
  bool zero_top_integral = true;
  bool ad_invariant = false;
};

// Finite-dimensional space of dual-valued forms of a fixed degree whose
// coefficients are sphere polynomials of degree <= max_degree. Linear
// conditions are imposed exactly and the solution space is returned as a basis.
class FormSpace {
 public:
  struct Coordinate {
    int k;
    IndexSet dxi;
    IndexSet value;
    Monomial monomial;
  };

  FormSpace(const LieAlgebra& lie, int degree, int max_degree);

  int size() const { return static_cast<int>(coords_.size()); }
  const std::vector<Coordinate>& coordinates() const { return coords_; }
  BigradedForm element(const std::vector<Rational>& values) const;
  std::vector<BigradedForm> solution_basis(const FormSpaceConstraints& constraints) const;

 private:
  BigradedForm unit_vector(std::size_t index) const;

  const LieAlgebra* lie_;
  int degree_;
  int max_degree_;
  std::vector<Coordinate> coords_;
};

// Random integer combination of basis forms; every element gets a non-zero weight with
// probability density percent.
BigradedForm random_combination(Rng& rng, const std::vector<BigradedForm>& basis, long bound, unsigned density = 70);

}  // namespace valconv
