#pragma once

#include <vector>

#include "valconv/scalar.hpp"

namespace valconv {

// Dense matrices over the Laurent ring Q[pi, 1/pi]. Elimination is fraction-free;
// divisions are exact and throw SolverError when the quotient leaves the ring.
using ScalarMatrix = std::vector<std::vector<Scalar>>;

ScalarMatrix identity_matrix(int n);
ScalarMatrix transpose(const ScalarMatrix& m);
ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b);

Scalar determinant(ScalarMatrix m);  // Bareiss
int matrix_rank(ScalarMatrix m);     // rank over the fraction field
// Unique solution of A x = b (A may have more rows than columns).
std::vector<Scalar> solve_exact(const ScalarMatrix& a, const std::vector<Scalar>& b);
ScalarMatrix inverse(const ScalarMatrix& m);

}  // namespace valconv
