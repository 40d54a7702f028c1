#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valconv/scalar_matrix.hpp"

namespace valconv {

using AlgebraElement = std::vector<Scalar>;

// Finite-dimensional algebra given by structure constants m_{ij}^k.
class FinDimAlgebra {
 public:
  FinDimAlgebra(std::string name, std::vector<std::string> labels);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;

  void set_product(int i, int j, AlgebraElement value);
  // Sets both b_i b_j and b_j b_i.
  void set_symmetric(int i, int j, AlgebraElement value);
  const AlgebraElement& product(int i, int j) const;

  AlgebraElement basis_element(int i) const;
  AlgebraElement zero() const { return AlgebraElement(static_cast<std::size_t>(dim())); }
  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement power(const AlgebraElement& a, unsigned exponent) const;  // exponent >= 1

  bool is_commutative() const;
  // First failing basis triple (i, j, k) of (b_i b_j) b_k = b_i (b_j b_k), if any.
  std::optional<std::array<int, 3>> associativity_failure() const;
  bool is_associative() const { return !associativity_failure().has_value(); }
  // Two-sided unit, found by solving e b_j = b_j = b_j e.
  std::optional<AlgebraElement> unit() const;

  // Matrix of left multiplication by a: column j holds a * b_j.
  ScalarMatrix left_multiplication(const AlgebraElement& a) const;
  std::string element_to_string(const AlgebraElement& a) const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<AlgebraElement> table_;  // index i * dim + j
};

AlgebraElement element(std::initializer_list<Scalar> coeffs);
bool is_zero(const AlgebraElement& a);

// Crofton basis nu_0..nu_3 of the bi-invariant valuations on S^3.
FinDimAlgebra nu_table();
// Intrinsic-volume basis mu_0..mu_3.
FinDimAlgebra mu_table();
// Row i expresses mu_i in the nu basis.
ScalarMatrix basis_change();
// Structure constants in the basis f_i = sum_j rows[i][j] b_j.
FinDimAlgebra change_basis(const FinDimAlgebra& alg, const ScalarMatrix& rows, std::string name,
                           std::vector<std::string> labels);
// C[t]/(t^n) with basis 1, t, ..., t^{n-1}.
FinDimAlgebra truncated_polynomial_algebra(int n);
// The one-dimensional field.
FinDimAlgebra field_algebra();

// Euler-Verdier parity (+1 or -1) of each basis element.
struct GradedInvolution {
  std::vector<int> eigenvalue;
};
GradedInvolution nu_grading();  // (+, -, +, -)
GradedInvolution mu_grading();  // (+, -, +, -)
// Every product b_i b_j lies in the eigenspace (-1)^{dimG} e_i e_j.
bool ev_check(const FinDimAlgebra& alg, const GradedInvolution& grading, int dim_group);

// The linear form with mu(b_i) = values[i] is multiplicative.
bool character_check(const FinDimAlgebra& alg, const std::vector<Scalar>& values);

struct PairingReport {
  ScalarMatrix matrix;  // M_ij = eval(b_i b_j)
  Scalar det;
  bool nonsingular = false;
  bool symmetric = false;
};
PairingReport pairing_matrix(const FinDimAlgebra& alg, const std::vector<Scalar>& eval_at_e);

struct QuotientReport {
  std::vector<AlgebraElement> powers;  // g^0 = unit, g^1, ..., g^d
  bool independent = false;            // g^0 .. g^{d-1}
  bool relation_holds = false;         // sum r_i g^i = 0
  bool ok() const { return independent && relation_holds; }
};
// relation[i] is the coefficient of t^i; the algebra must be unital and commutative.
QuotientReport quotient_iso_check(const FinDimAlgebra& alg, const AlgebraElement& generator,
                                  const std::vector<Scalar>& relation);

// Dimension of the ideal of nilpotent elements (commutative algebras), via the
// radical of the trace form (x, y) -> tr(L_{xy}), valid in characteristic zero.
int nilradical_dim(const FinDimAlgebra& alg);

// --- template method ---

Scalar unit_ball_volume(int k);       // omega_k
Scalar chi_sphere(int i);             // 1 + (-1)^i
Scalar mu_ball(int n, int i);         // C(n,i) omega_n / omega_{n-i}
Scalar mu_sphere(int i, int j);       // mu_i of a great j-sphere

// Values of named valuations on named template bodies.
class TemplateData {
 public:
  void set(const std::string& valuation, const std::string& body, const Scalar& value);
  bool has(const std::string& valuation, const std::string& body) const;
  const Scalar& get(const std::string& valuation, const std::string& body) const;
  const std::map<std::pair<std::string, std::string>, Scalar>& entries() const { return values_; }

 private:
  std::map<std::pair<std::string, std::string>, Scalar> values_;
};

// Bodies point, S1, S2, S3 in S^3; valuations chi, mu0..mu3, nu0..nu3 and the product
// evaluations nu1*nu1 used by the linear stage of the nu table.
TemplateData s3_template_data();

// Coefficients x with target = sum x_a ansatz_a, fitted on the given bodies.
std::vector<Scalar> template_solve(const TemplateData& data, const std::string& target,
                                   const std::vector<std::string>& ansatz, const std::vector<std::string>& bodies);

}  // namespace valconv
