#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valconv/exterior.hpp"

namespace valconv {

// Sparse rational vector over blades.
using BladeVector = std::vector<std::pair<IndexSet, Rational>>;

// Dense n x n rational matrix, row-major.
struct RationalMatrix {
  int n = 0;
  std::vector<Rational> entries;

  RationalMatrix() = default;
  explicit RationalMatrix(int dim) : n(dim), entries(static_cast<std::size_t>(dim * dim)) {}
  Rational& at(int row, int col) { return entries[static_cast<std::size_t>(row * n + col)]; }
  const Rational& at(int row, int col) const { return entries[static_cast<std::size_t>(row * n + col)]; }
  bool is_zero() const;
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
};

// One structure-constant row: [e_i, e_j] = sum_k coeffs[k] e_k, with i < j (1-based).
struct BracketEntry {
  int i = 0;
  int j = 0;
  std::vector<std::pair<int, Rational>> coeffs;
};

struct JacobiViolation {
  int i, j, k;  // the failing triple (1-based)
  MultiVector value;
};

struct UnimodularVerdict {
  bool unimodular = true;
  int witness = 0;       // first basis index with non-zero trace (1-based), 0 if none
  Rational trace;        // tr(ad_{e_witness})
  std::vector<Rational> traces;  // tr(ad_{e_i}) for i = 1..n
};

class LieAlgebra {
 public:
  // Validates index ranges and the Jacobi identity; throws InputError on failure.
  LieAlgebra(std::string name, int dim, const std::vector<BracketEntry>& brackets);
  // Same, but keeps a Jacobi-violating table (for diagnostics only).
  static LieAlgebra unchecked(std::string name, int dim, const std::vector<BracketEntry>& brackets);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  bool is_abelian() const { return abelian_; }

  // c_{ij}^k with 1-based indices, antisymmetric in (i,j).
  const Rational& structure_constant(int i, int j, int k) const;
  const std::vector<BracketEntry>& brackets() const { return brackets_; }

  MultiVector bracket(const MultiVector& x, const MultiVector& y) const;
  std::optional<JacobiViolation> jacobi_violation() const;

  // Matrix of ad_{e_i}: column j holds the coordinates of [e_i, e_j].
  RationalMatrix ad_matrix(int i) const;
  UnimodularVerdict is_unimodular() const;

  // Matrix of ad*_{e_i} = -(ad_{e_i})^T acting on coordinates of g*.
  const RationalMatrix& coadjoint_field(int i) const;

  // Blade-level operators, precomputed.
  const BladeVector& boundary_of(IndexSet blade) const { return boundary_[blade.bits()]; }
  const BladeVector& coboundary_of(IndexSet blade) const { return coboundary_[blade.bits()]; }
  // ad_{e_i} extended as a derivation of the primal exterior algebra.
  const BladeVector& ad_on_blade(int i, IndexSet blade) const;

  MultiVector koszul_boundary(const MultiVector& x) const;
  MultiVector koszul_coboundary(const MultiVector& v) const;

  // dX ^ Y - (-1)^{k+1} X ^ dY for X of grade k+1 and Y of grade n-k.
  Scalar leibniz_defect(const MultiVector& x, const MultiVector& y) const;

 private:
  LieAlgebra() = default;
  void build(bool check_jacobi);

  std::string name_;
  int dim_ = 0;
  bool abelian_ = true;
  std::vector<BracketEntry> brackets_;
  std::vector<Rational> c_;  // c_[(i*n + j)*n + k], 0-based
  std::vector<RationalMatrix> coadjoint_;
  std::vector<BladeVector> boundary_;
  std::vector<BladeVector> coboundary_;
  std::vector<std::vector<BladeVector>> ad_blade_;
};

// Built-in corpus: abelian1..abelian4, so3, heisenberg (alias h3), aff1.
LieAlgebra builtin_lie_algebra(const std::string& name);
std::vector<std::string> builtin_lie_names();

}  // namespace valconv
