#pragma once

#include <utility>
#include <vector>

#include "valconv/scalar.hpp"

namespace valconv {

enum class PivotOrder { Natural, Reversed };

// Sparse linear system with rational coefficients and Scalar right-hand sides,
// solved by fraction-free elimination on integer-scaled rows (row content is
// divided out after every update). Several right-hand sides share one matrix.
class ExactLinearSystem {
 public:
  ExactLinearSystem(int num_unknowns, int num_rhs);

  int num_unknowns() const { return num_unknowns_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  // rhs may be empty (all zero) or hold num_rhs entries.
  void add_row(const std::vector<std::pair<int, Rational>>& coeffs, const std::vector<Scalar>& rhs = {});

  struct Solution {
    bool consistent = true;
    std::vector<int> inconsistent_rhs;        // indices of right-hand sides without a solution
    std::vector<std::vector<Scalar>> values;  // [rhs][unknown]
    int rank = 0;
  };
  // Particular solution with every free unknown set to free_value.
  Solution solve(PivotOrder order = PivotOrder::Natural, const Rational& free_value = 0) const;

  // Basis of the solution space of the homogeneous system.
  std::vector<std::vector<Rational>> nullspace(PivotOrder order = PivotOrder::Natural) const;

 private:
  struct Row {
    std::vector<std::pair<int, mpz_class>> entries;  // sorted by column
    std::vector<Scalar> rhs;
  };
  struct Echelon {
    std::vector<Row> pivot_rows;   // pivot_rows[i] has pivot column pivot_cols[i]
    std::vector<int> pivot_cols;
    std::vector<Row> leftover;     // rows reduced to zero coefficients
    std::vector<bool> is_pivot;
  };
  Echelon eliminate(PivotOrder order) const;

  int num_unknowns_;
  int num_rhs_;
  std::vector<Row> rows_;
};

}  // namespace valconv
