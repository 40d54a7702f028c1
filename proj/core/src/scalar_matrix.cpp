#include "valconv/scalar_matrix.hpp"

#include <utility>

#include "valconv/error.hpp"

namespace valconv {

namespace {

std::size_t columns(const ScalarMatrix& m) { return m.empty() ? 0 : m.front().size(); }

void require_rectangular(const ScalarMatrix& m) {
  for (const auto& row : m) {
    if (row.size() != columns(m)) throw InputError("ragged matrix");
  }
}

// Fraction-free row reduction to echelon form; returns the pivot columns.
std::vector<std::size_t> echelon(ScalarMatrix& m, std::size_t limit_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < limit_cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    for (std::size_t r = row + 1; r < m.size(); ++r) {
      if (m[r][col].is_zero()) continue;
      const Scalar a = m[r][col];
      const Scalar p = m[row][col];
      for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] = m[r][c] * p - m[row][c] * a;
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Scalar ring_divide(const Scalar& a, const Scalar& b) {
  try {
    return divide_exact(a, b);
  } catch (const InputError&) {
    throw SolverError("quotient " + a.to_string() + " / " + b.to_string() + " is not a Laurent polynomial in pi");
  }
}

}  // namespace

ScalarMatrix identity_matrix(int n) {
  ScalarMatrix m(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar(1L);
  return m;
}

ScalarMatrix transpose(const ScalarMatrix& m) {
  require_rectangular(m);
  ScalarMatrix t(columns(m), std::vector<Scalar>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < columns(m); ++j) t[j][i] = m[i][j];
  }
  return t;
}

ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b) {
  require_rectangular(a);
  require_rectangular(b);
  if (columns(a) != b.size()) throw InputError("matrix size mismatch");
  ScalarMatrix out(a.size(), std::vector<Scalar>(columns(b)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < columns(b); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

Scalar determinant(ScalarMatrix m) {
  require_rectangular(m);
  const std::size_t n = m.size();
  if (columns(m) != n) throw InputError("determinant of a non-square matrix");
  if (n == 0) return Scalar(1L);
  Scalar previous(1L);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t sel = k;
    while (sel < n && m[sel][k].is_zero()) ++sel;
    if (sel == n) return Scalar();
    if (sel != k) {
      std::swap(m[sel], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = ring_divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], previous);
      }
      m[i][k] = Scalar();
    }
    previous = m[k][k];
  }
  Scalar det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

int matrix_rank(ScalarMatrix m) {
  require_rectangular(m);
  return static_cast<int>(echelon(m, columns(m)).size());
}

std::vector<Scalar> solve_exact(const ScalarMatrix& a, const std::vector<Scalar>& b) {
  require_rectangular(a);
  if (a.size() != b.size()) throw InputError("right-hand side size mismatch");
  const std::size_t n = columns(a);
  ScalarMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const auto pivots = echelon(aug, n);
  for (std::size_t r = pivots.size(); r < aug.size(); ++r) {
    if (!aug[r][n].is_zero()) throw SolverError("inconsistent linear system");
  }
  if (pivots.size() < n) throw SolverError("underdetermined linear system");
  std::vector<Scalar> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Scalar acc = aug[i][n];
    for (std::size_t j = i + 1; j < n; ++j) acc -= aug[i][j] * x[j];
    x[i] = ring_divide(acc, aug[i][i]);
  }
  return x;
}

ScalarMatrix inverse(const ScalarMatrix& m) {
  require_rectangular(m);
  const std::size_t n = m.size();
  if (columns(m) != n) throw InputError("inverse of a non-square matrix");
  ScalarMatrix inv(n, std::vector<Scalar>(n));
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Scalar> e(n);
    e[c] = Scalar(1L);
    auto col = solve_exact(m, e);
    for (std::size_t r = 0; r < n; ++r) inv[r][c] = col[r];
  }
  return inv;
}

}  // namespace valconv
