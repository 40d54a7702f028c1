#include "valconv/linsolve.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "valconv/error.hpp"

namespace valconv {

namespace {

using Entries = std::vector<std::pair<int, mpz_class>>;

const mpz_class* find_entry(const Entries& entries, int col) {
  auto it = std::lower_bound(entries.begin(), entries.end(), col,
                             [](const std::pair<int, mpz_class>& e, int c) { return e.first < c; });
  return (it != entries.end() && it->first == col) ? &it->second : nullptr;
}

}  // namespace

ExactLinearSystem::ExactLinearSystem(int num_unknowns, int num_rhs) : num_unknowns_(num_unknowns), num_rhs_(num_rhs) {
  if (num_unknowns < 0 || num_rhs < 0) throw InputError("linear system sizes must be non-negative");
}

void ExactLinearSystem::add_row(const std::vector<std::pair<int, Rational>>& coeffs, const std::vector<Scalar>& rhs) {
  if (!rhs.empty() && static_cast<int>(rhs.size()) != num_rhs_) throw InputError("right-hand side size mismatch");
  std::map<int, Rational> merged;
  for (const auto& [col, value] : coeffs) {
    if (col < 0 || col >= num_unknowns_) throw InputError("column index out of range");
    merged[col] += value;
  }
  mpz_class scale = 1;
  for (const auto& [col, value] : merged) {
    if (value != 0) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), value.get_den_mpz_t());
  }
  Row row;
  for (const auto& [col, value] : merged) {
    if (value == 0) continue;
    mpz_class v = value.get_num() * (scale / value.get_den());
    row.entries.emplace_back(col, std::move(v));
  }
  row.rhs.assign(static_cast<std::size_t>(num_rhs_), Scalar());
  for (std::size_t i = 0; i < rhs.size(); ++i) row.rhs[i] = rhs[i] * Rational(scale);
  bool rhs_zero = std::all_of(row.rhs.begin(), row.rhs.end(), [](const Scalar& s) { return s.is_zero(); });
  if (row.entries.empty() && rhs_zero) return;
  rows_.push_back(std::move(row));
}

ExactLinearSystem::Echelon ExactLinearSystem::eliminate(PivotOrder order) const {
  Echelon ech;
  ech.is_pivot.assign(static_cast<std::size_t>(num_unknowns_), false);
  std::vector<Row> active = rows_;
  std::vector<int> cols(static_cast<std::size_t>(num_unknowns_));
  std::iota(cols.begin(), cols.end(), 0);
  if (order == PivotOrder::Reversed) std::reverse(cols.begin(), cols.end());

  for (int col : cols) {
    int best = -1;
    std::size_t best_size = 0;
    for (std::size_t r = 0; r < active.size(); ++r) {
      if (find_entry(active[r].entries, col) == nullptr) continue;
      if (best < 0 || active[r].entries.size() < best_size) {
        best = static_cast<int>(r);
        best_size = active[r].entries.size();
      }
    }
    if (best < 0) continue;
    Row pivot = std::move(active[static_cast<std::size_t>(best)]);
    active.erase(active.begin() + best);
    const mpz_class p = *find_entry(pivot.entries, col);

    for (auto& row : active) {
      const mpz_class* hit = find_entry(row.entries, col);
      if (hit == nullptr) continue;
      const mpz_class a = *hit;
      // row <- p*row - a*pivot
      Entries merged;
      merged.reserve(row.entries.size() + pivot.entries.size());
      auto it1 = row.entries.begin();
      auto it2 = pivot.entries.begin();
      while (it1 != row.entries.end() || it2 != pivot.entries.end()) {
        if (it2 == pivot.entries.end() || (it1 != row.entries.end() && it1->first < it2->first)) {
          merged.emplace_back(it1->first, p * it1->second);
          ++it1;
        } else if (it1 == row.entries.end() || it2->first < it1->first) {
          merged.emplace_back(it2->first, -a * it2->second);
          ++it2;
        } else {
          mpz_class v = p * it1->second - a * it2->second;
          if (v != 0) merged.emplace_back(it1->first, std::move(v));
          ++it1;
          ++it2;
        }
      }
      for (std::size_t i = 0; i < row.rhs.size(); ++i) {
        Scalar updated = row.rhs[i] * Rational(p);
        if (!pivot.rhs[i].is_zero()) updated -= pivot.rhs[i] * Rational(a);
        row.rhs[i] = std::move(updated);
      }
      row.entries = std::move(merged);
      // Divide out the row content.
      mpz_class g = 0;
      for (const auto& e : row.entries) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
      if (g > 1) {
        for (auto& e : row.entries) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
        for (auto& s : row.rhs) s /= Rational(g);
      }
    }
    ech.pivot_cols.push_back(col);
    ech.pivot_rows.push_back(std::move(pivot));
    ech.is_pivot[static_cast<std::size_t>(col)] = true;
  }
  ech.leftover = std::move(active);
  return ech;
}

ExactLinearSystem::Solution ExactLinearSystem::solve(PivotOrder order, const Rational& free_value) const {
  Echelon ech = eliminate(order);
  Solution sol;
  sol.rank = static_cast<int>(ech.pivot_cols.size());
  for (const auto& row : ech.leftover) {
    for (int i = 0; i < num_rhs_; ++i) {
      if (!row.rhs[static_cast<std::size_t>(i)].is_zero()) sol.inconsistent_rhs.push_back(i);
    }
  }
  std::sort(sol.inconsistent_rhs.begin(), sol.inconsistent_rhs.end());
  sol.inconsistent_rhs.erase(std::unique(sol.inconsistent_rhs.begin(), sol.inconsistent_rhs.end()),
                             sol.inconsistent_rhs.end());
  sol.consistent = sol.inconsistent_rhs.empty();
  sol.values.assign(static_cast<std::size_t>(num_rhs_),
                    std::vector<Scalar>(static_cast<std::size_t>(num_unknowns_)));
  if (free_value != 0) {
    for (auto& x : sol.values) {
      for (int c = 0; c < num_unknowns_; ++c) {
        if (!ech.is_pivot[static_cast<std::size_t>(c)]) x[static_cast<std::size_t>(c)] = Scalar(free_value);
      }
    }
  }
  // Back substitution; later pivot rows never involve earlier pivot columns.
  for (int idx = static_cast<int>(ech.pivot_rows.size()) - 1; idx >= 0; --idx) {
    const Row& row = ech.pivot_rows[static_cast<std::size_t>(idx)];
    const int col = ech.pivot_cols[static_cast<std::size_t>(idx)];
    const Rational p(*find_entry(row.entries, col));
    for (int i = 0; i < num_rhs_; ++i) {
      auto& x = sol.values[static_cast<std::size_t>(i)];
      Scalar acc = row.rhs[static_cast<std::size_t>(i)];
      for (const auto& [c, v] : row.entries) {
        if (c == col) continue;
        const Scalar& xc = x[static_cast<std::size_t>(c)];
        if (!xc.is_zero()) acc -= xc * Rational(v);
      }
      acc /= p;
      x[static_cast<std::size_t>(col)] = std::move(acc);
    }
  }
  return sol;
}

std::vector<std::vector<Rational>> ExactLinearSystem::nullspace(PivotOrder order) const {
  Echelon ech = eliminate(order);
  std::vector<std::vector<Rational>> basis;
  for (int free_col = 0; free_col < num_unknowns_; ++free_col) {
    if (ech.is_pivot[static_cast<std::size_t>(free_col)]) continue;
    std::vector<Rational> x(static_cast<std::size_t>(num_unknowns_), Rational(0));
    x[static_cast<std::size_t>(free_col)] = 1;
    for (int idx = static_cast<int>(ech.pivot_rows.size()) - 1; idx >= 0; --idx) {
      const Row& row = ech.pivot_rows[static_cast<std::size_t>(idx)];
      const int col = ech.pivot_cols[static_cast<std::size_t>(idx)];
      Rational acc = 0;
      mpz_class p;
      for (const auto& [c, v] : row.entries) {
        if (c == col) {
          p = v;
          continue;
        }
        const Rational& xc = x[static_cast<std::size_t>(c)];
        if (xc != 0) acc -= xc * Rational(v);
      }
      x[static_cast<std::size_t>(col)] = acc / Rational(p);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace valconv
