#include "valconv/lie.hpp"

#include <map>

#include "valconv/error.hpp"

namespace valconv {

bool RationalMatrix::is_zero() const {
  for (const auto& e : entries) {
    if (e != 0) return false;
  }
  return true;
}

namespace {

void accumulate(std::map<IndexSet, Rational>& acc, IndexSet key, const Rational& value) {
  if (value == 0) return;
  Rational& slot = acc[key];
  slot += value;
  if (slot == 0) acc.erase(key);
}

BladeVector to_blade_vector(const std::map<IndexSet, Rational>& acc) {
  return BladeVector(acc.begin(), acc.end());
}

}  // namespace

LieAlgebra::LieAlgebra(std::string name, int dim, const std::vector<BracketEntry>& brackets) {
  name_ = std::move(name);
  dim_ = dim;
  brackets_ = brackets;
  build(true);
}

LieAlgebra LieAlgebra::unchecked(std::string name, int dim, const std::vector<BracketEntry>& brackets) {
  LieAlgebra alg;
  alg.name_ = std::move(name);
  alg.dim_ = dim;
  alg.brackets_ = brackets;
  alg.build(false);
  return alg;
}

void LieAlgebra::build(bool check_jacobi) {
  const int n = dim_;
  if (n < 1 || n > kMaxDim) throw InputError("Lie algebra dimension out of range: " + std::to_string(n));
  c_.assign(static_cast<std::size_t>(n * n * n), Rational(0));
  std::map<std::pair<int, int>, bool> seen;
  for (const auto& entry : brackets_) {
    if (entry.i < 1 || entry.j < 1 || entry.i > n || entry.j > n) {
      throw InputError("bracket index out of range in algebra '" + name_ + "'");
    }
    if (entry.i >= entry.j) throw InputError("bracket entries must satisfy i < j in algebra '" + name_ + "'");
    if (seen[{entry.i, entry.j}]) throw InputError("duplicate bracket entry in algebra '" + name_ + "'");
    seen[{entry.i, entry.j}] = true;
    for (const auto& [k, value] : entry.coeffs) {
      if (k < 1 || k > n) throw InputError("bracket coefficient index out of range in algebra '" + name_ + "'");
      int a = entry.i - 1, b = entry.j - 1, kk = k - 1;
      c_[static_cast<std::size_t>((a * n + b) * n + kk)] += value;
      c_[static_cast<std::size_t>((b * n + a) * n + kk)] -= value;
      if (value != 0) abelian_ = false;
    }
  }
  if (check_jacobi) {
    if (auto violation = jacobi_violation()) {
      throw InputError("Jacobi identity fails in algebra '" + name_ + "' for (e" + std::to_string(violation->i) + ", e" +
                       std::to_string(violation->j) + ", e" + std::to_string(violation->k) + ")");
    }
  }

  coadjoint_.clear();
  for (int i = 1; i <= n; ++i) {
    RationalMatrix a(n);
    // (ad*_{e_i} xi)_j = -sum_k c_{ij}^k xi_k
    for (int j = 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) a.at(j - 1, k - 1) = -structure_constant(i, j, k);
    }
    coadjoint_.push_back(std::move(a));
  }

  const std::uint32_t blades = 1U << n;
  boundary_.assign(blades, {});
  coboundary_.assign(blades, {});
  ad_blade_.assign(static_cast<std::size_t>(n), std::vector<BladeVector>(blades));
  for (std::uint32_t bits = 0; bits < blades; ++bits) {
    IndexSet blade(bits);
    std::vector<int> idx = blade.indices();
    std::map<IndexSet, Rational> acc;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        // positions are 1-based in (-1)^{a+b+1}
        int sign = ((a + 1 + b + 1 + 1) % 2 == 0) ? 1 : -1;
        IndexSet rest = blade.without(idx[a]).without(idx[b]);
        for (int k = 1; k <= n; ++k) {
          const Rational& c = structure_constant(idx[a], idx[b], k);
          if (c == 0) continue;
          int s = perm_sign(IndexSet::single(k), rest);
          if (s == 0) continue;
          accumulate(acc, rest.with(k), c * (sign * s));
        }
      }
    }
    boundary_[bits] = to_blade_vector(acc);
    for (int i = 1; i <= n; ++i) {
      std::map<IndexSet, Rational> ad;
      for (int j : idx) {
        IndexSet rest = blade.without(j);
        int pos_sign = (blade.count_below(j) % 2 == 0) ? 1 : -1;
        for (int k = 1; k <= n; ++k) {
          const Rational& c = structure_constant(i, j, k);
          if (c == 0) continue;
          int s = perm_sign(IndexSet::single(k), rest);
          if (s == 0) continue;
          accumulate(ad, rest.with(k), c * (pos_sign * s));
        }
      }
      ad_blade_[static_cast<std::size_t>(i - 1)][bits] = to_blade_vector(ad);
    }
  }
  std::vector<std::map<IndexSet, Rational>> co(blades);
  for (std::uint32_t bits = 0; bits < blades; ++bits) {
    for (const auto& [target, c] : boundary_[bits]) accumulate(co[target.bits()], IndexSet(bits), c);
  }
  for (std::uint32_t bits = 0; bits < blades; ++bits) coboundary_[bits] = to_blade_vector(co[bits]);
}

const Rational& LieAlgebra::structure_constant(int i, int j, int k) const {
  return c_[static_cast<std::size_t>(((i - 1) * dim_ + (j - 1)) * dim_ + (k - 1))];
}

MultiVector LieAlgebra::bracket(const MultiVector& x, const MultiVector& y) const {
  if (x.space() != Space::Primal || y.space() != Space::Primal) throw InputError("bracket expects primal vectors");
  if (x.dim() != dim_ || y.dim() != dim_) throw InputError("bracket dimension mismatch");
  if ((!x.is_zero() && x.grade() != 1) || (!y.is_zero() && y.grade() != 1)) {
    throw InputError("bracket expects grade-1 inputs");
  }
  MultiVector out(Space::Primal, dim_);
  for (const auto& [ki, ci] : x.terms()) {
    for (const auto& [kj, cj] : y.terms()) {
      int i = ki.min_index(), j = kj.min_index();
      for (int k = 1; k <= dim_; ++k) {
        const Rational& c = structure_constant(i, j, k);
        if (c != 0) out.add(IndexSet::single(k), ci * cj * c);
      }
    }
  }
  return out;
}

std::optional<JacobiViolation> LieAlgebra::jacobi_violation() const {
  const int n = dim_;
  auto e = [n](int i) { return MultiVector::blade(Space::Primal, n, IndexSet::single(i)); };
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        MultiVector sum = bracket(bracket(e(i), e(j)), e(k));
        sum += bracket(bracket(e(j), e(k)), e(i));
        sum += bracket(bracket(e(k), e(i)), e(j));
        if (!sum.is_zero()) return JacobiViolation{i, j, k, sum};
      }
    }
  }
  return std::nullopt;
}

RationalMatrix LieAlgebra::ad_matrix(int i) const {
  if (i < 1 || i > dim_) throw InputError("basis index out of range");
  RationalMatrix m(dim_);
  for (int j = 1; j <= dim_; ++j) {
    for (int k = 1; k <= dim_; ++k) m.at(k - 1, j - 1) = structure_constant(i, j, k);
  }
  return m;
}

UnimodularVerdict LieAlgebra::is_unimodular() const {
  UnimodularVerdict verdict;
  for (int i = 1; i <= dim_; ++i) {
    Rational tr = 0;
    for (int j = 1; j <= dim_; ++j) tr += structure_constant(i, j, j);
    verdict.traces.push_back(tr);
    if (tr != 0 && verdict.unimodular) {
      verdict.unimodular = false;
      verdict.witness = i;
      verdict.trace = tr;
    }
  }
  return verdict;
}

const RationalMatrix& LieAlgebra::coadjoint_field(int i) const {
  if (i < 1 || i > dim_) throw InputError("coadjoint_field: basis index out of range");
  return coadjoint_[static_cast<std::size_t>(i - 1)];
}

const BladeVector& LieAlgebra::ad_on_blade(int i, IndexSet blade) const {
  return ad_blade_[static_cast<std::size_t>(i - 1)][blade.bits()];
}

MultiVector LieAlgebra::koszul_boundary(const MultiVector& x) const {
  if (x.space() != Space::Primal) throw InputError("koszul_boundary expects a primal multivector");
  if (x.dim() != dim_) throw InputError("koszul_boundary dimension mismatch");
  MultiVector out(Space::Primal, dim_);
  for (const auto& [blade, c] : x.terms()) {
    for (const auto& [target, v] : boundary_of(blade)) out.add(target, c * v);
  }
  return out;
}

MultiVector LieAlgebra::koszul_coboundary(const MultiVector& v) const {
  if (v.space() != Space::Dual) throw InputError("koszul_coboundary expects a dual multivector");
  if (v.dim() != dim_) throw InputError("koszul_coboundary dimension mismatch");
  MultiVector out(Space::Dual, dim_);
  for (const auto& [blade, c] : v.terms()) {
    for (const auto& [target, w] : coboundary_of(blade)) out.add(target, c * w);
  }
  return out;
}

Scalar LieAlgebra::leibniz_defect(const MultiVector& x, const MultiVector& y) const {
  if (x.space() != Space::Primal || y.space() != Space::Primal) throw InputError("leibniz_defect expects primal inputs");
  if (x.dim() != dim_ || y.dim() != dim_) throw InputError("leibniz_defect dimension mismatch");
  if (x.is_zero() || y.is_zero()) return Scalar();
  const int kx = x.grade();
  const int ky = y.grade();
  const int k = kx - 1;
  if (k < 0 || ky != dim_ - k) throw InputError("leibniz_defect: grades must be k+1 and n-k");
  Scalar lhs = wedge(koszul_boundary(x), y).coefficient(IndexSet::full(dim_));
  Scalar rhs = wedge(x, koszul_boundary(y)).coefficient(IndexSet::full(dim_));
  return ((k + 1) % 2 == 0) ? lhs - rhs : lhs + rhs;
}

LieAlgebra builtin_lie_algebra(const std::string& name) {
  auto one = Rational(1);
  if (name.rfind("abelian", 0) == 0 && name.size() == 8 && name[7] >= '1' && name[7] <= '4') {
    return LieAlgebra(name, name[7] - '0', {});
  }
  if (name == "so3") {
    return LieAlgebra("so3", 3, {{1, 2, {{3, one}}}, {2, 3, {{1, one}}}, {1, 3, {{2, -one}}}});
  }
  if (name == "heisenberg" || name == "h3") {
    return LieAlgebra("heisenberg", 3, {{1, 2, {{3, one}}}});
  }
  if (name == "aff1") {
    return LieAlgebra("aff1", 2, {{1, 2, {{2, one}}}});
  }
  throw InputError("unknown built-in Lie algebra: '" + name + "'");
}

std::vector<std::string> builtin_lie_names() {
  return {"abelian1", "abelian2", "abelian3", "abelian4", "so3", "heisenberg", "aff1"};
}

}  // namespace valconv
