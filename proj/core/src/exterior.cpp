#include "valconv/exterior.hpp"

#include <algorithm>

#include "valconv/error.hpp"

namespace valconv {

IndexSet::IndexSet(std::initializer_list<int> indices) {
  *this = from_indices(std::vector<int>(indices));
}

IndexSet IndexSet::from_indices(const std::vector<int>& indices) {
  std::uint32_t bits = 0;
  for (int i : indices) {
    if (i < 1 || i > kMaxDim) throw InputError("basis index out of range: " + std::to_string(i));
    std::uint32_t bit = 1U << (i - 1);
    if ((bits & bit) != 0) throw InputError("repeated basis index: " + std::to_string(i));
    bits |= bit;
  }
  return IndexSet(bits);
}

std::vector<int> IndexSet::indices() const {
  std::vector<int> out;
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::string IndexSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int i : indices()) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

std::strong_ordering operator<=>(IndexSet a, IndexSet b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  std::uint32_t diff = a.bits() ^ b.bits();
  if (diff == 0) return std::strong_ordering::equal;
  std::uint32_t low = diff & (~diff + 1U);
  return (a.bits() & low) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

int perm_sign(IndexSet k, IndexSet l) {
  if (k.intersects(l)) return 0;
  int inversions = 0;
  for (std::uint32_t b = l.bits(); b != 0; b &= b - 1) {
    int index = std::countr_zero(b) + 1;
    inversions += k.size() - k.count_below(index);
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

int interior_sign(IndexSet k, IndexSet j) {
  if (!k.subset_of(j)) return 0;
  int sign = 1;
  IndexSet cur = j;
  std::vector<int> ks = k.indices();
  for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
    if (cur.count_below(*it) % 2 != 0) sign = -sign;
    cur = cur.without(*it);
  }
  return sign;
}

std::vector<IndexSet> subsets_of_size(int n, int size) {
  std::vector<IndexSet> out;
  if (size < 0 || size > n) return out;
  for (std::uint32_t b = 0; b < (1U << n); ++b) {
    if (std::popcount(b) == size) out.emplace_back(b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MultiVector::MultiVector(Space space, int dim) : space_(space), dim_(dim) {
  if (dim < 0 || dim > kMaxDim) throw InputError("dimension out of range: " + std::to_string(dim));
}

MultiVector MultiVector::blade(Space space, int dim, IndexSet set, const Scalar& coefficient) {
  MultiVector v(space, dim);
  v.add(set, coefficient);
  return v;
}

MultiVector MultiVector::scalar(Space space, int dim, const Scalar& value) {
  return blade(space, dim, IndexSet(), value);
}

Scalar MultiVector::coefficient(IndexSet set) const {
  auto it = terms_.find(set);
  return it == terms_.end() ? Scalar() : it->second;
}

bool MultiVector::is_homogeneous() const {
  if (terms_.empty()) return true;
  int g = terms_.begin()->first.size();
  return std::all_of(terms_.begin(), terms_.end(), [g](const auto& t) { return t.first.size() == g; });
}

int MultiVector::grade() const {
  if (terms_.empty()) return -1;
  if (!is_homogeneous()) throw InputError("mixed-grade multivector where a homogeneous one is required");
  return terms_.begin()->first.size();
}

void MultiVector::add(IndexSet set, const Scalar& coefficient) {
  if (set.max_index() > dim_) throw InputError("blade " + set.to_string() + " exceeds dimension " + std::to_string(dim_));
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(set, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

static void require_compatible(const MultiVector& a, const MultiVector& b) {
  if (a.space() != b.space()) throw InputError("multivector space tags differ");
  if (a.dim() != b.dim()) throw InputError("multivector dimensions differ");
}

MultiVector& MultiVector::operator+=(const MultiVector& other) {
  require_compatible(*this, other);
  for (const auto& [k, c] : other.terms_) add(k, c);
  return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& other) {
  require_compatible(*this, other);
  for (const auto& [k, c] : other.terms_) add(k, -c);
  return *this;
}

MultiVector& MultiVector::operator*=(const Scalar& factor) {
  if (factor.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= factor;
  return *this;
}

bool operator==(const MultiVector& a, const MultiVector& b) {
  return a.space_ == b.space_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
}

std::string MultiVector::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  const char* base = space_ == Space::Primal ? "e" : "e*";
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += "(" + c.to_string() + ")";
    if (!k.empty()) {
      out += " ";
      out += base;
      for (int i : k.indices()) out += std::to_string(i);
    }
  }
  return out;
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
  require_compatible(a, b);
  MultiVector out(a.space(), a.dim());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      int s = perm_sign(ka, kb);
      if (s == 0) continue;
      out.add(ka | kb, s > 0 ? ca * cb : -(ca * cb));
    }
  }
  return out;
}

MultiVector interior_dual(IndexSet k, const MultiVector& v) {
  if (v.space() != Space::Primal) throw InputError("interior_dual expects a primal multivector");
  MultiVector out(Space::Primal, v.dim());
  for (const auto& [j, c] : v.terms()) {
    int s = interior_sign(k, j);
    if (s == 0) continue;
    out.add(j - k, s > 0 ? c : -c);
  }
  return out;
}

MultiVector hodge_inverse(const MultiVector& covector) {
  if (covector.space() != Space::Dual) throw InputError("hodge_inverse expects a dual multivector");
  const int n = covector.dim();
  MultiVector out(Space::Primal, n);
  for (const auto& [i, c] : covector.terms()) {
    out.add(i.complement(n), hodge_inverse_sign(i, n) > 0 ? c : -c);
  }
  return out;
}

MultiVector hodge(const MultiVector& vector) {
  if (vector.space() != Space::Primal) throw InputError("hodge expects a primal multivector");
  const int n = vector.dim();
  MultiVector out(Space::Dual, n);
  for (const auto& [j, c] : vector.terms()) {
    out.add(j.complement(n), hodge_sign(j, n) > 0 ? c : -c);
  }
  return out;
}

Scalar pairing(const MultiVector& covector, const MultiVector& vector) {
  if (covector.space() != Space::Dual || vector.space() != Space::Primal) {
    throw InputError("pairing expects (dual, primal) arguments");
  }
  if (covector.dim() != vector.dim()) throw InputError("pairing dimension mismatch");
  Scalar out;
  for (const auto& [k, c] : covector.terms()) out += c * vector.coefficient(k);
  return out;
}

Scalar top_coefficient(const MultiVector& v) {
  for (const auto& [k, c] : v.terms()) {
    if (k.size() != v.dim()) throw InputError("expected a top-grade element");
  }
  return v.coefficient(IndexSet::full(v.dim()));
}

}  // namespace valconv
