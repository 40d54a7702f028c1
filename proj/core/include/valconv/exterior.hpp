#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "valconv/scalar.hpp"

namespace valconv {

inline constexpr int kMaxDim = 8;

// Strictly increasing subset of {1,...,n}, stored as a bit mask (bit i-1 <-> index i).
class IndexSet {
 public:
  constexpr IndexSet() = default;
  constexpr explicit IndexSet(std::uint32_t bits) : bits_(bits) {}
  IndexSet(std::initializer_list<int> indices);
  static IndexSet from_indices(const std::vector<int>& indices);  // throws on repeats / range
  static constexpr IndexSet full(int n) { return IndexSet(n >= 32 ? ~0U : ((1U << n) - 1U)); }
  static constexpr IndexSet single(int index) { return IndexSet(1U << (index - 1)); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int index) const { return ((bits_ >> (index - 1)) & 1U) != 0; }
  constexpr bool intersects(IndexSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr bool subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr IndexSet complement(int n) const { return IndexSet(full(n).bits_ & ~bits_); }
  constexpr IndexSet with(int index) const { return IndexSet(bits_ | (1U << (index - 1))); }
  constexpr IndexSet without(int index) const { return IndexSet(bits_ & ~(1U << (index - 1))); }
  constexpr int max_index() const { return bits_ == 0 ? 0 : 32 - std::countl_zero(bits_); }
  constexpr int min_index() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }
  // Number of members strictly smaller than index.
  constexpr int count_below(int index) const { return std::popcount(bits_ & ((1U << (index - 1)) - 1U)); }
  std::vector<int> indices() const;
  std::string to_string() const;

  friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.bits_ | b.bits_); }
  friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & b.bits_); }
  friend constexpr IndexSet operator-(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(IndexSet a, IndexSet b) = default;
  // Graded lexicographic order: by size, then by the sorted index sequence.
  friend std::strong_ordering operator<=>(IndexSet a, IndexSet b);

 private:
  std::uint32_t bits_ = 0;
};

// epsilon(K,L): 0 if K and L overlap, otherwise the sign of the permutation
// sorting the concatenation (K,L).
int perm_sign(IndexSet k, IndexSet l);

// Sign of iota_{e*_{k1}} o ... o iota_{e*_{kr}} applied to e_J (0 unless K is a subset of J).
// The result blade is J - K.
int interior_sign(IndexSet k, IndexSet j);

// All subsets of {1..n} of the given size, in increasing order.
std::vector<IndexSet> subsets_of_size(int n, int size);

enum class Space { Primal, Dual };

// Element of the exterior algebra of g (primal) or g* (dual).
class MultiVector {
 public:
  MultiVector(Space space, int dim);
  static MultiVector blade(Space space, int dim, IndexSet set, const Scalar& coefficient = Scalar(1L));
  static MultiVector scalar(Space space, int dim, const Scalar& value);

  Space space() const { return space_; }
  int dim() const { return dim_; }
  const std::map<IndexSet, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(IndexSet set) const;
  // Grade of a non-zero homogeneous element; -1 if zero, throws InputError when mixed.
  int grade() const;
  bool is_homogeneous() const;

  void add(IndexSet set, const Scalar& coefficient);
  MultiVector& operator+=(const MultiVector& other);
  MultiVector& operator-=(const MultiVector& other);
  MultiVector& operator*=(const Scalar& factor);
  friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
  friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
  friend MultiVector operator*(MultiVector a, const Scalar& s) { return a *= s; }
  friend bool operator==(const MultiVector& a, const MultiVector& b);

  std::string to_string() const;

 private:
  Space space_;
  int dim_;
  std::map<IndexSet, Scalar> terms_;
};

MultiVector wedge(const MultiVector& a, const MultiVector& b);

// iota_{e*_{k1}} o ... o iota_{e*_{kr}} on a primal multivector.
MultiVector interior_dual(IndexSet k, const MultiVector& v);

// *^{-1}: dual grade-k element (tensored with the top primal volume) -> primal grade n-k.
MultiVector hodge_inverse(const MultiVector& covector);
// The inverse map: primal grade m -> dual grade n-m.
MultiVector hodge(const MultiVector& vector);

// Blade-level pieces of the two maps above: *^{-1}(e*_I) = sign * e_{I^c}.
inline int hodge_inverse_sign(IndexSet i, int n) { return perm_sign(i.complement(n), i); }
inline int hodge_sign(IndexSet j, int n) { return perm_sign(j, j.complement(n)); }

// Basis pairing <e*_I, e_J> = delta_{IJ}.
Scalar pairing(const MultiVector& covector, const MultiVector& vector);

// Coefficient of e_[n] in a top-grade primal element.
Scalar top_coefficient(const MultiVector& v);

}  // namespace valconv
