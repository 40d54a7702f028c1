#include "valconv/sphere_poly.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>
#include <unordered_map>

#include "valconv/error.hpp"
#include "valconv/exterior.hpp"

namespace valconv {

namespace mono {

int degree(Monomial m) {
  int d = 0;
  for (; m != 0; m >>= 8) d += static_cast<int>(m & 0xFFU);
  return d;
}

Monomial make(const std::vector<int>& exponents) {
  if (exponents.size() > static_cast<std::size_t>(kMaxDim)) throw InputError("too many variables in monomial");
  Monomial m = 0;
  for (std::size_t v = 0; v < exponents.size(); ++v) {
    if (exponents[v] < 0 || exponents[v] > 200) throw InputError("monomial exponent out of range");
    m |= static_cast<Monomial>(exponents[v]) << (8 * v);
  }
  return m;
}

std::vector<int> exponents(Monomial m, int n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) out[static_cast<std::size_t>(v)] = exponent(m, v);
  return out;
}

}  // namespace mono

namespace {

using Expansion = std::vector<std::pair<Monomial, Rational>>;

// Normal form of a single monomial: repeatedly replace xi_n^2 by 1 - sum_{i<n} xi_i^2.
class ReductionCache {
 public:
  const Expansion& reduce(int n, Monomial m) {
    std::lock_guard<std::mutex> lock(mutex_);
    return reduce_locked(n, m);
  }

 private:
  const Expansion& reduce_locked(int n, Monomial m) {
    auto& table = tables_[static_cast<std::size_t>(n)];
    if (auto it = table.find(m); it != table.end()) return it->second;
    const int last = n - 1;
    Expansion result;
    if (mono::exponent(m, last) < 2) {
      result.emplace_back(m, Rational(1));
    } else {
      std::map<Monomial, Rational> acc;
      Monomial base = m - 2 * mono::unit(last);
      for (const auto& [mm, c] : reduce_locked(n, base)) acc[mm] += c;
      for (int v = 0; v < last; ++v) {
        Expansion sub = reduce_locked(n, base + 2 * mono::unit(v));
        for (const auto& [mm, c] : sub) acc[mm] -= c;
      }
      for (auto& [mm, c] : acc) {
        if (c != 0) result.emplace_back(mm, c);
      }
    }
    return table.emplace(m, std::move(result)).first->second;
  }

  std::mutex mutex_;
  std::unordered_map<Monomial, Expansion> tables_[kMaxDim + 1];
};

ReductionCache& cache() {
  static ReductionCache instance;
  return instance;
}

void accumulate(std::map<Monomial, Scalar>& terms, Monomial m, const Scalar& value) {
  if (value.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(m, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) terms.erase(it);
  }
}

// Gamma(k/2) for k >= 1 as (rational, has sqrt(pi) factor).
std::pair<Rational, int> half_gamma(int k) {
  if (k % 2 == 0) {
    mpz_class f = 1;
    for (int i = 2; i < k / 2; ++i) f *= i;
    return {Rational(f), 0};
  }
  // Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
  int m = (k - 1) / 2;
  mpz_class num = 1, den = 1;
  for (int i = 2; i <= 2 * m; ++i) num *= i;
  for (int i = 2; i <= m; ++i) den *= i;
  mpz_class four_m;
  mpz_ui_pow_ui(four_m.get_mpz_t(), 4, static_cast<unsigned long>(m));
  den *= four_m;
  Rational q(num, den);
  q.canonicalize();
  return {q, 1};
}

}  // namespace

SpherePoly SpherePoly::constant(int dim, const Scalar& value) {
  SpherePoly p(dim);
  if (!value.is_zero()) p.terms_.emplace(Monomial{0}, value);
  return p;
}

SpherePoly SpherePoly::from_monomial(int dim, Monomial m, const Scalar& value) {
  SpherePoly p(dim);
  p.add_monomial(m, value);
  return p;
}

bool SpherePoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Scalar SpherePoly::constant_term() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? Scalar() : it->second;
}

int SpherePoly::max_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, mono::degree(m));
  return d;
}

void SpherePoly::add_monomial(Monomial m, const Scalar& value) {
  if (value.is_zero()) return;
  if (dim_ < 1) throw InputError("SpherePoly without a dimension");
  if (mono::exponent(m, dim_ - 1) < 2) {
    accumulate(terms_, m, value);
    return;
  }
  for (const auto& [mm, c] : cache().reduce(dim_, m)) accumulate(terms_, mm, value * c);
}

static void require_same_dim(const SpherePoly& a, const SpherePoly& b) {
  if (a.dim() != b.dim()) throw InputError("SpherePoly dimension mismatch");
}

SpherePoly& SpherePoly::operator+=(const SpherePoly& other) {
  if (dim_ == 0) dim_ = other.dim_;
  require_same_dim(*this, other);
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, c);
  return *this;
}

SpherePoly& SpherePoly::operator-=(const SpherePoly& other) {
  if (dim_ == 0) dim_ = other.dim_;
  require_same_dim(*this, other);
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, -c);
  return *this;
}

SpherePoly& SpherePoly::operator*=(const Scalar& factor) {
  if (factor.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= factor;
  return *this;
}

SpherePoly SpherePoly::operator-() const {
  SpherePoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

void lcm_denominators(const SpherePoly& p, mpz_class& den) {
  for (const auto& [m, c] : p.terms())
    for (const auto& [e, q] : c.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
}

ScaledPoly scale_to(const SpherePoly& p, const mpz_class& den) {
  ScaledPoly out;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& [e, q] : c.terms()) {
      mpz_class num = den / q.get_den();
      num *= q.get_num();
      out.terms.emplace_back(m, e, std::move(num));
    }
  }
  return out;
}

std::size_t ProductAccumulator::KeyHash::operator()(const Key& k) const {
  return std::hash<Monomial>()(k.m * 0x9E3779B97F4A7C15ULL + static_cast<unsigned>(k.pi));
}

void ProductAccumulator::add(const ScaledPoly& a, const ScaledPoly& b, int sign) {
  for (const auto& [ma, ea, na] : a.terms) {
    for (const auto& [mb, eb, nb] : b.terms) {
      mpz_class& slot = raw_[Key{ma + mb, ea + eb}];
      if (sign > 0) {
        mpz_addmul(slot.get_mpz_t(), na.get_mpz_t(), nb.get_mpz_t());
      } else {
        mpz_submul(slot.get_mpz_t(), na.get_mpz_t(), nb.get_mpz_t());
      }
    }
  }
}

SpherePoly ProductAccumulator::finish(const Rational& scale) const {
  // The reduction xi_n^2 -> 1 - sum xi_i^2 has integer coefficients.
  const int last = dim_ - 1;
  std::unordered_map<Key, mpz_class, KeyHash> reduced;
  reduced.reserve(raw_.size());
  for (const auto& [key, z] : raw_) {
    if (z == 0) continue;
    if (mono::exponent(key.m, last) < 2) {
      reduced[key] += z;
      continue;
    }
    for (const auto& [mm, c] : cache().reduce(dim_, key.m)) {
      mpz_addmul(reduced[Key{mm, key.pi}].get_mpz_t(), z.get_mpz_t(), c.get_num_mpz_t());
    }
  }
  SpherePoly out(dim_);
  for (const auto& [key, z] : reduced) {
    if (z == 0) continue;
    Rational q(z);
    q *= scale;
    accumulate(out.terms_, key.m, Scalar::pi_power(key.pi, q));
  }
  return out;
}

void SpherePoly::add_product(const SpherePoly& a, const SpherePoly& b, const Rational& factor) {
  if (a.is_zero() || b.is_zero() || factor == 0) return;
  require_same_dim(a, b);
  if (dim_ == 0) dim_ = a.dim_;
  require_same_dim(*this, a);
  mpz_class da = 1, db = 1;
  lcm_denominators(a, da);
  lcm_denominators(b, db);
  ProductAccumulator acc(dim_);
  acc.add(scale_to(a, da), scale_to(b, db), 1);
  Rational scale = factor / Rational(da * db);
  scale.canonicalize();
  *this += acc.finish(scale);
}

void SpherePoly::add_scaled(const SpherePoly& a, const Rational& factor) {
  if (a.is_zero() || factor == 0) return;
  if (dim_ == 0) dim_ = a.dim_;
  require_same_dim(*this, a);
  for (const auto& [m, c] : a.terms_) {
    auto [it, inserted] = terms_.try_emplace(m);
    it->second.add_scaled(c, factor);
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SpherePoly operator*(const SpherePoly& a, const SpherePoly& b) {
  require_same_dim(a, b);
  SpherePoly out(a.dim_);
  out.add_product(a, b);
  return out;
}

SpherePoly SpherePoly::times_variable(int var) const {
  SpherePoly out(dim_);
  for (const auto& [m, c] : terms_) out.add_monomial(m + mono::unit(var), c);
  return out;
}

SpherePoly SpherePoly::derivative(int var, int weight) const {
  SpherePoly out(dim_);
  for (const auto& [m, c] : terms_) {
    int a = mono::exponent(m, var);
    if (a > 0) out.add_monomial(m - mono::unit(var), c * Rational(a));
    int radial = weight - mono::degree(m);
    if (radial != 0) out.add_monomial(m + mono::unit(var), c * Rational(radial));
  }
  return out;
}

Scalar SpherePoly::integrate() const {
  Scalar total;
  for (const auto& [m, c] : terms_) total += c * sphere_moment(dim_, mono::exponents(m, dim_));
  return total;
}

std::string SpherePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += "(" + c.to_string() + ")";
    for (int v = 0; v < dim_; ++v) {
      int e = mono::exponent(m, v);
      if (e == 0) continue;
      out += "*x" + std::to_string(v + 1);
      if (e > 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

Scalar sphere_moment(int dim, const std::vector<int>& alpha) {
  int total = 0;
  Rational coeff = 2;
  int sqrt_pi = 0;
  for (int a : alpha) {
    if (a % 2 != 0) return Scalar();
    total += a;
    auto [q, h] = half_gamma(a + 1);
    coeff *= q;
    sqrt_pi += h;
  }
  sqrt_pi += dim - static_cast<int>(alpha.size());  // variables with exponent 0 contribute Gamma(1/2)
  auto [qd, hd] = half_gamma(dim + total);
  coeff /= qd;
  sqrt_pi -= hd;
  return Scalar::pi_power(sqrt_pi / 2, coeff);
}

std::vector<Monomial> normal_monomials(int dim, int max_degree) {
  std::vector<Monomial> out;
  std::vector<int> e(static_cast<std::size_t>(dim), 0);
  // Enumerate exponent vectors of total degree <= max_degree with last exponent <= 1.
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == dim) {
      out.push_back(mono::make(e));
      return;
    }
    int cap = (var == dim - 1) ? std::min(1, remaining) : remaining;
    for (int a = 0; a <= cap; ++a) {
      e[static_cast<std::size_t>(var)] = a;
      self(self, var + 1, remaining - a);
    }
    e[static_cast<std::size_t>(var)] = 0;
  };
  rec(rec, 0, max_degree);
  std::sort(out.begin(), out.end(), [](Monomial a, Monomial b) {
    int da = mono::degree(a), db = mono::degree(b);
    return da != db ? da < db : a < b;
  });
  return out;
}

}  // namespace valconv
