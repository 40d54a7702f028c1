#include "valconv/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "valconv/error.hpp"

namespace valconv {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(start), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw InputError("malformed rational: '" + std::string(text) + "'");
  }
  std::string num_s(num[0] == '+' ? num.substr(1) : num);
  mpz_class d{std::string(den)};
  if (d == 0) throw InputError("zero denominator in rational: '" + std::string(text) + "'");
  Rational q{mpz_class{num_s}, d};
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Scalar::Scalar(long value) {
  if (value != 0) terms_.emplace_back(0, Rational(value));
}

Scalar::Scalar(const Rational& value) {
  if (value != 0) terms_.emplace_back(0, value);
}

Scalar Scalar::pi_power(int exponent, const Rational& coefficient) {
  Scalar s;
  if (coefficient != 0) s.terms_.emplace_back(exponent, coefficient);
  return s;
}

bool Scalar::is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }

Rational Scalar::coefficient(int exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, int e) { return t.first < e; });
  if (it != terms_.end() && it->first == exponent) return it->second;
  return 0;
}

int Scalar::min_exponent() const { return terms_.empty() ? 0 : terms_.front().first; }
int Scalar::max_exponent() const { return terms_.empty() ? 0 : terms_.back().first; }

void Scalar::add_term(int exponent, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, int e) { return t.first < e; });
  if (it != terms_.end() && it->first == exponent) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.emplace(it, exponent, coefficient);
  }
}

Scalar& Scalar::operator+=(const Scalar& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  if (a.is_zero() || b.is_zero()) return out;
  if (a.terms_.size() == 1 && b.terms_.size() == 1) {
    out.terms_.emplace_back(a.terms_[0].first + b.terms_[0].first, a.terms_[0].second * b.terms_[0].second);
    return out;
  }
  std::map<int, Rational> acc;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) acc[ea + eb] += ca * cb;
  }
  for (auto& [e, c] : acc) {
    if (c != 0) out.terms_.emplace_back(e, std::move(c));
  }
  return out;
}

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  thread_local Rational product;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      mpq_mul(product.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      add_term(ea + eb, product);
    }
  }
}

void Scalar::add_scaled(const Scalar& a, const Rational& factor) {
  if (factor == 0) return;
  thread_local Rational product;
  for (const auto& [e, c] : a.terms_) {
    mpq_mul(product.get_mpq_t(), c.get_mpq_t(), factor.get_mpq_t());
    add_term(e, product);
  }
}

Scalar& Scalar::operator*=(const Scalar& other) {
  *this = *this * other;
  return *this;
}

Scalar& Scalar::operator*=(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= factor;
  return *this;
}

Scalar& Scalar::operator/=(const Rational& divisor) {
  if (divisor == 0) throw InputError("division of Scalar by zero");
  for (auto& t : terms_) t.second /= divisor;
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += "pi";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

Scalar divide_exact(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw InputError("exact division by zero Scalar");
  if (a.is_zero()) return Scalar();
  if (b.is_monomial()) {
    const auto& [eb, cb] = b.terms().front();
    Scalar out;
    for (const auto& [ea, ca] : a.terms()) out += Scalar::pi_power(ea - eb, ca / cb);
    return out;
  }
  // Long division of shifted polynomials; b's shifted constant term is non-zero.
  const int shift_a = a.min_exponent();
  const int shift_b = b.min_exponent();
  std::map<int, Rational> rem;
  for (const auto& [e, c] : a.terms()) rem[e - shift_a] = c;
  const int deg_b = b.max_exponent() - shift_b;
  const Rational lead_b = b.terms().back().second;
  Scalar quotient;
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    int deg = top->first;
    if (deg < deg_b) throw InputError("Scalar division is not exact: " + a.to_string() + " / " + b.to_string());
    Rational factor = top->second / lead_b;
    int qdeg = deg - deg_b;
    quotient += Scalar::pi_power(qdeg, factor);
    for (const auto& [e, c] : b.terms()) {
      int target = e - shift_b + qdeg;
      Rational& slot = rem[target];
      slot -= factor * c;
      if (slot == 0) rem.erase(target);
    }
  }
  Scalar out;
  for (const auto& [e, c] : quotient.terms()) out += Scalar::pi_power(e + shift_a - shift_b, c);
  return out;
}

Scalar power(const Scalar& base, unsigned exponent) {
  Scalar result(1L);
  Scalar b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

}  // namespace valconv
