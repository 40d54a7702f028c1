#include "valconv/s3.hpp"

#include <utility>

#include "valconv/error.hpp"

namespace valconv {

namespace {

Scalar pi_pow(int e, const Rational& c = 1) { return Scalar::pi_power(e, c); }
Scalar q(long num, long den = 1) { return Scalar(Rational(num, den)); }

Scalar factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Scalar(f);
}

Scalar binomial(int n, int k) {
  if (k < 0 || k > n) return Scalar();
  return divide_exact(factorial(n), factorial(k) * factorial(n - k));
}

}  // namespace

// ------------------------------------------------------------ FinDimAlgebra

FinDimAlgebra::FinDimAlgebra(std::string name, std::vector<std::string> labels)
    : name_(std::move(name)), labels_(std::move(labels)) {
  if (labels_.empty()) throw InputError("algebra needs at least one basis element");
  table_.assign(labels_.size() * labels_.size(), zero());
}

int FinDimAlgebra::index_of(const std::string& label) const {
  for (int i = 0; i < dim(); ++i) {
    if (labels_[static_cast<std::size_t>(i)] == label) return i;
  }
  throw InputError("unknown basis label '" + label + "' in " + name_);
}

void FinDimAlgebra::set_product(int i, int j, AlgebraElement value) {
  if (i < 0 || j < 0 || i >= dim() || j >= dim()) throw InputError("basis index out of range");
  if (static_cast<int>(value.size()) != dim()) throw InputError("product has the wrong length");
  table_[static_cast<std::size_t>(i * dim() + j)] = std::move(value);
}

void FinDimAlgebra::set_symmetric(int i, int j, AlgebraElement value) {
  set_product(j, i, value);
  set_product(i, j, std::move(value));
}

const AlgebraElement& FinDimAlgebra::product(int i, int j) const {
  if (i < 0 || j < 0 || i >= dim() || j >= dim()) throw InputError("basis index out of range");
  return table_[static_cast<std::size_t>(i * dim() + j)];
}

AlgebraElement FinDimAlgebra::basis_element(int i) const {
  AlgebraElement e = zero();
  e.at(static_cast<std::size_t>(i)) = Scalar(1L);
  return e;
}

AlgebraElement FinDimAlgebra::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
  if (static_cast<int>(a.size()) != dim() || static_cast<int>(b.size()) != dim()) {
    throw InputError("element has the wrong length");
  }
  AlgebraElement out = zero();
  for (int i = 0; i < dim(); ++i) {
    if (a[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (b[static_cast<std::size_t>(j)].is_zero()) continue;
      const Scalar c = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
      const AlgebraElement& p = product(i, j);
      for (int k = 0; k < dim(); ++k) {
        if (!p[static_cast<std::size_t>(k)].is_zero()) out[static_cast<std::size_t>(k)] += c * p[static_cast<std::size_t>(k)];
      }
    }
  }
  return out;
}

AlgebraElement FinDimAlgebra::power(const AlgebraElement& a, unsigned exponent) const {
  if (exponent == 0) throw InputError("power exponent must be positive");
  AlgebraElement out = a;
  for (unsigned e = 1; e < exponent; ++e) out = multiply(out, a);
  return out;
}

bool FinDimAlgebra::is_commutative() const {
  for (int i = 0; i < dim(); ++i) {
    for (int j = i + 1; j < dim(); ++j) {
      if (product(i, j) != product(j, i)) return false;
    }
  }
  return true;
}

std::optional<std::array<int, 3>> FinDimAlgebra::associativity_failure() const {
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      for (int k = 0; k < dim(); ++k) {
        auto lhs = multiply(product(i, j), basis_element(k));
        auto rhs = multiply(basis_element(i), product(j, k));
        if (lhs != rhs) return std::array<int, 3>{i, j, k};
      }
    }
  }
  return std::nullopt;
}

std::optional<AlgebraElement> FinDimAlgebra::unit() const {
  const auto n = static_cast<std::size_t>(dim());
  ScalarMatrix a;
  std::vector<Scalar> b;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Scalar> left(n), right(n);
      for (std::size_t i = 0; i < n; ++i) {
        left[i] = product(static_cast<int>(i), static_cast<int>(j))[k];
        right[i] = product(static_cast<int>(j), static_cast<int>(i))[k];
      }
      const Scalar target = j == k ? Scalar(1L) : Scalar();
      a.push_back(std::move(left));
      b.push_back(target);
      a.push_back(std::move(right));
      b.push_back(target);
    }
  }
  try {
    return solve_exact(a, b);
  } catch (const SolverError&) {
    return std::nullopt;
  }
}

ScalarMatrix FinDimAlgebra::left_multiplication(const AlgebraElement& a) const {
  const auto n = static_cast<std::size_t>(dim());
  ScalarMatrix m(n, std::vector<Scalar>(n));
  for (std::size_t j = 0; j < n; ++j) {
    auto col = multiply(a, basis_element(static_cast<int>(j)));
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col[i];
  }
  return m;
}

std::string FinDimAlgebra::element_to_string(const AlgebraElement& a) const {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    std::string c = a[i].to_string();
    std::string term;
    if (c == "1") {
      term = labels_[i];
    } else if (c == "-1") {
      term = "-" + labels_[i];
    } else if (a[i].is_monomial()) {
      term = c + "*" + labels_[i];
    } else {
      term = "(" + c + ")*" + labels_[i];
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

AlgebraElement element(std::initializer_list<Scalar> coeffs) { return AlgebraElement(coeffs); }

bool is_zero(const AlgebraElement& a) {
  for (const auto& c : a) {
    if (!c.is_zero()) return false;
  }
  return true;
}

// ------------------------------------------------------------ tables

FinDimAlgebra nu_table() {
  FinDimAlgebra alg("nu", {"nu0", "nu1", "nu2", "nu3"});
  for (int k = 0; k < 4; ++k) alg.set_symmetric(k, 3, alg.basis_element(k));
  alg.set_symmetric(1, 1, element({0L, 0L, 0L, 4L}));
  alg.set_symmetric(0, 0, element({0L, 0L, 0L, 0L}));
  alg.set_symmetric(0, 2, element({0L, 0L, 0L, 0L}));
  alg.set_symmetric(2, 2, element({0L, pi_pow(2, Rational(1, 4)), 0L, pi_pow(2, Rational(-1, 2))}));
  alg.set_symmetric(0, 1, element({2L, 0L, 0L, 0L}));
  alg.set_symmetric(1, 2, element({2L, 0L, -2L, 0L}));
  return alg;
}

FinDimAlgebra mu_table() {
  FinDimAlgebra alg("mu", {"mu0", "mu1", "mu2", "mu3"});
  for (int k = 0; k < 4; ++k) {
    AlgebraElement e = alg.zero();
    e[static_cast<std::size_t>(k)] = pi_pow(2, 2);
    alg.set_symmetric(k, 3, e);
  }
  alg.set_symmetric(1, 1, element({0L, pi_pow(1, 2), 0L, q(3, 2)}));
  alg.set_symmetric(0, 0, element({0L, 0L, 0L, 0L}));
  alg.set_symmetric(0, 2, element({0L, 0L, 0L, 0L}));
  alg.set_symmetric(2, 2, element({0L, pi_pow(3), 0L, pi_pow(2, Rational(-3, 2))}));
  alg.set_symmetric(0, 1, element({pi_pow(1, 3), 0L, 0L, 0L}));
  alg.set_symmetric(1, 2, element({pi_pow(2, 4), 0L, pi_pow(1, -1), 0L}));
  return alg;
}

ScalarMatrix basis_change() {
  return {
      {1L, 0L, 0L, 0L},
      {0L, pi_pow(1), 0L, pi_pow(1)},
      {0L, 0L, pi_pow(1, 2), 0L},
      {0L, 0L, 0L, pi_pow(2, 2)},
  };
}

FinDimAlgebra change_basis(const FinDimAlgebra& alg, const ScalarMatrix& rows, std::string name,
                           std::vector<std::string> labels) {
  const int n = alg.dim();
  if (static_cast<int>(rows.size()) != n || static_cast<int>(labels.size()) != n) {
    throw InputError("basis change has the wrong size");
  }
  const ScalarMatrix back = inverse(rows);  // b_a = sum_k back[a][k] f_k
  FinDimAlgebra out(std::move(name), std::move(labels));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      AlgebraElement v = alg.multiply(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)]);
      AlgebraElement w = out.zero();
      for (int a = 0; a < n; ++a) {
        if (v[static_cast<std::size_t>(a)].is_zero()) continue;
        for (int k = 0; k < n; ++k) {
          w[static_cast<std::size_t>(k)] += v[static_cast<std::size_t>(a)] * back[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)];
        }
      }
      out.set_product(i, j, std::move(w));
    }
  }
  return out;
}

FinDimAlgebra truncated_polynomial_algebra(int n) {
  if (n < 1) throw InputError("truncated polynomial algebra needs n >= 1");
  std::vector<std::string> labels{"1"};
  for (int i = 1; i < n; ++i) labels.push_back(i == 1 ? "t" : "t" + std::to_string(i));
  FinDimAlgebra alg("C[t]/(t^" + std::to_string(n) + ")", labels);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      alg.set_product(i, j, i + j < n ? alg.basis_element(i + j) : alg.zero());
    }
  }
  return alg;
}

FinDimAlgebra field_algebra() {
  FinDimAlgebra alg("field", {"1"});
  alg.set_product(0, 0, alg.basis_element(0));
  return alg;
}

// ------------------------------------------------------------ checks

GradedInvolution nu_grading() { return {{1, -1, 1, -1}}; }
GradedInvolution mu_grading() { return {{1, -1, 1, -1}}; }

bool ev_check(const FinDimAlgebra& alg, const GradedInvolution& grading, int dim_group) {
  if (static_cast<int>(grading.eigenvalue.size()) != alg.dim()) throw InputError("grading does not cover the basis");
  for (int e : grading.eigenvalue) {
    if (e != 1 && e != -1) throw InputError("basis element without a declared Euler-Verdier eigenvalue");
  }
  const int twist = dim_group % 2 == 0 ? 1 : -1;
  for (int i = 0; i < alg.dim(); ++i) {
    for (int j = 0; j < alg.dim(); ++j) {
      const int expected = twist * grading.eigenvalue[static_cast<std::size_t>(i)] * grading.eigenvalue[static_cast<std::size_t>(j)];
      const AlgebraElement& p = alg.product(i, j);
      for (int k = 0; k < alg.dim(); ++k) {
        if (!p[static_cast<std::size_t>(k)].is_zero() && grading.eigenvalue[static_cast<std::size_t>(k)] != expected) return false;
      }
    }
  }
  return true;
}

bool character_check(const FinDimAlgebra& alg, const std::vector<Scalar>& values) {
  if (static_cast<int>(values.size()) != alg.dim()) throw InputError("character needs one value per basis element");
  bool nonzero = false;
  for (const auto& v : values) nonzero = nonzero || !v.is_zero();
  if (!nonzero) return false;
  for (int i = 0; i < alg.dim(); ++i) {
    for (int j = 0; j < alg.dim(); ++j) {
      Scalar lhs;
      const AlgebraElement& p = alg.product(i, j);
      for (int k = 0; k < alg.dim(); ++k) lhs += values[static_cast<std::size_t>(k)] * p[static_cast<std::size_t>(k)];
      if (lhs != values[static_cast<std::size_t>(i)] * values[static_cast<std::size_t>(j)]) return false;
    }
  }
  return true;
}

PairingReport pairing_matrix(const FinDimAlgebra& alg, const std::vector<Scalar>& eval_at_e) {
  if (static_cast<int>(eval_at_e.size()) != alg.dim()) throw InputError("evaluation vector has the wrong length");
  const auto n = static_cast<std::size_t>(alg.dim());
  PairingReport report;
  report.matrix.assign(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const AlgebraElement& p = alg.product(static_cast<int>(i), static_cast<int>(j));
      for (std::size_t k = 0; k < n; ++k) report.matrix[i][j] += eval_at_e[k] * p[k];
    }
  }
  report.det = determinant(report.matrix);
  report.nonsingular = !report.det.is_zero();
  report.symmetric = report.matrix == transpose(report.matrix);
  return report;
}

QuotientReport quotient_iso_check(const FinDimAlgebra& alg, const AlgebraElement& generator,
                                  const std::vector<Scalar>& relation) {
  if (!alg.is_commutative()) throw InputError("quotient check needs a commutative algebra");
  auto one = alg.unit();
  if (!one) throw InputError("quotient check needs a unital algebra");
  if (relation.size() < 2) throw InputError("relation polynomial must have positive degree");
  const std::size_t degree = relation.size() - 1;
  QuotientReport report;
  report.powers.push_back(*one);
  for (std::size_t i = 1; i <= degree; ++i) report.powers.push_back(alg.multiply(report.powers.back(), generator));

  ScalarMatrix span(degree, std::vector<Scalar>());
  for (std::size_t i = 0; i < degree; ++i) span[i] = report.powers[i];
  report.independent = matrix_rank(span) == static_cast<int>(degree);

  AlgebraElement total = alg.zero();
  for (std::size_t i = 0; i <= degree; ++i) {
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += relation[i] * report.powers[i][k];
  }
  report.relation_holds = is_zero(total);
  return report;
}

int nilradical_dim(const FinDimAlgebra& alg) {
  if (!alg.is_commutative()) throw InputError("nilradical_dim expects a commutative algebra");
  const auto n = static_cast<std::size_t>(alg.dim());
  ScalarMatrix form(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const ScalarMatrix l = alg.left_multiplication(alg.product(static_cast<int>(i), static_cast<int>(j)));
      for (std::size_t k = 0; k < n; ++k) form[i][j] += l[k][k];
    }
  }
  return alg.dim() - matrix_rank(form);
}

// ------------------------------------------------------------ template method

Scalar unit_ball_volume(int k) {
  if (k < 0) throw InputError("negative ball dimension");
  if (k % 2 == 0) return divide_exact(pi_pow(k / 2), factorial(k / 2));
  // 2^k ((k-1)/2)! pi^{(k-1)/2} / k!
  Rational two_k = 1;
  for (int i = 0; i < k; ++i) two_k *= 2;
  return divide_exact(pi_pow((k - 1) / 2, two_k) * factorial((k - 1) / 2), factorial(k));
}

Scalar chi_sphere(int i) { return Scalar(i % 2 == 0 ? 2L : 0L); }

Scalar mu_ball(int n, int i) {
  if (i < 0 || i > n) return Scalar();
  return divide_exact(binomial(n, i) * unit_ball_volume(n), unit_ball_volume(n - i));
}

Scalar mu_sphere(int i, int j) {
  if (i < 0 || i > j) return Scalar();
  if (i == j) return Scalar(static_cast<long>(i + 1)) * unit_ball_volume(i + 1);
  // A great j-sphere bounds a (j+1)-ball; only degrees of the parity of j survive.
  if ((j - i) % 2 != 0) return Scalar();
  return Scalar(2L) * mu_ball(j + 1, i);
}

void TemplateData::set(const std::string& valuation, const std::string& body, const Scalar& value) {
  values_[{valuation, body}] = value;
}

bool TemplateData::has(const std::string& valuation, const std::string& body) const {
  return values_.count({valuation, body}) != 0;
}

const Scalar& TemplateData::get(const std::string& valuation, const std::string& body) const {
  auto it = values_.find({valuation, body});
  if (it == values_.end()) throw InputError("no template value for " + valuation + " on " + body);
  return it->second;
}

TemplateData s3_template_data() {
  TemplateData data;
  for (int j = 0; j <= 3; ++j) {
    const std::string body = "S" + std::to_string(j);
    data.set("chi", body, chi_sphere(j));
    for (int i = 0; i <= 3; ++i) data.set("mu" + std::to_string(i), body, mu_sphere(i, j));
    // nu_k averages the Euler characteristic of sections by great (3-k)-spheres.
    for (int k = 0; k <= 2; ++k) data.set("nu" + std::to_string(k), body, j >= k ? chi_sphere(j - k) : Scalar());
    data.set("nu3", body, Scalar(j == 3 ? 1L : 0L));
  }
  data.set("chi", "point", Scalar(1L));
  for (int i = 0; i <= 3; ++i) {
    data.set("mu" + std::to_string(i), "point", Scalar(i == 0 ? 1L : 0L));
    data.set("nu" + std::to_string(i), "point", Scalar(i == 0 ? 1L : 0L));
  }
  // Evaluations of nu1 * nu1 on S^3 and on a great circle.
  data.set("nu1*nu1", "S3", Scalar(4L));
  data.set("nu1*nu1", "S1", Scalar());
  return data;
}

std::vector<Scalar> template_solve(const TemplateData& data, const std::string& target,
                                   const std::vector<std::string>& ansatz, const std::vector<std::string>& bodies) {
  if (ansatz.empty()) throw InputError("empty ansatz");
  ScalarMatrix a;
  std::vector<Scalar> b;
  for (const auto& body : bodies) {
    std::vector<Scalar> row;
    for (const auto& name : ansatz) row.push_back(data.get(name, body));
    a.push_back(std::move(row));
    b.push_back(data.get(target, body));
  }
  return solve_exact(a, b);
}

}  // namespace valconv
