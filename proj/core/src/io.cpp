#include "valconv/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "valconv/error.hpp"

namespace valconv {

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("expected a rational string, got " + j.dump());
}

int int_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw InputError(std::string("missing or non-integer field '") + key + "'");
  }
  return j.at(key).get<int>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int parse_int(const std::string& text) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw InputError("bad integer '" + text + "'");
  }
  if (used != text.size()) throw InputError("bad integer '" + text + "'");
  return value;
}

IndexSet index_set_from_json(const Json& j, int dim) {
  if (!j.is_array()) throw InputError("index list must be an array");
  std::vector<int> indices;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw InputError("index list entries must be integers");
    const int i = e.get<int>();
    if (i < 1 || i > dim) throw InputError("index " + std::to_string(i) + " out of range 1.." + std::to_string(dim));
    indices.push_back(i);
  }
  // Index lists are unordered sets here; a repeated index is an error.
  return IndexSet::from_indices(indices);
}

// "(a1,..,an;e)" -> exponents and r-exponent.
std::pair<std::vector<int>, int> parse_num_key(const std::string& key) {
  if (key.size() < 3 || key.front() != '(' || key.back() != ')') throw InputError("bad monomial key '" + key + "'");
  const std::string body = key.substr(1, key.size() - 2);
  const auto semi = body.find(';');
  if (semi == std::string::npos) throw InputError("monomial key '" + key + "' lacks ';'");
  std::vector<int> exps;
  std::stringstream ss(body.substr(0, semi));
  std::string part;
  while (std::getline(ss, part, ',')) {
    const int e = parse_int(part);
    if (e < 0 || e > 64) throw InputError("exponent out of range in '" + key + "'");
    exps.push_back(e);
  }
  return {exps, parse_int(body.substr(semi + 1))};
}

std::string num_key(const std::vector<int>& exps, int r_exp) {
  std::string out = "(";
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(exps[i]);
  }
  return out + ";" + std::to_string(r_exp) + ")";
}

Json coefficient_json(const Scalar& s) {
  if (s.is_rational()) return rational_to_string(s.coefficient(0));
  return scalar_to_json(s);
}

ValueSpace space_from_string(const std::string& s) {
  if (s == "dual") return ValueSpace::Dual;
  if (s == "primal") return ValueSpace::Primal;
  if (s == "scalar") return ValueSpace::Scalar;
  throw InputError("unknown value space '" + s + "'");
}

LieAlgebra lie_from_json_impl(const Json& j, bool checked) {
  if (!j.is_object()) throw InputError("Lie algebra JSON must be an object");
  const std::string name = field(j, "name").is_string() ? j.at("name").get<std::string>() : "";
  if (name.empty()) throw InputError("Lie algebra needs a non-empty name");
  const int dim = int_field(j, "dim");
  if (dim < 1 || dim > 8) throw InputError("Lie algebra dimension must be in 1..8");
  std::vector<BracketEntry> entries;
  std::set<std::pair<int, int>> seen;
  const Json& brackets = j.contains("brackets") ? j.at("brackets") : Json::array();
  if (!brackets.is_array()) throw InputError("'brackets' must be an array");
  for (const auto& b : brackets) {
    int i = int_field(b, "i");
    int jj = int_field(b, "j");
    if (i < 1 || jj < 1 || i > dim || jj > dim) throw InputError("bracket index out of range");
    if (i == jj) throw InputError("bracket entry with i = j");
    Rational sign = 1;
    if (i > jj) {
      std::swap(i, jj);
      sign = -1;
    }
    if (!seen.insert({i, jj}).second) throw InputError("duplicate bracket entry for (" + std::to_string(i) + "," + std::to_string(jj) + ")");
    BracketEntry entry{i, jj, {}};
    const Json& coeffs = field(b, "coeffs");
    if (!coeffs.is_object()) throw InputError("'coeffs' must be an object");
    for (const auto& [k, v] : coeffs.items()) {
      const int idx = parse_int(k);
      if (idx < 1 || idx > dim) throw InputError("bracket coefficient index out of range");
      entry.coeffs.emplace_back(idx, sign * rational_from_json(v));
    }
    entries.push_back(std::move(entry));
  }
  return checked ? LieAlgebra(name, dim, entries) : LieAlgebra::unchecked(name, dim, entries);
}

}  // namespace

Json scalar_to_json(const Scalar& value) {
  Json out = Json::object();
  for (const auto& [e, q] : value.terms()) out[std::to_string(e)] = rational_to_string(q);
  return out;
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string() || j.is_number_integer()) return Scalar(rational_from_json(j));
  if (!j.is_object()) throw InputError("scalar must be an object mapping pi exponents to rationals");
  Scalar out;
  for (const auto& [k, v] : j.items()) out += Scalar::pi_power(parse_int(k), rational_from_json(v));
  return out;
}

Json lie_to_json(const LieAlgebra& lie) {
  Json brackets = Json::array();
  for (const auto& b : lie.brackets()) {
    Json coeffs = Json::object();
    for (const auto& [k, q] : b.coeffs) {
      if (q != 0) coeffs[std::to_string(k)] = rational_to_string(q);
    }
    brackets.push_back({{"i", b.i}, {"j", b.j}, {"coeffs", coeffs}});
  }
  return {{"name", lie.name()}, {"dim", lie.dim()}, {"brackets", brackets}};
}

LieAlgebra lie_from_json(const Json& j) { return lie_from_json_impl(j, true); }
LieAlgebra lie_from_json_unchecked(const Json& j) { return lie_from_json_impl(j, false); }

Json form_to_json(const BigradedForm& form) {
  Json terms = Json::array();
  const int n = form.dim();
  for (int k = form.k_min(); k <= form.k_max(); ++k) {
    const BasicForm& c = form.component(k);
    for (const auto& [key, poly] : c.terms()) {
      const int top = poly.max_degree();
      Json num = Json::object();
      for (const auto& [m, s] : poly.terms()) num[num_key(mono::exponents(m, n), top - mono::degree(m))] = coefficient_json(s);
      terms.push_back({{"k", k},
                       {"dxi", key.dxi.indices()},
                       {"value", key.value.indices()},
                       {"num", num},
                       {"rpow", -k - top}});
    }
  }
  return {{"degree", form.degree()}, {"dim", n}, {"values", to_string(form.space())}, {"terms", terms}};
}

BigradedForm form_from_json(const Json& j, int expected_dim) {
  if (!j.is_object()) throw InputError("form JSON must be an object");
  const int degree = int_field(j, "degree");
  const ValueSpace space = space_from_string(field(j, "values").get<std::string>());
  const Json& terms = j.contains("terms") ? j.at("terms") : Json::array();
  if (!terms.is_array()) throw InputError("'terms' must be an array");

  int dim = j.contains("dim") ? int_field(j, "dim") : -1;
  if (dim < 0) {
    for (const auto& t : terms) {
      if (t.contains("num") && t.at("num").is_object() && !t.at("num").empty()) {
        dim = static_cast<int>(parse_num_key(t.at("num").begin().key()).first.size());
        break;
      }
    }
  }
  if (dim < 0) dim = expected_dim;
  if (dim < 1 || dim > 8) throw InputError("cannot determine the form dimension");
  if (expected_dim >= 0 && dim != expected_dim) {
    throw InputError("form dimension " + std::to_string(dim) + " does not match the Lie algebra (" +
                     std::to_string(expected_dim) + ")");
  }
  if (degree < 0 || degree > 2 * dim) throw InputError("form degree out of range");

  BigradedForm out(dim, degree, space);
  for (const auto& t : terms) {
    const int k = int_field(t, "k");
    if (!out.has_component(k)) throw InputError("component k = " + std::to_string(k) + " out of range");
    const IndexSet dxi = index_set_from_json(field(t, "dxi"), dim);
    const IndexSet value = index_set_from_json(t.contains("value") ? t.at("value") : Json::array(), dim);
    if (dxi.size() != k) throw InputError("term with k = " + std::to_string(k) + " has " + std::to_string(dxi.size()) + " dxi factors");
    if (value.size() != out.value_grade(k)) {
      throw InputError("value grade " + std::to_string(value.size()) + " does not match degree " + std::to_string(degree) +
                        " at k = " + std::to_string(k));
    }
    const int rpow = t.contains("rpow") ? int_field(t, "rpow") : 0;
    SpherePoly poly(dim);
    for (const auto& [key, v] : field(t, "num").items()) {
      auto [exps, r_exp] = parse_num_key(key);
      if (static_cast<int>(exps.size()) != dim) throw InputError("monomial '" + key + "' has the wrong number of exponents");
      int weight = r_exp + rpow;
      for (int e : exps) weight += e;
      if (weight != -k) {
        throw InputError("coefficient '" + key + "' has weight " + std::to_string(weight) + ", expected " + std::to_string(-k));
      }
      // On the unit sphere r = 1.
      poly.add_monomial(mono::make(exps), v.is_object() ? scalar_from_json(v) : Scalar(rational_from_json(v)));
    }
    BasicForm piece(dim, space, k, out.value_grade(k));
    piece.add(dxi, value, poly);
    out.add_to_component(k, piece);
  }
  for (int k = out.k_min(); k <= out.k_max(); ++k) {
    if (!is_basic(out.component(k))) throw InputError("component k = " + std::to_string(k) + " is not basic (iota_E != 0)");
  }
  return out;
}

Json valuation_to_json(const InvariantValuation& v) {
  return {{"c", scalar_to_json(v.c)}, {"tau", form_to_json(v.tau)}, {"lie", v.lie}};
}

InvariantValuation valuation_from_json(const Json& j, int expected_dim) {
  if (!j.is_object()) throw InputError("valuation JSON must be an object");
  InvariantValuation v;
  v.c = scalar_from_json(field(j, "c"));
  v.tau = form_from_json(field(j, "tau"), expected_dim);
  if (v.tau.space() != ValueSpace::Dual || v.tau.degree() != v.tau.dim()) {
    throw InputError("a valuation needs a dual-valued form of degree n");
  }
  v.lie = j.contains("lie") && j.at("lie").is_string() ? j.at("lie").get<std::string>() : "";
  return v;
}

Json algebra_to_json(const FinDimAlgebra& alg) {
  Json products = Json::object();
  for (int i = 0; i < alg.dim(); ++i) {
    for (int j = 0; j < alg.dim(); ++j) {
      Json entry = Json::object();
      const AlgebraElement& p = alg.product(i, j);
      for (int k = 0; k < alg.dim(); ++k) {
        if (!p[static_cast<std::size_t>(k)].is_zero()) entry[alg.labels()[static_cast<std::size_t>(k)]] = p[static_cast<std::size_t>(k)].to_string();
      }
      products[alg.labels()[static_cast<std::size_t>(i)] + "*" + alg.labels()[static_cast<std::size_t>(j)]] = entry;
    }
  }
  return {{"name", alg.name()}, {"basis", alg.labels()}, {"products", products}};
}

std::string algebra_to_markdown(const FinDimAlgebra& alg) {
  const auto n = static_cast<std::size_t>(alg.dim());
  std::vector<std::vector<std::string>> cells(n + 1, std::vector<std::string>(n + 1));
  cells[0][0] = "*";
  for (std::size_t i = 0; i < n; ++i) {
    cells[0][i + 1] = alg.labels()[i];
    cells[i + 1][0] = alg.labels()[i];
    for (std::size_t j = 0; j < n; ++j) {
      cells[i + 1][j + 1] = alg.element_to_string(alg.product(static_cast<int>(i), static_cast<int>(j)));
    }
  }
  std::vector<std::size_t> width(n + 1, 3);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c <= n; ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& row) {
    std::string s = "|";
    for (std::size_t c = 0; c <= n; ++c) s += " " + row[c] + std::string(width[c] - row[c].size(), ' ') + " |";
    return s + "\n";
  };
  std::string out = line(cells[0]);
  out += "|";
  for (std::size_t c = 0; c <= n; ++c) out += std::string(width[c] + 2, '-') + "|";
  out += "\n";
  for (std::size_t r = 1; r <= n; ++r) out += line(cells[r]);
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw InputError("write failed for " + path.string());
}

LieAlgebra load_lie(const std::string& path_or_name) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(path_or_name, ec)) {
    try {
      return lie_from_json(read_json_file(path_or_name));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path_or_name + ": " + e.what());
    }
  }
  return builtin_lie_algebra(path_or_name);
}

}  // namespace valconv
