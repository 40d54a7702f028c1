#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "valconv/s3.hpp"
#include "valconv/valuation.hpp"

namespace valconv {

using Json = nlohmann::ordered_json;

// {"0":"1/2","2":"3"} for 1/2 + 3 pi^2. Plain rational strings and integers are accepted on input.
Json scalar_to_json(const Scalar& value);
Scalar scalar_from_json(const Json& j);

// {"name","dim","brackets":[{"i","j","coeffs":{"k":"q"}}]}, 1-based indices.
// An entry with i > j is read as [e_j, e_i] = -(coeffs).
Json lie_to_json(const LieAlgebra& lie);
LieAlgebra lie_from_json(const Json& j);
// Same as lie_from_json but keeps a table that violates Jacobi.
LieAlgebra lie_from_json_unchecked(const Json& j);

// {"degree","dim","values","terms":[{"k","dxi","value","num":{"(a1,..,an;e)":"q"},"rpow"}]}.
// A term's coefficient is sum q xi^a r^e times r^rpow and must have weight -k.
// dim may be omitted when some term fixes it or expected_dim >= 0.
Json form_to_json(const BigradedForm& form);
BigradedForm form_from_json(const Json& j, int expected_dim = -1);

// {"c": scalar, "tau": form, "lie": name}.
Json valuation_to_json(const InvariantValuation& v);
InvariantValuation valuation_from_json(const Json& j, int expected_dim = -1);

// {"basis":[...],"products":{"b_i*b_j":{"b_k":coefficient}}} with display strings.
Json algebra_to_json(const FinDimAlgebra& alg);
std::string algebra_to_markdown(const FinDimAlgebra& alg);

// Reads and parses a JSON file; throws InputError on I/O or syntax errors.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

// A readable file is parsed as Lie JSON; otherwise the argument names a built-in algebra.
LieAlgebra load_lie(const std::string& path_or_name);

}  // namespace valconv
