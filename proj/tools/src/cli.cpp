#include "valconv_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "valconv/error.hpp"
#include "valconv/io.hpp"
#include "valconv_cli/suite.hpp"

namespace valconv::cli {

namespace {

struct Style {
  bool color = false;
  std::string pass() const { return color ? "\x1b[32mPASS\x1b[0m" : "PASS"; }
  std::string fail() const { return color ? "\x1b[31mFAIL\x1b[0m" : "FAIL"; }
  std::string verdict(bool ok) const { return ok ? pass() : fail(); }
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Errors that are reported with exit code 1 rather than 2.
class Violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit_json(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << "\n";
  } else {
    write_json_file(path, j);
  }
}

// ---------------------------------------------------------------- lie

int cmd_lie_check(const std::string& source, const std::string& format, std::ostream& out, const Style&) {
  std::optional<LieAlgebra> lie;
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) {
    lie = lie_from_json_unchecked(read_json_file(source));
  } else {
    lie = builtin_lie_algebra(source);
  }
  const auto verdict = lie->is_unimodular();
  const auto jacobi = lie->jacobi_violation();
  std::string unimodular = "yes";
  if (!verdict.unimodular) {
    unimodular = "no (tr ad_e" + std::to_string(verdict.witness) + " = " + rational_to_string(verdict.trace) + ")";
  }
  if (format == "json") {
    Json traces = Json::object();
    for (std::size_t i = 0; i < verdict.traces.size(); ++i) traces["e" + std::to_string(i + 1)] = rational_to_string(verdict.traces[i]);
    Json report = {{"name", lie->name()}, {"dim", lie->dim()}, {"unimodular", verdict.unimodular}, {"traces", traces}};
    report["jacobi"] = jacobi ? Json{{"ok", false}, {"triple", {jacobi->i, jacobi->j, jacobi->k}}} : Json{{"ok", true}};
    out << report.dump(2) << "\n";
  } else {
    out << "lie: " << lie->name() << " (dim " << lie->dim() << ")\n";
    for (std::size_t i = 0; i < verdict.traces.size(); ++i) {
      out << "  tr ad_e" << i + 1 << " = " << rational_to_string(verdict.traces[i]) << "\n";
    }
    if (jacobi) {
      out << "jacobi: violated at (e" << jacobi->i << ", e" << jacobi->j << ", e" << jacobi->k << ")\n";
    } else {
      out << "jacobi: ok\n";
    }
    out << "unimodular: " << unimodular << "\n";
  }
  return jacobi ? kViolation : kOk;
}

// ---------------------------------------------------------------- forms

BigradedForm load_form(const std::string& path) { return form_from_json(read_json_file(path)); }

void require_dim(const LieAlgebra& lie, const BigradedForm& form, const std::string& what) {
  if (form.dim() != lie.dim()) {
    throw Violation(what + " has dimension " + std::to_string(form.dim()) + " but " + lie.name() + " has dimension " +
                    std::to_string(lie.dim()));
  }
}

int cmd_forms_convolve(const std::string& lie_src, const std::string& lhs, const std::string& rhs, const std::string& out_path,
                       bool strict, std::ostream& out, std::ostream& err) {
  const LieAlgebra lie = load_lie(lie_src);
  const BigradedForm a = load_form(lhs), b = load_form(rhs);
  require_dim(lie, a, lhs);
  require_dim(lie, b, rhs);
  ConvolveOptions options;
  options.strict_invariance = strict;
  const BigradedForm r = convolve_forms(lie, a, b, options);
  emit_json(form_to_json(r), out_path, out);
  (out_path.empty() ? err : out) << "degree: " << a.degree() << " + " << b.degree() << " - " << lie.dim() << " = " << r.degree()
                                 << "\n";
  return kOk;
}

int cmd_forms_d(const std::string& lie_src, const std::string& path, const std::string& out_path, std::ostream& out) {
  const LieAlgebra lie = load_lie(lie_src);
  const BigradedForm a = load_form(path);
  require_dim(lie, a, path);
  emit_json(form_to_json(d_total(lie, a)), out_path, out);
  return kOk;
}

int cmd_forms_integrate(const std::string& path, const std::string& format, std::ostream& out) {
  const BigradedForm a = load_form(path);
  Json result = Json::object();
  std::vector<std::pair<std::string, Scalar>> rows;
  if (a.space() == ValueSpace::Scalar) {
    if (a.degree() != a.dim() - 1) throw DegreeError("a scalar form must have degree n - 1 to be integrated");
    rows.emplace_back("1", sphere_integrate(a.component(a.degree())));
  } else if (a.space() == ValueSpace::Dual) {
    const auto integrals = top_integral(a);
    for (const auto& [blade, value] : integrals.terms()) rows.emplace_back("e*" + blade.to_string(), value);
  } else {
    throw InputError("integration expects dual or scalar values");
  }
  if (format == "json") {
    for (const auto& [k, v] : rows) result[k] = scalar_to_json(v);
    out << result.dump(2) << "\n";
  } else if (rows.empty()) {
    out << "0\n";
  } else {
    for (const auto& [k, v] : rows) out << k << ": " << v.to_string() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- valuations

InvariantValuation load_valuation(const LieAlgebra& lie, const std::string& path) {
  InvariantValuation v = valuation_from_json(read_json_file(path));
  if (!v.lie.empty() && v.lie != lie.name()) {
    throw Violation(path + " is a valuation on " + v.lie + ", not on " + lie.name());
  }
  require_dim(lie, v.tau, path);
  v.lie = lie.name();
  return v;
}

int cmd_val_convolve(const std::string& lie_src, const std::string& lhs, const std::string& rhs, const std::string& out_path,
                     bool strict, std::ostream& out, std::ostream& err) {
  const LieAlgebra lie = load_lie(lie_src);
  const InvariantValuation phi = load_valuation(lie, lhs), psi = load_valuation(lie, rhs);
  ValuationConvolveOptions options;
  options.strict_invariance = strict;
  const InvariantValuation r = convolve_valuations(lie, phi, psi, options);
  emit_json(valuation_to_json(r), out_path, out);
  (out_path.empty() ? err : out) << "mu: " << mu_of(r).to_string() << " = (" << mu_of(phi).to_string() << ") * ("
                                 << mu_of(psi).to_string() << ")\n";
  return kOk;
}

int cmd_val_validate(const std::string& lie_src, const std::string& path, std::ostream& out, const Style& style) {
  const LieAlgebra lie = load_lie(lie_src);
  const InvariantValuation v = load_valuation(lie, path);
  const ValidationReport report = validate(lie, v);
  out << style.verdict(report.vertical) << " vertical\n";
  out << style.verdict(report.closed) << " closed\n";
  out << style.verdict(report.zero_top_integral) << " zero top integral\n";
  out << style.verdict(report.primitive) << " primitive\n";
  if (!report.detail.empty()) out << "detail: " << report.detail << "\n";
  if (report.ok()) out << "mu: " << mu_of(v).to_string() << "\n";
  return report.ok() ? kOk : kViolation;
}

int cmd_val_builtin(const std::string& lie_src, const std::string& which, const std::string& out_path, std::ostream& out) {
  const LieAlgebra lie = load_lie(lie_src);
  if (which == "haar") {
    emit_json(valuation_to_json(haar_valuation(lie)), out_path, out);
  } else if (which == "chi") {
    emit_json(valuation_to_json(euler_characteristic(lie)), out_path, out);
  } else {
    throw InputError("unknown built-in valuation '" + which + "' (expected haar or chi)");
  }
  return kOk;
}

// ---------------------------------------------------------------- s3

FinDimAlgebra s3_algebra(const std::string& basis) {
  if (basis == "nu") return nu_table();
  if (basis == "mu") return mu_table();
  throw InputError("unknown basis '" + basis + "' (expected nu or mu)");
}

int cmd_s3_table(const std::string& basis, const std::string& format, std::ostream& out) {
  const FinDimAlgebra alg = s3_algebra(basis);
  if (format == "json") {
    out << algebra_to_json(alg).dump(2) << "\n";
  } else {
    out << algebra_to_markdown(alg);
  }
  return kOk;
}

std::vector<std::pair<std::string, bool>> s3_checks() {
  std::vector<std::pair<std::string, bool>> checks;
  auto add = [&](const std::string& name, const std::function<bool()>& f) {
    bool ok = false;
    try {
      ok = f();
    } catch (const std::exception&) {
      ok = false;
    }
    checks.emplace_back(name, ok);
  };
  const FinDimAlgebra nu = nu_table(), mu = mu_table();
  const Scalar pi = Scalar::pi_power(1);
  const std::vector<Scalar> nu_values{0L, 2L, 0L, 1L};
  const std::vector<Scalar> mu_values{0L, pi * Scalar(3L), 0L, Scalar::pi_power(2, 2)};

  add("nu table commutative", [&] { return nu.is_commutative(); });
  add("nu table associative", [&] { return nu.is_associative(); });
  add("mu table commutative", [&] { return mu.is_commutative(); });
  add("mu table associative", [&] { return mu.is_associative(); });
  add("basis change invertible", [&] { return determinant(basis_change()) == Scalar::pi_power(4, 4); });
  add("basis change maps nu table to mu table", [&] {
    const FinDimAlgebra t = change_basis(nu, basis_change(), "mu", mu.labels());
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (t.product(i, j) != mu.product(i, j)) return false;
      }
    }
    return true;
  });
  add("nu3 is the unit", [&] { return nu.unit() == nu.basis_element(3); });
  add("mu3/(2 pi^2) is the unit", [&] {
    return mu.unit() == element({0L, 0L, 0L, Scalar::pi_power(-2, Rational(1, 2))});
  });
  add("Euler-Verdier grading (nu)", [&] { return ev_check(nu, nu_grading(), 3); });
  add("Euler-Verdier grading (mu)", [&] { return ev_check(mu, mu_grading(), 3); });
  add("Haar component is a character (nu)", [&] { return character_check(nu, nu_values); });
  add("Haar component is a character (mu)", [&] { return character_check(mu, mu_values); });
  add("chi ideal", [&] {
    for (int x = 0; x < 4; ++x) {
      AlgebraElement expected = nu.basis_element(0);
      for (auto& c : expected) c = c * nu_values[static_cast<std::size_t>(x)];
      if (nu.product(0, x) != expected) return false;
    }
    return is_zero(nu.product(0, 0));
  });
  add("pairing at the identity is perfect", [&] {
    const PairingReport r = pairing_matrix(nu, {1L, 0L, 0L, 0L});
    return r.nonsingular && r.symmetric;
  });
  add("t -> nu2/pi satisfies t^4 = -t^2", [&] {
    AlgebraElement g = nu.zero();
    g[2] = Scalar::pi_power(-1);
    return quotient_iso_check(nu, g, {0L, 0L, 1L, 0L, 1L}).ok();
  });
  add("nilradical differs from C[t]/(t^4)", [&] {
    return nilradical_dim(truncated_polynomial_algebra(4)) == 3 && nilradical_dim(nu) < 3;
  });
  add("template method: nu1 and nu2 in the mu basis", [&] {
    const TemplateData data = s3_template_data();
    const auto x = template_solve(data, "nu1", {"mu1", "mu3"}, {"S1", "S3"});
    const auto y = template_solve(data, "nu2", {"mu0", "mu2"}, {"point", "S2"});
    return x == std::vector<Scalar>{Scalar::pi_power(-1), Scalar::pi_power(-2, Rational(-1, 2))} &&
           y == std::vector<Scalar>{Scalar(), Scalar::pi_power(-1, Rational(1, 2))};
  });
  add("template method: nu1 * nu1 = 4 nu3", [&] {
    const auto x = template_solve(s3_template_data(), "nu1*nu1", {"nu1", "nu3"}, {"S1", "S3"});
    return x == std::vector<Scalar>{Scalar(), Scalar(4L)} && nu.product(1, 1) == element({0L, 0L, 0L, 4L});
  });
  add("template data consistent with the basis change", [&] {
    const TemplateData data = s3_template_data();
    const ScalarMatrix b = basis_change();
    for (const std::string body : {"point", "S0", "S1", "S2", "S3"}) {
      for (int i = 0; i < 4; ++i) {
        Scalar via_nu;
        for (int j = 0; j < 4; ++j) via_nu += b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * data.get("nu" + std::to_string(j), body);
        if (via_nu != data.get("mu" + std::to_string(i), body)) return false;
      }
    }
    return true;
  });
  return checks;
}

int cmd_s3_verify(const std::string& format, std::ostream& out, const Style& style) {
  const auto checks = s3_checks();
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
  if (format == "json") {
    Json list = Json::array();
    for (const auto& [name, pass] : checks) list.push_back({{"name", name}, {"pass", pass}});
    out << Json{{"checks", list}, {"ok", ok}}.dump(2) << "\n";
  } else {
    for (const auto& [name, pass] : checks) out << style.verdict(pass) << " " << name << "\n";
  }
  return ok ? kOk : kViolation;
}

// ---------------------------------------------------------------- suite

struct SuiteArgs {
  std::string lie;
  SuiteOptions options;
  std::string format = "text";
  std::string report_path;
  std::string counterexample_dir = ".";
  bool timing = false;
};

std::string safe_name(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  }
  return s;
}

int cmd_suite(const SuiteArgs& args, std::ostream& out, std::ostream& err, const Style& style) {
  const LieAlgebra lie = load_lie(args.lie);
  const auto start = std::chrono::steady_clock::now();
  const SuiteReport report = run_suite(lie, args.options);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Json json = report.to_json(args.timing);
  if (args.timing) json["wall_time_s"] = seconds;
  if (!args.report_path.empty()) write_json_file(args.report_path, json);

  for (const auto& p : report.properties) {
    if (p.status != "fail") continue;
    const std::filesystem::path file = std::filesystem::path(args.counterexample_dir) /
                                       ("counterexample-" + safe_name(report.lie) + "-" + safe_name(p.name) + "-seed" +
                                        std::to_string(args.options.seed) + ".json");
    write_json_file(file, p.counterexample);
    err << "counterexample for " << p.name << " written to " << file.string() << "\n";
  }

  if (args.format == "json") {
    out << json.dump(2) << "\n";
  } else if (args.format == "md") {
    out << report.to_markdown(args.timing);
  } else {
    out << "suite on " << report.lie << " (seed " << args.options.seed << ", trials " << args.options.trials << ", max-deg "
        << args.options.max_deg << ")\n";
    for (const auto& p : report.properties) {
      const std::string tag = p.status == "pass" ? style.pass() : p.status == "fail" ? style.fail() : "SKIP";
      out << tag << " " << p.name;
      if (p.status != "skip") out << " (" << p.trials << " trial" << (p.trials == 1 ? "" : "s") << ")";
      if (!p.detail.empty()) out << ": " << p.detail;
      if (args.timing && p.status != "skip") out << " [" << p.seconds << " s]";
      out << "\n";
    }
    out << report.count("pass") << " passed, " << report.count("fail") << " failed, " << report.count("skip") << " skipped\n";
    if (args.timing) out << "wall time: " << seconds << " s\n";
  }
  return report.all_pass() ? kOk : kViolation;
}

}  // namespace

bool color_enabled(bool color_default) {
  const char* env = std::getenv("VALCONV_COLOR");
  if (env == nullptr) return color_default;
  const std::string v = lower(env);
  if (v == "0" || v == "never" || v == "off" || v == "false" || v == "no") return false;
  if (v == "1" || v == "always" || v == "on" || v == "true" || v == "yes") return true;
  return color_default;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color_default) {
  const Style style{color_enabled(color_default)};
  CLI::App app{"Exact convolution of invariant forms and valuations on unimodular Lie groups", "valconv"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "valconv 1.0.0");

  std::function<int()> action;
  const std::vector<std::string> text_json{"text", "json"};

  // lie check
  auto* lie_cmd = app.add_subcommand("lie", "Lie algebra structure constants")->require_subcommand(1);
  std::string lie_src, lie_format = "text";
  auto* lie_check = lie_cmd->add_subcommand("check", "Check Jacobi and unimodularity");
  lie_check->add_option("algebra", lie_src, "Lie algebra JSON file or built-in name")->required();
  lie_check->add_option("--format", lie_format)->check(CLI::IsMember(text_json));
  lie_check->callback([&] { action = [&] { return cmd_lie_check(lie_src, lie_format, out, style); }; });

  // forms
  auto* forms = app.add_subcommand("forms", "Invariant forms")->require_subcommand(1);
  std::string f_lie, f_lhs, f_rhs, f_out, f_format = "text";
  bool f_strict = false;
  auto* f_conv = forms->add_subcommand("convolve", "Convolution of two dual-valued forms");
  f_conv->add_option("lhs", f_lhs)->required();
  f_conv->add_option("rhs", f_rhs)->required();
  f_conv->add_option("--lie", f_lie)->required();
  f_conv->add_option("-o,--out", f_out, "Output file (default: stdout)");
  f_conv->add_flag("--strict-invariance", f_strict, "Reject a left factor that is not Ad-invariant");
  f_conv->callback([&] { action = [&] { return cmd_forms_convolve(f_lie, f_lhs, f_rhs, f_out, f_strict, out, err); }; });
  auto* f_d = forms->add_subcommand("d", "Exterior derivative of a dual-valued form");
  f_d->add_option("form", f_lhs)->required();
  f_d->add_option("--lie", f_lie)->required();
  f_d->add_option("-o,--out", f_out);
  f_d->callback([&] { action = [&] { return cmd_forms_d(f_lie, f_lhs, f_out, out); }; });
  auto* f_int = forms->add_subcommand("integrate", "Integral of the top sphere component");
  f_int->add_option("form", f_lhs)->required();
  f_int->add_option("--format", f_format)->check(CLI::IsMember(text_json));
  f_int->callback([&] { action = [&] { return cmd_forms_integrate(f_lhs, f_format, out); }; });

  // val
  auto* val = app.add_subcommand("val", "Invariant valuations")->require_subcommand(1);
  std::string v_lie, v_lhs, v_rhs, v_out;
  bool v_strict = true;
  auto* v_conv = val->add_subcommand("convolve", "Convolution of two valuations");
  v_conv->add_option("phi", v_lhs)->required();
  v_conv->add_option("psi", v_rhs)->required();
  v_conv->add_option("--lie", v_lie)->required();
  v_conv->add_option("-o,--out", v_out);
  v_conv->add_flag("--strict-invariance,!--no-strict-invariance", v_strict, "Require an Ad-invariant left factor (default on)");
  v_conv->callback([&] { action = [&] { return cmd_val_convolve(v_lie, v_lhs, v_rhs, v_out, v_strict, out, err); }; });
  auto* v_valid = val->add_subcommand("validate", "Check that {c, tau} defines a valuation");
  v_valid->add_option("valuation", v_lhs)->required();
  v_valid->add_option("--lie", v_lie)->required();
  v_valid->callback([&] { action = [&] { return cmd_val_validate(v_lie, v_lhs, out, style); }; });

  std::string v_which;
  auto* v_builtin = val->add_subcommand("builtin", "Emit the Haar measure or the Euler characteristic");
  v_builtin->add_option("which", v_which, "haar or chi")->required();
  v_builtin->add_option("--lie", v_lie)->required();
  v_builtin->add_option("-o,--out", v_out);
  v_builtin->callback([&] { action = [&] { return cmd_val_builtin(v_lie, v_which, v_out, out); }; });

  // s3
  auto* s3 = app.add_subcommand("s3", "Bi-invariant valuations on S^3")->require_subcommand(1);
  std::string s3_basis = "nu", s3_format = "md", s3_vformat = "text";
  auto* s3_table = s3->add_subcommand("table", "Print a multiplication table");
  s3_table->add_option("--basis", s3_basis, "nu or mu");
  s3_table->add_option("--format", s3_format)->check(CLI::IsMember({"md", "json"}));
  s3_table->callback([&] { action = [&] { return cmd_s3_table(s3_basis, s3_format, out); }; });
  auto* s3_verify = s3->add_subcommand("verify", "Check every algebra invariant");
  s3_verify->add_option("--format", s3_vformat)->check(CLI::IsMember(text_json));
  s3_verify->callback([&] { action = [&] { return cmd_s3_verify(s3_vformat, out, style); }; });

  // suite
  SuiteArgs suite_args;
  auto* suite = app.add_subcommand("suite", "Randomized property suite");
  suite->add_option("--lie", suite_args.lie, "Lie algebra JSON file or built-in name")->required();
  suite->add_option("--seed", suite_args.options.seed);
  suite->add_option("--trials", suite_args.options.trials);
  suite->add_option("--max-deg", suite_args.options.max_deg);
  suite->add_option("--format", suite_args.format)->check(CLI::IsMember({"text", "json", "md"}));
  suite->add_option("--report", suite_args.report_path, "Write the JSON report to this file");
  suite->add_option("--counterexample-dir", suite_args.counterexample_dir);
  suite->add_flag("--timing", suite_args.timing, "Include wall time in the report");
  suite->callback([&] { action = [&] { return cmd_suite(suite_args, out, err, style); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }

  try {
    return action ? action() : kInvalidInput;
  } catch (const Violation& e) {
    err << "error: " << e.what() << "\n";
    return kViolation;
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const DegreeError& e) {
    err << "degree error: " << e.what() << "\n";
    return kViolation;
  } catch (const InvalidValuation& e) {
    err << "invalid valuation: " << e.what() << "\n";
    return kViolation;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kViolation;
  }
}

}  // namespace valconv::cli
