#include "valconv_cli/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>

#include "valconv/bernig_fu.hpp"
#include "valconv/error.hpp"
#include "valconv/form_space.hpp"
#include "valconv/random.hpp"

namespace valconv::cli {

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

// Outcome of one trial: empty on success, otherwise a failure description.
using Outcome = std::optional<std::string>;

struct Context {
  const LieAlgebra& lie;
  const SuiteOptions& options;
  int n;
  bool unimodular;
  RandomFormOptions form_options;

  std::optional<std::vector<BigradedForm>> bi_invariant;
  std::optional<std::vector<BigradedForm>> left_invariant;

  const std::vector<BigradedForm>& bi_basis() {
    if (!bi_invariant) {
      FormSpaceConstraints c;
      c.ad_invariant = true;
      bi_invariant = FormSpace(lie, n, options.max_deg).solution_basis(c);
    }
    return *bi_invariant;
  }
  const std::vector<BigradedForm>& left_basis() {
    if (!left_invariant) left_invariant = FormSpace(lie, n, options.max_deg).solution_basis({});
    return *left_invariant;
  }

  BigradedForm form(Rng& rng, int degree) const {
    return random_bigraded_form(rng, n, degree, ValueSpace::Dual, form_options);
  }
  InvariantValuation valuation(Rng& rng, bool bi) {
    const auto& basis = bi ? bi_basis() : left_basis();
    BigradedForm tau = basis.empty() ? BigradedForm(n, n, ValueSpace::Dual) : random_combination(rng, basis, 3);
    return InvariantValuation{Scalar(rng.uniform(-3, 3)), std::move(tau), lie.name()};
  }
  // Degrees p, q with p + q - n within [0, 2n].
  std::pair<int, int> degree_pair(Rng& rng) const {
    while (true) {
      const int p = static_cast<int>(rng.uniform(0, 2 * n));
      const int q = static_cast<int>(rng.uniform(0, 2 * n));
      if (p + q >= n && p + q - n <= 2 * n) return {p, q};
    }
  }
};

struct Property {
  std::string name;
  // Non-empty when the property does not apply to this algebra.
  std::function<std::string(const Context&)> skip_reason;
  bool exhaustive = false;
  std::function<Outcome(Context&, Rng&, Json&)> trial;
};

std::string needs_unimodular(const Context& c) {
  if (c.unimodular) return "";
  const auto v = c.lie.is_unimodular();
  return "requires a unimodular algebra (tr ad_e" + std::to_string(v.witness) + " = " + rational_to_string(v.trace) + ")";
}

std::string applies(const Context&) { return ""; }

Outcome check(bool ok, const std::string& what) { return ok ? Outcome() : Outcome(what); }

// Truncates components above a random sphere degree to exercise the filtration.
BigradedForm truncate_random(Rng& rng, BigradedForm form) {
  if (form.k_min() > form.k_max()) return form;
  const int cut = static_cast<int>(rng.uniform(form.k_min(), form.k_max()));
  for (int k = cut + 1; k <= form.k_max(); ++k) form.set_component(k, BasicForm(form.dim(), form.space(), k, form.value_grade(k)));
  return form;
}

std::vector<Property> make_properties() {
  std::vector<Property> props;

  props.push_back({"lie.boundary_squared", applies, true, [](Context& c, Rng&, Json& cx) -> Outcome {
                     for (int grade = 0; grade <= c.n; ++grade) {
                       for (IndexSet blade : subsets_of_size(c.n, grade)) {
                         MultiVector x(Space::Primal, c.n);
                         x.add(blade, Scalar(1L));
                         if (!c.lie.koszul_boundary(c.lie.koszul_boundary(x)).is_zero()) {
                           cx["blade"] = blade.indices();
                           return "boundary of boundary is non-zero on e_" + blade.to_string();
                         }
                       }
                     }
                     return {};
                   }});

  // Unimodular algebras: the defect vanishes on all complementary blade pairs.
  // Otherwise the check is negative: a non-zero witness must exist.
  props.push_back({"lie.leibniz", applies, true, [](Context& c, Rng&, Json& cx) -> Outcome {
                     std::optional<std::pair<IndexSet, IndexSet>> witness;
                     for (int k = 0; k < c.n && !witness; ++k) {
                       for (IndexSet xs : subsets_of_size(c.n, k + 1)) {
                         for (IndexSet ys : subsets_of_size(c.n, c.n - k)) {
                           MultiVector x(Space::Primal, c.n), y(Space::Primal, c.n);
                           x.add(xs, Scalar(1L));
                           y.add(ys, Scalar(1L));
                           if (!c.lie.leibniz_defect(x, y).is_zero()) {
                             witness = std::make_pair(xs, ys);
                             break;
                           }
                         }
                         if (witness) break;
                       }
                     }
                     cx["expect"] = c.unimodular ? "zero defect" : "non-zero witness";
                     if (c.unimodular && witness) {
                       cx["X"] = witness->first.indices();
                       cx["Y"] = witness->second.indices();
                       return "non-zero Leibniz defect on a unimodular algebra";
                     }
                     if (!c.unimodular && !witness) return "no Leibniz witness on a non-unimodular algebra";
                     return {};
                   }});

  props.push_back({"forms.d_squared", applies, false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     const int p = static_cast<int>(rng.uniform(0, 2 * c.n - 2));
                     BigradedForm a = c.form(rng, p);
                     cx["tau"] = form_to_json(a);
                     return check(d_total(c.lie, d_total(c.lie, a)).is_zero(), "d(d tau) != 0");
                   }});

  props.push_back({"forms.tilde_roundtrip", applies, false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     BigradedForm a = c.form(rng, static_cast<int>(rng.uniform(0, 2 * c.n)));
                     cx["tau"] = form_to_json(a);
                     return check(untilde(tilde(a)) == a, "untilde(tilde(tau)) != tau");
                   }});

  props.push_back({"forms.tilde_d", needs_unimodular, false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     BigradedForm a = c.form(rng, static_cast<int>(rng.uniform(0, 2 * c.n - 1)));
                     cx["tau"] = form_to_json(a);
                     return check(tilde(d_total(c.lie, a)) == tilde_d_total(c.lie, tilde(a)), "tilde(d tau) != d~ tilde(tau)");
                   }});

  props.push_back({"forms.closedness_criterion", needs_unimodular, false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     // Half of the trials use exact forms so that both verdicts occur.
                     BigradedForm a = rng.chance(50) ? d_total(c.lie, c.form(rng, c.n - 1)) : c.form(rng, c.n);
                     cx["tau"] = form_to_json(a);
                     return check(is_closed_n_form(c.lie, a) == d_total(c.lie, a).is_zero(),
                                  "closedness criterion disagrees with d tau = 0");
                   }});

  props.push_back({"forms.stokes", [](const Context& c) { return c.n >= 2 ? std::string() : "requires dim >= 2"; }, false,
                   [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     BasicForm w = random_basic_form(rng, c.n, ValueSpace::Scalar, c.n - 2, 0, c.form_options);
                     cx["sphere_degree"] = c.n - 2;
                     cx["omega"] = w.to_string();
                     return check(sphere_integrate(d_sphere(w)).is_zero(), "integral of d omega over the sphere is non-zero");
                   }});

  props.push_back({"conv.unit", needs_unimodular, false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     BigradedForm a = c.form(rng, static_cast<int>(rng.uniform(0, 2 * c.n)));
                     cx["zeta"] = form_to_json(a);
                     const BigradedForm u = unit_form(c.n);
                     if (!(convolve_forms(c.lie, u, a) == a)) return "unit * zeta != zeta";
                     return check(convolve_forms(c.lie, a, u) == a, "zeta * unit != zeta");
                   }});

  props.push_back({"conv.associativity", needs_unimodular, false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     const int n = c.n;
                     int p = 0, q = 0, r = 0;
                     while (true) {
                       p = static_cast<int>(rng.uniform(0, 2 * n));
                       q = static_cast<int>(rng.uniform(0, 2 * n));
                       r = static_cast<int>(rng.uniform(0, 2 * n));
                       const bool left = p + q >= n && p + q - n <= 2 * n && p + q + r >= 2 * n;
                       const bool right = q + r >= n && q + r - n <= 2 * n;
                       if (left && right && p + q + r - 2 * n <= 2 * n) break;
                     }
                     BigradedForm a = c.form(rng, p), b = c.form(rng, q), d = c.form(rng, r);
                     cx["tau"] = form_to_json(a);
                     cx["zeta"] = form_to_json(b);
                     cx["kappa"] = form_to_json(d);
                     return check(convolve_forms(c.lie, convolve_forms(c.lie, a, b), d) ==
                                      convolve_forms(c.lie, a, convolve_forms(c.lie, b, d)),
                                  "(tau * zeta) * kappa != tau * (zeta * kappa)");
                   }});

  props.push_back({"conv.lowest_term", needs_unimodular, false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     auto [p, q] = c.degree_pair(rng);
                     BigradedForm a = truncate_random(rng, c.form(rng, p));
                     BigradedForm b = truncate_random(rng, c.form(rng, q));
                     cx["tau"] = form_to_json(a);
                     cx["zeta"] = form_to_json(b);
                     const BigradedForm t = tilde(a), z = tilde(b);
                     const BigradedForm out = convolve_tilde(c.lie, t, z);
                     const int k = t.highest_nonzero(), l = z.highest_nonzero();
                     if (k < 0 || l < 0) return check(out.is_zero(), "product of zero forms is non-zero");
                     const int j = k + l;
                     if (j > out.k_max()) return {};
                     BasicForm expected = wedge(t.component(k), z.component(l));
                     if (epsilon_sign(c.n, p, q, k, l, j) < 0) expected = -expected;
                     return check(out.component(j) == expected, "lowest term differs from the signed wedge product");
                   }});

  props.push_back({"conv.filtration", needs_unimodular, false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     auto [p, q] = c.degree_pair(rng);
                     BigradedForm a = truncate_random(rng, c.form(rng, p));
                     BigradedForm b = truncate_random(rng, c.form(rng, q));
                     cx["tau"] = form_to_json(a);
                     cx["zeta"] = form_to_json(b);
                     const BigradedForm out = convolve_forms(c.lie, a, b);
                     const int bound = a.highest_nonzero() + b.highest_nonzero();
                     return check(out.highest_nonzero() <= std::max(bound, -1), "product leaves the filtration bound");
                   }});

  props.push_back({"conv.bi_invariance", needs_unimodular, false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     const auto& basis = c.bi_basis();
                     if (basis.empty()) return {};
                     BigradedForm a = random_combination(rng, basis, 3), b = random_combination(rng, basis, 3);
                     cx["tau"] = form_to_json(a);
                     cx["zeta"] = form_to_json(b);
                     return check(is_ad_invariant(c.lie, convolve_forms(c.lie, a, b)), "product of bi-invariant forms is not invariant");
                   }});

  props.push_back({"conv.bernig_fu", [](const Context& c) { return c.lie.is_abelian() ? std::string() : "requires an abelian algebra"; },
                   false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     auto [p, q] = c.degree_pair(rng);
                     BigradedForm a = c.form(rng, p), b = c.form(rng, q);
                     cx["tau"] = form_to_json(a);
                     cx["zeta"] = form_to_json(b);
                     return check(convolve_forms(c.lie, a, b) == bernig_fu_convolve(a, b),
                                  "convolution differs from the wedge-product formula");
                   }});

  props.push_back({"val.haar_unit", needs_unimodular, false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     const InvariantValuation phi = c.valuation(rng, true), psi = c.valuation(rng, false);
                     cx["phi"] = valuation_to_json(phi);
                     cx["psi"] = valuation_to_json(psi);
                     const InvariantValuation haar = haar_valuation(c.lie);
                     if (!(convolve_valuations(c.lie, haar, psi) == psi)) return "vol * psi != psi";
                     return check(convolve_valuations(c.lie, phi, haar) == phi, "phi * vol != phi");
                   }});

  props.push_back({"val.euler_characteristic", needs_unimodular, false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     const InvariantValuation phi = c.valuation(rng, true), psi = c.valuation(rng, false);
                     cx["phi"] = valuation_to_json(phi);
                     cx["psi"] = valuation_to_json(psi);
                     const InvariantValuation chi = euler_characteristic(c.lie);
                     if (!(convolve_valuations(c.lie, phi, chi) == chi * mu_of(phi))) return "phi * chi != mu(phi) chi";
                     return check(convolve_valuations(c.lie, chi, psi) == chi * mu_of(psi), "chi * psi != mu(psi) chi");
                   }});

  props.push_back({"val.mu_multiplicative", needs_unimodular, false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     const InvariantValuation phi = c.valuation(rng, true), psi = c.valuation(rng, false);
                     cx["phi"] = valuation_to_json(phi);
                     cx["psi"] = valuation_to_json(psi);
                     const InvariantValuation r = convolve_valuations(c.lie, phi, psi);
                     if (mu_of(r) != mu_of(phi) * mu_of(psi)) return "mu(phi * psi) != mu(phi) mu(psi)";
                     return check(validate(c.lie, r).ok(), "product is not a valid valuation");
                   }});

  props.push_back({"val.gauge_independence", needs_unimodular, false, [](Context& c, Rng& rng, Json& cx) -> Outcome {
                     const InvariantValuation phi = c.valuation(rng, true), psi = c.valuation(rng, false);
                     cx["phi"] = valuation_to_json(phi);
                     cx["psi"] = valuation_to_json(psi);
                     ValuationConvolveOptions other;
                     other.primitive.gauge = PivotOrder::Reversed;
                     other.primitive.free_value = 1;
                     return check(convolve_valuations(c.lie, phi, psi) == convolve_valuations(c.lie, phi, psi, other),
                                  "product depends on the primitive gauge");
                   }});

  std::sort(props.begin(), props.end(), [](const Property& a, const Property& b) { return a.name < b.name; });
  return props;
}

}  // namespace

int SuiteReport::count(const std::string& status) const {
  return static_cast<int>(std::count_if(properties.begin(), properties.end(),
                                        [&](const PropertyResult& p) { return p.status == status; }));
}

Json SuiteReport::to_json(bool timing) const {
  Json props = Json::array();
  for (const auto& p : properties) {
    Json entry = {{"name", p.name}, {"status", p.status}, {"trials", p.trials}};
    if (!p.detail.empty()) entry["detail"] = p.detail;
    if (timing) entry["wall_time_s"] = p.seconds;
    if (!p.counterexample.is_null()) entry["counterexample"] = p.counterexample;
    props.push_back(std::move(entry));
  }
  return {{"suite", "valconv"},
          {"lie", lie},
          {"seed", options.seed},
          {"trials", options.trials},
          {"max_deg", options.max_deg},
          {"properties", props},
          {"summary", {{"pass", count("pass")}, {"fail", count("fail")}, {"skip", count("skip")}}}};
}

std::string SuiteReport::to_markdown(bool timing) const {
  std::ostringstream out;
  out << "| property | status | trials | detail |" << (timing ? " seconds |" : "") << "\n|---|---|---|---|"
      << (timing ? "---|" : "") << "\n";
  for (const auto& p : properties) {
    out << "| " << p.name << " | " << p.status << " | " << p.trials << " | " << p.detail << " |";
    if (timing) out << " " << p.seconds << " |";
    out << "\n";
  }
  out << "\n" << count("pass") << " passed, " << count("fail") << " failed, " << count("skip") << " skipped\n";
  return out.str();
}

std::vector<std::string> suite_property_names() {
  std::vector<std::string> names;
  for (const auto& p : make_properties()) names.push_back(p.name);
  return names;
}

SuiteReport run_suite(const LieAlgebra& lie, const SuiteOptions& options) {
  if (options.trials < 1) throw InputError("--trials must be at least 1");
  if (options.max_deg < 0 || options.max_deg > 4) throw InputError("--max-deg must be in 0..4");

  Context ctx{lie, options, lie.dim(), lie.is_unimodular().unimodular, {}, {}, {}};
  ctx.form_options.max_degree = options.max_deg;

  SuiteReport report;
  report.lie = lie.name();
  report.options = options;
  for (const auto& prop : make_properties()) {
    PropertyResult result{prop.name, "pass", 0, "", Json()};
    const std::string reason = prop.skip_reason(ctx);
    if (!reason.empty()) {
      result.status = "skip";
      result.detail = reason;
      report.properties.push_back(std::move(result));
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    const int runs = prop.exhaustive ? 1 : options.trials;
    for (int t = 0; t < runs; ++t) {
      Rng rng = Rng::derive(options.seed, fnv1a(prop.name) ^ (static_cast<std::uint64_t>(t) * 0x9E3779B97F4A7C15ULL));
      Json cx = Json::object();
      Outcome failure;
      try {
        failure = prop.trial(ctx, rng, cx);
      } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
      }
      ++result.trials;
      if (failure) {
        result.status = "fail";
        result.detail = *failure;
        cx["property"] = prop.name;
        cx["lie"] = lie_to_json(lie);
        cx["seed"] = options.seed;
        cx["trial"] = t;
        cx["max_deg"] = options.max_deg;
        result.counterexample = std::move(cx);
        break;
      }
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.properties.push_back(std::move(result));
  }
  return report;
}

}  // namespace valconv::cli
