#include "cauchyenv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace cauchyenv::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "missing field");
  return *it;
}

int int_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<int>();
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "number must be finite");
  return v;
}

}  // namespace

Complex complex_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return {number(j, where), 0.0};
  if (!j.is_array() || j.size() != 2) fail(where, "expected a complex number [re, im]");
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

CVector cvector_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of complex numbers");
  CVector v(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) v[k] = complex_from_json(j[k], where + "[" + std::to_string(k) + "]");
  return v;
}

Problem parse_problem(const json& j) {
  const std::string root = "problem";
  const int m = int_field(j, "m", root);
  if (m < 1) fail(root + ".m", "order must be >= 1");
  const CVector a = cvector_from_json(field(j, "a", root), root + ".a");
  if (a.size() != m) fail(root + ".a", "expected " + std::to_string(m) + " coefficients, got " + std::to_string(a.size()));
  Problem p;
  p.a = CoeffVector(a);
  if (auto it = j.find("w0"); it != j.end() && !it->is_null()) {
    const CVector w0 = cvector_from_json(*it, root + ".w0");
    if (w0.size() != m) fail(root + ".w0", "expected " + std::to_string(m) + " initial values, got " + std::to_string(w0.size()));
    p.w0 = InitVector(w0);
  }
  if (auto it = j.find("label"); it != j.end()) {
    if (!it->is_string()) fail(root + ".label", "expected a string");
    p.label = it->get<std::string>();
  }
  if (auto it = j.find("metadata"); it != j.end()) p.metadata = *it;
  return p;
}

FamilySpec parse_family(const json& j) {
  const std::string root = "family";
  FamilySpec spec;
  spec.k = int_field(j, "k", root);
  spec.m = int_field(j, "m", root);
  if (spec.k < 1) fail(root + ".k", "parameter count must be >= 1");
  if (spec.m < 1) fail(root + ".m", "order must be >= 1");
  if (j.contains("grid")) spec.grid = int_field(j, "grid", root);
  if (spec.grid < 2) fail(root + ".grid", "grid must be >= 2");

  const json& domain = field(j, "domain", root);
  if (!domain.is_array() || static_cast<int>(domain.size()) != spec.k)
    fail(root + ".domain", "expected " + std::to_string(spec.k) + " intervals");
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const std::string where = root + ".domain[" + std::to_string(i) + "]";
    if (!domain[i].is_array() || domain[i].size() != 2) fail(where, "expected [lo, hi]");
    Interval iv{number(domain[i][0], where + "[0]"), number(domain[i][1], where + "[1]")};
    if (iv.lo > iv.hi) fail(where, "lo must not exceed hi");
    spec.domain.push_back(iv);
  }

  const json& coeffs = field(j, "coeffs", root);
  if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != spec.m)
    fail(root + ".coeffs", "expected " + std::to_string(spec.m) + " coefficient expressions");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string where = root + ".coeffs[" + std::to_string(i) + "]";
    if (!coeffs[i].is_array()) fail(where, "expected a list of monomials");
    std::vector<Monomial> terms;
    for (std::size_t t = 0; t < coeffs[i].size(); ++t) {
      const std::string tw = where + "[" + std::to_string(t) + "]";
      const json& mono = coeffs[i][t];
      Monomial mnm;
      mnm.coeff = complex_from_json(field(mono, "c", tw), tw + ".c");
      const json& powers = field(mono, "p", tw);
      if (!powers.is_array() || static_cast<int>(powers.size()) != spec.k)
        fail(tw + ".p", "expected " + std::to_string(spec.k) + " exponents");
      for (std::size_t q = 0; q < powers.size(); ++q) {
        if (!powers[q].is_number_integer() || powers[q].get<int>() < 0)
          fail(tw + ".p[" + std::to_string(q) + "]", "expected a nonnegative integer");
        mnm.powers.push_back(powers[q].get<int>());
      }
      terms.push_back(std::move(mnm));
    }
    spec.coeffs.emplace_back(std::move(terms));
  }
  spec.validate();
  return spec;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    int line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::InvalidInput,
                path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
  }
}

json to_json(Wide x) {
  if (std::isfinite(x) && std::abs(x) <= std::numeric_limits<double>::max()) return static_cast<double>(x);
  // Past the double range: keep the value readable instead of emitting null.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", x);
  return buf;
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v[k]));
  return out;
}

json to_json(const Problem& p) {
  json j;
  j["m"] = p.a.order();
  j["a"] = to_json(p.a.coeffs());
  if (p.w0) j["w0"] = to_json(p.w0->values());
  if (!p.label.empty()) j["label"] = p.label;
  if (!p.metadata.is_null()) j["metadata"] = p.metadata;
  return j;
}

json to_json(const RootSet& R) {
  json roots = json::array();
  json entries = json::array();
  for (const auto& e : R) {
    for (int k = 0; k < e.multiplicity; ++k) roots.push_back(to_json(e.root));
    entries.push_back({{"root", to_json(e.root)}, {"multiplicity", e.multiplicity}});
  }
  return {{"roots", roots}, {"root_set", entries}, {"used_fallback", R.used_fallback()}};
}

json to_json(const ModalSolution& S) {
  json terms = json::array();
  for (const auto& t : S.terms())
    terms.push_back({{"root", to_json(t.root)}, {"multiplicity", t.multiplicity}, {"poly", to_json(t.poly)}});
  return {{"order", S.order()},
          {"terms", terms},
          {"condition_estimate", S.condition_estimate()},
          {"ill_conditioned", S.ill_conditioned()}};
}

json to_json(const StabilityVerdict& v) {
  return {{"kind", to_string(v.kind)}, {"abscissa", v.abscissa}, {"margin_tol", v.margin_tol}};
}

json to_json(const HurwitzResult& h) {
  return {{"stable", h.stable}, {"near_singular", h.near_singular}, {"minors", h.minors}};
}

json to_json(const ReducedProblem& rp) {
  return {{"lambda_star", to_json(rp.lambda_star)},
          {"shift_residual", to_json(rp.shift_residual)},
          {"b", to_json(rp.b)},
          {"u0_full", to_json(rp.u0_full)},
          {"reduced", {{"m", rp.reduced_coeffs.order()},
                       {"a", to_json(rp.reduced_coeffs.coeffs())},
                       {"w0", to_json(rp.reduced_init.values())}}}};
}

json to_json(const Envelope& env) {
  json j{{"constant", to_json(env.constant)}, {"power", env.power}};
  j["rate"] = env.rate ? json(*env.rate) : json(nullptr);
  return j;
}

json to_json(const EnvelopeReport& r) {
  return {{"holds", r.holds},
          {"worst_ratio", r.worst_ratio},
          {"worst_point", {{"order", r.worst_order}, {"xi", r.worst_xi}}},
          {"rate", r.rate}};
}

json to_json(const SupResult& s) {
  return {{"sup_value", s.sup_value},
          {"arg", s.arg},
          {"coarse_sup", s.coarse_sup},
          {"coeff_bound", s.coeff_bound},
          {"evaluated", s.evaluated},
          {"skipped", s.skipped},
          {"note", "grid maximum; a lower bound for the supremum over the box"}};
}

json to_json(const DecayCertificate& c) {
  return {{"kappa", c.kappa},
          {"attaining_point", c.attaining_point},
          {"constant", to_json(c.constant)},
          {"power", c.power},
          {"coeff_bound", c.coeff_bound}};
}

json to_json(const FamilyCheckReport& r) {
  return {{"samples", r.samples},
          {"passed", r.passed},
          {"worst_ratio", r.worst_ratio},
          {"worst_t", r.worst_t},
          {"worst_w0", to_json(r.worst_w0)},
          {"worst_point", {{"order", r.worst_order}, {"xi", r.worst_xi}}}};
}

json to_json(const InvariantResult& r) {
  json j{{"name", r.name},     {"ok", r.ok()},           {"trials", r.trials},
         {"passed", r.passed}, {"skipped", r.skipped},   {"failed", r.failed()},
         {"worst", r.worst},   {"threshold", r.threshold}};
  if (!r.violation.empty()) j["violation"] = r.violation;
  if (r.witness) {
    j["witness"] = {{"trial", r.witness->trial},
                    {"a", to_json(r.witness->coeffs)},
                    {"w0", to_json(r.witness->init)},
                    {"xi", r.witness->xi},
                    {"note", r.witness->note}};
  }
  return j;
}

json to_json(const SuiteConfig& cfg) {
  json tol = json::object();
  for (const auto& [key, value] : default_tolerances()) tol[key] = cfg.tol(key);
  return {{"seed", cfg.seed},   {"m_range", {cfg.m_min, cfg.m_max}}, {"C_a", cfg.C_a},
          {"C_w", cfg.C_w},     {"trials", cfg.trials},              {"tolerances", tol}};
}

json to_json(const SuiteReport& r, const SuiteConfig& cfg) {
  json results = json::array();
  for (const auto& res : r.results) results.push_back(to_json(res));
  return {{"config", to_json(cfg)}, {"passes", r.passes()}, {"failures", r.failures()}, {"results", results}};
}

json report_document(const std::string& command, json payload) {
  json doc{{"schema_version", kSchemaVersion}, {"command", command}};
  for (auto& [key, value] : payload.items()) doc[key] = std::move(value);
  return doc;
}

}  // namespace cauchyenv::io
