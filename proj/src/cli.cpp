#include "cauchyenv/cli.hpp"

#include <cmath>
#include <iomanip>
#include <optional>

#include <CLI11.hpp>

#include "cauchyenv/io.hpp"

namespace cauchyenv::cli {

namespace {

using io::json;

struct Options {
  std::string file;
  double tol = 1e-12;
  std::optional<double> xi_max;
  std::optional<int> grid;
  std::uint64_t seed = 42;
  std::optional<int> trials;
  double margin = kDefaultMarginTol;
  bool csv = false;
  std::optional<double> cw;
  std::optional<double> ca;
  std::string mode = "certified";
};

RootFinderOptions root_options(const Options& o) {
  RootFinderOptions r;
  r.tol = o.tol;
  return r;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / double(n - 1);
  return v;
}

const InitVector& require_init(const io::Problem& p) {
  if (!p.w0) throw Error(ErrorKind::InvalidInput, "problem.w0: missing field (needed by this command)");
  return *p.w0;
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

// Bound column for CSV output: certified constant over the polydisc that
// contains this instance, at the instance's own abscissa.
void emit_csv(std::ostream& out, const ModalSolution& S, double abscissa, const Envelope& env,
              const std::vector<double>& grid) {
  const int m = S.order();
  out << "xi";
  for (int i = 0; i < m; ++i) out << ",abs_w" << i;
  out << ",bound\n";
  out << std::setprecision(17);
  const double rate = env.rate.value_or(abscissa);
  for (double xi : grid) {
    const CVector d = eval_derivatives(S, xi, m - 1);
    out << xi;
    for (int i = 0; i < m; ++i) out << "," << std::abs(d[i]);
    out << "," << env.constant * (1.0L + std::pow(Wide(xi), env.power)) * std::exp(Wide(rate) * xi) << "\n";
  }
}

int cmd_abscissa(const Options& o, std::ostream& out) {
  const io::Problem p = io::parse_problem(io::read_json_file(o.file));
  const RootSet roots = find_roots(char_poly(p.a), root_options(o));
  json payload{{"input", io::to_json(p)}};
  payload.update(io::to_json(roots));
  payload["abscissa"] = spectral_abscissa(roots);
  payload["cauchy_bound"] = cauchy_bound(p.a);
  payload["verdict"] = io::to_json(classify_stability(p.a, o.margin, root_options(o)));
  emit(out, io::report_document("abscissa", payload));
  return kSuccess;
}

int cmd_hurwitz(const Options& o, std::ostream& out) {
  const io::Problem p = io::parse_problem(io::read_json_file(o.file));
  const MonicPoly P = char_poly(p.a);
  json payload{{"input", io::to_json(p)}};
  if (P.has_real_coeffs()) {
    const Eigen::MatrixXd H = hurwitz_matrix(P);
    json rows = json::array();
    for (Eigen::Index i = 0; i < H.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < H.cols(); ++j) row.push_back(H(i, j));
      rows.push_back(row);
    }
    payload["hurwitz_matrix"] = rows;
    payload["hurwitz"] = io::to_json(hurwitz_test(P));
  } else {
    payload["hurwitz_matrix"] = nullptr;
    payload["hurwitz"] = nullptr;
    payload["note"] = "complex coefficients: only the root-based verdict applies";
  }
  payload["verdict"] = io::to_json(classify_stability(p.a, o.margin, root_options(o)));
  emit(out, io::report_document("hurwitz", payload));
  return kSuccess;
}

Envelope instance_envelope(const Options& o, const io::Problem& p) {
  const double ca = o.ca.value_or(p.a.max_modulus());
  const double cw = o.cw.value_or(p.w0 ? p.w0->max_modulus() : 0.0);
  return certified_constant(p.a.order(), ca, cw);
}

int cmd_solve(const Options& o, std::ostream& out) {
  const io::Problem p = io::parse_problem(io::read_json_file(o.file));
  const InitVector& N = require_init(p);
  const RootSet roots = find_roots(char_poly(p.a), root_options(o));
  const ModalSolution S = solve_modal(roots, N);
  const double abscissa = spectral_abscissa(roots);
  const std::vector<double> grid = linspace(0.0, o.xi_max.value_or(10.0), o.grid.value_or(32));
  if (o.csv) {
    emit_csv(out, S, abscissa, instance_envelope(o, p), grid);
    return kSuccess;
  }
  json trajectory = json::array();
  for (double xi : grid) trajectory.push_back({{"xi", xi}, {"w", io::to_json(eval_derivatives(S, xi, p.a.order() - 1))}});
  json payload{{"input", io::to_json(p)}, {"abscissa", abscissa}, {"solution", io::to_json(S)},
               {"trajectory", trajectory}};
  emit(out, io::report_document("solve", payload));
  return kSuccess;
}

int cmd_envelope(const Options& o, std::ostream& out) {
  const io::Problem p = io::parse_problem(io::read_json_file(o.file));
  const RootSet roots = find_roots(char_poly(p.a), root_options(o));
  const double abscissa = spectral_abscissa(roots);
  const int m = p.a.order();
  const double ca = o.ca.value_or(p.a.max_modulus());
  const double cw = o.cw.value_or(p.w0 ? p.w0->max_modulus() : 0.0);
  const std::vector<double> grid =
      o.xi_max ? xi_grid_to(*o.xi_max, o.grid.value_or(512)) : default_xi_grid(abscissa, o.grid.value_or(512));

  json payload{{"input", io::to_json(p)}, {"mode", o.mode}, {"abscissa", abscissa}, {"C_a", ca}, {"C_w", cw}};
  int code = kSuccess;
  if (o.mode == "certified") {
    Envelope env = certified_constant(m, ca, cw);
    env.rate = abscissa;
    payload["envelope"] = io::to_json(env);
    // Coarser bound that no longer depends on the instance: rate 1 + C_a.
    payload["uniform_rate"] = 1.0 + ca;
    if (o.csv && p.w0) {
      emit_csv(out, solve_modal(roots, *p.w0), abscissa, env, grid);
      return kSuccess;
    }
  } else if (o.mode == "empirical") {
    const ModalSolution S = solve_modal(roots, require_init(p));
    payload["empirical_constant"] = empirical_constant(S, abscissa, grid);
    payload["grid_points"] = grid.size();
  } else if (o.mode == "check") {
    const ModalSolution S = solve_modal(roots, require_init(p));
    Envelope env = certified_constant(m, ca, cw);
    env.rate = abscissa;
    if (o.csv) {
      emit_csv(out, S, abscissa, env, grid);
      return check_envelope(S, abscissa, env, grid, o.margin).holds ? kSuccess : kVerificationFailed;
    }
    const EnvelopeReport r = check_envelope(S, abscissa, env, grid, o.margin);
    payload["envelope"] = io::to_json(env);
    payload["report"] = io::to_json(r);
    code = r.holds ? kSuccess : kVerificationFailed;
  } else {
    throw Error(ErrorKind::InvalidInput, "--mode must be certified, empirical or check");
  }
  emit(out, io::report_document("envelope", payload));
  return code;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const io::Problem p = io::parse_problem(io::read_json_file(o.file));
  const ReducedProblem rp = reduce_order(p.a, require_init(p), root_options(o));
  const TransformedBounds tb =
      transformed_bounds(p.a.order(), o.ca.value_or(p.a.max_modulus()), o.cw.value_or(p.w0->max_modulus()));
  json payload{{"input", io::to_json(p)}, {"reduction", io::to_json(rp)},
               {"transformed_bounds", {{"C_b", io::to_json(tb.C_b)}, {"C_u", io::to_json(tb.C_u)}}}};
  emit(out, io::report_document("reduce", payload));
  return kSuccess;
}

int cmd_family(const Options& o, std::ostream& out) {
  FamilySpec spec = io::parse_family(io::read_json_file(o.file));
  if (o.grid) spec.grid = *o.grid;
  spec.validate();
  const double cw = o.cw.value_or(1.0);
  const int samples = o.trials.value_or(100);
  json payload;
  const SupResult sup = abscissa_sup(spec, root_options(o));
  payload["sup"] = io::to_json(sup);
  try {
    const DecayCertificate cert = decay_certificate(spec, cw, root_options(o));
    const FamilyCheckReport r = family_envelope_check(spec, cert, {spec.m, cw}, samples, o.seed, root_options(o));
    payload["uniformly_stable"] = true;
    payload["kappa"] = cert.kappa;
    payload["certificate"] = io::to_json(cert);
    payload["check"] = io::to_json(r);
    emit(out, io::report_document("family", payload));
    return r.passed == r.samples ? kSuccess : kVerificationFailed;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotUniformlyStable) throw;
    payload["uniformly_stable"] = false;
    payload["reason"] = e.what();
    emit(out, io::report_document("family", payload));
    return kVerificationFailed;
  }
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials.value_or(1000);
  if (o.ca) cfg.C_a = *o.ca;
  if (o.cw) cfg.C_w = *o.cw;
  const SuiteReport report = suite_run(cfg);
  emit(out, io::report_document("verify", io::to_json(report, cfg)));
  err << "verify: " << report.passes() << " passed, " << report.failures() << " failed in " << std::fixed
      << std::setprecision(2) << report.wall_time << " s\n";
  return report.ok() ? kSuccess : kVerificationFailed;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral abscissas, modal solutions and certified envelopes for linear ODE Cauchy problems",
               "cauchyenv"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "relative root-finder tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--margin", o.margin, "stability band / envelope margin")->check(CLI::NonNegativeNumber);
  };
  auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, "problem JSON file")->required(); };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--xi-max", o.xi_max, "right end of the xi grid")->check(CLI::PositiveNumber);
    sub->add_option("--grid", o.grid, "number of grid points")->check(CLI::Range(2, 1 << 20));
    sub->add_flag("--csv", o.csv, "emit a CSV table (xi, |w^(i)|, bound)");
  };
  auto add_bounds = [&](CLI::App* sub) {
    sub->add_option("--ca", o.ca, "coefficient polydisc radius C_a")->check(CLI::NonNegativeNumber);
    sub->add_option("--cw", o.cw, "initial-data polydisc radius C_w")->check(CLI::NonNegativeNumber);
  };

  auto* abscissa = app.add_subcommand("abscissa", "roots and spectral abscissa");
  add_file(abscissa);
  add_common(abscissa);
  auto* hurwitz = app.add_subcommand("hurwitz", "Routh-Hurwitz test and stability verdict");
  add_file(hurwitz);
  add_common(hurwitz);
  auto* solve = app.add_subcommand("solve", "closed-form solution and trajectory");
  add_file(solve);
  add_common(solve);
  add_grid(solve);
  add_bounds(solve);
  auto* envelope = app.add_subcommand("envelope", "certified / empirical envelope constants");
  add_file(envelope);
  add_common(envelope);
  add_grid(envelope);
  add_bounds(envelope);
  envelope->add_option("--mode", o.mode, "certified|empirical|check")
      ->check(CLI::IsMember({"certified", "empirical", "check"}));
  auto* reduce = app.add_subcommand("reduce", "exponential substitution and order reduction");
  add_file(reduce);
  add_common(reduce);
  add_bounds(reduce);
  auto* family = app.add_subcommand("family", "uniform decay certificate for a parametric family");
  family->add_option("file", o.file, "family JSON file")->required();
  add_common(family);
  family->add_option("--grid", o.grid, "grid points per parameter axis")->check(CLI::Range(2, 1 << 12));
  family->add_option("--cw", o.cw, "initial-data polydisc radius C_w")->check(CLI::NonNegativeNumber);
  family->add_option("--seed", o.seed, "sampling seed");
  family->add_option("--trials", o.trials, "number of (t, N) samples")->check(CLI::PositiveNumber);
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--seed", o.seed, "suite seed");
  verify->add_option("--trials", o.trials, "trials per invariant family")->check(CLI::PositiveNumber);
  add_bounds(verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (abscissa->parsed()) return cmd_abscissa(o, out);
    if (hurwitz->parsed()) return cmd_hurwitz(o, out);
    if (solve->parsed()) return cmd_solve(o, out);
    if (envelope->parsed()) return cmd_envelope(o, out);
    if (reduce->parsed()) return cmd_reduce(o, out);
    if (family->parsed()) return cmd_family(o, out);
    if (verify->parsed()) return cmd_verify(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::InvalidInput ? kInputError : kVerificationFailed;
  }
  return kInputError;
}

}  // namespace cauchyenv::cli
