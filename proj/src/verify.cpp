#include "cauchyenv/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string_view>

#include "cauchyenv/random.hpp"

namespace cauchyenv {

std::map<std::string, double> default_tolerances() {
  return {
      {"reconstruction", 1e-8},        // times (1 + C_a)^m
      {"permutation", 1e-10},
      {"root_bound", 1e-8},
      {"shift_consistency", 1e-8},
      {"continuity_K", kContinuityK},
      {"continuity_terminal", 1e-2},
      {"hurwitz_gap", 1e-6},           // instances with |abscissa| below are skipped
      {"hurwitz_box", 2.0},
      {"oracle_relative", 1e-7},
      {"oracle_rel_tol", 1e-10},
      {"oracle_abs_tol", 1e-13},
      {"ill_conditioned_fraction", 0.02},
      {"superposition", 1e-9},
      {"recurrence", 1e-8},
      {"round_trip", 1e-8},            // times (1 + |w|)
      {"shifted_sign", 1e-8},
      {"shift_residual", 1e-8},        // times (1 + C_a)^{m+1}
      {"leibniz", 1e-9},
      {"family_max_equality", 1e-12},
      {"family_kappa", 1e-9},
  };
}

void SuiteConfig::validate() const {
  if (trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be >= 1");
  if (m_min < 1 || m_max < m_min) throw Error(ErrorKind::InvalidInput, "m range must satisfy 1 <= m_min <= m_max");
  if (!(C_a >= 0.0) || !(C_w >= 0.0)) throw Error(ErrorKind::InvalidInput, "C_a and C_w must be nonnegative");
  const auto defaults = default_tolerances();
  for (const auto& [key, value] : tolerances) {
    if (!defaults.count(key)) throw Error(ErrorKind::InvalidInput, "unknown tolerance '" + key + "'");
    if (!(value >= 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance '" + key + "' must be nonnegative");
  }
}

double SuiteConfig::tol(const std::string& key) const {
  if (auto it = tolerances.find(key); it != tolerances.end()) return it->second;
  return default_tolerances().at(key);
}

Envelope SuiteConfig::certify(int m, double ca, double cw) const {
  return certified ? certified(m, ca, cw) : certified_constant(m, ca, cw);
}

int SuiteReport::passes() const {
  int n = 0;
  for (const auto& r : results) n += r.ok() ? 1 : 0;
  return n;
}

int SuiteReport::failures() const { return static_cast<int>(results.size()) - passes(); }

double abscissa_change(const CoeffVector& M, const CVector& direction, double delta,
                       const RootFinderOptions& options) {
  const CoeffVector perturbed(M.coeffs() + delta * direction);
  return std::abs(spectral_abscissa(perturbed, options) - spectral_abscissa(M, options));
}

std::vector<ContinuityRow> continuity_probe(const CoeffVector& M, std::span<const double> deltas,
                                            int directions, std::uint64_t seed,
                                            const RootFinderOptions& options) {
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (!(deltas[i] <= deltas[i - 1])) throw Error(ErrorKind::InvalidInput, "deltas must be descending");
  if (directions < 1) throw Error(ErrorKind::InvalidInput, "need at least one direction");
  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::vector<CVector> dirs;
  for (int d = 0; d < directions; ++d) {
    CVector v(M.order());
    for (int k = 0; k < M.order(); ++k) v[k] = Complex(normal(rng), normal(rng));
    dirs.push_back(v / v.norm());
  }
  const double base = spectral_abscissa(M, options);
  std::vector<ContinuityRow> rows;
  for (double delta : deltas) {
    ContinuityRow row{delta, 0.0};
    for (const auto& v : dirs) {
      const double moved = spectral_abscissa(CoeffVector(M.coeffs() + delta * v), options);
      row.max_change = std::max(row.max_change, std::abs(moved - base));
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Rng family_rng(const SuiteConfig& cfg, std::string_view name) { return Rng(cfg.seed ^ fnv1a(name)); }

int draw_order(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / double(n - 1);
  return v;
}

// Tracks pass/fail counts, the worst metric and a reproduction witness: the
// first failing trial if there is one, else the worst passing trial.
class Recorder {
 public:
  Recorder(std::string name, double threshold) {
    result_.name = std::move(name);
    result_.threshold = threshold;
  }

  void skip() {
    ++result_.trials;
    ++result_.skipped;
  }

  void record(double metric, bool pass, Witness w) {
    w.trial = result_.trials++;
    if (pass) ++result_.passed;
    const bool worse = !any_ || metric > result_.worst || std::isnan(metric);
    any_ = true;
    if (worse) result_.worst = metric;
    if (!pass && !have_failure_) {
      result_.witness = std::move(w);
      have_failure_ = true;
    } else if (!have_failure_ && worse) {
      result_.witness = std::move(w);
    }
  }

  InvariantResult finish() && { return std::move(result_); }

 private:
  InvariantResult result_;
  bool any_ = false;
  bool have_failure_ = false;
};

Witness witness(const CoeffVector& M, std::string note = {}) { return {0, M.coeffs(), {}, 0.0, std::move(note)}; }
Witness witness(const CoeffVector& M, const InitVector& N, double xi = 0.0, std::string note = {}) {
  return {0, M.coeffs(), N.values(), xi, std::move(note)};
}

// Order range for the reduction families: source order m+1 >= 2.
std::pair<int, int> reduction_range(const SuiteConfig& cfg) {
  return {std::max(cfg.m_min, 2), std::max(cfg.m_max, 2)};
}

double relative_to(double diff, double scale) { return scale > 0.0 ? diff / scale : diff; }
double relative_to(double diff, Wide scale) { return scale > 0.0 ? static_cast<double>(diff / scale) : diff; }

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

}  // namespace

InvariantResult check_reconstruction(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "reconstruction");
  Recorder rec("reconstruction", 1.0);
  const double tol = cfg.tol("reconstruction");
  for (int t = 0; t < cfg.trials; ++t) {
    const int m = draw_order(rng, cfg.m_min, cfg.m_max);
    const CoeffVector M(sample_polydisc(rng, m, cfg.C_a));
    const MonicPoly P = char_poly(M);
    const MonicPoly E = expand_roots(find_roots(P));
    const double err = (E.low_coeffs() - P.low_coeffs()).cwiseAbs().maxCoeff();
    const double metric = err / (tol * std::pow(1.0 + cfg.C_a, m));
    rec.record(metric, metric <= 1.0, witness(M));
  }
  return std::move(rec).finish();
}

InvariantResult check_permutation_invariance(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "permutation_invariance");
  const double tol = cfg.tol("permutation");
  Recorder rec("permutation_invariance", tol);
  for (int t = 0; t < cfg.trials; ++t) {
    const int m = draw_order(rng, cfg.m_min, cfg.m_max);
    const CoeffVector M(sample_polydisc(rng, m, cfg.C_a));
    const MonicPoly P = char_poly(M);
    const RootSet a = find_roots(P, 1e-12, rng());
    const RootSet b = find_roots(P, 1e-12, rng());
    std::vector<RootEntry> shuffled = a.entries();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    double by_hand = -std::numeric_limits<double>::infinity();
    for (const auto& e : shuffled) by_hand = std::max(by_hand, e.root.real());
    const double metric = std::max(std::abs(spectral_abscissa(a) - spectral_abscissa(b)),
                                   std::abs(spectral_abscissa(a) - by_hand));
    rec.record(metric, metric <= tol, witness(M));
  }
  return std::move(rec).finish();
}

InvariantResult check_root_bound(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "root_bound");
  const double tol = cfg.tol("root_bound");
  Recorder rec("root_bound", tol);
  for (int t = 0; t < cfg.trials; ++t) {
    const int m = draw_order(rng, cfg.m_min, cfg.m_max);
    const CoeffVector M(sample_polydisc(rng, m, cfg.C_a));
    const double bound = cauchy_bound(M);
    double excess = -std::numeric_limits<double>::infinity();
    for (const auto& e : find_roots(char_poly(M))) excess = std::max(excess, std::abs(e.root) - bound);
    rec.record(excess, excess <= tol, witness(M));
  }
  return std::move(rec).finish();
}

InvariantResult check_shift_consistency(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "shift_consistency");
  const double tol = cfg.tol("shift_consistency");
  Recorder rec("shift_consistency", tol);
  for (int t = 0; t < cfg.trials; ++t) {
    const int m = draw_order(rng, cfg.m_min, cfg.m_max);
    const CoeffVector M(sample_polydisc(rng, m, cfg.C_a));
    const Complex s = sample_disc(rng, std::max(cfg.C_a, 1.0));
    const MonicPoly P = char_poly(M);
    const double direct = spectral_abscissa(find_roots(P));
    const double shifted = spectral_abscissa(find_roots(taylor_shift(P, s)));
    const double metric = std::abs(shifted - (direct - s.real()));
    rec.record(metric, metric <= tol, witness(M, "shift " + std::to_string(s.real()) + "+" +
                                                     std::to_string(s.imag()) + "i"));
  }
  return std::move(rec).finish();
}

InvariantResult check_continuity(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "continuity");
  const double K = cfg.tol("continuity_K");
  const double terminal = cfg.tol("continuity_terminal");
  const double deltas[] = {1e-4, 1e-6, 1e-8, 1e-10};
  Recorder rec("continuity", 1.0);
  const int trials = std::max(1, cfg.trials / 10);
  for (int t = 0; t < trials; ++t) {
    const int m = draw_order(rng, cfg.m_min, cfg.m_max);
    const CoeffVector M(sample_polydisc(rng, m, std::min(cfg.C_a, 1.0)));
    const auto rows = continuity_probe(M, deltas, 4, rng());
    double metric = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      metric = std::max(metric, rows[i].max_change / (K * std::pow(rows[i].delta, 1.0 / m)));
      if (i > 0 && rows[i].max_change > rows[i - 1].max_change + 1e-12) monotone = false;
    }
    const bool pass = metric <= 1.0 && monotone && rows.back().max_change < terminal;
    rec.record(metric, pass, witness(M, monotone ? "" : "abscissa change not monotone in delta"));
  }
  return std::move(rec).finish();
}

InvariantResult check_hurwitz_agreement(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "hurwitz_agreement");
  const double gap = cfg.tol("hurwitz_gap");
  const double box = cfg.tol("hurwitz_box");
  Recorder rec("hurwitz_agreement", 0.0);
  for (int t = 0; t < cfg.trials; ++t) {
    const int m = draw_order(rng, cfg.m_min, cfg.m_max);
    const CoeffVector M(sample_real_box(rng, m, box));
    const MonicPoly P = char_poly(M);
    const double abscissa = spectral_abscissa(find_roots(P));
    if (std::abs(abscissa) <= gap) {
      rec.skip();
      continue;
    }
    const bool agree = is_hurwitz_stable(P) == (abscissa < 0.0);
    rec.record(agree ? 0.0 : 1.0, agree, witness(M, "abscissa " + std::to_string(abscissa)));
  }
  return std::move(rec).finish();
}

InvariantResult check_hurwitz_quadratic(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "hurwitz_quadratic");
  Recorder rec("hurwitz_quadratic", 0.0);
  for (int t = 0; t < cfg.trials; ++t) {
    const CoeffVector M(sample_real_box(rng, 2, cfg.tol("hurwitz_box")));
    const bool closed_form = M[1].real() < 0.0 && M[0].real() < 0.0;
    const bool agree = is_hurwitz_stable(char_poly(M)) == closed_form;
    rec.record(agree ? 0.0 : 1.0, agree, witness(M));
  }
  return std::move(rec).finish();
}

InvariantResult check_oracle_agreement(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "oracle_agreement");
  const double tol = cfg.tol("oracle_relative");
  const OracleOptions oracle{cfg.tol("oracle_rel_tol"), cfg.tol("oracle_abs_tol")};
  const std::vector<double> grid = linspace(0.0, 10.0, 32);
  Recorder rec("oracle_agreement", tol);
  for (int t = 0; t < cfg.trials; ++t) {
    const int m = draw_order(rng, cfg.m_min, cfg.m_max);
    const CoeffVector M(sample_polydisc(rng, m, cfg.C_a));
    const InitVector N(sample_polydisc(rng, m, cfg.C_w));
    const ModalSolution S = solve_modal(M, N);
    if (S.ill_conditioned()) {
      rec.skip();
      continue;
    }
    const auto states = integrate_oracle(M, N, grid, oracle);
    double metric = 0.0;
    double where = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const CVector modal = eval_derivatives(S, grid[g], m - 1);
      const double dev = relative_to((modal - states[g]).cwiseAbs().maxCoeff(), states[g].cwiseAbs().maxCoeff());
      if (dev > metric) {
        metric = dev;
        where = grid[g];
      }
    }
    rec.record(metric, metric <= tol, witness(M, N, where));
  }
  InvariantResult r = std::move(rec).finish();
  // The ill-conditioned exclusion is itself capped.
  if (r.skipped > cfg.tol("ill_conditioned_fraction") * r.trials)
    r.violation = std::to_string(r.skipped) + " ill-conditioned trials exceed the allowed fraction";
  return r;
}

InvariantResult check_superposition(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "superposition");
  const double tol = cfg.tol("superposition");
  const std::vector<double> grid = linspace(0.0, 10.0, 16);
  Recorder rec("superposition", tol);
  for (int t = 0; t < cfg.trials; ++t) {
    const int m = draw_order(rng, cfg.m_min, cfg.m_max);
    const CoeffVector M(sample_polydisc(rng, m, cfg.C_a));
    const InitVector N1(sample_polydisc(rng, m, cfg.C_w)), N2(sample_polydisc(rng, m, cfg.C_w));
    const Complex alpha = sample_disc(rng, 1.0), beta = sample_disc(rng, 1.0);
    const RootSet roots = find_roots(char_poly(M));
    const ModalSolution S1 = solve_modal(roots, N1), S2 = solve_modal(roots, N2);
    const ModalSolution S3 = solve_modal(roots, InitVector(alpha * N1.values() + beta * N2.values()));
    if (S3.ill_conditioned()) {
      rec.skip();
      continue;
    }
    double metric = 0.0;
    for (double xi : grid) {
      const CVector w1 = alpha * eval_derivatives(S1, xi, m - 1);
      const CVector w2 = beta * eval_derivatives(S2, xi, m - 1);
      const CVector w3 = eval_derivatives(S3, xi, m - 1);
      for (int i = 0; i < m; ++i) {
        const double scale = std::abs(w1[i]) + std::abs(w2[i]);
        metric = std::max(metric, relative_to(std::abs(w3[i] - w1[i] - w2[i]), scale));
      }
    }
    rec.record(metric, metric <= tol, witness(M, N1));
  }
  return std::move(rec).finish();
}

InvariantResult check_recurrence(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "recurrence");
  const double tol = cfg.tol("recurrence");
  const double points[] = {0.0, 0.5, 1.0, 2.5, 5.0, 10.0};
  Recorder rec("recurrence", tol);
  for (int t = 0; t < cfg.trials; ++t) {
    const int m = draw_order(rng, cfg.m_min, cfg.m_max);
    const CoeffVector M(sample_polydisc(rng, m, cfg.C_a));
    const InitVector N(sample_polydisc(rng, m, cfg.C_w));
    const ModalSolution S = solve_modal(M, N);
    if (S.ill_conditioned()) {
      rec.skip();
      continue;
    }
    double metric = 0.0;
    bool exact = true;
    for (double xi : points) {
      const CVector d = eval_derivatives(S, xi, m - 1);
      Complex direct(0.0);
      for (int j = 0; j < m; ++j) direct += M[j] * d[j];
      exact = exact && derivative_high(M, S, m, xi) == direct;
      const CVector analytic = eval_derivatives(S, xi, 2 * m);
      for (int i = m; i <= 2 * m; ++i) {
        const CVector c = high_derivative_weights(M, i);
        double scale = std::abs(analytic[i]);
        for (int j = 0; j < m; ++j) scale = std::max(scale, std::abs(c[j] * d[j]));
        metric = std::max(metric, relative_to(std::abs(derivative_high(M, S, i, xi) - analytic[i]), scale));
      }
    }
    rec.record(metric, exact && metric <= tol, witness(M, N, 0.0, exact ? "" : "order-m recurrence not exact"));
  }
  return std::move(rec).finish();
}

InvariantResult check_shifted_sign(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "shifted_sign");
  const double tol = cfg.tol("shifted_sign");
  const auto [lo, hi] = reduction_range(cfg);
  Recorder rec("shifted_sign", tol);
  for (int t = 0; t < cfg.trials; ++t) {
    const int order = draw_order(rng, lo, hi);
    const CoeffVector M(sample_polydisc(rng, order, cfg.C_a));
    const InitVector N(sample_polydisc(rng, order, cfg.C_w));
    try {
      const ReducedProblem rp = reduce_order(M, N);
      const double residual = std::abs(rp.shift_residual) / (cfg.tol("shift_residual") * std::pow(1.0 + cfg.C_a, order));
      const double top = spectral_abscissa(find_roots(char_poly(rp.u_coeffs())));
      rec.record(top, top <= tol && residual <= 1.0, witness(M, N));
    } catch (const Error& e) {
      rec.record(std::numeric_limits<double>::infinity(), false, witness(M, N, 0.0, e.what()));
    }
  }
  return std::move(rec).finish();
}

InvariantResult check_reduction_round_trip(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "reduction_round_trip");
  const double tol = cfg.tol("round_trip");
  const auto [lo, hi] = reduction_range(cfg);
  const std::vector<double> grid = linspace(0.0, 10.0, 32);
  Recorder rec("reduction_round_trip", 1.0);
  for (int t = 0; t < cfg.trials; ++t) {
    const int order = draw_order(rng, lo, hi);
    const CoeffVector M(sample_polydisc(rng, order, cfg.C_a));
    const InitVector N(sample_polydisc(rng, order, cfg.C_w));
    const ModalSolution S = solve_modal(M, N);
    const std::vector<Complex> rebuilt = reconstruct(reduce_order(M, N), grid);
    double metric = 0.0;
    double where = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const Complex w = eval_derivatives(S, grid[g], 0)[0];
      const double dev = std::abs(rebuilt[g] - w) / (tol * (1.0 + std::abs(w)));
      if (dev > metric) {
        metric = dev;
        where = grid[g];
      }
    }
    rec.record(metric, metric <= 1.0, witness(M, N, where));
  }
  return std::move(rec).finish();
}

InvariantResult check_leibniz(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "leibniz");
  const double tol = cfg.tol("leibniz");
  const auto [lo, hi] = reduction_range(cfg);
  Recorder rec("leibniz", tol);
  for (int t = 0; t < cfg.trials; ++t) {
    const int order = draw_order(rng, lo, hi);
    const CoeffVector M(sample_polydisc(rng, order, cfg.C_a));
    const InitVector N(sample_polydisc(rng, order, cfg.C_w));
    const ReducedProblem rp = reduce_order(M, N);
    const ModalSolution S = solve_modal(M, N);
    if (S.ill_conditioned()) {
      rec.skip();
      continue;
    }
    // e^{-lambda* xi} w(xi) is the modal solution with every root shifted.
    std::vector<ModalTerm> shifted = S.terms();
    for (auto& term : shifted) term.root -= rp.lambda_star;
    const CVector u = eval_derivatives(ModalSolution(shifted), 0.0, order - 1);
    double metric = 0.0;
    for (int i = 0; i < order; ++i) {
      double scale = 0.0;
      for (int j = 0; j <= i; ++j) scale += binomial(i, j) * std::pow(std::abs(rp.lambda_star), i - j) * std::abs(N[j]);
      metric = std::max(metric, relative_to(std::abs(u[i] - rp.u0_full[i]), scale));
    }
    rec.record(metric, metric <= tol, witness(M, N));
  }
  return std::move(rec).finish();
}

InvariantResult check_transformed_bounds(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "transformed_bounds");
  const auto [lo, hi] = reduction_range(cfg);
  Recorder rec("transformed_bounds", 1.0);
  for (int t = 0; t < cfg.trials; ++t) {
    const int order = draw_order(rng, lo, hi);
    const CoeffVector M(sample_polydisc(rng, order, cfg.C_a));
    const InitVector N(sample_polydisc(rng, order, cfg.C_w));
    const ReducedProblem rp = reduce_order(M, N);
    const TransformedBounds tb = transformed_bounds(order, cfg.C_a, cfg.C_w);
    const double b_max = rp.b.cwiseAbs().maxCoeff();
    const double u_max = rp.u0_full.cwiseAbs().maxCoeff();
    const double metric = std::max(relative_to(b_max, tb.C_b), relative_to(u_max, tb.C_u));
    rec.record(metric, b_max <= tb.C_b && u_max <= tb.C_u, witness(M, N));
  }
  return std::move(rec).finish();
}

InvariantResult check_certified_dominates(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "certified_dominates_empirical");
  Recorder rec("certified_dominates_empirical", 1.0);
  for (int t = 0; t < cfg.trials; ++t) {
    const int m = draw_order(rng, cfg.m_min, cfg.m_max);
    const CoeffVector M(sample_polydisc(rng, m, cfg.C_a));
    const InitVector N(sample_polydisc(rng, m, cfg.C_w));
    const RootSet roots = find_roots(char_poly(M));
    const double abscissa = spectral_abscissa(roots);
    const double empirical = empirical_constant(solve_modal(roots, N), abscissa, default_xi_grid(abscissa));
    const Wide certified = cfg.certify(m, cfg.C_a, cfg.C_w).constant;
    const double metric = relative_to(empirical, certified);
    rec.record(metric, empirical <= certified, witness(M, N, 0.0, "empirical " + std::to_string(empirical)));
  }
  return std::move(rec).finish();
}

InvariantResult check_envelope_validity(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "envelope_validity");
  Recorder rec("envelope_validity", 1.0);
  for (int t = 0; t < cfg.trials; ++t) {
    const int m = draw_order(rng, cfg.m_min, cfg.m_max);
    const CoeffVector M(sample_polydisc(rng, m, cfg.C_a));
    const InitVector N(sample_polydisc(rng, m, cfg.C_w));
    const RootSet roots = find_roots(char_poly(M));
    const double abscissa = spectral_abscissa(roots);
    Envelope env = cfg.certify(m, cfg.C_a, cfg.C_w);
    env.rate = abscissa;
    const EnvelopeReport r = check_envelope(solve_modal(roots, N), abscissa, env, default_xi_grid(abscissa), 0.0);
    rec.record(r.worst_ratio, r.holds, witness(M, N, r.worst_xi, "order " + std::to_string(r.worst_order)));
  }
  return std::move(rec).finish();
}

namespace {

FamilySpec random_family(Rng& rng, const SuiteConfig& cfg) {
  FamilySpec spec;
  spec.k = draw_order(rng, 1, 2);
  spec.m = draw_order(rng, cfg.m_min, std::min(cfg.m_max, 4));
  spec.grid = 9;
  spec.domain.assign(spec.k, Interval{-1.0, 1.0});
  for (int i = 0; i < spec.m; ++i) {
    std::vector<Monomial> terms;
    for (int d0 = 0; d0 <= 2; ++d0)
      for (int d1 = 0; d1 <= (spec.k == 2 ? 2 - d0 : 0); ++d1) {
        std::vector<int> powers{d0};
        if (spec.k == 2) powers.push_back(d1);
        terms.push_back({sample_disc(rng, cfg.C_a / 3.0), powers});
      }
    spec.coeffs.emplace_back(std::move(terms));
  }
  return spec;
}

}  // namespace

InvariantResult check_family_max_equality(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "family_max_equality");
  const double tol = cfg.tol("family_max_equality");
  Recorder rec("family_max_equality", tol);
  const int trials = std::max(1, cfg.trials / 100);
  for (int t = 0; t < trials; ++t) {
    const FamilySpec spec = random_family(rng, cfg);
    const SupResult sup = abscissa_sup(spec);
    double image_max = -std::numeric_limits<double>::infinity();
    for (const auto& point : family_grid(spec)) image_max = std::max(image_max, spectral_abscissa(spec.at(point)));
    const double metric = std::abs(sup.coarse_sup - image_max);
    rec.record(metric, metric <= tol, {t, spec.at(sup.arg).coeffs(), {}, 0.0, "family attaining point"});
  }
  return std::move(rec).finish();
}

InvariantResult check_family_refinement(const SuiteConfig& cfg) {
  Rng rng = family_rng(cfg, "family_refinement");
  const double tol = cfg.tol("family_kappa");
  Recorder rec("family_refinement", tol);
  const int trials = std::max(1, cfg.trials / 100);
  for (int t = 0; t < trials; ++t) {
    const FamilySpec spec = random_family(rng, cfg);
    const SupResult sup = abscissa_sup(spec);
    const double at_arg = spectral_abscissa(spec.at(sup.arg));
    const double metric = std::abs(at_arg - sup.sup_value);
    rec.record(metric, sup.sup_value >= sup.coarse_sup && metric <= tol,
               {t, spec.at(sup.arg).coeffs(), {}, 0.0, "refined sup vs attaining point"});
  }
  return std::move(rec).finish();
}

SuiteReport suite_run(const SuiteConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  using Check = InvariantResult (*)(const SuiteConfig&);
  const Check checks[] = {
      check_reconstruction,      check_permutation_invariance, check_root_bound,
      check_shift_consistency,   check_continuity,             check_hurwitz_agreement,
      check_hurwitz_quadratic,   check_oracle_agreement,       check_superposition,
      check_recurrence,          check_shifted_sign,           check_reduction_round_trip,
      check_leibniz,             check_transformed_bounds,     check_certified_dominates,
      check_envelope_validity,   check_family_max_equality,    check_family_refinement,
  };
  for (Check check : checks) report.results.push_back(check(cfg));
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace cauchyenv
