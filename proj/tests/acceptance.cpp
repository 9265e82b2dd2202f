// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "cauchyenv/io.hpp"
#include "cauchyenv/random.hpp"
#include "cauchyenv/verify.hpp"

using namespace cauchyenv;

namespace {

// Pinned tolerances.
constexpr double kOracleRelative = 1e-7;
constexpr double kIllConditionedFraction = 0.02;
constexpr double kRoundTrip = 1e-8;
constexpr double kShiftedSign = 1e-8;
constexpr double kShiftResidual = 1e-8;
constexpr double kRootBound = 1e-8;
constexpr double kHurwitzGap = 1e-6;
constexpr double kContinuityTerminal = 1e-2;
constexpr double kAnchor = 1e-12;
constexpr double kKappa = 1e-6;

int failures = 0;

void report(int id, bool ok, const std::string& detail, double seconds) {
  std::printf("criterion %d: %s  %s  (%.1fs)\n", id, ok ? "PASS" : "FAIL", detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void timed(int id, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(id, ok, detail, s);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = a + (b - a) * k / (n - 1);
  return v;
}

int draw_order(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool oracle_equivalence(std::string& detail) {
  Rng rng(1001);
  const auto grid = linspace(0.0, 10.0, 32);
  int ill = 0, bad = 0;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int m = draw_order(rng, 1, 6);
    const CoeffVector M(sample_polydisc(rng, m, 1.0));
    const InitVector N(sample_polydisc(rng, m, 1.0));
    const ModalSolution S = solve_modal(M, N);
    if (S.ill_conditioned()) {
      ++ill;
      continue;
    }
    const auto oracle = integrate_oracle(M, N, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const CVector closed = eval_derivatives(S, grid[g], m - 1);
      const double scale = std::max(oracle[g].cwiseAbs().maxCoeff(), 1e-300);
      const double rel = (closed - oracle[g]).cwiseAbs().maxCoeff() / scale;
      worst = std::max(worst, rel);
      if (rel > kOracleRelative) {
        ++bad;
        break;
      }
    }
  }
  detail = fmt("worst relative %.3g (tol %.0e), ill-conditioned %.0f/1000", worst, kOracleRelative, ill);
  return bad == 0 && ill <= kIllConditionedFraction * 1000;
}

bool envelope_validity(std::string& detail) {
  Rng rng(1002);
  int bad = 0;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int m = draw_order(rng, 1, 6);
    const CoeffVector M(sample_polydisc(rng, m, 1.0));
    const InitVector N(sample_polydisc(rng, m, 1.0));
    const ModalSolution S = solve_modal(M, N);
    const double abscissa = spectral_abscissa(M);
    const Envelope env{certified_constant(m, 1.0, 1.0).constant, m - 1, abscissa};
    const auto grid = default_xi_grid(abscissa);
    const EnvelopeReport r = check_envelope(S, abscissa, env, grid, 0.0);
    const double emp = empirical_constant(S, abscissa, grid);
    worst = std::max(worst, r.worst_ratio);
    if (!r.holds || emp > env.constant) ++bad;
  }
  const double c2 = certified_constant(2, 1.0, 1.0).constant;
  CVector a(2), w(2);
  a << -1.0, 0.0;
  w << 1.0, 0.0;
  const double harmonic = empirical_constant(CoeffVector(a), InitVector(w), xi_grid_to(50.0, 4096));
  detail = fmt("worst ratio %.3g, C2 = %.17g, harmonic empirical %.17g", worst, c2, harmonic);
  return bad == 0 && c2 == 36.0 && std::abs(harmonic - 1.0) <= 1e-12;
}

bool reduction(std::string& detail) {
  Rng rng(1003);
  const auto grid = linspace(0.0, 10.0, 32);
  int bad = 0;
  double worst_trip = 0.0, worst_mu = -1e300, worst_b0 = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int order = draw_order(rng, 2, 6);
    const CoeffVector M(sample_polydisc(rng, order, 1.0));
    const InitVector N(sample_polydisc(rng, order, 1.0));
    const ReducedProblem rp = reduce_order(M, N);
    const ModalSolution S = solve_modal(M, N);
    const auto back = reconstruct(rp, grid);
    bool ok = true;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const Complex w = eval_derivatives(S, grid[g], 0)[0];
      const double e = std::abs(back[g] - w) / (1.0 + std::abs(w));
      worst_trip = std::max(worst_trip, e);
      ok = ok && e <= kRoundTrip;
    }
    const double mu = spectral_abscissa(rp.u_coeffs());
    const double b0 = std::abs(rp.shift_residual);
    worst_mu = std::max(worst_mu, mu);
    worst_b0 = std::max(worst_b0, b0 / std::pow(2.0, order));
    ok = ok && mu <= kShiftedSign && b0 <= kShiftResidual * std::pow(2.0, order);
    if (!ok) ++bad;
  }
  detail = fmt("round trip %.3g, max re(mu) %.3g, |b0|/(1+C_a)^(m+1) %.3g", worst_trip, worst_mu, worst_b0);
  return bad == 0;
}

bool root_bound(std::string& detail) {
  Rng rng(1004);
  int bad = 0;
  double worst = -1e300;
  for (double ca : {0.1, 1.0, 10.0}) {
    for (int t = 0; t < 10000; ++t) {
      const int m = draw_order(rng, 1, 8);
      const CoeffVector M(sample_polydisc(rng, m, ca));
      const RootSet R = find_roots(char_poly(M));
      for (const auto& e : R) {
        const double excess = std::abs(e.root) - (1.0 + ca);
        worst = std::max(worst, excess);
        if (excess > kRootBound) ++bad;
      }
    }
  }
  detail = fmt("max |lambda| - (1 + C_a) = %.3g over 3 x 10^4 polynomials", worst);
  return bad == 0;
}

bool hurwitz(std::string& detail) {
  Rng rng(1005);
  int compared = 0, mismatch = 0;
  while (compared < 10000) {
    const int m = draw_order(rng, 1, 6);
    const CoeffVector M(sample_real_box(rng, m, 2.0));
    const double abscissa = spectral_abscissa(M);
    if (std::abs(abscissa) <= kHurwitzGap) continue;
    ++compared;
    if (is_hurwitz_stable(char_poly(M)) != (abscissa < 0)) ++mismatch;
  }
  detail = fmt("%.0f mismatches in %.0f real instances", mismatch, compared);
  return mismatch == 0;
}

bool continuity(std::string& detail) {
  Rng rng(1006);
  const double deltas[] = {1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10};
  int bad = 0;
  double worst = 0.0, terminal = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int m = draw_order(rng, 1, 6);
    const CoeffVector M(sample_polydisc(rng, m, 1.0));
    const auto rows = continuity_probe(M, deltas, 8, rng());
    for (const auto& row : rows) {
      const double ratio = row.max_change / std::pow(row.delta, 1.0 / m);
      worst = std::max(worst, ratio);
      if (ratio > kContinuityK) ++bad;
    }
    terminal = std::max(terminal, rows.back().max_change);
    if (rows.back().max_change >= kContinuityTerminal) ++bad;
  }
  CVector zero(2), dir(2);
  zero << 0.0, 0.0;
  dir << 1.0, 0.0;
  const double anchor = abscissa_change(CoeffVector(zero), dir, 1e-6);
  detail = fmt("max ratio %.3g (K = %.3g), terminal %.3g", worst, kContinuityK, terminal) +
           fmt(", anchor error %.3g", std::abs(anchor - 1e-3));
  return bad == 0 && std::abs(anchor - 1e-3) <= kAnchor;
}

bool decay(std::string& detail) {
  FamilySpec spec;
  spec.k = 1;
  spec.m = 2;
  spec.domain = {{0.0, 1.0}};
  spec.coeffs = {PolyExpr({{-2.0, {0}}, {-1.0, {1}}}), PolyExpr::constant(-3.0, 1)};
  const DecayCertificate cert = decay_certificate(spec, 1.0);
  const FamilyCheckReport r = family_envelope_check(spec, cert, ParamBox{2, 1.0}, 100, 1007);
  detail = fmt("kappa %.12g, %.0f/100 samples pass, worst ratio %.3g", cert.kappa, r.passed, r.worst_ratio);
  return std::abs(cert.kappa - 1.0) <= kKappa && r.passed == 100 && r.samples == 100;
}

bool determinism(std::string& detail) {
  SuiteConfig cfg;
  cfg.seed = 42;
  const std::string a = io::to_json(suite_run(cfg), cfg).dump(2);
  const std::string b = io::to_json(suite_run(cfg), cfg).dump(2);
  detail = fmt("report %.0f bytes, identical: %.0f", static_cast<double>(a.size()), a == b ? 1.0 : 0.0);
  return a == b;
}

}  // namespace

int main() {
  timed(1, oracle_equivalence);
  timed(2, envelope_validity);
  timed(3, reduction);
  timed(4, root_bound);
  timed(5, hurwitz);
  timed(6, continuity);
  timed(7, decay);
  timed(8, determinism);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
