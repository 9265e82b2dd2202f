#include "cauchyenv/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cauchyenv {

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return std::round(r);
}

}  // namespace

CoeffVector ReducedProblem::u_coeffs() const {
  CVector c(b.size() + 1);
  c[0] = 0.0;
  c.tail(b.size()) = b;
  return CoeffVector(c);
}

Complex pick_lambda_star(const RootSet& R, double tie_tol) {
  const double abscissa = spectral_abscissa(R);
  const RootEntry* best = nullptr;
  for (const auto& e : R) {
    if (e.root.real() < abscissa - tie_tol) continue;
    if (!best || e.root.imag() > best->root.imag()) best = &e;
  }
  return best->root;
}

ReducedProblem reduce_order(const CoeffVector& M, const InitVector& N, const RootFinderOptions& options) {
  if (M.order() != N.order())
    throw Error(ErrorKind::InvalidInput, "coefficient and initial vectors differ in order");
  if (M.order() < 2) throw Error(ErrorKind::InvalidInput, "order reduction needs order >= 2");
  const int order = M.order();
  const int m = order - 1;

  const MonicPoly P = char_poly(M);
  ReducedProblem rp;
  rp.lambda_star = pick_lambda_star(find_roots(P, options));

  const MonicPoly Q = taylor_shift(P, rp.lambda_star);
  rp.shift_residual = Q.low_coeffs()[0];
  const double limit = 1e-8 * std::pow(1.0 + M.max_modulus(), order);
  if (std::abs(rp.shift_residual) > limit)
    throw Error(ErrorKind::ShiftResidual, "shifted constant term " + std::to_string(std::abs(rp.shift_residual)) +
                                              " exceeds " + std::to_string(limit));
  rp.b = -Q.low_coeffs().tail(m);

  // Leibniz: u^(i)(0) = sum_j C(i,j) (-lambda*)^{i-j} w^(j)(0).
  rp.u0_full = CVector::Zero(order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j <= i; ++j) rp.u0_full[i] += binom(i, j) * std::pow(-rp.lambda_star, i - j) * N[j];

  rp.reduced_coeffs = CoeffVector(rp.b);
  rp.reduced_init = InitVector(rp.u0_full.tail(m));
  return rp;
}

std::vector<Complex> reconstruct(const ReducedProblem& rp, std::span<const double> xi) {
  const ModalSolution u = solve_modal(rp.u_coeffs(), InitVector(rp.u0_full));
  std::vector<Complex> out;
  out.reserve(xi.size());
  for (double x : xi) out.push_back(std::exp(rp.lambda_star * x) * eval_derivatives(u, x, 0)[0]);
  return out;
}

Complex reconstruct(const ReducedProblem& rp, double xi) {
  const double grid[] = {xi};
  return reconstruct(rp, grid).front();
}

TransformedBounds transformed_bounds(int source_order, Wide C_a, Wide C_w) {
  if (source_order < 1) throw Error(ErrorKind::InvalidInput, "order must be >= 1");
  if (!(C_a >= 0.0) || !(C_w >= 0.0)) throw Error(ErrorKind::InvalidInput, "bounds must be nonnegative");
  const int m = source_order - 1;
  TransformedBounds tb;
  for (int i = 1; i <= m; ++i) {
    Wide tail = 0.0;
    for (int j = i; j <= m; ++j) tail += binom(j, i) * std::pow(1.0L + C_a, j - i);
    tb.C_b = std::max(tb.C_b, binom(m + 1, i) * std::pow(1.0L + C_a, m + 1 - i) + C_a * tail);
  }
  tb.C_u = C_w * std::pow(2.0L + C_a, m);
  return tb;
}

namespace {

// Unchecked recursion; may return inf once the constants leave the Wide range.
Wide certified_recursion(int m, Wide C_a, Wide C_w) {
  if (m == 1) return C_w;
  // Step from order n = m-1 to order n+1 = m.
  const int n = m - 1;
  const TransformedBounds tb = transformed_bounds(m, C_a, C_w);
  if (!std::isfinite(tb.C_b) || !std::isfinite(tb.C_u)) return std::numeric_limits<Wide>::infinity();
  const Wide reduced = certified_recursion(n, tb.C_b, tb.C_u);
  // |u| <= C_u + reduced * (xi + xi^n / n) <= (C_u + reduced (1 + 1/n)) (1 + xi^n)
  const Wide c_u = tb.C_u + reduced * (1.0L + 1.0L / n);
  // Leibniz with |lambda*| <= 1 + C_a, 1 + xi^{n-1} <= 2 (1 + xi^n) and
  // sum_{j>=1} C(i,j) (1+C_a)^{i-j} <= (2+C_a)^n.
  return c_u * std::pow(1.0L + C_a, n) + 2.0L * reduced * std::pow(2.0L + C_a, n);
}

}  // namespace

Envelope certified_constant(int m, Wide C_a, Wide C_w) {
  if (m < 1) throw Error(ErrorKind::InvalidInput, "order must be >= 1");
  if (!(C_a >= 0.0) || !(C_w >= 0.0)) throw Error(ErrorKind::InvalidInput, "bounds must be nonnegative");
  Envelope env;
  env.power = m - 1;
  env.constant = certified_recursion(m, C_a, C_w);
  if (!std::isfinite(env.constant))
    throw Error(ErrorKind::Overflow, "certified constant for order " + std::to_string(m) + " overflows");
  return env;
}

std::vector<double> xi_grid_to(double xi_max, int points) {
  if (!(xi_max > 1e-3) || points < 4) throw Error(ErrorKind::InvalidInput, "bad xi grid parameters");
  const int n_lin = points / 2;
  const int n_log = points - n_lin;
  std::vector<double> grid;
  grid.reserve(points);
  for (int k = 0; k < n_lin; ++k) grid.push_back(xi_max * k / (n_lin - 1));
  const double lo = std::log(1e-3), hi = std::log(xi_max);
  for (int k = 0; k < n_log; ++k) grid.push_back(std::exp(lo + (hi - lo) * k / (n_log - 1)));
  grid.back() = xi_max;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<double> default_xi_grid(double rate, int points) {
  const double xi_max = rate >= -1e-9 ? 50.0 : 20.0 / std::abs(rate);
  return xi_grid_to(xi_max, points);
}

double empirical_constant(const ModalSolution& S, double abscissa, std::span<const double> xi_grid) {
  if (xi_grid.empty()) throw Error(ErrorKind::InvalidInput, "empty xi grid");
  const int m = S.order();
  double best = 0.0;
  for (double xi : xi_grid) {
    const CVector d = eval_derivatives_scaled(S, xi, m - 1, abscissa);
    const double weight = 1.0 + std::pow(xi, m - 1);
    for (int i = 0; i < m; ++i) best = std::max(best, std::abs(d[i]) / weight);
  }
  return best;
}

double empirical_constant(const CoeffVector& M, const InitVector& N, std::span<const double> xi_grid,
                          const RootFinderOptions& options) {
  if (M.order() != N.order())
    throw Error(ErrorKind::InvalidInput, "coefficient and initial vectors differ in order");
  const RootSet roots = find_roots(char_poly(M), options);
  return empirical_constant(solve_modal(roots, N), spectral_abscissa(roots), xi_grid);
}

EnvelopeReport check_envelope(const ModalSolution& S, double abscissa, const Envelope& env,
                              std::span<const double> xi_grid, double margin) {
  if (!(margin >= 0.0)) throw Error(ErrorKind::InvalidInput, "margin must be nonnegative");
  EnvelopeReport report;
  report.rate = env.rate.value_or(abscissa);
  const int m = S.order();
  for (double xi : xi_grid) {
    const CVector d = eval_derivatives_scaled(S, xi, m - 1, report.rate);
    const Wide bound = env.constant * (1.0L + std::pow(Wide(xi), env.power));
    for (int i = 0; i < m; ++i) {
      const double mag = std::abs(d[i]);
      double ratio = 0.0;
      if (mag > 0.0) ratio = bound > 0.0 ? static_cast<double>(mag / bound) : std::numeric_limits<double>::infinity();
      if (ratio > report.worst_ratio) {
        report.worst_ratio = ratio;
        report.worst_order = i;
        report.worst_xi = xi;
      }
      if (mag > (1.0L + margin) * bound) report.holds = false;
    }
  }
  return report;
}

EnvelopeReport check_envelope(const CoeffVector& M, const InitVector& N, const Envelope& env,
                              std::span<const double> xi_grid, double margin,
                              const RootFinderOptions& options) {
  if (M.order() != N.order())
    throw Error(ErrorKind::InvalidInput, "coefficient and initial vectors differ in order");
  const RootSet roots = find_roots(char_poly(M), options);
  return check_envelope(solve_modal(roots, N), spectral_abscissa(roots), env, xi_grid, margin);
}

}  // namespace cauchyenv
