#include "cauchyenv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

namespace cauchyenv {

namespace {

// Pascal's triangle up to row n.
std::vector<std::vector<double>> binomials(int n) {
  std::vector<std::vector<double>> b(n + 1);
  for (int r = 0; r <= n; ++r) {
    b[r].assign(r + 1, 1.0);
    for (int s = 1; s < r; ++s) b[r][s] = b[r - 1][s - 1] + b[r - 1][s];
  }
  return b;
}

}  // namespace

ModalSolution::ModalSolution(std::vector<ModalTerm> terms, double condition_estimate)
    : terms_(std::move(terms)), condition_(condition_estimate) {
  for (const auto& t : terms_) {
    if (t.multiplicity < 1 || t.poly.size() != t.multiplicity)
      throw Error(ErrorKind::InvalidInput, "modal term polynomial must have multiplicity coefficients");
    order_ += t.multiplicity;
  }
}

ModalSolution solve_modal(const CoeffVector& M, const InitVector& N, const RootFinderOptions& options) {
  if (M.order() != N.order())
    throw Error(ErrorKind::InvalidInput, "coefficient and initial vectors differ in order");
  return solve_modal(find_roots(char_poly(M), options), N);
}

ModalSolution solve_modal(const RootSet& roots, const InitVector& N) {
  const int m = N.order();
  if (roots.degree() != m) throw Error(ErrorKind::InvalidInput, "root multiset degree differs from order");

  // Confluent Vandermonde system: row i is d^i/dxi^i at 0 of the basis
  // functions xi^q e^{root xi}, i.e. i!/(i-q)! root^{i-q} for i >= q.
  CMatrix A = CMatrix::Zero(m, m);
  int col = 0;
  for (const auto& e : roots) {
    for (int q = 0; q < e.multiplicity; ++q, ++col) {
      for (int i = q; i < m; ++i) {
        double falling = 1.0;
        for (int f = 0; f < q; ++f) falling *= double(i - f);
        A(i, col) = falling * std::pow(e.root, i - q);
      }
    }
  }

  Eigen::PartialPivLU<CMatrix> lu(A);
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double min_pivot = pivots.minCoeff();
  const double condition =
      min_pivot > 0.0 ? pivots.maxCoeff() / min_pivot : std::numeric_limits<double>::infinity();
  if (min_pivot == 0.0) throw Error(ErrorKind::NonConvergence, "confluent system is singular");
  const CVector x = lu.solve(N.values());

  std::vector<ModalTerm> terms;
  col = 0;
  for (const auto& e : roots) {
    terms.push_back({e.root, e.multiplicity, x.segment(col, e.multiplicity)});
    col += e.multiplicity;
  }
  return ModalSolution(std::move(terms), condition);
}

CVector eval_derivatives_scaled(const ModalSolution& S, double xi, int max_order, double shift) {
  if (!(xi >= 0.0)) throw Error(ErrorKind::InvalidInput, "xi must be nonnegative");
  if (max_order < 0) throw Error(ErrorKind::InvalidInput, "max_order must be nonnegative");
  const auto binom = binomials(max_order);
  CVector out = CVector::Zero(max_order + 1);
  for (const auto& t : S.terms()) {
    const int k = t.multiplicity;
    // p^(s)(xi) for s < k.
    std::vector<Complex> dp(k);
    CVector d = t.poly;
    for (int s = 0; s < k; ++s) {
      dp[s] = horner(d, Complex(xi));
      d = derivative_coeffs(d);
    }
    std::vector<Complex> pw(max_order + 1, Complex(1.0));
    for (int r = 1; r <= max_order; ++r) pw[r] = pw[r - 1] * t.root;
    const Complex growth = std::exp((t.root - shift) * xi);
    for (int r = 0; r <= max_order; ++r) {
      Complex acc(0.0);
      for (int s = 0; s <= std::min(r, k - 1); ++s) acc += binom[r][s] * pw[r - s] * dp[s];
      out[r] += acc * growth;
    }
  }
  return out;
}

CVector eval_derivatives(const ModalSolution& S, double xi, int max_order) {
  return eval_derivatives_scaled(S, xi, max_order, 0.0);
}

CVector high_derivative_weights(const CoeffVector& M, int i) {
  const int m = M.order();
  if (i < 0) throw Error(ErrorKind::InvalidInput, "derivative order must be nonnegative");
  CVector c = CVector::Zero(m);
  if (i < m) {
    c[i] = 1.0;
    return c;
  }
  c[m - 1] = 1.0;
  for (int step = 0; step < i - m + 1; ++step) {
    const Complex top = c[m - 1];
    for (int j = m - 1; j > 0; --j) c[j] = c[j - 1] + top * M[j];
    c[0] = top * M[0];
  }
  return c;
}

Complex derivative_high(const CoeffVector& M, const ModalSolution& S, int i, double xi) {
  const int m = M.order();
  if (i < m) throw Error(ErrorKind::InvalidInput, "derivative_high needs i >= m");
  if (S.order() != m) throw Error(ErrorKind::InvalidInput, "solution order differs from equation order");
  const CVector c = high_derivative_weights(M, i);
  const CVector d = eval_derivatives(S, xi, m - 1);
  Complex acc(0.0);
  for (int j = 0; j < m; ++j) acc += c[j] * d[j];
  return acc;
}

namespace {

// Dormand-Prince 5(4) tableau. The system is autonomous, so the nodes c_i
// are not needed.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

std::vector<CVector> integrate_oracle(const CoeffVector& M, const InitVector& N,
                                      std::span<const double> xi_grid, const OracleOptions& options) {
  if (M.order() != N.order())
    throw Error(ErrorKind::InvalidInput, "coefficient and initial vectors differ in order");
  if (!(options.rel_tol > 0.0) || !(options.abs_tol >= 0.0))
    throw Error(ErrorKind::InvalidInput, "oracle tolerances must be positive");
  for (std::size_t i = 0; i < xi_grid.size(); ++i) {
    if (!(xi_grid[i] >= 0.0) || (i > 0 && xi_grid[i] < xi_grid[i - 1]))
      throw Error(ErrorKind::InvalidInput, "xi grid must be nonnegative and ascending");
  }

  const Eigen::Index m = M.order();
  const CVector a = M.coeffs();
  auto rhs = [&](const CVector& y, CVector& dy) {
    dy.head(m - 1) = y.tail(m - 1);
    Complex acc(0.0);
    for (Eigen::Index j = 0; j < m; ++j) acc += a[j] * y[j];
    dy[m - 1] = acc;
  };

  std::vector<CVector> out;
  out.reserve(xi_grid.size());
  if (xi_grid.empty()) return out;

  const double span = xi_grid.back();
  double t = 0.0;
  CVector y = N.values();
  CVector k1(m), k2(m), k3(m), k4(m), k5(m), k6(m), k7(m), tmp(m), y_new(m), err(m);
  rhs(y, k1);
  double h = std::min(span > 0.0 ? span : 1.0, 0.01 / cauchy_bound(M));
  long steps = 0;

  for (const double target : xi_grid) {
    while (t < target) {
      if (++steps > options.max_steps) throw Error(ErrorKind::StepUnderflow, "step budget exhausted");
      bool clipped = false;
      double step = h;
      if (t + step >= target) {
        step = target - t;
        clipped = true;
      }
      tmp = y + step * a21 * k1;
      rhs(tmp, k2);
      tmp = y + step * (a31 * k1 + a32 * k2);
      rhs(tmp, k3);
      tmp = y + step * (a41 * k1 + a42 * k2 + a43 * k3);
      rhs(tmp, k4);
      tmp = y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      rhs(tmp, k5);
      tmp = y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      rhs(tmp, k6);
      y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      rhs(y_new, k7);
      err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double norm = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        const double sc = options.abs_tol + options.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        norm += std::norm(err[i]) / (sc * sc);
      }
      norm = std::sqrt(norm / double(m));
      if (!std::isfinite(norm)) norm = 1e10;

      const double factor = std::clamp(0.9 * std::pow(std::max(norm, 1e-16), -0.2), 0.2, 5.0);
      if (norm <= 1.0) {
        t = clipped ? target : t + step;
        y = y_new;
        k1 = k7;
        // A clipped step says nothing about the natural step size.
        if (!clipped) h = step * factor;
      } else {
        h = step * std::max(factor, 0.2);
        if (h < 1e-14 * std::max(span, 1e-300))
          throw Error(ErrorKind::StepUnderflow, "adaptive step collapsed");
      }
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace cauchyenv
