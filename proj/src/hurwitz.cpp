#include "cauchyenv/hurwitz.hpp"

#include <cmath>

namespace cauchyenv {

Eigen::MatrixXd hurwitz_matrix(const MonicPoly& P) {
  if (!P.has_real_coeffs())
    throw Error(ErrorKind::NotRealCoefficients, "Hurwitz matrix needs real coefficients");
  const int n = P.degree();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int power = n - (2 * j - i);
      if (power >= 0 && power <= n) H(i - 1, j - 1) = P.coeff(power).real();
    }
  }
  return H;
}

HurwitzResult hurwitz_test(const MonicPoly& P) {
  const Eigen::MatrixXd H = hurwitz_matrix(P);
  Eigen::MatrixXd A = H;
  const int n = P.degree();
  HurwitzResult result;

  // Hadamard bound of the leading k x k block, used to judge "near zero".
  auto scale = [&](int k) {
    double s = 1.0;
    for (int i = 0; i < k; ++i) s *= std::max(H.row(i).head(k).norm(), 1e-300);
    return s;
  };

  // After step k of Bareiss elimination, A(k, k) is the (k+1)th leading minor.
  double prev = 1.0;
  for (int k = 0; k < n; ++k) {
    const double minor = A(k, k);
    result.minors.push_back(minor);
    if (std::abs(minor) <= 1e-10 * scale(k + 1)) result.near_singular = true;
    if (!(minor > 0.0)) {
      result.stable = false;
      return result;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) A(i, j) = (A(k, k) * A(i, j) - A(i, k) * A(k, j)) / prev;
      A(i, k) = 0.0;
    }
    prev = A(k, k);
  }
  result.stable = true;
  return result;
}

const char* to_string(StabilityKind kind) {
  switch (kind) {
    case StabilityKind::Stable: return "Stable";
    case StabilityKind::Unstable: return "Unstable";
    case StabilityKind::Marginal: return "Marginal";
  }
  return "Unknown";
}

StabilityVerdict classify_stability(const CoeffVector& M, double margin_tol,
                                    const RootFinderOptions& options) {
  if (!(margin_tol >= 0.0)) throw Error(ErrorKind::InvalidInput, "margin_tol must be nonnegative");
  StabilityVerdict v;
  v.abscissa = spectral_abscissa(M, options);
  v.margin_tol = margin_tol;
  if (v.abscissa < -margin_tol)
    v.kind = StabilityKind::Stable;
  else if (v.abscissa > margin_tol)
    v.kind = StabilityKind::Unstable;
  else
    v.kind = StabilityKind::Marginal;
  return v;
}

}  // namespace cauchyenv
