#pragma once

#include <cstdint>
#include <vector>

#include "cauchyenv/types.hpp"

namespace cauchyenv {

/// Monic polynomial z^n + c_{n-1} z^{n-1} + ... + c_0, stored by its low
/// coefficients (c_0, ..., c_{n-1}).
class MonicPoly {
 public:
  MonicPoly() = default;
  explicit MonicPoly(CVector low_coeffs);

  int degree() const { return static_cast<int>(low_.size()); }
  const CVector& low_coeffs() const { return low_; }

  /// Coefficient of z^k for 0 <= k <= degree (1 for k == degree).
  Complex coeff(int k) const { return k == degree() ? Complex(1.0) : low_[k]; }

  /// All degree+1 coefficients, lowest power first.
  CVector full_coeffs() const;

  bool has_real_coeffs() const;
  double max_low_modulus() const;

  Complex operator()(Complex z) const;

 private:
  CVector low_;
};

struct RootEntry {
  Complex root;
  int multiplicity = 1;
};

/// Unordered multiset of roots; entries are kept sorted by descending real
/// part (then descending imaginary part) so that output is reproducible.
class RootSet {
 public:
  RootSet() = default;
  RootSet(std::vector<RootEntry> entries, bool used_fallback = false);

  const std::vector<RootEntry>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  /// Sum of multiplicities.
  int degree() const;
  /// True when the simultaneous iteration failed and the companion-matrix
  /// eigenvalues were used instead.
  bool used_fallback() const { return used_fallback_; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::vector<RootEntry> entries_;
  bool used_fallback_ = false;
};

struct RootFinderOptions {
  double tol = 1e-12;
  std::uint64_t seed = 0x5eed;
  int max_iterations = 200;
  /// Testing hook: skip the simultaneous iteration and go straight to the
  /// companion-matrix eigenvalues.
  bool force_fallback = false;
};

/// z^m - a_{m-1} z^{m-1} - ... - a_0.
MonicPoly char_poly(const CoeffVector& M);

/// Roots with multiplicities. Throws Error(NonConvergence) only if both the
/// simultaneous iteration and the eigenvalue fallback fail.
RootSet find_roots(const MonicPoly& P, const RootFinderOptions& options = {});
RootSet find_roots(const MonicPoly& P, double tol, std::uint64_t seed = RootFinderOptions{}.seed);

/// Unclustered root approximations straight from the iteration (degree of
/// them). Exposed for diagnostics and tests.
std::vector<Complex> approximate_roots(const MonicPoly& P, const RootFinderOptions& options,
                                       bool* used_fallback = nullptr);

/// Clustering radius used by find_roots for a polynomial whose largest low
/// coefficient has modulus c_max.
double cluster_radius(double c_max);

double spectral_abscissa(const RootSet& R);

/// Convenience: spectral abscissa of the characteristic polynomial of M.
double spectral_abscissa(const CoeffVector& M, const RootFinderOptions& options = {});

/// 1 + max_k |a_k|; bounds the modulus of every root of char_poly(M).
double cauchy_bound(const CoeffVector& M);
double cauchy_bound(const MonicPoly& P);

/// Q(mu) = P(mu + s).
MonicPoly taylor_shift(const MonicPoly& P, Complex s);

/// prod_j (z - r_j)^{k_j} as a monic polynomial.
MonicPoly expand_roots(const RootSet& R);

// Scalar-generic kernels used by the routines above. Coefficient vectors are
// lowest power first.

template <typename Scalar, typename Derived>
Scalar horner(const Eigen::MatrixBase<Derived>& coeffs, const Scalar& z) {
  Scalar acc(0);
  for (Eigen::Index k = coeffs.size() - 1; k >= 0; --k) acc = acc * z + Scalar(coeffs[k]);
  return acc;
}

/// Value and first derivative in one pass.
template <typename Scalar, typename Derived>
void horner2(const Eigen::MatrixBase<Derived>& coeffs, const Scalar& z, Scalar& p, Scalar& dp) {
  p = Scalar(0);
  dp = Scalar(0);
  for (Eigen::Index k = coeffs.size() - 1; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + Scalar(coeffs[k]);
  }
}

/// Coefficients of d/dz of the polynomial.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> derivative_coeffs(
    const Eigen::MatrixBase<Derived>& coeffs) {
  using S = typename Derived::Scalar;
  const Eigen::Index n = coeffs.size();
  Eigen::Matrix<S, Eigen::Dynamic, 1> out(n > 1 ? n - 1 : 1);
  if (n <= 1) {
    out.setZero();
    return out;
  }
  for (Eigen::Index k = 1; k < n; ++k) out[k - 1] = coeffs[k] * S(double(k));
  return out;
}

/// In-place Taylor shift by repeated synthetic division: c(z) -> c(z + s).
template <typename Derived>
void taylor_shift_inplace(Eigen::MatrixBase<Derived>& coeffs, const typename Derived::Scalar& s) {
  const Eigen::Index n = coeffs.size() - 1;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = n - 1; j >= k; --j) coeffs[j] += s * coeffs[j + 1];
}

}  // namespace cauchyenv
