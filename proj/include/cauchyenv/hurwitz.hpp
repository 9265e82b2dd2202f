#pragma once

#include <vector>

#include <Eigen/Core>

#include "cauchyenv/poly.hpp"

namespace cauchyenv {

/// Hurwitz matrix of a real monic polynomial of degree n: entry (i, j)
/// (1-based) is the coefficient of z^{n-(2j-i)}, zero when out of range.
/// Throws Error(NotRealCoefficients) for complex input.
Eigen::MatrixXd hurwitz_matrix(const MonicPoly& P);

struct HurwitzResult {
  bool stable = false;
  /// Some leading minor is within 1e-10 of zero relative to its Hadamard
  /// scale; the verdict sits on the stability boundary.
  bool near_singular = false;
  /// Leading principal minors Delta_1 .. Delta_k, up to the first
  /// nonpositive one.
  std::vector<double> minors;
};

/// Leading principal minors by fraction-free (Bareiss) elimination.
HurwitzResult hurwitz_test(const MonicPoly& P);

inline bool is_hurwitz_stable(const MonicPoly& P) { return hurwitz_test(P).stable; }

enum class StabilityKind { Stable, Unstable, Marginal };

const char* to_string(StabilityKind kind);

struct StabilityVerdict {
  StabilityKind kind = StabilityKind::Marginal;
  double abscissa = 0.0;
  double margin_tol = 0.0;
};

constexpr double kDefaultMarginTol = 1e-9;

/// Root-based verdict; works for complex coefficients.
StabilityVerdict classify_stability(const CoeffVector& M, double margin_tol = kDefaultMarginTol,
                                    const RootFinderOptions& options = {});

}  // namespace cauchyenv
