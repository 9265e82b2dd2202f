#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cauchyenv/solver.hpp"

namespace cauchyenv {

/// Polydisc Pi_m(C): m complex coordinates of modulus at most C.
struct ParamBox {
  int m = 1;
  double C = 0.0;
};

/// Result of substituting w = e^{lambda* xi} u into an order m+1 problem and
/// then v = u'. The u-equation has coefficients (0, b_1, ..., b_m); the
/// v-equation is the order-m problem (reduced_coeffs, reduced_init).
struct ReducedProblem {
  Complex lambda_star;
  CVector u0_full;  // u^0 .. u^m
  CVector b;        // b_1 .. b_m
  Complex shift_residual;  // constant term of the shifted polynomial, discarded
  CoeffVector reduced_coeffs;
  InitVector reduced_init;

  int source_order() const { return static_cast<int>(u0_full.size()); }
  /// (0, b_1, ..., b_m) as the full u-equation coefficient vector.
  CoeffVector u_coeffs() const;
};

/// Certified constants grow doubly exponentially in m and leave the double
/// range at m = 6 for C_a = 1, so they are carried in extended precision.
using Wide = long double;

/// |w^(i)(xi)| <= constant * (1 + xi^power) * e^{rate xi}. A missing rate
/// means "the spectral abscissa of whichever instance is checked".
struct Envelope {
  Wide constant = 0.0;
  int power = 0;
  std::optional<double> rate;
};

struct TransformedBounds {
  Wide C_b = 0.0;
  Wide C_u = 0.0;
};

constexpr double kDefaultTieTol = 1e-9;

/// Root with real part within tie_tol of the abscissa; ties go to the
/// largest imaginary part.
Complex pick_lambda_star(const RootSet& R, double tie_tol = kDefaultTieTol);

/// Requires order >= 2 so that the reduced problem is nonempty. Throws
/// Error(ShiftResidual) if the shifted constant term is not negligible.
ReducedProblem reduce_order(const CoeffVector& M, const InitVector& N,
                            const RootFinderOptions& options = {});

/// e^{lambda* xi} u(xi), with u solved in closed form from the u-equation.
Complex reconstruct(const ReducedProblem& rp, double xi);
std::vector<Complex> reconstruct(const ReducedProblem& rp, std::span<const double> xi);

/// Uniform bounds on |b_i| and |u^i| over Pi_{m+1}(C_a) x Pi_{m+1}(C_w),
/// where source_order = m + 1.
TransformedBounds transformed_bounds(int source_order, Wide C_a, Wide C_w);

/// Constant and power of the certified envelope for order m over
/// Pi_m(C_a) x Pi_m(C_w); rate is left unset. Throws Error(Overflow) if the
/// constant is not representable as a Wide.
Envelope certified_constant(int m, Wide C_a, Wide C_w);

/// Default sample points: linear on [0, X] and logarithmic on [1e-3, X],
/// X = 50 if rate >= -1e-9 and 20/|rate| otherwise.
std::vector<double> default_xi_grid(double rate, int points = 512);
/// Same layout with an explicit upper end.
std::vector<double> xi_grid_to(double xi_max, int points = 512);

/// max over i < m and grid points of |w^(i)(xi)| / ((1 + xi^{m-1}) e^{abscissa xi}).
double empirical_constant(const CoeffVector& M, const InitVector& N, std::span<const double> xi_grid,
                          const RootFinderOptions& options = {});
double empirical_constant(const ModalSolution& S, double abscissa, std::span<const double> xi_grid);

struct EnvelopeReport {
  bool holds = true;
  double worst_ratio = 0.0;
  int worst_order = 0;
  double worst_xi = 0.0;
  double rate = 0.0;  // rate actually used
};

/// holds iff |w^(i)(xi)| <= (1 + margin) * bound(xi) at every grid point and
/// every order i < m. worst_ratio is max |w^(i)| / bound.
EnvelopeReport check_envelope(const CoeffVector& M, const InitVector& N, const Envelope& env,
                              std::span<const double> xi_grid, double margin = 0.0,
                              const RootFinderOptions& options = {});
EnvelopeReport check_envelope(const ModalSolution& S, double abscissa, const Envelope& env,
                              std::span<const double> xi_grid, double margin = 0.0);

}  // namespace cauchyenv
