#pragma once

#include <span>
#include <vector>

#include "cauchyenv/poly.hpp"

namespace cauchyenv {

/// One block p(xi) e^{root xi} of a modal solution; poly holds the
/// coefficients of p in powers of xi and has exactly `multiplicity` entries.
struct ModalTerm {
  Complex root;
  int multiplicity = 1;
  CVector poly;
};

/// w(xi) = sum_j p_j(xi) e^{root_j xi}.
class ModalSolution {
 public:
  ModalSolution() = default;
  ModalSolution(std::vector<ModalTerm> terms, double condition_estimate = 1.0);

  int order() const { return order_; }
  const std::vector<ModalTerm>& terms() const { return terms_; }

  /// Ratio of largest to smallest pivot of the confluent system.
  double condition_estimate() const { return condition_; }
  bool ill_conditioned() const { return condition_ > kIllConditionedThreshold; }

  static constexpr double kIllConditionedThreshold = 1e12;

 private:
  std::vector<ModalTerm> terms_;
  int order_ = 0;
  double condition_ = 1.0;
};

/// Closed-form solution of w^(m) = sum_k a_k w^(k), w^(k)(0) = w0[k].
/// Ill-conditioning is reported through ModalSolution::ill_conditioned().
ModalSolution solve_modal(const CoeffVector& M, const InitVector& N,
                          const RootFinderOptions& options = {});

/// Same, with the root multiset supplied by the caller.
ModalSolution solve_modal(const RootSet& roots, const InitVector& N);

/// w^(i)(xi) for i = 0..max_order.
CVector eval_derivatives(const ModalSolution& S, double xi, int max_order);

/// e^{-shift xi} w^(i)(xi) for i = 0..max_order, computed without forming
/// e^{root xi} on its own (no overflow for large xi when shift tracks the
/// spectral abscissa).
CVector eval_derivatives_scaled(const ModalSolution& S, double xi, int max_order, double shift);

/// Coefficients c with w^(i) = sum_{j<m} c_j w^(j), for i >= m, by the
/// recurrence w^(m+k) = sum_j a_j w^(j+k).
CVector high_derivative_weights(const CoeffVector& M, int i);

/// w^(i)(xi) for i >= m via the recurrence weights contracted with the
/// derivative vector of order m-1.
Complex derivative_high(const CoeffVector& M, const ModalSolution& S, int i, double xi);

struct OracleOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_steps = 2'000'000;
};

/// Dormand-Prince 5(4) integration of the companion system. Returns the
/// state (w, w', ..., w^(m-1)) at each grid point. Throws
/// Error(StepUnderflow) if the step size collapses below 1e-14 * span.
std::vector<CVector> integrate_oracle(const CoeffVector& M, const InitVector& N,
                                      std::span<const double> xi_grid,
                                      const OracleOptions& options = {});

}  // namespace cauchyenv
