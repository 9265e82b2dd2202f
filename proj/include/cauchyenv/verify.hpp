#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cauchyenv/envelope.hpp"
#include "cauchyenv/family.hpp"
#include "cauchyenv/hurwitz.hpp"

namespace cauchyenv {

/// Hoelder constant for |d abscissa| <= K delta^{1/m}, frozen from
/// tools/calibrate_continuity (twice the largest ratio seen in 10^4 trials,
/// seed 2024: max ratio 1.0, reached at m = 1 where the change is exactly delta).
constexpr double kContinuityK = 2.0;

/// Every tolerance used by the invariant suite, keyed by name.
std::map<std::string, double> default_tolerances();

struct SuiteConfig {
  std::uint64_t seed = 42;
  int m_min = 1;
  int m_max = 6;
  double C_a = 1.0;
  double C_w = 1.0;
  int trials = 1000;
  /// Overrides of default_tolerances(); missing keys take the defaults.
  std::map<std::string, double> tolerances;
  /// Certified-constant routine under test; certified_constant when empty.
  /// Lets mutation tests inject a broken recursion.
  std::function<Envelope(int, double, double)> certified;

  /// Throws Error(InvalidInput) for trials < 1, an empty m range or
  /// negative bounds.
  void validate() const;
  double tol(const std::string& key) const;
  Envelope certify(int m, double C_a, double C_w) const;
};

/// Inputs that reproduce a failing (or worst) trial.
struct Witness {
  int trial = 0;
  CVector coeffs;
  CVector init;
  double xi = 0.0;
  std::string note;
};

struct InvariantResult {
  std::string name;
  int trials = 0;
  int passed = 0;
  int skipped = 0;  // excluded by rule (e.g. ill-conditioned), not failures
  double worst = 0.0;
  double threshold = 0.0;
  std::optional<Witness> witness;
  /// Family-level condition that failed (empty when none).
  std::string violation;

  int failed() const { return trials - passed - skipped; }
  bool ok() const { return failed() == 0 && violation.empty(); }
};

struct SuiteReport {
  std::vector<InvariantResult> results;
  double wall_time = 0.0;  // seconds; excluded from the machine report

  int passes() const;
  int failures() const;
  bool ok() const { return failures() == 0; }
};

struct ContinuityRow {
  double delta = 0.0;
  double max_change = 0.0;
};

/// |abscissa(M + delta * direction) - abscissa(M)|.
double abscissa_change(const CoeffVector& M, const CVector& direction, double delta,
                       const RootFinderOptions& options = {});

/// For each delta, the largest abscissa change over `directions` random
/// unit directions (the same directions for every delta).
std::vector<ContinuityRow> continuity_probe(const CoeffVector& M, std::span<const double> deltas,
                                            int directions, std::uint64_t seed,
                                            const RootFinderOptions& options = {});

// Invariant families. Each draws cfg.trials instances (or a documented
// fraction for the expensive ones) from an RNG seeded by cfg.seed and the
// family name.
InvariantResult check_reconstruction(const SuiteConfig& cfg);
InvariantResult check_permutation_invariance(const SuiteConfig& cfg);
InvariantResult check_root_bound(const SuiteConfig& cfg);
InvariantResult check_shift_consistency(const SuiteConfig& cfg);
InvariantResult check_continuity(const SuiteConfig& cfg);
InvariantResult check_hurwitz_agreement(const SuiteConfig& cfg);
InvariantResult check_hurwitz_quadratic(const SuiteConfig& cfg);
InvariantResult check_oracle_agreement(const SuiteConfig& cfg);
InvariantResult check_superposition(const SuiteConfig& cfg);
InvariantResult check_recurrence(const SuiteConfig& cfg);
InvariantResult check_shifted_sign(const SuiteConfig& cfg);
InvariantResult check_reduction_round_trip(const SuiteConfig& cfg);
InvariantResult check_leibniz(const SuiteConfig& cfg);
InvariantResult check_transformed_bounds(const SuiteConfig& cfg);
InvariantResult check_certified_dominates(const SuiteConfig& cfg);
InvariantResult check_envelope_validity(const SuiteConfig& cfg);
InvariantResult check_family_max_equality(const SuiteConfig& cfg);
InvariantResult check_family_refinement(const SuiteConfig& cfg);

/// Runs every family above in a fixed order.
SuiteReport suite_run(const SuiteConfig& cfg);

}  // namespace cauchyenv
