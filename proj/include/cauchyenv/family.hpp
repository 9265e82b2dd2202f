#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cauchyenv/envelope.hpp"

namespace cauchyenv {

/// coeff * t_1^{powers[0]} * ... * t_k^{powers[k-1]}
struct Monomial {
  Complex coeff;
  std::vector<int> powers;
};

/// Multivariate polynomial in the family parameters.
class PolyExpr {
 public:
  PolyExpr() = default;
  explicit PolyExpr(std::vector<Monomial> terms);

  /// Constant expression.
  static PolyExpr constant(Complex c, int k);

  const std::vector<Monomial>& terms() const { return terms_; }
  Complex operator()(std::span<const double> t) const;

 private:
  std::vector<Monomial> terms_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct FamilySpec {
  int k = 1;                       // parameter count
  int m = 1;                       // equation order
  std::vector<PolyExpr> coeffs;    // a_0(t) .. a_{m-1}(t)
  std::vector<Interval> domain;    // one interval per parameter
  int grid = 17;                   // points per axis

  /// Throws Error(InvalidInput) on size mismatches, reversed intervals or
  /// grid < 2.
  void validate() const;
  CoeffVector at(std::span<const double> t) const;
};

struct SupResult {
  double sup_value = 0.0;
  std::vector<double> arg;
  double coarse_sup = 0.0;
  /// max over coarse grid points of max_i |a_i(t)|.
  double coeff_bound = 0.0;
  int evaluated = 0;
  int skipped = 0;
};

/// All points of the uniform grid over the domain, first axis fastest.
std::vector<std::vector<double>> family_grid(const FamilySpec& spec);

/// Grid maximum of the spectral abscissa followed by two refinement rounds,
/// each halving the spacing in a window of one old spacing around the
/// incumbent. A lower bound for the true supremum over the box.
SupResult abscissa_sup(const FamilySpec& spec, const RootFinderOptions& options = {});

struct DecayCertificate {
  double kappa = 0.0;
  std::vector<double> attaining_point;
  Wide constant = 0.0;
  int power = 0;
  double coeff_bound = 0.0;  // C_a* used for the constant
};

/// Throws Error(NotUniformlyStable) if the (refined) grid maximum of the
/// abscissa is >= -1e-12.
DecayCertificate decay_certificate(const FamilySpec& spec, double C_w, const RootFinderOptions& options = {});

struct FamilyCheckReport {
  int samples = 0;
  int passed = 0;
  double worst_ratio = 0.0;
  std::vector<double> worst_t;
  CVector worst_w0;
  int worst_order = 0;
  double worst_xi = 0.0;
};

/// Draws `samples` pairs (t, N), t uniform in the domain and N uniform in
/// the polydisc N_box, and checks |w^(i)(xi)| <= constant (1 + xi^{m-1})
/// e^{-kappa xi} on default_xi_grid(-kappa).
FamilyCheckReport family_envelope_check(const FamilySpec& spec, const DecayCertificate& cert,
                                        const ParamBox& N_box, int samples, std::uint64_t seed,
                                        const RootFinderOptions& options = {});

}  // namespace cauchyenv
