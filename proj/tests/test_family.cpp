#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cauchyenv/family.hpp"

using namespace cauchyenv;

namespace {

// a(t) = (-2 - t, -3) on [0, 1]
FamilySpec stable_family() {
  FamilySpec spec;
  spec.k = 1;
  spec.m = 2;
  spec.domain = {{0.0, 1.0}};
  spec.coeffs = {PolyExpr({{-2.0, {0}}, {-1.0, {1}}}), PolyExpr::constant(-3.0, 1)};
  return spec;
}

// a(t) = (-t, 0) on [1, 2]: purely imaginary roots
FamilySpec oscillator_family() {
  FamilySpec spec;
  spec.k = 1;
  spec.m = 2;
  spec.domain = {{1.0, 2.0}};
  spec.coeffs = {PolyExpr(std::vector<Monomial>{{-1.0, {1}}}), PolyExpr::constant(0.0, 1)};
  return spec;
}

// Brute-force abscissa of z^2 + 3z + 2 + t by the quadratic formula.
double brute_sup() {
  double best = -1e300;
  for (int i = 0; i <= 100000; ++i) {
    const double t = i / 100000.0;
    const Complex disc = std::sqrt(Complex(1.0 - 4.0 * t));
    best = std::max(best, ((-3.0 + disc) / 2.0).real());
  }
  return best;
}

}  // namespace

TEST_CASE("PolyExpr and grids") {
  const FamilySpec spec = stable_family();
  const double t[] = {0.25};
  const CoeffVector M = spec.at(t);
  CHECK(M[0] == Complex(-2.25));
  CHECK(M[1] == Complex(-3.0));
  const auto grid = family_grid(spec);
  CHECK(grid.size() == 17);
  CHECK(grid.front()[0] == 0.0);
  CHECK(grid.back()[0] == 1.0);

  FamilySpec two = spec;
  two.k = 2;
  two.domain = {{0.0, 1.0}, {-1.0, 1.0}};
  two.coeffs = {PolyExpr({{-2.0, {0, 0}}, {-1.0, {1, 0}}, {0.5, {0, 2}}}), PolyExpr::constant(-3.0, 2)};
  two.grid = 5;
  CHECK(family_grid(two).size() == 25);
}

TEST_CASE("validation") {
  FamilySpec spec = stable_family();
  spec.domain = {{1.0, 0.0}};
  CHECK_THROWS_AS(spec.validate(), Error);
  spec = stable_family();
  spec.coeffs.pop_back();
  CHECK_THROWS_AS(spec.validate(), Error);
  spec = stable_family();
  spec.grid = 1;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec = stable_family();
  spec.coeffs[0] = PolyExpr(std::vector<Monomial>{{1.0, {0, 1}}});
  CHECK_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("abscissa_sup") {
  const SupResult osc = abscissa_sup(oscillator_family());
  CHECK(std::abs(osc.sup_value) < 1e-12);

  const SupResult s = abscissa_sup(stable_family());
  CHECK(s.sup_value == doctest::Approx(brute_sup()).epsilon(1e-12));
  CHECK(s.sup_value == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(s.arg[0] == 0.0);
  CHECK(s.coeff_bound == 3.0);
  CHECK(s.sup_value >= s.coarse_sup);

  FamilySpec constant;
  constant.k = 1;
  constant.m = 2;
  constant.domain = {{-1.0, 1.0}};
  constant.coeffs = {PolyExpr::constant(-2.0, 1), PolyExpr::constant(-3.0, 1)};
  CHECK(abscissa_sup(constant).sup_value == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("decay_certificate") {
  const DecayCertificate cert = decay_certificate(stable_family(), 1.0);
  CHECK(std::abs(cert.kappa - 1.0) <= 1e-6);
  CHECK(cert.power == 1);
  CHECK(cert.constant == certified_constant(2, cert.coeff_bound, 1.0).constant);

  try {
    decay_certificate(oscillator_family(), 1.0);
    FAIL("expected NotUniformlyStable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotUniformlyStable);
  }
}

TEST_CASE("family_envelope_check") {
  const FamilySpec spec = stable_family();
  const DecayCertificate cert = decay_certificate(spec, 1.0);

  const FamilyCheckReport r = family_envelope_check(spec, cert, ParamBox{2, 1.0}, 100, 99);
  CHECK(r.samples == 100);
  CHECK(r.passed == 100);
  CHECK(r.worst_ratio <= 1.0);

  const FamilyCheckReport zero = family_envelope_check(spec, cert, ParamBox{2, 0.0}, 20, 99);
  CHECK(zero.passed == 20);
  CHECK(zero.worst_ratio == 0.0);

  DecayCertificate shrunk = cert;
  shrunk.constant /= 1e6;
  const FamilyCheckReport bad = family_envelope_check(spec, shrunk, ParamBox{2, 1.0}, 50, 99);
  CHECK(bad.passed < bad.samples);
  CHECK(bad.worst_ratio > 1.0);
  CHECK(bad.worst_t.size() == 1);
  CHECK(bad.worst_w0.size() == 2);

  CHECK(family_envelope_check(spec, cert, ParamBox{2, 1.0}, 10, 7).worst_ratio ==
        family_envelope_check(spec, cert, ParamBox{2, 1.0}, 10, 7).worst_ratio);
}
