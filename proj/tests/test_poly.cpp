#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cauchyenv/poly.hpp"
#include "cauchyenv/random.hpp"

using namespace cauchyenv;

namespace {

CoeffVector coeffs(std::initializer_list<Complex> a) {
  CVector v(a.size());
  std::copy(a.begin(), a.end(), v.data());
  return CoeffVector(v);
}

MonicPoly monic(std::initializer_list<Complex> low) {
  CVector v(low.size());
  std::copy(low.begin(), low.end(), v.data());
  return MonicPoly(v);
}

// Roots of z^2 + b z + c by the quadratic formula.
std::pair<Complex, Complex> quadratic_roots(Complex b, Complex c) {
  const Complex disc = std::sqrt(b * b - 4.0 * c);
  return {(-b + disc) / 2.0, (-b - disc) / 2.0};
}

bool has_root(const RootSet& R, Complex z, int mult, double tol) {
  return std::any_of(R.begin(), R.end(),
                     [&](const RootEntry& e) { return std::abs(e.root - z) <= tol && e.multiplicity == mult; });
}

}  // namespace

TEST_CASE("char_poly flips the signs of the equation coefficients") {
  CHECK(char_poly(coeffs({2.0})).low_coeffs()[0] == Complex(-2.0));
  const MonicPoly harmonic = char_poly(coeffs({-1.0, 0.0}));
  CHECK(harmonic.low_coeffs()[0] == Complex(1.0));
  CHECK(harmonic.low_coeffs()[1] == Complex(0.0));
  const MonicPoly p = char_poly(coeffs({1.0, 2.0}));
  CHECK(p.low_coeffs()[0] == Complex(-1.0));
  CHECK(p.low_coeffs()[1] == Complex(-2.0));
  CHECK(p.coeff(2) == Complex(1.0));
}

TEST_CASE("find_roots on hand-factored polynomials") {
  SUBCASE("z^2 + 1") {
    const RootSet R = find_roots(monic({1.0, 0.0}));
    CHECK(R.size() == 2);
    CHECK(has_root(R, Complex(0, 1), 1, 1e-12));
    CHECK(has_root(R, Complex(0, -1), 1, 1e-12));
  }
  SUBCASE("perfect square z^2 - 2z + 1") {
    const RootSet R = find_roots(monic({1.0, -2.0}));
    REQUIRE(R.size() == 1);
    CHECK(R.entries()[0].multiplicity == 2);
    CHECK(std::abs(R.entries()[0].root - 1.0) < 1e-12);
  }
  SUBCASE("z^3 + 3z^2 + 2z = z(z+1)(z+2)") {
    const RootSet R = find_roots(monic({0.0, 2.0, 3.0}));
    CHECK(R.size() == 3);
    for (double r : {0.0, -1.0, -2.0}) CHECK(has_root(R, r, 1, 1e-12));
  }
  SUBCASE("double root at the origin") {
    const RootSet R = find_roots(monic({0.0, 0.0}));
    REQUIRE(R.size() == 1);
    CHECK(R.entries()[0].multiplicity == 2);
    CHECK(std::abs(R.entries()[0].root) < 1e-14);
  }
  SUBCASE("degree one is exact") {
    const RootSet R = find_roots(monic({Complex(-0.3, 0.7)}));
    CHECK(R.entries()[0].root == Complex(0.3, -0.7));
  }
}

TEST_CASE("companion-matrix fallback agrees with the simultaneous iteration") {
  RootFinderOptions forced;
  forced.force_fallback = true;
  const MonicPoly P = monic({0.0, 2.0, 3.0});
  const RootSet R = find_roots(P, forced);
  CHECK(R.used_fallback());
  for (double r : {0.0, -1.0, -2.0}) CHECK(has_root(R, r, 1, 1e-12));
  CHECK(!find_roots(P).used_fallback());

  RootFinderOptions starved;
  starved.max_iterations = 1;
  const RootSet S = find_roots(monic({Complex(0.3, 0.1), -0.2, 0.5, Complex(0.0, 0.9)}), starved);
  CHECK(S.used_fallback());
  CHECK(S.degree() == 4);
}

TEST_CASE("spectral abscissa") {
  CHECK(std::abs(spectral_abscissa(find_roots(monic({1.0, 0.0})))) < 1e-14);
  CHECK(spectral_abscissa(find_roots(char_poly(coeffs({Complex(0.25, -3.0)})))) == 0.25);
  // z^2 + 3z + 2 = (z+1)(z+2)
  CHECK(spectral_abscissa(find_roots(monic({2.0, 3.0}))) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK_THROWS_AS(spectral_abscissa(RootSet{}), Error);
}

TEST_CASE("Cauchy root bound") {
  CHECK(cauchy_bound(coeffs({-1.0, 0.0})) == 2.0);
  CHECK(cauchy_bound(coeffs({0.0})) == 1.0);
  const CoeffVector M = coeffs({0.5, -0.5});
  CHECK(cauchy_bound(M) == 1.5);
  // z^2 + 0.5 z - 0.5 has roots 0.5 and -1.
  const auto [r1, r2] = quadratic_roots(0.5, -0.5);
  CHECK(std::abs(r1) <= 1.5);
  CHECK(std::abs(r2) <= 1.5);
  const RootSet R = find_roots(char_poly(M));
  CHECK(has_root(R, r1, 1, 1e-12));
  CHECK(has_root(R, r2, 1, 1e-12));
}

TEST_CASE("taylor_shift") {
  const MonicPoly Q = taylor_shift(monic({1.0, 0.0}), Complex(0, 1));
  CHECK(std::abs(Q.low_coeffs()[0]) < 1e-15);
  CHECK(std::abs(Q.low_coeffs()[1] - Complex(0, 2)) < 1e-15);

  const MonicPoly P = monic({Complex(0.1, 0.2), -0.3, Complex(0.0, 0.4)});
  CHECK(taylor_shift(P, 0.0).low_coeffs() == P.low_coeffs());

  const MonicPoly moved = taylor_shift(monic({-2.0}), 2.0);
  CHECK(moved.low_coeffs()[0] == Complex(0.0));

  // Q(mu) = P(mu + s) pointwise.
  const Complex s(0.7, -0.4);
  const MonicPoly T = taylor_shift(P, s);
  for (Complex mu : {Complex(0.3, 0.3), Complex(-1.2, 0.5), Complex(2.0, -1.0)})
    CHECK(std::abs(T(mu) - P(mu + s)) < 1e-13);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(CoeffVector{CVector()}, Error);
  CVector bad(1);
  bad[0] = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(CoeffVector{bad}, Error);
  CHECK_THROWS_AS(find_roots(monic({1.0}), 0.0), Error);
  CHECK_THROWS_AS(find_roots(monic({1.0}), -1e-12), Error);
}

TEST_CASE("property: reconstruction, root bound and cluster separation") {
  Rng rng(7);
  for (double C_a : {0.1, 1.0, 10.0}) {
    for (int trial = 0; trial < 300; ++trial) {
      const int m = 1 + trial % 8;
      const CoeffVector M(sample_polydisc(rng, m, C_a));
      const MonicPoly P = char_poly(M);
      const RootSet R = find_roots(P);
      CHECK(R.degree() == m);

      const MonicPoly E = expand_roots(R);
      const double err = (E.low_coeffs() - P.low_coeffs()).cwiseAbs().maxCoeff();
      CHECK(err <= 1e-8 * std::pow(1.0 + C_a, m));

      for (const auto& e : R) CHECK(std::abs(e.root) <= cauchy_bound(M) + 1e-8);

      const double tau = cluster_radius(P.max_low_modulus());
      for (int i = 0; i < R.size(); ++i)
        for (int j = i + 1; j < R.size(); ++j) CHECK(std::abs(R.entries()[i].root - R.entries()[j].root) > tau);
    }
  }
}

TEST_CASE("property: abscissa does not depend on seeds or entry order") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + trial % 6;
    const MonicPoly P = char_poly(CoeffVector(sample_polydisc(rng, m, 1.0)));
    const double a = spectral_abscissa(find_roots(P, 1e-12, rng()));
    const double b = spectral_abscissa(find_roots(P, 1e-12, rng()));
    CHECK(std::abs(a - b) <= 1e-10);
  }
  // Exact multiple roots as well.
  const MonicPoly square = monic({1.0, -2.0});
  for (std::uint64_t seed = 1; seed < 20; ++seed)
    CHECK(std::abs(spectral_abscissa(find_roots(square, 1e-12, seed)) - 1.0) <= 1e-10);
}

TEST_CASE("property: shift consistency") {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + trial % 6;
    const MonicPoly P = char_poly(CoeffVector(sample_polydisc(rng, m, 1.0)));
    const Complex s = sample_disc(rng, 1.0);
    const double shifted = spectral_abscissa(find_roots(taylor_shift(P, s)));
    CHECK(std::abs(shifted - (spectral_abscissa(find_roots(P)) - s.real())) <= 1e-8);
  }
}
