#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cauchyenv/hurwitz.hpp"
#include "cauchyenv/random.hpp"

using namespace cauchyenv;

namespace {

MonicPoly monic(std::initializer_list<double> low) {
  CVector v(low.size());
  int k = 0;
  for (double c : low) v[k++] = c;
  return MonicPoly(v);
}

CoeffVector coeffs(std::initializer_list<double> a) {
  CVector v(a.size());
  int k = 0;
  for (double c : a) v[k++] = c;
  return CoeffVector(v);
}

}  // namespace

TEST_CASE("hurwitz_matrix by the textbook rule") {
  Eigen::MatrixXd H2(2, 2);
  H2 << 3, 0, 1, 2;
  CHECK(hurwitz_matrix(monic({2.0, 3.0})) == H2);

  CHECK(hurwitz_matrix(monic({5.0})) == Eigen::MatrixXd::Constant(1, 1, 5.0));

  Eigen::MatrixXd H3(3, 3);
  H3 << 2, 4, 0, 1, 3, 0, 0, 2, 4;
  CHECK(hurwitz_matrix(monic({4.0, 3.0, 2.0})) == H3);

  CVector c(1);
  c[0] = Complex(1.0, 0.5);
  CHECK_THROWS_AS(hurwitz_matrix(MonicPoly(c)), Error);
  try {
    hurwitz_test(MonicPoly(c));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotRealCoefficients);
  }
}

TEST_CASE("is_hurwitz_stable") {
  CHECK(is_hurwitz_stable(monic({2.0, 3.0})));
  CHECK_FALSE(is_hurwitz_stable(monic({-1.0, 3.0})));
  CHECK(is_hurwitz_stable(monic({1.0})));
  CHECK_FALSE(is_hurwitz_stable(monic({-1.0})));
  // Marginal: z^2 + 1 is not strictly stable.
  const HurwitzResult h = hurwitz_test(monic({1.0, 0.0}));
  CHECK_FALSE(h.stable);
  CHECK(h.near_singular);
}

TEST_CASE("classify_stability") {
  const StabilityVerdict s = classify_stability(coeffs({-2.0, -3.0}));
  CHECK(s.kind == StabilityKind::Stable);
  CHECK(s.abscissa == doctest::Approx(-1.0).epsilon(1e-12));

  const StabilityVerdict h = classify_stability(coeffs({-1.0, 0.0}));
  CHECK(h.kind == StabilityKind::Marginal);
  CHECK(std::abs(h.abscissa) < 1e-12);

  const StabilityVerdict u = classify_stability(coeffs({1.0}));
  CHECK(u.kind == StabilityKind::Unstable);
  CHECK(u.abscissa == 1.0);
  CHECK(std::string(to_string(u.kind)) == "Unstable");

  CHECK_THROWS_AS(classify_stability(coeffs({1.0}), -1.0), Error);
}

TEST_CASE("property: Hurwitz minors agree with root location") {
  Rng rng(3);
  int compared = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = 1 + trial % 6;
    const CoeffVector M(sample_real_box(rng, m, 2.0));
    const double abscissa = spectral_abscissa(M);
    if (std::abs(abscissa) <= 1e-6) continue;
    ++compared;
    CHECK(is_hurwitz_stable(char_poly(M)) == (abscissa < 0));
  }
  CHECK(compared > 1900);
}

TEST_CASE("property: quadratic Hurwitz region") {
  // z^2 + p z + q is stable iff p > 0 and q > 0.
  Rng rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double p = u(rng), q = u(rng);
    if (std::abs(p) < 1e-6 || std::abs(q) < 1e-6) continue;
    CHECK(is_hurwitz_stable(monic({q, p})) == (p > 0 && q > 0));
  }
}
