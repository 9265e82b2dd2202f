#pragma once

#include <cmath>
#include <random>

#include "cauchyenv/types.hpp"

namespace cauchyenv {

using Rng = std::mt19937_64;

/// Uniform point of the disc |z| <= C: independent uniform real and
/// imaginary parts, rejected outside the disc.
inline Complex sample_disc(Rng& rng, double C) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const double x = u(rng), y = u(rng);
    if (x * x + y * y <= 1.0) return {C * x, C * y};
  }
}

/// Uniform point of the polydisc Pi_m(C).
inline CVector sample_polydisc(Rng& rng, int m, double C) {
  CVector v(m);
  for (int k = 0; k < m; ++k) v[k] = sample_disc(rng, C);
  return v;
}

/// Real coefficients uniform in [-C, C].
inline CVector sample_real_box(Rng& rng, int m, double C) {
  std::uniform_real_distribution<double> u(-C, C);
  CVector v(m);
  for (int k = 0; k < m; ++k) v[k] = u(rng);
  return v;
}

}  // namespace cauchyenv
