// Estimates the Hoelder constant K in |d abscissa| <= K delta^{1/m} by random
// sampling; the frozen value in verify.hpp is twice the printed maximum.
#include <cmath>
#include <cstdio>
#include <random>

#include "cauchyenv/random.hpp"
#include "cauchyenv/verify.hpp"

using namespace cauchyenv;

int main(int argc, char** argv) {
  const int trials = argc > 1 ? std::atoi(argv[1]) : 10000;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2024;
  Rng rng(seed);
  std::normal_distribution<double> normal;
  const double deltas[] = {1e-4, 1e-6, 1e-8, 1e-10};
  double worst = 0.0;
  int worst_m = 0;
  for (int t = 0; t < trials; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 6)(rng);
    const CoeffVector M(sample_polydisc(rng, m, 1.0));
    CVector dir(m);
    for (int k = 0; k < m; ++k) dir[k] = Complex(normal(rng), normal(rng));
    dir /= dir.norm();
    for (double delta : deltas) {
      const double ratio = abscissa_change(M, dir, delta) / std::pow(delta, 1.0 / m);
      if (ratio > worst) {
        worst = ratio;
        worst_m = m;
      }
    }
  }
  std::printf("trials %d seed %llu: max ratio %.6g (m = %d), K = %.6g\n", trials,
              static_cast<unsigned long long>(seed), worst, worst_m, 2.0 * worst);
  return 0;
}
