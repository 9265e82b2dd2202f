#include "cauchyenv/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

namespace cauchyenv {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::vector<Complex> companion_eigenvalues(const MonicPoly& P) {
  const int n = P.degree();
  CMatrix C = CMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -P.low_coeffs()[i];
  Eigen::ComplexEigenSolver<CMatrix> solver(C, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::NonConvergence, "companion eigenvalue iteration failed");
  std::vector<Complex> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  for (const auto& z : out)
    if (!finite(z)) throw Error(ErrorKind::NonConvergence, "companion eigenvalues not finite");
  return out;
}

// Aberth-Ehrlich iteration, Gauss-Seidel flavour. Returns false when the
// budget is exhausted or the iterates blow up.
bool aberth(const MonicPoly& P, const RootFinderOptions& opt, std::vector<Complex>& z) {
  const int n = P.degree();
  const CVector c = P.full_coeffs();
  const Eigen::VectorXd c_abs = c.cwiseAbs();
  const double bound = cauchy_bound(P);
  const double step_tol = opt.tol * (1.0 + bound);
  const double eps = std::numeric_limits<double>::epsilon();

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double offset = 2.0 * kPi * unit(rng);
  z.resize(n);
  for (int k = 0; k < n; ++k) {
    const double phase = offset + 2.0 * kPi * (k + 0.5 * unit(rng)) / n;
    z[k] = std::polar(bound, phase);
  }

  std::vector<bool> done(n, false);
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    bool all_done = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      Complex p, dp;
      horner2(c, z[k], p, dp);
      // Stop once |p(z)| is at the level of the rounding error of its evaluation.
      const double noise = 2.0 * (n + 1) * eps * horner(c_abs, std::abs(z[k]));
      if (std::abs(p) <= noise) {
        done[k] = true;
        continue;
      }
      all_done = false;
      if (dp == Complex(0.0)) {
        z[k] += Complex(step_tol, step_tol) * 16.0;
        continue;
      }
      const Complex newton = p / dp;
      Complex repulsion(0.0);
      for (int j = 0; j < n; ++j)
        if (j != k && z[j] != z[k]) repulsion += 1.0 / (z[k] - z[j]);
      const Complex step = newton / (1.0 - newton * repulsion);
      if (!finite(step)) return false;
      z[k] -= step;
      if (std::abs(step) <= step_tol) done[k] = true;
    }
    if (all_done) return true;
  }
  return std::all_of(done.begin(), done.end(), [](bool d) { return d; });
}

// Newton on the (k-1)th derivative pulls a k-fold cluster centroid onto the
// multiple root. The result is kept only if it stays inside the cluster.
Complex polish_cluster(const MonicPoly& P, Complex centroid, int multiplicity, double radius) {
  CVector d = P.full_coeffs();
  for (int i = 0; i < multiplicity - 1; ++i) d = derivative_coeffs(d);
  const CVector dd = derivative_coeffs(d);
  Complex x = centroid;
  for (int it = 0; it < 5; ++it) {
    const Complex num = horner(d, x);
    const Complex den = horner(dd, x);
    if (den == Complex(0.0) || num == Complex(0.0)) break;
    const Complex next = x - num / den;
    if (!finite(next)) break;
    x = next;
  }
  return std::abs(x - centroid) <= radius ? x : centroid;
}

}  // namespace

MonicPoly::MonicPoly(CVector low_coeffs) : low_(std::move(low_coeffs)) {
  if (low_.size() < 1) throw Error(ErrorKind::InvalidInput, "polynomial degree must be >= 1");
  if (!all_finite(low_)) throw Error(ErrorKind::InvalidInput, "polynomial coefficients must be finite");
}

CVector MonicPoly::full_coeffs() const {
  CVector c(degree() + 1);
  c.head(degree()) = low_;
  c[degree()] = 1.0;
  return c;
}

bool MonicPoly::has_real_coeffs() const {
  return (low_.imag().array() == 0.0).all();
}

double MonicPoly::max_low_modulus() const { return low_.cwiseAbs().maxCoeff(); }

Complex MonicPoly::operator()(Complex z) const { return horner(full_coeffs(), z); }

RootSet::RootSet(std::vector<RootEntry> entries, bool used_fallback)
    : entries_(std::move(entries)), used_fallback_(used_fallback) {
  std::sort(entries_.begin(), entries_.end(), [](const RootEntry& a, const RootEntry& b) {
    if (a.root.real() != b.root.real()) return a.root.real() > b.root.real();
    return a.root.imag() > b.root.imag();
  });
}

int RootSet::degree() const {
  int d = 0;
  for (const auto& e : entries_) d += e.multiplicity;
  return d;
}

MonicPoly char_poly(const CoeffVector& M) { return MonicPoly(-M.coeffs()); }

double cluster_radius(double c_max) { return std::max(1e-8, 1e-7 * (1.0 + c_max)); }

std::vector<Complex> approximate_roots(const MonicPoly& P, const RootFinderOptions& options,
                                       bool* used_fallback) {
  if (!(options.tol > 0.0)) throw Error(ErrorKind::InvalidInput, "root tolerance must be positive");
  if (used_fallback) *used_fallback = false;
  if (P.degree() == 1) return {-P.low_coeffs()[0]};
  std::vector<Complex> z;
  if (!options.force_fallback && aberth(P, options, z)) return z;
  if (used_fallback) *used_fallback = true;
  return companion_eigenvalues(P);
}

RootSet find_roots(const MonicPoly& P, const RootFinderOptions& options) {
  bool fallback = false;
  const std::vector<Complex> z = approximate_roots(P, options, &fallback);
  const int n = static_cast<int>(z.size());
  const double radius = cluster_radius(P.max_low_modulus());

  // Single-linkage clustering via union-find.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) <= radius) parent[find(i)] = find(j);

  std::vector<Complex> sum(n, Complex(0.0));
  std::vector<int> count(n, 0);
  for (int i = 0; i < n; ++i) {
    sum[find(i)] += z[i];
    ++count[find(i)];
  }
  std::vector<RootEntry> entries;
  for (int i = 0; i < n; ++i) {
    if (count[i] == 0) continue;
    Complex centroid = sum[i] / double(count[i]);
    if (count[i] > 1) centroid = polish_cluster(P, centroid, count[i], radius);
    entries.push_back({centroid, count[i]});
  }
  RootSet out(std::move(entries), fallback);
  if (out.degree() != P.degree())
    throw Error(ErrorKind::NonConvergence, "root multiplicities do not add up to the degree");
  return out;
}

RootSet find_roots(const MonicPoly& P, double tol, std::uint64_t seed) {
  RootFinderOptions opt;
  opt.tol = tol;
  opt.seed = seed;
  return find_roots(P, opt);
}

double spectral_abscissa(const RootSet& R) {
  if (R.empty()) throw Error(ErrorKind::InvalidInput, "spectral abscissa of an empty root set");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& e : R) best = std::max(best, e.root.real());
  return best;
}

double spectral_abscissa(const CoeffVector& M, const RootFinderOptions& options) {
  return spectral_abscissa(find_roots(char_poly(M), options));
}

double cauchy_bound(const CoeffVector& M) { return 1.0 + M.max_modulus(); }

double cauchy_bound(const MonicPoly& P) { return 1.0 + P.max_low_modulus(); }

MonicPoly taylor_shift(const MonicPoly& P, Complex s) {
  CVector c = P.full_coeffs();
  taylor_shift_inplace(c, s);
  return MonicPoly(c.head(P.degree()));
}

MonicPoly expand_roots(const RootSet& R) {
  CVector c = CVector::Ones(1);
  for (const auto& e : R) {
    for (int k = 0; k < e.multiplicity; ++k) {
      CVector next = CVector::Zero(c.size() + 1);
      next.tail(c.size()) += c;
      next.head(c.size()) -= e.root * c;
      c = std::move(next);
    }
  }
  return MonicPoly(c.head(c.size() - 1));
}

}  // namespace cauchyenv
