#include "cauchyenv/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cauchyenv/random.hpp"

namespace cauchyenv {

PolyExpr::PolyExpr(std::vector<Monomial> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
      throw Error(ErrorKind::InvalidInput, "monomial coefficient must be finite");
    for (int p : t.powers)
      if (p < 0) throw Error(ErrorKind::InvalidInput, "monomial powers must be nonnegative");
  }
}

PolyExpr PolyExpr::constant(Complex c, int k) { return PolyExpr({{c, std::vector<int>(k, 0)}}); }

Complex PolyExpr::operator()(std::span<const double> t) const {
  Complex acc(0.0);
  for (const auto& term : terms_) {
    double monomial = 1.0;
    for (std::size_t j = 0; j < term.powers.size(); ++j) monomial *= std::pow(t[j], term.powers[j]);
    acc += term.coeff * monomial;
  }
  return acc;
}

void FamilySpec::validate() const {
  if (k < 1 || m < 1) throw Error(ErrorKind::InvalidInput, "family needs k >= 1 and m >= 1");
  if (static_cast<int>(coeffs.size()) != m)
    throw Error(ErrorKind::InvalidInput, "family needs exactly m coefficient expressions");
  if (static_cast<int>(domain.size()) != k)
    throw Error(ErrorKind::InvalidInput, "family needs one interval per parameter");
  if (grid < 2) throw Error(ErrorKind::InvalidInput, "grid must have at least 2 points per axis");
  for (const auto& iv : domain)
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi)
      throw Error(ErrorKind::InvalidInput, "domain intervals must be finite with lo <= hi");
  for (const auto& e : coeffs)
    for (const auto& t : e.terms())
      if (static_cast<int>(t.powers.size()) != k)
        throw Error(ErrorKind::InvalidInput, "monomial power list must have k entries");
}

CoeffVector FamilySpec::at(std::span<const double> t) const {
  CVector a(m);
  for (int i = 0; i < m; ++i) a[i] = coeffs[i](t);
  return CoeffVector(a);
}

std::vector<std::vector<double>> family_grid(const FamilySpec& spec) {
  spec.validate();
  std::vector<std::vector<double>> points;
  std::vector<int> idx(spec.k, 0);
  for (;;) {
    std::vector<double> t(spec.k);
    for (int j = 0; j < spec.k; ++j) {
      const auto& iv = spec.domain[j];
      t[j] = iv.lo + (iv.hi - iv.lo) * idx[j] / double(spec.grid - 1);
    }
    points.push_back(std::move(t));
    int j = 0;
    while (j < spec.k && ++idx[j] == spec.grid) idx[j++] = 0;
    if (j == spec.k) break;
  }
  return points;
}

namespace {

struct Sweep {
  const FamilySpec& spec;
  const RootFinderOptions& options;
  SupResult result;
  bool have_incumbent = false;

  void visit(const std::vector<double>& t) {
    ++result.evaluated;
    double value;
    try {
      const CoeffVector M = spec.at(t);
      result.coeff_bound = std::max(result.coeff_bound, M.max_modulus());
      value = spectral_abscissa(M, options);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonConvergence) throw;
      ++result.skipped;
      return;
    }
    if (!have_incumbent || value > result.sup_value) {
      result.sup_value = value;
      result.arg = t;
      have_incumbent = true;
    }
  }
};

}  // namespace

SupResult abscissa_sup(const FamilySpec& spec, const RootFinderOptions& options) {
  spec.validate();
  Sweep sweep{spec, options, {}};
  for (const auto& t : family_grid(spec)) sweep.visit(t);
  if (!sweep.have_incumbent || sweep.result.skipped * 100 > sweep.result.evaluated)
    throw Error(ErrorKind::NonConvergence, "root finding failed on more than 1% of grid points");
  sweep.result.coarse_sup = sweep.result.sup_value;

  std::vector<double> spacing(spec.k);
  for (int j = 0; j < spec.k; ++j) spacing[j] = (spec.domain[j].hi - spec.domain[j].lo) / (spec.grid - 1);

  constexpr int kOffsets = 5;  // -2 .. 2 half-spacings
  for (int round = 0; round < 2; ++round) {
    for (auto& h : spacing) h *= 0.5;
    const std::vector<double> center = sweep.result.arg;
    std::vector<int> idx(spec.k, 0);
    for (;;) {
      std::vector<double> t(spec.k);
      bool is_center = true;
      for (int j = 0; j < spec.k; ++j) {
        const int off = idx[j] - kOffsets / 2;
        is_center = is_center && off == 0;
        t[j] = std::clamp(center[j] + off * spacing[j], spec.domain[j].lo, spec.domain[j].hi);
      }
      if (!is_center) sweep.visit(t);
      int j = 0;
      while (j < spec.k && ++idx[j] == kOffsets) idx[j++] = 0;
      if (j == spec.k) break;
    }
  }
  return sweep.result;
}

DecayCertificate decay_certificate(const FamilySpec& spec, double C_w, const RootFinderOptions& options) {
  if (!(C_w >= 0.0)) throw Error(ErrorKind::InvalidInput, "C_w must be nonnegative");
  const SupResult sup = abscissa_sup(spec, options);
  if (sup.sup_value >= -1e-12)
    throw Error(ErrorKind::NotUniformlyStable,
                "maximum spectral abscissa " + std::to_string(sup.sup_value) + " is not negative");
  DecayCertificate cert;
  cert.kappa = -sup.sup_value;
  cert.attaining_point = sup.arg;
  cert.coeff_bound = sup.coeff_bound;
  const Envelope env = certified_constant(spec.m, sup.coeff_bound, C_w);
  cert.constant = env.constant;
  cert.power = env.power;
  return cert;
}

FamilyCheckReport family_envelope_check(const FamilySpec& spec, const DecayCertificate& cert,
                                        const ParamBox& N_box, int samples, std::uint64_t seed,
                                        const RootFinderOptions& options) {
  spec.validate();
  if (N_box.m != spec.m) throw Error(ErrorKind::InvalidInput, "initial-data box order differs from family order");
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Envelope env{cert.constant, spec.m - 1, -cert.kappa};
  const std::vector<double> grid = default_xi_grid(-cert.kappa);

  FamilyCheckReport report;
  report.samples = samples;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> t(spec.k);
    for (int j = 0; j < spec.k; ++j) t[j] = spec.domain[j].lo + (spec.domain[j].hi - spec.domain[j].lo) * unit(rng);
    const InitVector N(sample_polydisc(rng, spec.m, N_box.C));
    const RootSet roots = find_roots(char_poly(spec.at(t)), options);
    const EnvelopeReport r =
        check_envelope(solve_modal(roots, N), spectral_abscissa(roots), env, grid, 0.0);
    if (r.holds) ++report.passed;
    if (report.worst_t.empty() || r.worst_ratio > report.worst_ratio) {
      report.worst_ratio = r.worst_ratio;
      report.worst_t = t;
      report.worst_w0 = N.values();
      report.worst_order = r.worst_order;
      report.worst_xi = r.worst_xi;
    }
  }
  return report;
}

}  // namespace cauchyenv
