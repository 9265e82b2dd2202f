#include "cauchyenv/types.hpp"

#include <cmath>

namespace cauchyenv {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NotRealCoefficients: return "NotRealCoefficients";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::ShiftResidual: return "ShiftResidual";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NotUniformlyStable: return "NotUniformlyStable";
  }
  return "Unknown";
}

bool all_finite(const CVector& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (!std::isfinite(v[k].real()) || !std::isfinite(v[k].imag())) return false;
  return true;
}

CoeffVector::CoeffVector(CVector a) : a_(std::move(a)) {
  if (a_.size() < 1) throw Error(ErrorKind::InvalidInput, "coefficient vector must have order >= 1");
  if (!all_finite(a_)) throw Error(ErrorKind::InvalidInput, "coefficients must be finite");
}

double CoeffVector::max_modulus() const { return a_.cwiseAbs().maxCoeff(); }

InitVector::InitVector(CVector w0) : w_(std::move(w0)) {
  if (w_.size() < 1) throw Error(ErrorKind::InvalidInput, "initial vector must have order >= 1");
  if (!all_finite(w_)) throw Error(ErrorKind::InvalidInput, "initial values must be finite");
}

double InitVector::max_modulus() const { return w_.cwiseAbs().maxCoeff(); }

}  // namespace cauchyenv
