#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace cauchyenv {

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;
using CVector = ComplexVector<double>;
using CMatrix = ComplexMatrix<double>;

enum class ErrorKind {
  InvalidInput,
  NonConvergence,
  NotRealCoefficients,
  StepUnderflow,
  ShiftResidual,
  Overflow,
  NotUniformlyStable,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Equation coefficients (a_0, ..., a_{m-1}) of
///   w^(m) = a_{m-1} w^(m-1) + ... + a_0 w.
class CoeffVector {
 public:
  CoeffVector() = default;
  explicit CoeffVector(CVector a);

  int order() const { return static_cast<int>(a_.size()); }
  const CVector& coeffs() const { return a_; }
  Complex operator[](int k) const { return a_[k]; }

  /// max_k |a_k|, the smallest C with M in the polydisc of radius C.
  double max_modulus() const;

 private:
  CVector a_;
};

/// Initial values (w(0), w'(0), ..., w^(m-1)(0)).
class InitVector {
 public:
  InitVector() = default;
  explicit InitVector(CVector w0);

  int order() const { return static_cast<int>(w_.size()); }
  const CVector& values() const { return w_; }
  Complex operator[](int k) const { return w_[k]; }
  double max_modulus() const;

 private:
  CVector w_;
};

bool all_finite(const CVector& v);

}  // namespace cauchyenv
