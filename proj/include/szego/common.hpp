#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace szego {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// bad input, malformed files, size limits
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a theorem hypothesis fails: gapless symbol, nonzero winding, singular sample
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// operation not applicable to this input (wrong class, missing structure)
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Value stored as log|x| plus a unit phase. log_abs == -inf encodes exact zero.
struct SignedLog {
  double log_abs = 0.0;
  cplx phase{1.0, 0.0};

  static SignedLog zero();
  static SignedLog from(cplx z);
  static SignedLog from_log(cplx log_z);

  bool is_zero() const;
  cplx value() const;
  cplx log() const;  // log|x| + i arg(phase)

  SignedLog operator*(const SignedLog& o) const;
  SignedLog operator/(const SignedLog& o) const;
  SignedLog pow(int k) const;
};

// rows a symbol matrix may occupy; SZEGO_LAB_SIZE_CAP overrides the default 4096
int size_cap();

}  // namespace szego
