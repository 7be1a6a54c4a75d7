#include <cmath>

#include "szego/structured.hpp"

namespace szego {

SignedLog pfaffian(const CMat& input) {
  if (input.rows() != input.cols()) throw ValidationError("pfaffian of a non-square matrix");
  if (!input.allFinite()) throw ValidationError("pfaffian: non-finite entries");
  const int n = static_cast<int>(input.rows());
  if (n == 0) return {};
  double sc = max_abs(input);
  if ((input + input.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(sc, 1e-300))
    throw ValidationError("pfaffian: matrix is not antisymmetric");
  if (n % 2 == 1) return SignedLog::zero();

  CMat a = input;
  SignedLog pf;
  for (int k = 0; k < n - 1; k += 2) {
    int kp = k + 1;
    double best = std::abs(a(k + 1, k));
    for (int i = k + 2; i < n; ++i)
      if (std::abs(a(i, k)) > best) best = std::abs(a(i, k)), kp = i;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf.phase = -pf.phase;
    }
    cplx piv = a(k, k + 1);
    if (piv == cplx(0)) return SignedLog::zero();
    pf = pf * SignedLog::from(piv);
    const int rest = n - k - 2;
    if (rest > 0) {
      CVec tau = a.row(k).tail(rest).transpose() / piv;
      CVec col = a.col(k + 1).tail(rest);
      // keeps the trailing block exactly antisymmetric
      a.bottomRightCorner(rest, rest) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

}  // namespace szego
