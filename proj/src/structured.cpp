#include "szego/structured.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace szego {

namespace {

void check_size(const Symbol& s, int n) {
  if (n < 1) throw ValidationError(fmt::format("matrix size n={} must be positive", n));
  long rows = static_cast<long>(n) * s.block_size();
  if (rows > size_cap())
    throw ValidationError(fmt::format("{} rows exceeds the size cap {}", rows, size_cap()));
}

// lag d = i - j folded into the circulant window [-n/2, n/2)
int fold(int d, int n) {
  if (2 * d < -n) return d + n;
  if (2 * d >= n) return d - n;
  return d;
}

bool in_window(int k, int n) { return 2 * k >= -n && 2 * k < n; }

}  // namespace

StructuredMatrix build_toeplitz(const Symbol& s, int n) {
  check_size(s, n);
  const int N = s.block_size();
  CMat t = CMat::Zero(n * N, n * N);
  for (const auto& [k, m] : s.coefficients()) {
    if (k <= -n || k >= n) continue;
    for (int i = std::max(0, k); i < n && i - k < n; ++i) t.block(i * N, (i - k) * N, N, N) = m;
  }
  return {MatrixKind::toeplitz, n, N, std::move(t)};
}

StructuredMatrix build_circulant(const Symbol& s, int n, CirculantMode mode) {
  check_size(s, n);
  const int N = s.block_size();
  if (mode == CirculantMode::strict) {
    for (const auto& [k, m] : s.coefficients()) {
      if (!in_window(k, n) && max_abs(m) > s.tail_bound())
        throw PreconditionError(fmt::format(
            "coefficient k={} lies outside the circulant window of n={}; use truncation", k, n));
    }
  }
  CMat c = CMat::Zero(n * N, n * N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = fold(i - j, n);
      if (s.has(k)) c.block(i * N, j * N, N, N) = s.coefficients().at(k);
    }
  return {MatrixKind::circulant, n, N, std::move(c)};
}

std::vector<CMat> circulant_blocks(const Symbol& s, int n) {
  if (n < 1) throw ValidationError("circulant size must be positive");
  const int N = s.block_size();
  std::vector<CMat> out(n, CMat::Zero(N, N));
  for (int j = 0; j < n; ++j) {
    double th = 2 * kPi * j / n;
    for (const auto& [k, m] : s.coefficients())
      if (in_window(k, n)) out[j] += m * std::polar(1.0, -k * th);
  }
  return out;
}

double circulant_gap(const Symbol& s, int n) {
  double g = std::numeric_limits<double>::infinity();
  for (const auto& b : circulant_blocks(s, n)) {
    Eigen::ComplexEigenSolver<CMat> es(b, false);
    g = std::min(g, es.eigenvalues().cwiseAbs().minCoeff());
  }
  return g;
}

bool is_real_antisymmetric(const CMat& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  double sc = max_abs(a);
  if (sc == 0) return true;
  return a.imag().cwiseAbs().maxCoeff() <= rel_tol * sc &&
         (a + a.transpose()).cwiseAbs().maxCoeff() <= rel_tol * sc;
}

bool is_hermitian(const CMat& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  double sc = max_abs(a);
  if (sc == 0) return true;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * sc;
}

SignedLog log_det(const CMat& a) {
  if (a.rows() != a.cols()) throw ValidationError("determinant of a non-square matrix");
  if (!a.allFinite()) throw ValidationError("matrix has non-finite entries");
  if (a.rows() == 0) return {};
  if (is_real_antisymmetric(a, 1e-12)) {
    if (a.rows() % 2 == 1) return SignedLog::zero();
    CMat skew = 0.5 * (a - a.transpose());
    skew = skew.real().cast<cplx>();
    SignedLog pf = pfaffian(skew);
    if (pf.is_zero()) return pf;
    return {2 * pf.log_abs, cplx(1.0, 0.0)};
  }
  Eigen::PartialPivLU<CMat> lu(a);
  const CMat& m = lu.matrixLU();
  SignedLog out{0.0, cplx(lu.permutationP().determinant(), 0.0)};
  for (int i = 0; i < m.rows(); ++i) {
    out = out * SignedLog::from(m(i, i));
    if (out.is_zero()) return out;
  }
  return out;
}

CVec solve(const CMat& a, const CVec& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw ValidationError("solve: shape mismatch");
  if (!a.allFinite() || !b.allFinite()) throw ValidationError("solve: non-finite input");
  Eigen::PartialPivLU<CMat> lu(a);
  const CMat& m = lu.matrixLU();
  double dmax = m.diagonal().cwiseAbs().maxCoeff();
  double dmin = m.diagonal().cwiseAbs().minCoeff();
  if (!(dmin > 1e-14 * dmax)) throw HypothesisError(fmt::format("solve: singular matrix (pivot ratio {:.3e})", dmin / dmax));
  return lu.solve(b);
}

Spectrum spectrum(const CMat& a, bool with_vectors) {
  if (a.rows() != a.cols()) throw ValidationError("spectrum of a non-square matrix");
  Spectrum out;
  const int n = static_cast<int>(a.rows());
  std::vector<double> mu(n);
  CMat vec;
  auto opts = with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  if (is_real_antisymmetric(a, 1e-10)) {
    out.antisymmetric = true;
    CMat h = cplx(0, 1) * a.real().cast<cplx>();
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMat> es(h, opts);
    for (int i = 0; i < n; ++i) mu[i] = es.eigenvalues()(i);
    if (with_vectors) vec = es.eigenvectors();
  } else if (is_hermitian(a, 1e-10)) {
    CMat h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h, opts);
    for (int i = 0; i < n; ++i) mu[i] = es.eigenvalues()(i);
    if (with_vectors) vec = es.eigenvectors();
  } else {
    throw ValidationError("spectrum: matrix is neither real antisymmetric nor Hermitian");
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  // antisymmetric: A v = -i mu v, so mu < 0 gives +i|mu|; put that one first in each pair
  bool anti = out.antisymmetric;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return std::abs(mu[x]) < std::abs(mu[y]); });
  double top = 0;
  for (double m : mu) top = std::max(top, std::abs(m));
  for (int i = 0; i + 1 < n; ++i) {
    double x = mu[order[i]], y = mu[order[i + 1]];
    if (std::abs(std::abs(x) - std::abs(y)) <= 1e-10 * top) {
      if (anti ? y < x : y > x) std::swap(order[i], order[i + 1]);
      ++i;
    }
  }
  for (int i : order) out.values.push_back(anti ? cplx(0, -mu[i]) : cplx(mu[i], 0));
  if (with_vectors) {
    out.vectors.resize(n, n);
    for (int c = 0; c < n; ++c) out.vectors.col(c) = vec.col(order[c]);
  }
  return out;
}

}  // namespace szego
