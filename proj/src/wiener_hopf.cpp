#include "szego/wiener_hopf.hpp"

#include <fmt/format.h>

#include <cmath>

#include "szego/structured.hpp"

namespace szego {

namespace {

// polynomial coefficients in ascending powers
using Poly = std::vector<cplx>;

Poly mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<cplx> roots_of(const Poly& a) {
  const int d = static_cast<int>(a.size()) - 1;
  if (d < 1) return {};
  CMat comp = CMat::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -a[i] / a[d];
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + d);
  return r;
}

}  // namespace

Symbol shift_symbol(const Symbol& p, int m) {
  std::map<int, CMat> c;
  for (const auto& [k, v] : p.coefficients()) c.emplace(k + m, v);
  return Symbol(p.block_size(), std::move(c), p.tail_bound(), p.exact_band());
}

ScalarFactorization wiener_hopf_scalar(const Symbol& p) {
  if (p.block_size() != 1) throw ValidationError("scalar factorization needs block size 1");
  if (!p.exact_band()) throw PreconditionError("scalar factorization needs an exact Laurent polynomial");
  double sc = p.scale();
  if (sc == 0) throw HypothesisError("zero symbol");
  // trim negligible end coefficients
  int kmin = p.k_min(), kmax = p.k_max();
  while (std::abs(p.coefficient(kmax)(0, 0)) <= 1e-14 * sc) --kmax;
  while (std::abs(p.coefficient(kmin)(0, 0)) <= 1e-14 * sc) ++kmin;

  // z^{kmax} p(z) = sum_k c_k z^{kmax-k}
  Poly P(kmax - kmin + 1);
  for (int k = kmin; k <= kmax; ++k) P[kmax - k] = p.coefficient(k)(0, 0);
  ScalarFactorization f;
  for (auto r : roots_of(P)) {
    double a = std::abs(r);
    if (std::abs(a - 1.0) < 1e-8)
      throw HypothesisError(fmt::format("root {:.6g}{:+.6g}i lies on the unit circle", r.real(), r.imag()));
    (a < 1 ? f.roots_inside : f.roots_outside).push_back(r);
  }
  f.winding = static_cast<int>(f.roots_inside.size()) - kmax;
  cplx K = P.back();
  for (auto s : f.roots_outside) K *= -s;
  f.constant = K;

  // prod (1 - r/z): power j of 1/z is index j
  Poly minus{1.0};
  for (auto r : f.roots_inside) minus = mul(minus, Poly{1.0, -r});
  // K prod (1 - z/s): power j of z is index -j
  Poly plus{K};
  for (auto s : f.roots_outside) plus = mul(plus, Poly{1.0, -1.0 / s});

  std::map<int, CMat> cm, cp;
  for (size_t j = 0; j < minus.size(); ++j) cm.emplace(static_cast<int>(j), CMat::Constant(1, 1, minus[j]));
  for (size_t j = 0; j < plus.size(); ++j) cp.emplace(-static_cast<int>(j), CMat::Constant(1, 1, plus[j]));
  f.phi_minus = Symbol(1, cm, 0.0, true);
  f.phi_plus = Symbol(1, cp, 0.0, true);

  // 1/phi_plus as a power series in z, cut where the slowest geometric factor is below 1e-18
  double slow = 0;
  for (auto s : f.roots_outside) slow = std::max(slow, 1.0 / std::abs(s));
  int L = 0;
  if (slow > 0) L = std::min(4096, static_cast<int>(std::ceil(std::log(1e-18) / std::log(slow))) + 8);
  Poly inv(L + 1, 0.0);
  inv[0] = 1.0 / K;
  for (auto s : f.roots_outside) {
    // multiply by 1/(1 - z/s) = sum (z/s)^j, i.e. running sum
    cplx q = 1.0 / s;
    for (int j = 1; j <= L; ++j) inv[j] += q * inv[j - 1];
  }
  std::map<int, CMat> ca;
  double tail = 0;
  for (size_t i = 0; i < minus.size(); ++i)
    for (int j = 0; j <= L; ++j) {
      int k = static_cast<int>(i) - j;
      auto it = ca.find(k);
      cplx v = minus[i] * inv[j];
      if (it == ca.end())
        ca.emplace(k, CMat::Constant(1, 1, v));
      else
        it->second(0, 0) += v;
    }
  if (L > 0) tail = std::abs(inv[L]) * slow / (1 - slow);
  f.alpha = Symbol(1, ca, tail, false);
  return f;
}

SignedLog scalar_winding_theorem(const Symbol& p, int m, int n) {
  if (n < 1) throw ValidationError("n must be positive");
  if (m < 0) return scalar_winding_theorem(p.reflected(), -m, n);
  if (m == 0) return log_det(build_toeplitz(p, n).data);
  auto f = wiener_hopf_scalar(p);
  if (f.winding != 0) throw HypothesisError(fmt::format("p has winding {}, expected 0", f.winding));
  SignedLog big = log_det(build_toeplitz(p, n + m).data);
  CMat F(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) F(i, j) = f.alpha.coefficient(i - j - n)(0, 0);
  SignedLog out = big * log_det(F);
  if ((static_cast<long>(n) * m) % 2 == 1) out.phase = -out.phase;
  return out;
}

}  // namespace szego
