#include "szego/asymptotics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "szego/topology.hpp"

namespace szego {

namespace {

struct Unwrapped {
  std::vector<double> phase;  // continuous arg
  int winding = 0;
  bool resolved = true;
};

Unwrapped unwrap(const std::vector<cplx>& d) {
  Unwrapped u;
  const size_t M = d.size();
  u.phase.resize(M);
  double total = 0;
  u.phase[0] = std::arg(d[0]);
  for (size_t j = 0; j < M; ++j) {
    double inc = std::arg(d[(j + 1) % M] / d[j]);
    if (std::abs(inc) > kPi / 2) u.resolved = false;
    total += inc;
    if (j + 1 < M) u.phase[j + 1] = u.phase[j] + inc;
  }
  u.winding = static_cast<int>(std::lround(total / (2 * kPi)));
  return u;
}

void check_nonvanishing(const std::vector<cplx>& d) {
  double hi = 0, lo = std::numeric_limits<double>::infinity();
  size_t at = 0;
  for (size_t j = 0; j < d.size(); ++j) {
    double a = std::abs(d[j]);
    hi = std::max(hi, a);
    if (a < lo) lo = a, at = j;
  }
  if (!(lo > 1e-12 * hi))
    throw HypothesisError(fmt::format("det phi vanishes near theta={:.6g} (gapless symbol)",
                                      2 * kPi * at / d.size()));
}

}  // namespace

std::string to_string(EClass c) {
  switch (c) {
    case EClass::nonzero: return "nonzero";
    case EClass::zero: return "zero";
    default: return "inconclusive";
  }
}

int winding_number(const std::vector<cplx>& samples) {
  if (samples.size() < 3) throw ValidationError("winding number needs at least 3 samples");
  for (auto z : samples)
    if (z == cplx(0)) throw HypothesisError("curve passes through zero");
  auto u = unwrap(samples);
  if (!u.resolved) throw ValidationError("curve undersampled: phase step above pi/2");
  return u.winding;
}

GeometricMean geometric_mean(const Symbol& s) {
  int width = s.k_max() - s.k_min() + 1;
  int M = 256;
  while (M < 8 * width) M *= 2;
  double prev_la = 0, prev_ph = 0;
  bool have_prev = false;
  for (; M <= (1 << 18); M *= 2) {
    auto d = det_on_grid(s, M);
    check_nonvanishing(d);
    auto u = unwrap(d);
    if (!u.resolved) continue;
    if (u.winding != 0)
      throw HypothesisError(fmt::format("det phi has winding {}; geometric mean undefined", u.winding));
    double la = 0, ph = 0;
    for (int j = 0; j < M; ++j) la += std::log(std::abs(d[j])), ph += u.phase[j];
    la /= M;
    ph /= M;
    if (have_prev && std::abs(la - prev_la) < 1e-13 * std::max(1.0, std::abs(la)) &&
        std::abs(ph - prev_ph) < 1e-13 * std::max(1.0, std::abs(ph)))
      return {SignedLog{la, std::polar(1.0, ph)}, M};
    prev_la = la, prev_ph = ph, have_prev = true;
  }
  throw ConvergenceError("geometric mean did not settle by M=2^18");
}

EClassification classify_E(const Symbol& s, int n_min, int n_max) {
  if (n_min < 1 || n_max - n_min + 1 < 6) throw ValidationError("classify_E needs at least 6 sizes");
  EClassification out;
  out.G = geometric_mean(s).G;
  for (int n = n_min; n <= n_max; ++n) {
    out.ns.push_back(n);
    out.ratios.push_back(log_det(build_toeplitz(s, n).data) / out.G.pow(n));
  }
  const size_t L = out.ratios.size();
  const size_t first = L - 6;
  const SignedLog& last = out.ratios.back();
  if (last.is_zero()) {
    out.cls = EClass::zero;
    return out;
  }
  bool any_zero = false;
  for (size_t i = first; i < L; ++i) any_zero = any_zero || out.ratios[i].is_zero();
  if (any_zero) return out;  // zero then nonzero: no pattern to read

  double worst_step = 0, worst_ratio = 0;
  for (size_t i = first; i + 1 < L; ++i) {
    SignedLog q = out.ratios[i + 1] / out.ratios[i];
    worst_step = std::max(worst_step, std::abs(q.value() - 1.0));
    worst_ratio = std::max(worst_ratio, std::exp(q.log_abs));
  }
  out.rate = std::exp((last.log_abs - out.ratios[first].log_abs) / 5.0);
  if (worst_step <= 0.02) {
    out.cls = EClass::nonzero;
    out.E = last.value();
  } else if (worst_ratio <= 0.98) {
    out.cls = EClass::zero;
  }
  return out;
}

SignedLog widom_finite_E(const Symbol& s, int a, double tol) {
  if (a < 0) throw ValidationError("widom_finite_E: a must be non-negative");
  Symbol use = s;
  if (s.k_max() > a) {
    if (s.k_min() < -a)
      throw PreconditionError(fmt::format("symbol has coefficients on both sides beyond a={}", a));
    // det T_n(phi) = det T_n(phi)^T, and T_n(phi)^T is generated by phi_{-k}^T
    std::map<int, CMat> c;
    for (const auto& [k, m] : s.coefficients()) c.emplace(-k, m.transpose());
    use = Symbol(s.block_size(), std::move(c), s.tail_bound(), s.exact_band());
  }
  SignedLog G = geometric_mean(use).G;
  if (a == 0) return {};
  Symbol inv = inverse_symbol(use, tol);
  return G.pow(a) * log_det(build_toeplitz(inv, a).data);
}

SignedLog prefactor_from_inverse(const Symbol& inv, int n, PrefactorKernel kernel) {
  if (n < 1) throw ValidationError("prefactor needs n >= 1");
  CMat x = inv.coefficient(n);
  if (kernel == PrefactorKernel::two_sided) x += inv.coefficient(-n);
  double sz = max_abs(x);
  if (!(sz > 10 * inv.tail_bound()) || sz == 0)
    throw PreconditionError(
        fmt::format("inverse coefficient at n={} ({:.3e}) is not resolved above the tail bound {:.3e}", n,
                    sz, inv.tail_bound()));
  Eigen::JacobiSVD<CMat> svd(x);
  auto sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-10 * sv(0)))
    throw PreconditionError(fmt::format("prefactor vanishes at n={} (kernel is rank deficient)", n));
  return log_det(x);
}

SignedLog modified_prefactor(const Symbol& s, int n, PrefactorKernel kernel, double tol) {
  return prefactor_from_inverse(inverse_symbol(s, tol), n, kernel);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit needs at least two points");
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  return sxy / sxx;
}

ModifiedFit verify_modified_asymptotics(const Symbol& s, int n_min, int n_max, PrefactorKernel kernel,
                                        double tol) {
  auto cls = classify_E(s, n_min, n_max);
  if (cls.cls != EClass::zero)
    throw PreconditionError("modified asymptotics apply only when E classifies as zero (got " +
                            to_string(cls.cls) + ")");
  auto idx = predict_zero_modes(s);
  if (idx.predicted_pairs && *idx.predicted_pairs != 1)
    throw PreconditionError(fmt::format("expected one zero-mode pair, topology predicts {}", *idx.predicted_pairs));

  Symbol inv = inverse_symbol(s, tol);
  ModifiedFit fit;
  std::vector<double> xs, ys;
  for (size_t i = 0; i < cls.ns.size(); ++i) {
    int n = cls.ns[i];
    SignedLog det_T = cls.ratios[i] * cls.G.pow(n);
    if (det_T.is_zero() || det_T.log_abs < std::log(1e-280)) continue;
    SignedLog pref = prefactor_from_inverse(inv, n, kernel);
    fit.rows.push_back({n, det_T, cls.ratios[i], pref, cls.ratios[i] / pref});
    xs.push_back(n);
    ys.push_back(pref.log_abs);
  }
  if (fit.rows.size() < 2) throw PreconditionError("fewer than two usable sizes");
  fit.E_tilde = fit.rows.back().t.value();
  for (const auto& r : fit.rows)
    fit.max_deviation = std::max(fit.max_deviation, std::abs(r.t.value() / fit.E_tilde - 1.0));
  fit.prefactor_slope = fit_slope(xs, ys);
  return fit;
}

}  // namespace szego
