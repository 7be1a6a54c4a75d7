#include "szego/zero_modes.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "szego/asymptotics.hpp"

namespace szego {

namespace {

constexpr int kKeptPairs = 4;
constexpr int kMaxSeeds = 64;

void require_gapped(const Symbol& s) {
  double smin = min_singular_on_grid(s, 512);
  if (!(smin > 1e-8 * std::max(s.scale(), 1e-300)))
    throw HypothesisError(fmt::format("symbol is gapless (min singular value {:.3e})", smin));
}

}  // namespace

ZeroModeScan zero_mode_scan(const Symbol& s, int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min) throw ValidationError("zero_mode_scan: empty n range");
  require_gapped(s);
  ZeroModeScan out;
  for (int n = n_min; n <= n_max; ++n) {
    double gap = circulant_gap(s, n);
    auto sp = spectrum(build_toeplitz(s, n).data);
    std::vector<double> mags;
    for (auto v : sp.values) mags.push_back(std::abs(v));
    std::sort(mags.begin(), mags.end());
    std::vector<double> eps;
    for (size_t i = 0; i < mags.size() && static_cast<int>(eps.size()) < kKeptPairs; i += 2) eps.push_back(mags[i]);
    int count = 0;
    for (double e : eps)
      if (e < gap / 2) ++count;
    // every pair below threshold must be counted even past the kept ones
    for (size_t i = 2 * kKeptPairs; i < mags.size() && mags[i] < gap / 2; i += 2) ++count;
    out.ns.push_back(n);
    out.eps.push_back(eps);
    out.gap.push_back(gap);
    out.counts.push_back(count);
  }
  out.pair_count = *std::min_element(out.counts.begin(), out.counts.end());
  for (int p = 0; p < out.pair_count && p < kKeptPairs; ++p) {
    if (out.eps.back()[p] < 1e-13)
      throw ConvergenceError(fmt::format(
          "eps_{} = {:.3e} at n={} is below 1e-13; shrink the n range", p + 1, out.eps.back()[p], n_max));
    std::vector<double> xs, ys;
    for (size_t i = 0; i < out.ns.size(); ++i)
      if (out.eps[i][p] > 1e-12) xs.push_back(out.ns[i]), ys.push_back(std::log(out.eps[i][p]));
    out.fitted_rates.push_back(xs.size() >= 2 ? fit_slope(xs, ys) : std::nan(""));
  }
  return out;
}

PowerIteration power_iteration_mode(const Symbol& s, int n, int seed_site, int iterations) {
  const int N = s.block_size();
  CMat T = build_toeplitz(s, n).data;
  const int D = static_cast<int>(T.rows());
  PowerIteration out;
  out.threshold = circulant_gap(s, n) / 2;
  Eigen::PartialPivLU<CMat> lu(T);
  double dmax = lu.matrixLU().diagonal().cwiseAbs().maxCoeff();
  double dmin = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(dmin > 1e-14 * dmax)) {
    // exact zero mode: take the null vector directly
    Eigen::JacobiSVD<CMat> svd(T, Eigen::ComputeFullV);
    out.vector = svd.matrixV().col(D - 1);
    out.lambda = out.vector.dot(T * out.vector);
    out.magnitude = (T * out.vector).norm();
    out.residual = (T * out.vector - out.lambda * out.vector).norm();
    out.mode_found = out.residual < out.threshold;
    out.attempts = 1;
    return out;
  }

  std::vector<int> order(D);
  std::iota(order.begin(), order.end(), 0);
  if (seed_site < 0) {
    CMat inv = lu.inverse();
    std::vector<double> resp(D);
    for (int i = 0; i < D; ++i) resp[i] = inv.col(i).norm();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return resp[a] > resp[b]; });
  } else {
    if (seed_site >= n) throw ValidationError(fmt::format("seed site {} outside 0..{}", seed_site, n - 1));
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return std::abs(a / N - seed_site) < std::abs(b / N - seed_site); });
  }

  const int attempts = std::min(D, kMaxSeeds);
  for (int t = 0; t < attempts; ++t) {
    CVec v = CVec::Zero(D);
    v(order[t]) = 1.0;
    for (int it = 0; it < iterations; ++it) {
      CVec w = lu.solve(v);
      v = w / w.norm();
    }
    CVec tv = T * v;
    cplx lam = v.dot(tv);
    double res = (tv - lam * v).norm();
    out.attempts = t + 1;
    if (t == 0 || res < out.residual) {
      out.vector = v;
      out.lambda = lam;
      out.magnitude = tv.norm();
      out.residual = res;
      out.seed = order[t];
    }
    if (res < out.threshold) {
      out.mode_found = true;
      break;
    }
  }
  return out;
}

DecayFit inverse_coefficient_decay(const Symbol& s, int k_max, double tol) {
  if (k_max < 4) throw ValidationError("inverse_coefficient_decay: k_max must be at least 4");
  Symbol inv = inverse_symbol(s, tol);
  const int N = s.block_size();
  const double floor = std::max(10 * inv.tail_bound(), tol);
  DecayFit fit;
  std::vector<double> xs, ys;
  for (int k = 1; k <= k_max; ++k) {
    double m = std::max(inv.coefficient(k).norm(), inv.coefficient(-k).norm());
    if (m > floor) xs.push_back(k), ys.push_back(std::log(m));
  }
  fit.points = static_cast<int>(xs.size());
  if (xs.size() < 4)
    throw PreconditionError(fmt::format("only {} inverse coefficients above {:.3e}; cannot fit decay", xs.size(), floor));
  fit.rate = fit_slope(xs, ys);
  fit.entry_rates.assign(N, std::vector<double>(N, std::nan("")));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      std::vector<double> ex, ey;
      for (int k = 1; k <= k_max; ++k) {
        double m = std::max(std::abs(inv.coefficient(k)(a, b)), std::abs(inv.coefficient(-k)(a, b)));
        if (m > floor) ex.push_back(k), ey.push_back(std::log(m));
      }
      if (ex.size() >= 4) fit.entry_rates[a][b] = fit_slope(ex, ey);
    }
  return fit;
}

RootReport root_analysis(const Symbol& s) {
  if (!s.exact_band()) throw PreconditionError("root analysis needs a banded (exact Laurent polynomial) symbol");
  const int N = s.block_size();
  const int lo = N * s.k_min(), hi = N * s.k_max();
  const int D = hi - lo;
  int M = 64;
  while (M <= 2 * D + 1) M *= 2;
  auto d = det_on_grid(s, M);
  // Laurent coefficients of det phi(z) = sum_j d_j z^{-j}, j in [lo, hi]
  std::vector<cplx> q(D + 1);  // ascending powers of z^{hi} det phi(z)
  for (int j = lo; j <= hi; ++j) {
    cplx acc = 0;
    for (int t = 0; t < M; ++t) acc += d[t] * std::polar(1.0, 2 * kPi * j * t / M);
    q[hi - j] = acc / static_cast<double>(M);
  }
  double big = 0;
  for (auto c : q) big = std::max(big, std::abs(c));
  if (big == 0) throw HypothesisError("det phi vanishes identically");
  size_t a = 0, b = q.size();
  while (a < b && std::abs(q[a]) <= 1e-12 * big) ++a;  // roots at z = 0 carry no information here
  while (b > a && std::abs(q[b - 1]) <= 1e-12 * big) --b;
  std::vector<cplx> poly(q.begin() + a, q.begin() + b);
  RootReport r;
  const int deg = static_cast<int>(poly.size()) - 1;
  if (deg >= 1) {
    CMat comp = CMat::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -poly[i] / poly[deg];
    Eigen::ComplexEigenSolver<CMat> es(comp, false);
    for (int i = 0; i < deg; ++i) r.roots.push_back(es.eigenvalues()(i));
  }
  std::sort(r.roots.begin(), r.roots.end(), [](cplx x, cplx y) {
    return std::abs(x) != std::abs(y) ? std::abs(x) < std::abs(y) : std::arg(x) < std::arg(y);
  });
  r.min_log_distance = std::numeric_limits<double>::infinity();
  for (auto z : r.roots) {
    double dl = std::abs(std::log(std::abs(z)));
    r.log_distance.push_back(dl);
    r.min_log_distance = std::min(r.min_log_distance, dl);
  }
  if (r.min_log_distance < 1e-8) throw HypothesisError("det phi has a root on the unit circle (gapless)");
  return r;
}

ZeroModeReport zero_mode_report(const Symbol& s, int n_min, int n_max) {
  ZeroModeReport rep;
  rep.scan = zero_mode_scan(s, n_min, n_max);
  if (rep.scan.pair_count > 0) {
    rep.wave = power_iteration_mode(s, n_max);
    const int N = s.block_size();
    for (int i = 0; i < n_max; ++i) rep.profile.push_back(rep.wave->vector.segment(i * N, N).norm());
    try {
      rep.coeff_decay_rate = inverse_coefficient_decay(s).rate;
    } catch (const PreconditionError&) {
    }
  }
  if (s.exact_band()) {
    try {
      rep.root_gap = root_analysis(s).min_log_distance;
    } catch (const HypothesisError&) {
    }
  }
  return rep;
}

}  // namespace szego
