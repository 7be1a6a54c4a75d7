#include "szego/symbol.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/FFT>

namespace szego {

Symbol::Symbol(int block_size, std::map<int, CMat> coeffs, double tail_bound, bool exact_band)
    : N_(block_size), c_(std::move(coeffs)), tail_(tail_bound), exact_(exact_band) {
  if (N_ < 1) throw ValidationError("block size must be positive");
  for (auto& [k, m] : c_) {
    if (m.rows() != N_ || m.cols() != N_)
      throw ValidationError(fmt::format("coefficient {} has shape {}x{}, expected {}x{}", k, m.rows(),
                                        m.cols(), N_, N_));
    if (!m.allFinite()) throw ValidationError(fmt::format("coefficient {} is not finite", k));
  }
}

CMat Symbol::coefficient(int k) const {
  auto it = c_.find(k);
  return it == c_.end() ? CMat::Zero(N_, N_) : it->second;
}

int Symbol::k_min() const { return c_.empty() ? 0 : c_.begin()->first; }
int Symbol::k_max() const { return c_.empty() ? 0 : c_.rbegin()->first; }

double Symbol::scale() const {
  double s = 0;
  for (auto& [k, m] : c_) s = std::max(s, max_abs(m));
  return s;
}

CMat Symbol::operator()(double theta) const {
  CMat out = CMat::Zero(N_, N_);
  for (auto& [k, m] : c_) out += m * std::polar(1.0, -k * theta);
  return out;
}

CMat Symbol::at(cplx z) const {
  CMat out = CMat::Zero(N_, N_);
  for (auto& [k, m] : c_) out += m * std::pow(z, -k);
  return out;
}

Symbol Symbol::reflected() const {
  std::map<int, CMat> r;
  for (auto& [k, m] : c_) r.emplace(-k, m);
  return Symbol(N_, std::move(r), tail_, exact_);
}

Symbol symbol_from_coefficients(int block_size, const std::vector<std::pair<int, CMat>>& coeffs) {
  if (block_size < 1) throw ValidationError("block size must be positive");
  std::map<int, CMat> c;
  for (auto& [k, m] : coeffs) {
    if (!c.emplace(k, m).second) throw ValidationError(fmt::format("duplicate coefficient index {}", k));
  }
  return Symbol(block_size, std::move(c), 0.0, true);
}

namespace {

constexpr int kStartM = 256;
constexpr int kMaxM = 1 << 18;

int wrap(int k, int M) { return k >= 0 ? k : M + k; }

std::vector<CMat> coefficients_from_samples(const std::vector<CMat>& s, int N) {
  const int M = static_cast<int>(s.size());
  Eigen::FFT<double> fft;
  std::vector<CMat> c(M, CMat::Zero(N, N));
  std::vector<cplx> in(M), out;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      for (int j = 0; j < M; ++j) in[j] = s[j](a, b);
      fft.inv(out, in);
      for (int j = 0; j < M; ++j) c[j](a, b) = out[j];
    }
  return c;
}

double outer_quarter(const std::vector<CMat>& c) {
  const int M = static_cast<int>(c.size());
  double o = 0;
  for (int j = M / 4; j <= 3 * M / 4; ++j) o = std::max(o, max_abs(c[j]));
  return o;
}

CMat checked(const CMat& m, int N, double where) {
  if (m.rows() != N || m.cols() != N)
    throw ValidationError(fmt::format("evaluator returned {}x{}, expected {}x{}", m.rows(), m.cols(), N, N));
  if (!m.allFinite()) throw ValidationError(fmt::format("evaluator is not finite at theta={}", where));
  return m;
}

struct CircleSeries {
  int M = 0;
  std::vector<CMat> c;
  double outer = 0;
  double peak = 0;
  bool converged = false;
};

using Sampler = std::function<CMat(int, int)>;  // (j, M) -> f at theta_j

// on |z| = r, coefficient j of the result is phi_k r^{-k}
// stops once outer <= abs_tol + rel_tol * peak

CircleSeries circle_series(const Sampler& f, int N, double abs_tol, double rel_tol, int max_m) {
  CircleSeries out;
  std::vector<CMat> samples;
  for (int M = kStartM; M <= max_m; M *= 2) {
    std::vector<CMat> next(M);
    for (int j = 0; j < M; ++j) {
      if (j % 2 == 0 && !samples.empty()) {
        next[j] = samples[j / 2];
      } else {
        next[j] = checked(f(j, M), N, 2 * kPi * j / M);
      }
    }
    samples = std::move(next);
    out.M = M;
    out.c = coefficients_from_samples(samples, N);
    out.outer = outer_quarter(out.c);
    out.peak = 0;
    for (auto& m : out.c) out.peak = std::max(out.peak, max_abs(m));
    if (out.outer <= abs_tol + rel_tol * out.peak) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

Symbol series_to_symbol(const CircleSeries& cs, int N, double keep) {
  std::map<int, CMat> coeffs;
  const int M = cs.M;
  for (int k = -M / 4 + 1; k < M / 4; ++k) {
    const CMat& m = cs.c[wrap(k, M)];
    if (max_abs(m) >= keep) coeffs.emplace(k, m);
  }
  return Symbol(N, std::move(coeffs), cs.outer, false);
}

}  // namespace

Symbol sample_to_series(const ThetaEval& f, int N, double tol) {
  if (N < 1) throw ValidationError("block size must be positive");
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  auto cs = circle_series([&](int j, int M) { return f(2 * kPi * j / M); }, N, tol, 0.0, kMaxM);
  if (!cs.converged)
    throw ConvergenceError(
        fmt::format("Fourier tail {:.3e} above tol {:.3e} at M={}", cs.outer, tol, cs.M));
  return series_to_symbol(cs, N, tol / 100);
}

Symbol sample_laurent_to_series(const ZEval& f, int N, double tol) {
  if (N < 1) throw ValidationError("block size must be positive");
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  auto on_circle = [&](double r) {
    return [&f, r](int j, int M) { return f(std::polar(r, 2 * kPi * j / M)); };
  };
  auto base = circle_series(on_circle(1.0), N, tol, 0.0, kMaxM);
  if (!base.converged)
    throw ConvergenceError(
        fmt::format("Fourier tail {:.3e} above tol {:.3e} at M={}", base.outer, tol, base.M));
  const int M = base.M;
  const double scale = base.peak;
  std::map<int, CMat> coeffs;
  for (int k = -M / 4 + 1; k < M / 4; ++k) {
    const CMat& m = base.c[wrap(k, M)];
    if (max_abs(m) >= tol / 100) coeffs.emplace(k, m);
  }

  for (int side : {+1, -1}) {
    // decay rate on this side from the part of the series well above roundoff
    std::vector<double> xs, ys;
    for (int k = 1; k < M / 4; ++k) {
      double a = max_abs(base.c[wrap(side * k, M)]);
      if (a <= 1e-13 * scale) break;
      xs.push_back(k);
      ys.push_back(std::log(a));
    }
    if (xs.size() < 4) continue;
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= xs.size();
    my /= xs.size();
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
    double rho = std::exp(sxy / sxx);
    if (!(rho > 0 && rho < 0.95)) continue;
    double r = side > 0 ? std::sqrt(rho) : 1.0 / std::sqrt(rho);
    CircleSeries cs;
    try {
      cs = circle_series(on_circle(r), N, 0.0, 1e-15, 1 << 16);
    } catch (const ValidationError&) {
      continue;  // evaluator blew up off the circle
    }
    if (!cs.converged) continue;

    std::map<int, CMat> cand;
    for (int k = 1; k < cs.M / 4; ++k) {
      const CMat& g = cs.c[wrap(side * k, cs.M)];
      if (max_abs(g) < 1e-14 * cs.peak) break;
      cand.emplace(side * k, g * std::pow(r, side * k));
    }
    bool agree = !cand.empty();
    for (int k = 1; k < M / 4 && agree; ++k) {
      const CMat& b = base.c[wrap(side * k, M)];
      double a = max_abs(b);
      if (a <= 1e-9 * scale) break;
      auto it = cand.find(side * k);
      if (it == cand.end() || max_abs(it->second - b) > 1e-7 * a + 1e-13 * scale) agree = false;
    }
    if (!agree) continue;
    for (auto it = coeffs.begin(); it != coeffs.end();) {
      if (it->first * side > 0)
        it = coeffs.erase(it);
      else
        ++it;
    }
    coeffs.insert(cand.begin(), cand.end());
  }
  return Symbol(N, std::move(coeffs), base.outer, false);
}

Symbol inverse_symbol(const Symbol& s, double tol) {
  const int N = s.block_size();
  ThetaEval inv = [&](double th) -> CMat {
    CMat m = s(th);
    Eigen::JacobiSVD<CMat> svd(m);
    auto sv = svd.singularValues();
    double smax = sv(0), smin = sv(sv.size() - 1);
    if (!(smin > 1e-12 * smax))
      throw HypothesisError(fmt::format("symbol is singular at theta={:.6g} (sigma_min={:.3e})", th, smin));
    return m.inverse();
  };
  return sample_to_series(inv, N, tol);
}

std::vector<cplx> det_on_grid(const Symbol& s, int M) {
  if (M < 1) throw ValidationError("grid size must be positive");
  std::vector<cplx> d(M);
  for (int j = 0; j < M; ++j) d[j] = s(2 * kPi * j / M).determinant();
  return d;
}

double min_singular_on_grid(const Symbol& s, int M) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < M; ++j) {
    Eigen::JacobiSVD<CMat> svd(s(2 * kPi * j / M));
    best = std::min(best, svd.singularValues().minCoeff());
  }
  return best;
}

}  // namespace szego
