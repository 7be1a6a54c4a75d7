#include "szego/fixtures.hpp"

#include <fmt/format.h>

#include <cmath>
#include <sstream>
#include <unsupported/Eigen/FFT>

namespace szego {

namespace {

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse number '" + whole + "'");
  }
  if (pos != s.size()) throw ValidationError("cannot parse number '" + whole + "'");
  return v;
}

cplx parse_complex(std::string s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw ValidationError("empty parameter value");
  char last = t.back();
  if (last != 'i' && last != 'j') return {parse_real(t, s), 0.0};
  t.pop_back();
  // split at the last sign that is not leading and not part of an exponent
  size_t cut = std::string::npos;
  for (size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  if (cut == std::string::npos) return {0.0, parse_real(t, s)};
  return {parse_real(t.substr(0, cut), s), parse_real(t.substr(cut), s)};
}

CMat m2(cplx a, cplx b, cplx c, cplx d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

double real_param(const Params& p, const std::string& key, const std::string& fixture) {
  auto it = p.find(key);
  if (it == p.end()) throw ValidationError(fmt::format("{} needs parameter {}", fixture, key));
  if (std::abs(it->second.imag()) > 0) throw ValidationError(fmt::format("{}: {} must be real", fixture, key));
  if (!std::isfinite(it->second.real())) throw ValidationError(fmt::format("{}: {} must be finite", fixture, key));
  return it->second.real();
}

void only_keys(const Params& p, std::initializer_list<const char*> keys, const std::string& fixture) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (auto* want : keys) ok = ok || k == want;
    if (!ok) throw ValidationError(fmt::format("{}: unknown parameter {}", fixture, k));
  }
}

std::map<int, CMat> off_diag_coeffs(const std::vector<std::tuple<int, cplx, cplx>>& rows) {
  // (k, upper-right, lower-left)
  std::map<int, CMat> c;
  for (auto [k, ur, ll] : rows) c.emplace(k, m2(0, ur, ll, 0));
  return c;
}

Fixture example1(const Params& p, bool doubled) {
  std::string name = doubled ? "example1b" : "example1";
  only_keys(p, {"u"}, name);
  double u = real_param(p, "u", name);
  if (std::abs(std::abs(u) - 1.0) < 1e-12)
    throw HypothesisError(fmt::format("{}: |u| = 1 closes the gap", name));
  const int q = doubled ? 2 : 1;
  Fixture f;
  f.name = name;
  f.params = p;
  f.symbol = Symbol(2, off_diag_coeffs({{0, 1.0, -1.0}, {q, -u, 0.0}, {-q, 0.0, u}}), 0.0, true);
  f.evaluator = [u, q](cplx z) { return m2(0, 1.0 - u * std::pow(z, -q), -1.0 + u * std::pow(z, q), 0); };
  f.oracle_det = [](int) { return SignedLog{}; };
  f.oracle_G = SignedLog::from(std::max(1.0, u * u));
  bool top = std::abs(u) > 1;
  f.indices = {SymmetryClass::BDI, doubled ? 1 : (top ? -1 : 1), top ? -q : 0, top ? q : 0};
  if (!doubled) {
    std::map<int, CMat> lam, psi;
    lam.emplace(0, CMat::Constant(1, 1, 1.0));
    lam.emplace(1, CMat::Constant(1, 1, -u));
    psi.emplace(0, CMat::Constant(1, 1, -1.0));
    psi.emplace(-1, CMat::Constant(1, 1, u));
    f.split_lambda = Symbol(1, lam, 0.0, true);
    f.split_psi = Symbol(1, psi, 0.0, true);
  }
  if (doubled && top) {
    f.factorization = {
        {"P1", [u](cplx z) { return m2(1, 0, 0, 1.0 - std::pow(z, -2) / u); }, Analyticity::outside},
        {"P2", [u](cplx) { return m2(0, u, u, 0); }, Analyticity::constant},
        {"P3", [](cplx z) { return m2(z * z, 0, 0, std::pow(z, -2)); }, Analyticity::monomial},
        {"P4", [u](cplx z) { return m2(1, 0, 0, -1.0 + z * z / u); }, Analyticity::inside},
    };
  }
  return f;
}

CMat example2_at(cplx z, double u, double v) {
  const double a = (v + 1 / v) / 2, b = (u + 1 / u) / 2, c = (u * v + 1 / (u * v)) / 2;
  cplx pre = 1.0 / ((z + 1.0 / z) / 2.0 - c);
  cplx isin = (z - 1.0 / z) / 2.0;
  return pre * m2(isin, a - b / z, -a + b * z, isin);
}

Fixture example2(const Params& p, double tol) {
  only_keys(p, {"u", "v"}, "example2");
  double u = real_param(p, "u", "example2"), v = real_param(p, "v", "example2");
  if (!(u > 0 && v > 0)) throw ValidationError("example2: u and v must be positive");
  if (!(u * v < 1)) throw ValidationError("example2: needs u v < 1");
  if (std::abs(u - v) < 1e-12) throw HypothesisError("example2: u = v closes the gap at theta = 0");
  Fixture f;
  f.name = "example2";
  f.params = p;
  f.evaluator = [u, v](cplx z) { return example2_at(z, u, v); };
  f.symbol = sample_laurent_to_series(f.evaluator, 2, tol);
  f.oracle_det = [u](int n) { return SignedLog{2.0 * n * std::log(u), cplx(1.0)}; };
  f.oracle_G = SignedLog::from(std::max(u * u, v * v));
  f.indices = {SymmetryClass::D, u > v ? 1 : -1, std::nullopt, u < v ? 1 : 0};
  if (u < v) {
    f.factorization = {
        {"phi_plus",
         [u, v](cplx z) {
           cplx pre = -2 * v * u / (1.0 - u * v * z);
           return (pre * m2((z * z - 1.0) / 2.0, 1 / (2 * u * v),
                            z * z * (1 / u + u) / 2.0 - z * (1 / v + v) / 2.0, 1 / (2 * u * u * v)))
               .eval();
         },
         Analyticity::inside},
        {"D", [](cplx z) { return m2(1.0 / z, 0, 0, z); }, Analyticity::monomial},
        {"phi_minus",
         [u, v](cplx z) {
           cplx w = 1.0 - u * v / z;
           return (m2(1, 1 / u, 0, w * (u / z - v)) / w).eval();
         },
         Analyticity::outside},
    };
  }
  return f;
}

Fixture example3(const Params& p) {
  only_keys(p, {"zeta"}, "example3");
  auto it = p.find("zeta");
  if (it == p.end()) throw ValidationError("example3 needs parameter zeta");
  cplx zeta = it->second;
  if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag())) throw ValidationError("example3: zeta must be finite");
  if (std::abs(std::abs(zeta) - 1.0) < 1e-12) throw HypothesisError("example3: |zeta| = 1 closes the gap");
  Fixture f;
  f.name = "example3";
  f.params = p;
  f.symbol = Symbol(2, off_diag_coeffs({{0, 1.0, 1.0}, {1, std::conj(zeta), 0.0}, {-1, 0.0, zeta}}), 0.0, true);
  f.evaluator = [zeta](cplx z) { return m2(0, 1.0 + std::conj(zeta) / z, 1.0 + zeta * z, 0); };
  // det phi = -|1 + zeta e^{i theta}|^2
  f.oracle_det = [](int n) { return SignedLog{0.0, cplx(n % 2 ? -1.0 : 1.0)}; };
  f.oracle_G = SignedLog::from(-std::max(1.0, std::norm(zeta)));
  bool top = std::abs(zeta) > 1;
  f.indices = {SymmetryClass::AIII, std::nullopt, top ? -1 : 0, top ? 1 : 0};
  if (top) {
    f.factorization = {
        {"P1", [zeta](cplx z) { return m2(1, 0, 0, 1.0 + 1.0 / (z * zeta)); }, Analyticity::outside},
        {"P2", [zeta](cplx) { return m2(0, std::conj(zeta), zeta, 0); }, Analyticity::constant},
        {"P3", [](cplx z) { return m2(z, 0, 0, 1.0 / z); }, Analyticity::monomial},
        {"P4", [zeta](cplx z) { return m2(1, 0, 0, 1.0 + z / std::conj(zeta)); }, Analyticity::inside},
    };
  }
  return f;
}

}  // namespace

Params parse_params(const std::string& text) {
  Params p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("parameter '" + item + "' is not key=value");
    std::string key = item.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    if (key.empty()) throw ValidationError("parameter '" + item + "' has an empty name");
    if (!p.emplace(key, parse_complex(item.substr(eq + 1))).second)
      throw ValidationError("parameter " + key + " given twice");
  }
  return p;
}

std::vector<std::string> fixture_names() { return {"example1", "example1b", "example2", "example3"}; }

Fixture make_fixture(const std::string& name, const Params& params, double tol) {
  if (name == "example1") return example1(params, false);
  if (name == "example1b") return example1(params, true);
  if (name == "example2") return example2(params, tol);
  if (name == "example3") return example3(params);
  throw ValidationError("unknown example '" + name + "'");
}

namespace {

// coefficient of z^{-k} of each entry from M samples on the circle
std::vector<CMat> grid_coefficients(const std::vector<CMat>& samples) {
  const int M = static_cast<int>(samples.size());
  const int N = static_cast<int>(samples[0].rows());
  Eigen::FFT<double> fft;
  std::vector<CMat> c(M, CMat::Zero(N, N));
  std::vector<cplx> in(M), out;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      for (int j = 0; j < M; ++j) in[j] = samples[j](a, b);
      fft.inv(out, in);
      for (int j = 0; j < M; ++j) c[j](a, b) = out[j];
    }
  return c;
}

double forbidden_mass(const std::vector<CMat>& c, Analyticity kind) {
  const int M = static_cast<int>(c.size());
  const int N = static_cast<int>(c[0].rows());
  double worst = 0;
  for (int j = 0; j < M; ++j) {
    int k = j < M / 2 ? j : j - M;
    switch (kind) {
      case Analyticity::inside:
        if (k > 0) worst = std::max(worst, max_abs(c[j]));
        break;
      case Analyticity::outside:
        if (k < 0) worst = std::max(worst, max_abs(c[j]));
        break;
      case Analyticity::constant:
        if (k != 0) worst = std::max(worst, max_abs(c[j]));
        break;
      case Analyticity::monomial:
        for (int a = 0; a < N; ++a)
          for (int b = 0; b < N; ++b)
            if (a != b) worst = std::max(worst, std::abs(c[j](a, b)));
        break;
    }
  }
  if (kind == Analyticity::monomial) {
    for (int a = 0; a < N; ++a) {
      int top = 0;
      for (int j = 1; j < M; ++j)
        if (std::abs(c[j](a, a)) > std::abs(c[top](a, a))) top = j;
      for (int j = 0; j < M; ++j)
        if (j != top) worst = std::max(worst, std::abs(c[j](a, a)));
    }
  }
  return worst;
}

}  // namespace

FactorizationCheck verify_factorization(const Fixture& f, int M) {
  if (f.factorization.empty())
    throw PreconditionError(f.name + " carries no block factorization for these parameters");
  if (M < 16) throw ValidationError("verify_factorization: grid too small");
  FactorizationCheck out;
  std::vector<std::vector<CMat>> fs(f.factorization.size(), std::vector<CMat>(M));
  for (int j = 0; j < M; ++j) {
    cplx z = std::polar(1.0, 2 * kPi * j / M);
    CMat prod = CMat::Identity(f.symbol.block_size(), f.symbol.block_size());
    for (size_t i = 0; i < f.factorization.size(); ++i) {
      fs[i][j] = f.factorization[i].f(z);
      prod = prod * fs[i][j];
    }
    out.residual = std::max(out.residual, max_abs(prod - f.evaluator(z)));
  }
  for (size_t i = 0; i < f.factorization.size(); ++i) {
    std::vector<CMat> inv(M);
    for (int j = 0; j < M; ++j) inv[j] = fs[i][j].inverse();
    FactorCheck fc;
    fc.name = f.factorization[i].name;
    fc.forbidden = forbidden_mass(grid_coefficients(fs[i]), f.factorization[i].kind);
    fc.forbidden_inverse = forbidden_mass(grid_coefficients(inv), f.factorization[i].kind);
    out.support_violation = std::max({out.support_violation, fc.forbidden, fc.forbidden_inverse});
    out.factors.push_back(fc);
  }
  return out;
}

}  // namespace szego
