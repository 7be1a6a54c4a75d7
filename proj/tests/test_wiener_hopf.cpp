#include <doctest.h>

#include <cmath>
#include <random>

#include "szego/structured.hpp"
#include "szego/wiener_hopf.hpp"

using namespace szego;

namespace {

CMat c1(cplx a) { return CMat::Constant(1, 1, a); }

// K prod (1 - r/z) prod (1 - z/s) as coefficients, z^{-k} <-> index k
Symbol from_roots(cplx K, const std::vector<cplx>& in, const std::vector<cplx>& out) {
  std::map<int, cplx> c{{0, K}};
  for (auto r : in) {
    std::map<int, cplx> n;
    for (auto [k, v] : c) n[k] += v, n[k + 1] += -r * v;
    c = n;
  }
  for (auto s : out) {
    std::map<int, cplx> n;
    for (auto [k, v] : c) n[k] += v, n[k - 1] += -v / s;
    c = n;
  }
  std::vector<std::pair<int, CMat>> v;
  for (auto [k, x] : c) v.emplace_back(k, c1(x));
  return symbol_from_coefficients(1, v);
}

}  // namespace

TEST_CASE("factorization of 1 - 0.5 e^{-i theta}") {
  auto p = symbol_from_coefficients(1, {{0, c1(1.0)}, {1, c1(-0.5)}});
  auto f = wiener_hopf_scalar(p);
  CHECK(f.winding == 0);
  CHECK(f.roots_inside.size() == 1);
  CHECK(f.roots_outside.empty());
  CHECK(std::abs(f.phi_plus.coefficient(0)(0, 0) - 1.0) < 1e-15);
  CHECK(f.phi_plus.coefficients().size() == 1);
  CHECK(std::abs(f.phi_minus.coefficient(1)(0, 0) + 0.5) < 1e-14);
  CHECK(std::abs(f.alpha.coefficient(0)(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(f.alpha.coefficient(1)(0, 0) + 0.5) < 1e-14);
  CHECK(std::abs(f.alpha.coefficient(-1)(0, 0)) < 1e-14);
}

TEST_CASE("winding of -1 + 2 e^{i theta}") {
  auto psi = symbol_from_coefficients(1, {{0, c1(-1.0)}, {-1, c1(2.0)}});
  CHECK(wiener_hopf_scalar(psi).winding == 1);
}

TEST_CASE("factors reassemble the symbol") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ang(0, 2 * kPi), rin(0.1, 0.9), rout(1.1, 4.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<cplx> in, out;
    int ni = t % 3, no = (t / 3) % 3;
    for (int i = 0; i < ni; ++i) in.push_back(std::polar(rin(rng), ang(rng)));
    for (int i = 0; i < no; ++i) out.push_back(std::polar(rout(rng), ang(rng)));
    cplx K = std::polar(0.5 + rin(rng), ang(rng));
    auto p = from_roots(K, in, out);
    auto f = wiener_hopf_scalar(p);
    CHECK(f.winding == 0);
    for (double th : {0.0, 0.9, 2.5, 4.0}) {
      cplx got = f.phi_plus(th)(0, 0) * f.phi_minus(th)(0, 0);
      CHECK(std::abs(got - p(th)(0, 0)) < 1e-12 * std::abs(K) * 50);
      // alpha * phi_plus = phi_minus
      cplx a = f.alpha(th)(0, 0) * f.phi_plus(th)(0, 0);
      CHECK(std::abs(a - f.phi_minus(th)(0, 0)) < 1e-10);
    }
    // support: phi_plus indices <= 0, phi_minus >= 0 with phi_minus(inf) = 1
    CHECK(f.phi_plus.k_max() == 0);
    CHECK(f.phi_minus.k_min() == 0);
    CHECK(std::abs(f.phi_minus.coefficient(0)(0, 0) - 1.0) < 1e-14);
  }
}

TEST_CASE("root on the circle and wrong winding") {
  auto bad = symbol_from_coefficients(1, {{0, c1(1.0)}, {1, c1(-1.0)}});
  CHECK_THROWS_AS(wiener_hopf_scalar(bad), HypothesisError);
  auto w = symbol_from_coefficients(1, {{0, c1(-1.0)}, {-1, c1(2.0)}});
  CHECK_THROWS_AS(scalar_winding_theorem(w, 1, 5), HypothesisError);
}

TEST_CASE("theorem is exact when every root is outside") {
  auto p = from_roots(1.5, {}, {cplx(3.0, 0.5), cplx(-2.5, 0)});
  for (int m = 1; m <= 2; ++m)
    for (int n = 3; n <= 10; ++n) {
      SignedLog th = scalar_winding_theorem(p, m, n);
      SignedLog br = log_det(build_toeplitz(shift_symbol(p, m), n).data);
      CHECK(std::abs(th.value() / br.value() - 1.0) < 1e-11);
    }
}

TEST_CASE("theorem error shrinks geometrically with mixed roots") {
  auto p = from_roots(1.0, {cplx(0.3, 0.2)}, {cplx(2.0, 0.0), cplx(0.0, -2.5)});
  double prev = 1.0;
  for (int n : {4, 8, 12, 16, 20}) {
    SignedLog th = scalar_winding_theorem(p, 1, n);
    SignedLog br = log_det(build_toeplitz(shift_symbol(p, 1), n).data);
    double err = std::abs(th.value() / br.value() - 1.0);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-8);
}

TEST_CASE("mirrored statement reproduces det T_n(-1 + 2 e^{i theta}) = (-1)^n") {
  auto psi = symbol_from_coefficients(1, {{0, c1(-1.0)}, {-1, c1(2.0)}});
  // psi = z^{+1} p with p = 2 - z^{-1} of winding 0
  auto p = shift_symbol(psi, 1);
  CHECK(wiener_hopf_scalar(p).winding == 0);
  for (int n = 1; n <= 12; ++n) {
    SignedLog th = scalar_winding_theorem(p, -1, n);
    CHECK(std::abs(th.value() - (n % 2 ? -1.0 : 1.0)) < 1e-12);
  }
}
