#include <doctest.h>

#include <cmath>

#include "szego/asymptotics.hpp"

using namespace szego;

namespace {

CMat m2(cplx a, cplx b, cplx c, cplx d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

CMat c1(cplx a) { return CMat::Constant(1, 1, a); }

Symbol example1(double u) {
  return symbol_from_coefficients(2, {{0, m2(0, 1, -1, 0)}, {1, m2(0, -u, 0, 0)}, {-1, m2(0, 0, u, 0)}});
}

// (1 - a/z)(1 - b z) = (1 + ab) - a z^{-1} - b z
Symbol two_root(cplx a, cplx b) {
  return symbol_from_coefficients(1, {{0, c1(1.0 + a * b)}, {1, c1(-a)}, {-1, c1(-b)}});
}

}  // namespace

TEST_CASE("winding number of sampled monomials") {
  for (int k : {-3, -1, 0, 2}) {
    std::vector<cplx> z;
    for (int j = 0; j < 64; ++j) z.push_back(std::polar(2.0, 2 * kPi * k * j / 64));
    CHECK(winding_number(z) == k);
  }
  std::vector<cplx> coarse;
  for (int j = 0; j < 8; ++j) coarse.push_back(std::polar(1.0, 2 * kPi * 3 * j / 8));
  CHECK_THROWS_AS(winding_number(coarse), ValidationError);
  CHECK_THROWS_AS(winding_number({1.0, 0.0, -1.0, cplx(0, 1)}), HypothesisError);
}

TEST_CASE("geometric mean by Jensen's formula") {
  // log|1 - a/z| and log|1 - b z| average to zero for |a|, |b| < 1
  auto s = symbol_from_coefficients(1, {{0, c1(3.0 * (1.0 + 0.12))}, {1, c1(-3.0 * 0.4)}, {-1, c1(-3.0 * 0.3)}});
  auto G = geometric_mean(s).G;
  CHECK(std::abs(G.value() - 3.0) < 1e-12);
  // example 1: det phi = (1 - u/z)(1 - u z), G = max(1, u^2)
  for (double u : {0.5, 2.0, 3.0}) CHECK(std::abs(geometric_mean(example1(u)).G.value() - std::max(1.0, u * u)) < 1e-12);
  // negative real det keeps its sign
  auto neg = symbol_from_coefficients(1, {{0, c1(-2.0)}});
  CHECK(std::abs(geometric_mean(neg).G.value() + 2.0) < 2e-12);
  // winding -1
  auto w = symbol_from_coefficients(1, {{1, c1(1.0)}});
  CHECK_THROWS_AS(geometric_mean(w), HypothesisError);
  // det vanishes at theta = 0
  CHECK_THROWS_AS(geometric_mean(two_root(1.0, 0.0)), HypothesisError);
}

TEST_CASE("log_det matches the closed form for a two-root scalar symbol") {
  // det T_n = (1 - (ab)^{n+1}) / (1 - ab)
  cplx a(0.6, 0.2), b(-0.5, 0.3);
  auto s = two_root(a, b);
  for (int n = 1; n <= 30; ++n) {
    cplx want = (1.0 - std::pow(a * b, n + 1)) / (1.0 - a * b);
    CHECK(std::abs(log_det(build_toeplitz(s, n).data).value() / want - 1.0) < 1e-12);
  }
}

TEST_CASE("classify_E") {
  auto nz = classify_E(example1(0.5), 6, 16);
  CHECK(nz.cls == EClass::nonzero);
  REQUIRE(nz.E);
  CHECK(std::abs(*nz.E - 1.0) < 1e-10);

  auto z = classify_E(example1(2.0), 6, 16);
  CHECK(z.cls == EClass::zero);
  CHECK(std::abs(z.rate - 0.25) < 1e-10);

  // E = 1/(1 - ab) for the two-root symbol
  auto s = two_root(0.4, 0.3);
  auto c = classify_E(s, 10, 20);
  CHECK(c.cls == EClass::nonzero);
  CHECK(std::abs(*c.E - 1.0 / (1.0 - 0.12)) < 1e-10);

  // ab = -0.9: e_n swings by ~(0.9)^n, too slow for this range
  auto osc = classify_E(two_root(0.95, -0.95), 6, 11);
  CHECK(osc.cls == EClass::inconclusive);

  CHECK_THROWS_AS(classify_E(example1(0.5), 6, 10), ValidationError);
}

TEST_CASE("finite Widom formula") {
  CHECK(std::abs(widom_finite_E(example1(0.5), 1).value() - 1.0) < 1e-10);
  CHECK(std::abs(widom_finite_E(example1(2.0), 1).value()) < 1e-10);
  auto one = symbol_from_coefficients(2, {{0, m2(2, 0, 0, 3)}});
  CHECK(std::abs(widom_finite_E(one, 0).value() - 1.0) == 0.0);
  // only index -1 and 0: handled by transposing; 1 - 0.5 z has E = 1
  auto lower = symbol_from_coefficients(1, {{0, c1(1.0)}, {-1, c1(-0.5)}});
  CHECK(std::abs(widom_finite_E(lower, 1).value() - 1.0) < 1e-10);
  // two-sided symbol with a = 1 is outside the formula
  auto wide = symbol_from_coefficients(1, {{0, c1(1.0)}, {2, c1(0.1)}, {-2, c1(0.1)}});
  CHECK_THROWS_AS(widom_finite_E(wide, 1), PreconditionError);
  // agrees with the Szego limit: (1 - 0.3/z)(1 - 0.2 z) has E = 1/(1 - 0.06)
  auto s = two_root(0.3, 0.2);
  CHECK(std::abs(widom_finite_E(s, 1).value() - 1.0 / 0.94) < 1e-10);
  CHECK_THROWS_AS(widom_finite_E(s, -1), ValidationError);
}

TEST_CASE("prefactor for example 1 equals 4^{-n}") {
  // (phi^{-1})_n + (phi^{-1})_{-n} = [[0, 2^{-n}], [-2^{-n}, 0]] for u = 2
  auto s = example1(2.0);
  Symbol inv = inverse_symbol(s, 1e-13);
  for (int n = 1; n <= 16; ++n) {
    auto p = prefactor_from_inverse(inv, n, PrefactorKernel::two_sided);
    CHECK(std::abs(p.log_abs + n * std::log(4.0)) < 1e-9);
    CHECK(std::abs(p.phase - 1.0) < 1e-12);
    // each one-sided block is zero on one side
    CHECK_THROWS_AS(prefactor_from_inverse(inv, n, PrefactorKernel::one_sided), PreconditionError);
  }
  CHECK_THROWS_AS(prefactor_from_inverse(inv, 200, PrefactorKernel::two_sided), PreconditionError);
}

TEST_CASE("modified asymptotics for example 1") {
  auto fit = verify_modified_asymptotics(example1(2.0), 6, 16);
  CHECK(std::abs(fit.E_tilde - 1.0) < 1e-8);
  CHECK(fit.max_deviation < 1e-8);
  CHECK(std::abs(fit.prefactor_slope + std::log(4.0)) < 1e-10);
  CHECK_THROWS_AS(verify_modified_asymptotics(example1(0.5), 6, 16), PreconditionError);
}

TEST_CASE("SignedLog arithmetic") {
  auto a = SignedLog::from(cplx(-2, 0));
  auto b = SignedLog::from(cplx(0, 4));
  CHECK(std::abs((a * b).value() - cplx(0, -8)) < 1e-14);
  CHECK(std::abs((b / a).value() - cplx(0, -2)) < 1e-14);
  CHECK(std::abs(a.pow(3).value() + 8.0) < 1e-13);
  CHECK(SignedLog::from(0.0).is_zero());
  CHECK((SignedLog::zero() * a).is_zero());
  CHECK_THROWS_AS(a / SignedLog::zero(), ValidationError);
  // far outside double range
  SignedLog tiny{-2000.0, cplx(1, 0)};
  CHECK((tiny * tiny).log_abs == -4000.0);
}
