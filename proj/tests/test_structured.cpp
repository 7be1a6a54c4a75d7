#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "szego/structured.hpp"

using namespace szego;

namespace {

CMat m2(cplx a, cplx b, cplx c, cplx d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

// Pfaffian by expansion along the first row; exponential, fine for n <= 10
cplx pf_expand(const CMat& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  if (n % 2) return 0.0;
  cplx acc = 0;
  for (int j = 1; j < n; ++j) {
    std::vector<int> keep;
    for (int i = 1; i < n; ++i)
      if (i != j) keep.push_back(i);
    CMat sub(n - 2, n - 2);
    for (int r = 0; r < n - 2; ++r)
      for (int c = 0; c < n - 2; ++c) sub(r, c) = a(keep[r], keep[c]);
    acc += (j % 2 ? 1.0 : -1.0) * a(0, j) * pf_expand(sub);
  }
  return acc;
}

CMat random_antisym(std::mt19937_64& rng, int n, bool complex_entries = false) {
  std::normal_distribution<double> g;
  CMat a = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = complex_entries ? cplx(g(rng), g(rng)) : cplx(g(rng), 0);
      a(j, i) = -a(i, j);
    }
  return a;
}

Symbol example1(double u) {
  return symbol_from_coefficients(2, {{0, m2(0, 1, -1, 0)}, {1, m2(0, -u, 0, 0)}, {-1, m2(0, 0, u, 0)}});
}

}  // namespace

TEST_CASE("Toeplitz block layout") {
  auto s = example1(0.4);
  auto t = build_toeplitz(s, 3);
  CHECK(t.data.rows() == 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(max_abs(t.data.block(2 * i, 2 * j, 2, 2) - s.coefficient(i - j)) == 0.0);
  CHECK_THROWS_AS(build_toeplitz(s, 0), ValidationError);
}

TEST_CASE("size cap") {
  auto s = example1(0.4);
  setenv("SZEGO_LAB_SIZE_CAP", "10", 1);
  CHECK_THROWS_AS(build_toeplitz(s, 6), ValidationError);
  CHECK_NOTHROW(build_toeplitz(s, 5));
  unsetenv("SZEGO_LAB_SIZE_CAP");
  CHECK(size_cap() == 4096);
}

TEST_CASE("circulant wrap-around and window") {
  auto s = example1(0.4);
  auto c = build_circulant(s, 4);
  // lag i-j = -3 folds to +1
  CHECK(max_abs(c.data.block(0, 6, 2, 2) - s.coefficient(1)) == 0.0);
  CHECK(max_abs(c.data.block(6, 0, 2, 2) - s.coefficient(-1)) == 0.0);
  // lag 2 = -2 mod 4: window [-2, 2) keeps -2, which is absent
  CHECK(max_abs(c.data.block(4, 0, 2, 2)) == 0.0);

  auto wide = symbol_from_coefficients(1, {{0, CMat::Ones(1, 1)}, {3, 0.1 * CMat::Ones(1, 1)}});
  CHECK_THROWS_AS(build_circulant(wide, 4), PreconditionError);
  auto cut = build_circulant(wide, 4, CirculantMode::truncate);
  CHECK(max_abs(cut.data - CMat::Identity(4, 4)) == 0.0);
}

TEST_CASE("circulant eigenvalues equal the symbol at the momenta") {
  std::mt19937_64 rng(11);
  for (int n : {3, 4, 7, 8, 12, 16}) {
    std::vector<std::pair<int, CMat>> cs;
    for (int k = -1; k <= 1; ++k) cs.emplace_back(k, CMat::Random(2, 2));
    auto s = symbol_from_coefficients(2, cs);
    auto c = build_circulant(s, n);
    Eigen::ComplexEigenSolver<CMat> es(c.data, false);
    std::vector<cplx> want;
    for (int j = 0; j < n; ++j) {
      Eigen::ComplexEigenSolver<CMat> b(s(2 * kPi * j / n), false);
      for (int i = 0; i < 2; ++i) want.push_back(b.eigenvalues()(i));
    }
    // every circulant eigenvalue has a partner in the symbol spectrum
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      double best = 1e300;
      for (auto w : want) best = std::min(best, std::abs(es.eigenvalues()(i) - w));
      CHECK(best < 1e-10);
    }
  }
}

TEST_CASE("circulant gap for example 1") {
  // eigenvalues +-i |1 - u e^{i theta_j}|
  const double u = 0.5;
  auto s = example1(u);
  for (int n : {4, 6, 9}) {
    double want = 1e300;
    for (int j = 0; j < n; ++j) want = std::min(want, std::abs(1.0 - u * std::exp(cplx(0, 2 * kPi * j / n))));
    CHECK(std::abs(circulant_gap(s, n) - want) < 1e-13);
  }
}

TEST_CASE("Pfaffian against expansion, and Pf^2 = det") {
  std::mt19937_64 rng(3);
  for (int n : {2, 4, 6, 8}) {
    for (bool cx : {false, true}) {
      CMat a = random_antisym(rng, n, cx);
      cplx want = pf_expand(a);
      cplx got = pfaffian(a).value();
      CHECK(std::abs(got - want) < 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
  CHECK(std::abs(pfaffian(m2(0, 3, -3, 0)).value() - cplx(3, 0)) < 1e-15);
  CHECK(pfaffian(CMat::Zero(3, 3)).is_zero());
  CHECK(std::abs(pfaffian(CMat::Zero(0, 0)).value() - cplx(1, 0)) == 0.0);
  CHECK_THROWS_AS(pfaffian(m2(0, 1, 1, 0)), ValidationError);
}

TEST_CASE("log_det against Eigen's full-pivot determinant") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 12; ++n) {
    CMat a = CMat::Random(n, n);
    SignedLog d = log_det(a);
    cplx want = a.fullPivLu().determinant();
    CHECK(std::abs(d.value() - want) < 1e-11 * std::max(1.0, std::abs(want)));
  }
  // antisymmetric route
  for (int n : {2, 6, 10}) {
    CMat a = random_antisym(rng, n);
    cplx want = a.fullPivLu().determinant();
    CHECK(std::abs(log_det(a).value() - want) < 1e-10 * std::abs(want));
    CHECK(log_det(a).phase == cplx(1, 0));
  }
  CHECK(log_det(random_antisym(rng, 5)).is_zero());
  CHECK(log_det(CMat::Zero(3, 3)).is_zero());
  CMat big = 1e3 * CMat::Identity(200, 200);
  CHECK(std::abs(log_det(big).log_abs - 200 * std::log(1e3)) < 1e-9);
  CMat nanm = CMat::Identity(2, 2);
  nanm(0, 1) = std::nan("");
  CHECK_THROWS_AS(log_det(nanm), ValidationError);
}

TEST_CASE("log_det keeps the sign of a permutation") {
  CMat p = CMat::Zero(3, 3);
  p(0, 1) = p(1, 0) = p(2, 2) = 1.0;
  CHECK(std::abs(log_det(p).value() - cplx(-1, 0)) < 1e-15);
}

TEST_CASE("T_n of example 1 has det 1 on both sides of |u| = 1") {
  for (double u : {0.5, 2.0, 3.0})
    for (int n : {2, 5, 11, 24}) CHECK(std::abs(log_det(build_toeplitz(example1(u), n).data).value() - 1.0) < 1e-9);
}

TEST_CASE("solve") {
  std::mt19937_64 rng(9);
  CMat a = CMat::Random(6, 6) + 6.0 * CMat::Identity(6, 6);
  CVec x = CVec::Random(6);
  CHECK((solve(a, a * x) - x).norm() < 1e-12);
  CMat sing = CMat::Ones(3, 3);
  CHECK_THROWS_AS(solve(sing, CVec::Ones(3)), HypothesisError);
  CHECK_THROWS_AS(solve(a, CVec::Ones(3)), ValidationError);
}

TEST_CASE("spectrum of antisymmetric and Hermitian matrices") {
  std::mt19937_64 rng(13);
  CMat a = random_antisym(rng, 6);
  auto sp = spectrum(a, true);
  CHECK(sp.antisymmetric);
  REQUIRE(sp.values.size() == 6);
  for (size_t i = 0; i < 6; i += 2) {
    CHECK(std::abs(sp.values[i].real()) < 1e-14);
    CHECK(std::abs(sp.values[i] + sp.values[i + 1]) < 1e-12);
    CHECK(sp.values[i].imag() > 0);
  }
  for (size_t i = 0; i + 1 < 6; ++i) CHECK(std::abs(sp.values[i]) <= std::abs(sp.values[i + 1]) + 1e-14);
  for (int c = 0; c < 6; ++c) CHECK((a * sp.vectors.col(c) - sp.values[c] * sp.vectors.col(c)).norm() < 1e-12);

  CMat h = CMat::Random(5, 5);
  h = (h + h.adjoint()).eval();
  auto sh = spectrum(h, true);
  CHECK_FALSE(sh.antisymmetric);
  for (int c = 0; c < 5; ++c) CHECK((h * sh.vectors.col(c) - sh.values[c] * sh.vectors.col(c)).norm() < 1e-12);

  CHECK_THROWS_AS(spectrum(CMat::Random(4, 4)), ValidationError);
}
