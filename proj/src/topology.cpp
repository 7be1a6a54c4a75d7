#include "szego/topology.hpp"

#include <fmt/format.h>

#include <cmath>

#include "szego/asymptotics.hpp"
#include "szego/structured.hpp"

namespace szego {

std::string to_string(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::D: return "D";
    case SymmetryClass::BDI: return "BDI";
    case SymmetryClass::AIII: return "AIII";
    default: return "unclassified";
  }
}

namespace {

constexpr double kRel = 1e-10;

std::vector<double> probe_angles(const Symbol& s) {
  int M = 64;
  while (M < 4 * (s.k_max() - s.k_min() + 1)) M *= 2;
  std::vector<double> th(M);
  for (int j = 0; j < M; ++j) th[j] = 2 * kPi * (j + 0.27) / M;  // off the symmetric points too
  th.push_back(0.0);
  th.push_back(kPi);
  return th;
}

bool split_vanishes(const std::vector<CMat>& vals, const std::vector<int>& S, const std::vector<int>& T,
                    double tol) {
  for (const auto& v : vals) {
    for (int a : S)
      for (int b : S)
        if (std::abs(v(a, b)) > tol) return false;
    for (int a : T)
      for (int b : T)
        if (std::abs(v(a, b)) > tol) return false;
  }
  return true;
}

bool find_split(const std::vector<CMat>& vals, int N, double tol, std::vector<int>& S, std::vector<int>& T) {
  if (N % 2 != 0 || N > 16) return false;
  const int h = N / 2;
  // subsets of size N/2 containing index 0
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    if (!(mask & 1u) || __builtin_popcount(mask) != h) continue;
    std::vector<int> s, t;
    for (int i = 0; i < N; ++i) (mask >> i & 1u ? s : t).push_back(i);
    if (split_vanishes(vals, s, t, tol)) {
      S = s;
      T = t;
      return true;
    }
  }
  return false;
}

}  // namespace

ClassInfo detect_class(const Symbol& s) {
  const int N = s.block_size();
  auto th = probe_angles(s);
  std::vector<CMat> vals, mirror;
  double sc = 0;
  for (double t : th) {
    vals.push_back(s(t));
    mirror.push_back(s(-t));
    sc = std::max(sc, max_abs(vals.back()));
  }
  ClassInfo info;
  if (sc == 0) return info;
  const double tol = kRel * sc;
  bool real = true, anti = true, herm = true;
  for (size_t j = 0; j < vals.size(); ++j) {
    real = real && max_abs(vals[j] - mirror[j].conjugate()) <= tol;
    anti = anti && max_abs(vals[j] + vals[j].adjoint()) <= tol;
    herm = herm && max_abs(vals[j] - vals[j].adjoint()) <= tol;
  }
  std::vector<int> S, T;
  bool chiral = find_split(vals, N, tol, S, T);
  if (real && anti) {
    info.cls = chiral ? SymmetryClass::BDI : SymmetryClass::D;
  } else if (herm && chiral) {
    info.cls = SymmetryClass::AIII;
  }
  if (chiral && info.cls != SymmetryClass::D && info.cls != SymmetryClass::unclassified) {
    info.S = S;
    info.T = T;
  }
  return info;
}

Symbol chiral_block(const Symbol& s, const ClassInfo& info) {
  if (info.S.empty()) throw PreconditionError("symbol has no chiral split");
  const int h = static_cast<int>(info.S.size());
  std::map<int, CMat> c;
  for (const auto& [k, m] : s.coefficients()) {
    CMat b(h, h);
    for (int a = 0; a < h; ++a)
      for (int bb = 0; bb < h; ++bb) b(a, bb) = m(info.S[a], info.T[bb]);
    c.emplace(k, b);
  }
  return Symbol(h, std::move(c), s.tail_bound(), s.exact_band());
}

int kitaev_index(const Symbol& s) {
  auto info = detect_class(s);
  if (info.cls != SymmetryClass::D && info.cls != SymmetryClass::BDI)
    throw PreconditionError("Kitaev index needs class D or BDI, got " + to_string(info.cls));
  double sc = std::max(s.scale(), 1e-300);
  int sign = 1;
  for (double t : {0.0, kPi}) {
    CMat m = s(t);
    double im = m.imag().cwiseAbs().maxCoeff();
    if (im > kRel * sc) throw PreconditionError("phi(+-1) is not real");
    CMat re = m.real().cast<cplx>();
    re = 0.5 * (re - re.transpose()).eval();
    SignedLog pf = pfaffian(re);
    int half = s.block_size() / 2;
    if (pf.is_zero() || pf.log_abs < std::log(1e-12) + half * std::log(sc))
      throw HypothesisError(fmt::format("Pf phi({}) vanishes: gap closes at theta={}", t == 0 ? "1" : "-1", t));
    sign *= pf.phase.real() > 0 ? 1 : -1;
  }
  return sign;
}

int winding_index(const Symbol& s) {
  auto info = detect_class(s);
  if (info.cls != SymmetryClass::BDI && info.cls != SymmetryClass::AIII)
    throw PreconditionError("winding index needs class BDI or AIII, got " + to_string(info.cls));
  Symbol B = chiral_block(s, info);
  int M = 512;
  while (M < 16 * (B.k_max() - B.k_min() + 1)) M *= 2;
  for (; M <= (1 << 16); M *= 2) {
    auto d = det_on_grid(B, M);
    double hi = 0, lo = std::numeric_limits<double>::infinity();
    for (auto z : d) hi = std::max(hi, std::abs(z)), lo = std::min(lo, std::abs(z));
    if (!(lo > 1e-12 * hi)) throw HypothesisError("det B vanishes on the circle (gapless)");
    try {
      return winding_number(d);
    } catch (const ValidationError&) {
      continue;  // refine
    }
  }
  throw ConvergenceError("winding of det B not resolved");
}

IndexReport predict_zero_modes(const Symbol& s) {
  IndexReport r;
  r.cls = detect_class(s).cls;
  switch (r.cls) {
    case SymmetryClass::D:
      r.kitaev = kitaev_index(s);
      r.predicted_pairs = *r.kitaev == -1 ? 1 : 0;
      break;
    case SymmetryClass::BDI:
      r.kitaev = kitaev_index(s);
      r.winding = winding_index(s);
      r.predicted_pairs = std::abs(*r.winding);
      break;
    case SymmetryClass::AIII:
      r.winding = winding_index(s);
      r.predicted_pairs = std::abs(*r.winding);
      break;
    default: break;
  }
  return r;
}

}  // namespace szego
