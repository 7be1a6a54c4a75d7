#pragma once

#include <vector>

#include "szego/symbol.hpp"

namespace szego {

// p(z) = z^{winding} phi_plus(z) phi_minus(z) for a scalar Laurent polynomial.
// phi_plus = K prod (1 - z/s) is analytic inside the disk (indices <= 0 in our convention),
// phi_minus = prod (1 - r/z) is analytic outside with phi_minus(inf) = 1 (indices >= 0).
struct ScalarFactorization {
  int winding = 0;
  cplx constant;
  std::vector<cplx> roots_inside;
  std::vector<cplx> roots_outside;
  Symbol phi_plus;
  Symbol phi_minus;
  Symbol alpha;  // phi_minus / phi_plus, truncated once terms drop below 1e-18
};

ScalarFactorization wiener_hopf_scalar(const Symbol& p);

// det T_n(e^{-im theta} p) ~ (-1)^{nm} det T_{n+m}(p) det T_m(e^{-in theta} alpha).
// p must have winding 0. Negative m is the mirrored statement for e^{+i|m| theta}.
SignedLog scalar_winding_theorem(const Symbol& p, int m, int n);

// z^{-m} p, i.e. coefficients shifted by +m
Symbol shift_symbol(const Symbol& p, int m);

}  // namespace szego
