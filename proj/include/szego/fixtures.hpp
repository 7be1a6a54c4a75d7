#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "szego/topology.hpp"

namespace szego {

using Params = std::map<std::string, cplx>;

// "u=2,v=0.5" or "zeta=1+1i"
Params parse_params(const std::string& text);

enum class Analyticity {
  inside,    // only nonnegative powers of z (symbol indices <= 0)
  outside,   // only nonpositive powers of z (symbol indices >= 0)
  constant,
  monomial,  // diagonal, one power of z per entry
};

struct Factor {
  std::string name;
  ZEval f;
  Analyticity kind;
};

struct ExpectedIndices {
  SymmetryClass cls;
  std::optional<int> kitaev;
  std::optional<int> winding;
  int pairs = 0;
};

struct Fixture {
  std::string name;
  Params params;
  Symbol symbol;
  ZEval evaluator;  // exact, valid on an annulus around the circle
  std::function<SignedLog(int)> oracle_det;
  SignedLog oracle_G;
  ExpectedIndices indices;
  std::vector<Factor> factorization;  // empty if none is attached
  // example1 only: phi = [[0, lambda], [psi, 0]]
  std::optional<Symbol> split_lambda, split_psi;
};

std::vector<std::string> fixture_names();

// Gapless parameter choices raise HypothesisError, other bad parameters ValidationError.
Fixture make_fixture(const std::string& name, const Params& params, double tol = 1e-13);

struct FactorCheck {
  std::string name;
  double forbidden = 0;          // largest coefficient on the wrong side, factor
  double forbidden_inverse = 0;  // same for the pointwise inverse
};

struct FactorizationCheck {
  double residual = 0;  // max |prod factors - phi| on the grid
  std::vector<FactorCheck> factors;
  double support_violation = 0;
  bool ok(double tol = 1e-8) const { return residual < tol && support_violation < tol; }
};

FactorizationCheck verify_factorization(const Fixture& f, int M = 512);

}  // namespace szego
