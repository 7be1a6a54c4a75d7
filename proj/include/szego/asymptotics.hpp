#pragma once

#include <optional>
#include <string>
#include <vector>

#include "szego/structured.hpp"

namespace szego {

struct GeometricMean {
  SignedLog G;  // exp of the mean of a continuous log det phi
  int grid = 0;
};

// errors: det phi vanishing on the circle, or nonzero winding of det phi
GeometricMean geometric_mean(const Symbol& s);

// total phase increment of a closed sampled curve over 2 pi
int winding_number(const std::vector<cplx>& samples);

enum class EClass { nonzero, zero, inconclusive };
std::string to_string(EClass c);

struct EClassification {
  EClass cls = EClass::inconclusive;
  std::optional<cplx> E;  // when nonzero
  double rate = 0;        // geometric-mean tail ratio |e_{n+1}/e_n|
  std::vector<int> ns;
  std::vector<SignedLog> ratios;  // det T_n / G^n
  SignedLog G;
};

// needs at least 6 sizes; the last 6 decide
EClassification classify_E(const Symbol& s, int n_min, int n_max);

// E = G^a det T_a(phi^{-1}) when phi_k = 0 for k > a (or, after transposition, k < -a)
SignedLog widom_finite_E(const Symbol& s, int a, double tol = 1e-12);

enum class PrefactorKernel {
  two_sided,  // det[(phi^{-1})_n + (phi^{-1})_{-n}]
  one_sided,  // det[(phi^{-1})_n]
};

SignedLog prefactor_from_inverse(const Symbol& inverse, int n, PrefactorKernel kernel);
SignedLog modified_prefactor(const Symbol& s, int n, PrefactorKernel kernel = PrefactorKernel::two_sided,
                             double tol = 1e-12);

struct AsymptoticRow {
  int n;
  SignedLog det_T;
  SignedLog ratio;      // det T_n / G^n
  SignedLog prefactor;  // absent rows are skipped
  SignedLog t;          // ratio / prefactor
};

struct ModifiedFit {
  cplx E_tilde;
  double max_deviation = 0;  // max |t_n / E_tilde - 1| over the rows
  double prefactor_slope = 0;  // least squares d log|prefactor| / dn
  std::vector<AsymptoticRow> rows;
};

// t_n = det T_n / (G^n prefactor(n)) over n_min..n_max; E must classify as zero
ModifiedFit verify_modified_asymptotics(const Symbol& s, int n_min, int n_max,
                                        PrefactorKernel kernel = PrefactorKernel::two_sided,
                                        double tol = 1e-12);

// least squares slope of y against x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace szego
