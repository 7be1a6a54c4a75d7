#pragma once

#include <vector>

#include "szego/symbol.hpp"

namespace szego {

enum class MatrixKind { toeplitz, circulant };

struct StructuredMatrix {
  MatrixKind kind;
  int n;  // number of blocks
  int N;  // block size
  CMat data;
};

StructuredMatrix build_toeplitz(const Symbol& s, int n);

enum class CirculantMode {
  strict,    // error if a coefficient above the tail bound falls outside the window
  truncate,  // keep only the window [-n/2, n/2)
};

StructuredMatrix build_circulant(const Symbol& s, int n, CirculantMode mode = CirculantMode::strict);

// sum over the circulant window of phi_p e^{-ip theta_j}, theta_j = 2 pi j / n
std::vector<CMat> circulant_blocks(const Symbol& s, int n);

// min |eigenvalue| of the circulant, from the block reduction
double circulant_gap(const Symbol& s, int n);

// Real antisymmetric input goes through the Pfaffian (det = Pf^2); otherwise partial-pivot LU.
SignedLog log_det(const CMat& a);

// Parlett-Reid with pivoting. Pf([[0,a],[-a,0]]) = a.
SignedLog pfaffian(const CMat& a);

CVec solve(const CMat& a, const CVec& b);

struct Spectrum {
  std::vector<cplx> values;  // sorted by |.|
  CMat vectors;              // columns match values, empty unless requested
  bool antisymmetric = false;
};

// real antisymmetric (values +-i eps) or Hermitian input
Spectrum spectrum(const CMat& a, bool with_vectors = false);

bool is_real_antisymmetric(const CMat& a, double rel_tol);
bool is_hermitian(const CMat& a, double rel_tol);

}  // namespace szego
