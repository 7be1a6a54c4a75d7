#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "szego/common.hpp"

namespace szego {

// phi(theta) = sum_k phi_k e^{-ik theta}; with z = e^{i theta} this is sum_k phi_k z^{-k}.
// Coefficients of norm below the resolution of the sampler are dropped; tail_bound
// certifies the max-entry size of everything that was not kept.
class Symbol {
 public:
  Symbol() = default;
  Symbol(int block_size, std::map<int, CMat> coeffs, double tail_bound, bool exact_band);

  int block_size() const { return N_; }
  const std::map<int, CMat>& coefficients() const { return c_; }
  CMat coefficient(int k) const;
  bool has(int k) const { return c_.count(k) != 0; }
  int k_min() const;
  int k_max() const;
  double tail_bound() const { return tail_; }
  bool exact_band() const { return exact_; }
  double scale() const;  // max entry over all coefficients

  CMat operator()(double theta) const;
  CMat at(cplx z) const;

  // phi(-theta)
  Symbol reflected() const;

 private:
  int N_ = 0;
  std::map<int, CMat> c_;
  double tail_ = 0.0;
  bool exact_ = true;
};

using ThetaEval = std::function<CMat(double)>;
using ZEval = std::function<CMat(cplx)>;

Symbol symbol_from_coefficients(int block_size, const std::vector<std::pair<int, CMat>>& coeffs);

// FFT of samples on the unit circle; M starts at 256 and doubles until the outer quarter
// of the coefficient range is below tol (max entry).
Symbol sample_to_series(const ThetaEval& f, int block_size, double tol = 1e-12);

// Same, for an evaluator analytic in an annulus around |z| = 1. The tails are resampled on
// circles inside the annulus so small coefficients come out with relative accuracy.
Symbol sample_laurent_to_series(const ZEval& f, int block_size, double tol = 1e-12);

Symbol inverse_symbol(const Symbol& s, double tol = 1e-12);

std::vector<cplx> det_on_grid(const Symbol& s, int M);

// smallest singular value of phi over an M-point grid
double min_singular_on_grid(const Symbol& s, int M);

}  // namespace szego
