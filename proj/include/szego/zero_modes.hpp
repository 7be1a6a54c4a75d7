#pragma once

#include <optional>
#include <vector>

#include "szego/structured.hpp"

namespace szego {

struct ZeroModeScan {
  std::vector<int> ns;
  std::vector<std::vector<double>> eps;  // per n: smallest few |eigenvalues|, one per +- pair
  std::vector<double> gap;               // circulant gap per n
  std::vector<int> counts;               // pairs below gap/2 per n
  int pair_count = 0;                    // min over n
  std::vector<double> fitted_rates;      // d log eps_p / dn for p < pair_count (NaN if unfit)
};

// errors: gapless symbol; a candidate eps below 1e-13 at the largest n (underflow)
ZeroModeScan zero_mode_scan(const Symbol& s, int n_min, int n_max);

struct PowerIteration {
  bool mode_found = false;
  CVec vector;         // normalised
  cplx lambda;         // Rayleigh quotient (0 for real antisymmetric T)
  double magnitude;    // ||T v||
  double residual;     // ||T v - lambda v||
  double threshold;    // gap / 2
  int seed = -1;       // basis index of the accepted seed
  int attempts = 0;
};

// T_n^{-1} iterated from basis vectors; seeds are tried until the residual is under gap/2.
// seed_site < 0 orders seeds by response ||T^{-1} e_i||, otherwise by distance from the site.
PowerIteration power_iteration_mode(const Symbol& s, int n, int seed_site = -1, int iterations = 30);

struct DecayFit {
  double rate = 0;  // d log ||(phi^{-1})_k|| / dk, both sides pooled by max
  std::vector<std::vector<double>> entry_rates;  // NaN where an entry has too few points
  int points = 0;
};

DecayFit inverse_coefficient_decay(const Symbol& s, int k_max = 24, double tol = 1e-12);

struct RootReport {
  std::vector<cplx> roots;  // of z^{shift} det phi(z)
  std::vector<double> log_distance;
  double min_log_distance = 0;
};

RootReport root_analysis(const Symbol& s);

struct ZeroModeReport {
  ZeroModeScan scan;
  std::optional<PowerIteration> wave;
  std::vector<double> profile;  // per-site norm of the wavefunction
  std::optional<double> coeff_decay_rate;
  std::optional<double> root_gap;
};

ZeroModeReport zero_mode_report(const Symbol& s, int n_min, int n_max);

}  // namespace szego
