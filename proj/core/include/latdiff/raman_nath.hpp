#pragma once

// Thin phase-grating model of early-time diffraction.

#include <vector>

#include "latdiff/units.hpp"

namespace latdiff {

/// Pulse durations below this fraction of t_RN are flagged as Raman-Nath valid.
inline constexpr double kRamanNathValidityFraction = 0.2;

struct RamanNathPrediction {
  double pulse_area = 0.0;  // beta = U0 T / 2 hbar = u0 t / 2 internally
  int n_max = 0;
  std::vector<double> populations;  // J_n(beta)^2, index n + n_max

  double at(int n) const;
};

/// J_0(x) ... J_n_max(x) by Miller's backward recurrence, normalized with
/// J_0 + 2 (J_2 + J_4 + ...) = 1. Requires x >= 0.
std::vector<double> bessel_j_sequence(int n_max, double x);

/// P_n = J_n(u0 t / 2)^2 for |n| <= n_max. Rejects n_max < beta + 20.
RamanNathPrediction rn_populations(double u0, double t_pulse, int n_max);

/// Order window for this pulse area whose truncated tail stays below 1e-13
/// (never less than the beta + 20 that rn_populations requires).
int rn_min_orders(double pulse_area);

struct RamanNathValidity {
  bool valid = false;
  double margin = 0.0;  // t_pulse / t_RN
};

/// t_pulse in seconds against the lattice's t_RN.
RamanNathValidity rn_is_valid(double t_pulse, const DerivedScales& scales);

/// Same test with t_pulse in internal time for depth u0 (E_L).
RamanNathValidity rn_is_valid_internal(double t_pulse, double u0);

}  // namespace latdiff
