#pragma once

// Classical particles released at rest in one lattice well, H = p^2 + V(x)
// in internal units (dx/dt = 2p, dp/dt = -V'(x)).

#include <cstddef>
#include <vector>

#include "latdiff/momentum_axis.hpp"

namespace latdiff {

enum class PotentialShape {
  kSinusoidal,  // u0 sin^2 x
  kHarmonic,    // u0 x^2, same small-amplitude frequency
};

double potential_energy(double x, double u0, PotentialShape shape = PotentialShape::kSinusoidal);
double potential_force(double x, double u0, PotentialShape shape = PotentialShape::kSinusoidal);

/// Modified energy conserved by position Verlet to O(dt^4):
/// H + dt^2 (V'^2 - p^2 V'') / 6.
double shadow_energy(double x, double p, double u0, double dt,
                     PotentialShape shape = PotentialShape::kSinusoidal);

/// Classical momentum bound sqrt(u0) (hbar kappa_L units).
double max_momentum(double u0);

struct Trajectory {
  double initial_position = 0.0;
  std::vector<double> times;
  std::vector<double> positions;
  std::vector<double> momenta;
  std::vector<double> turning_times;  // p = 0 crossings after t = 0
};

/// Position-Verlet integration from rest. Requires |z0| < pi/2 and
/// dt <= T_ho / 1000; the last step is shortened to land on t_max.
Trajectory integrate_trajectory(double z0, double u0, double dt, double t_max,
                                PotentialShape shape = PotentialShape::kSinusoidal);

/// Integrates an arbitrary phase-space point forward (dt > 0) or backward (dt < 0).
void verlet_advance(double& x, double& p, double u0, double dt, std::size_t n_steps,
                    PotentialShape shape = PotentialShape::kSinusoidal);

/// Complete elliptic integral of the first kind K(k), modulus k in [0, 1).
double complete_elliptic_k(double k);

/// Exact pendulum period (4 / omega_ho) K(sin z0) for release at rest from z0.
double oscillation_period(double z0, double u0);

struct EnsembleSpec {
  std::size_t n_particles = 4000;
  double dt = 0.0;
  std::vector<double> sample_times;  // sorted, first >= 0
  PotentialShape shape = PotentialShape::kSinusoidal;

  void validate(double u0) const;
};

/// z0 at the midpoints of n equal cells of (-pi/2, pi/2), mirrored exactly.
std::vector<double> midpoint_positions(std::size_t n);

struct TrajectorySet {
  double u0 = 0.0;
  PotentialShape shape = PotentialShape::kSinusoidal;
  std::vector<double> initial_positions;   // ascending
  std::vector<double> times;               // shared sample times
  std::vector<std::vector<double>> positions;  // [sample][particle]
  std::vector<std::vector<double>> momenta;    // [sample][particle]
  std::vector<double> first_turning_times;     // per particle, +inf if none observed

  /// Sample index for time t; rejects times not on the time base.
  std::size_t sample_index(double t) const;
};

TrajectorySet evolve_ensemble(const EnsembleSpec& spec, double u0);

/// Mass-conserving histogram, each particle contributes 1/n to its bin.
std::vector<double> momentum_histogram(const TrajectorySet& set, double t, const MomentumAxis& axis);

struct MomentumDensity {
  std::vector<double> centers;
  std::vector<double> density;  // per unit momentum, integrates to 1
};

/// n_bins equal bins spanning [-1.05 p_max, 1.05 p_max].
MomentumDensity momentum_histogram(const TrajectorySet& set, double t, std::size_t n_bins);

struct PhasePoint {
  double initial_position = 0.0;
  double position = 0.0;
  double momentum = 0.0;
};

/// The z0-parameterized curve (z(z0), p(z0)) at one sample time.
std::vector<PhasePoint> phase_portrait(const TrajectorySet& set, double t);

/// Shoelace area of the closed polygon through the points' (position, momentum).
double enclosed_area(const std::vector<PhasePoint>& polygon);

struct Caustic {
  double time = 0.0;
  double momentum = 0.0;
  double initial_position = 0.0;
};

/// Stationary points of p(z0): sign changes of the finite-difference slope,
/// each refined by a three-point quadratic fit.
std::vector<Caustic> find_caustics(const TrajectorySet& set, double t);

}  // namespace latdiff
