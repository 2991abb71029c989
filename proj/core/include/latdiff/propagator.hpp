#pragma once

// Split-step spectral propagation of the zero-quasimomentum condensate over a
// single lattice period (internal units, see units.hpp).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace latdiff {

using Complex = std::complex<double>;

/// Uniform periodic grid over one lattice period, x_j = -pi/2 + j*pi/N.
class SpatialGrid {
 public:
  static constexpr std::size_t kDefaultPoints = 512;

  explicit SpatialGrid(std::size_t n_points = kDefaultPoints);

  std::size_t size() const noexcept { return n_points_; }
  double spacing() const noexcept;
  double position(std::size_t j) const noexcept;
  std::vector<double> positions() const;
  /// Largest diffraction order reported by momentum_spectrum (N/4).
  int max_order() const noexcept { return static_cast<int>(n_points_ / 4); }

  bool operator==(const SpatialGrid&) const = default;

 private:
  std::size_t n_points_;
};

struct WaveState {
  SpatialGrid grid;
  std::vector<Complex> amplitudes;
  double time = 0.0;

  /// Mean of |psi|^2 over the period.
  double norm() const;
};

/// A sudden square pulse of constant depth.
struct PulseSchedule {
  double depth_u0 = 0.0;      // E_L
  double t_pulse = 0.0;       // hbar/E_L
  double dt = 0.0;            // upper bound on the step; steps shrink to land on samples
  double g1d_internal = 0.0;  // mean-field coupling, 0 for single-particle evolution
  std::vector<double> sample_times;

  void validate() const;
};

/// Populations P_n of diffraction orders n in [-n_max, n_max].
struct DiffractionSpectrum {
  double time = 0.0;
  int n_max = 0;
  std::vector<double> populations;  // index n + n_max

  double at(int n) const;
  double total() const;
};

WaveState init_uniform_state(const SpatialGrid& grid);

/// Strang splitting: kinetic half step, potential plus mean-field step,
/// kinetic half step. Returns one snapshot per sample time.
std::vector<WaveState> evolve_pulse(WaveState state, const PulseSchedule& schedule);

DiffractionSpectrum momentum_spectrum(const WaveState& state);

std::vector<double> density_profile(const WaveState& state);

/// <H> per unit mean density: kinetic + lattice + g/2 |psi|^4.
double mean_energy(const WaveState& state, double u0, double g1d_internal = 0.0);

/// Default step t_RN / 2000.
double default_time_step(double u0);

}  // namespace latdiff
