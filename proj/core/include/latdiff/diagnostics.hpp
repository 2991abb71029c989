#pragma once

// Momentum carpets over pulse duration and the observables extracted from
// them (internal units throughout).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "latdiff/classical.hpp"
#include "latdiff/momentum_axis.hpp"
#include "latdiff/propagator.hpp"

namespace latdiff {

enum class CarpetSource { kQuantum, kClassical };

const char* to_string(CarpetSource source);

/// Momentum distribution vs pulse duration. Each column plus its clipped
/// mass sums to 1.
struct Carpet {
  CarpetSource source = CarpetSource::kQuantum;
  double u0 = 0.0;
  MomentumAxis axis;
  std::vector<double> times;
  std::vector<std::vector<double>> columns;  // [column][bin]
  std::vector<double> clipped;               // per column, population beyond the axis

  double harmonic_period() const;
};

struct QuantumEngineSettings {
  std::size_t grid_points = SpatialGrid::kDefaultPoints;
  double dt = 0.0;  // 0 selects t_RN / 2000
  double g1d_internal = 0.0;
};

struct ClassicalEngineSettings {
  std::size_t n_particles = 4000;
  double dt = 0.0;  // 0 selects T_ho / 1000
  PotentialShape shape = PotentialShape::kSinusoidal;
};

struct CarpetRequest {
  CarpetSource engine = CarpetSource::kQuantum;
  double u0 = 0.0;
  std::vector<double> pulse_times;  // sorted, >= 0
  MomentumAxis axis;
  QuantumEngineSettings quantum;
  ClassicalEngineSettings classical;
};

/// One split-step run sampled at every pulse duration.
std::vector<WaveState> quantum_snapshots(double u0, std::span<const double> pulse_times,
                                         const QuantumEngineSettings& settings);

/// One ensemble run sampled at every pulse duration.
TrajectorySet classical_ensemble(double u0, std::span<const double> pulse_times,
                                 const ClassicalEngineSettings& settings);

/// Largest population a quantum column may lose beyond the momentum axis.
inline constexpr double kMaxClippedMass = 1e-4;

/// Population of the orders lying beyond the axis.
double clipped_mass(const DiffractionSpectrum& spectrum, const MomentumAxis& axis);

/// Places order n at momentum 2n; rejects spectra losing more than
/// kMaxClippedMass beyond the axis.
std::vector<double> rasterize(const DiffractionSpectrum& spectrum, const MomentumAxis& axis);

Carpet build_carpet(const CarpetRequest& request);

/// Convolves one column with a normalized Gaussian of width sigma_p (hbar
/// kappa_L). Each bin's weight is spread over the bins inside the axis so
/// the column sum is unchanged.
std::vector<double> gaussian_blur_column(std::span<const double> column, const MomentumAxis& axis,
                                         double sigma_p);

Carpet gaussian_blur(const Carpet& carpet, double sigma_p);

/// Default fraction of the column maximum that marks the distribution edge.
inline constexpr double kDefaultKmaxThreshold = 0.02;

struct DepthEstimate {
  double k_max = 0.0;                  // hbar kappa_L
  double depth_lattice_units = 0.0;    // k_max^2, E_L
  std::optional<double> depth_photon_units;  // E_R
};

/// Largest |p| whose density exceeds threshold * column max, over all columns.
DepthEstimate detect_kmax(const Carpet& carpet, double threshold,
                          std::optional<double> photon_to_lattice_ratio = std::nullopt);

struct WidthSample {
  double time = 0.0;
  double rms_width = 0.0;
};

struct CollapseReport {
  double harmonic_period = 0.0;
  std::vector<double> collapse_times;
  std::vector<double> revival_times;
  std::vector<WidthSample> width_series;

  /// (first collapse - T_ho/2) / T_ho, if any collapse was found.
  std::optional<double> first_collapse_offset() const;
};

/// RMS momentum width of a normalized column.
double rms_width(std::span<const double> column, const MomentumAxis& axis);

/// Collapses are strict local minima of the rms width lying below its running
/// median (one T_ho window); each is refined by a parabola through the
/// neighbouring columns. Revivals are the next local maxima.
CollapseReport detect_collapses(const Carpet& carpet);

/// L1 distance between two columns on the same binning, in [0, 2].
double compare_distributions(std::span<const double> a, std::span<const double> b);

}  // namespace latdiff
