#pragma once

// Zero-quasimomentum Bloch states of u0 sin^2(x) in the plane-wave basis
// exp(2imx), |m| <= m_max (internal units).

#include <complex>
#include <cstddef>
#include <vector>

#include "latdiff/propagator.hpp"

namespace latdiff {

struct PlaneWaveBasis {
  int m_max = 0;

  /// Smallest basis accepted for depth u0: ceil(sqrt(u0)) + 10.
  static int minimum_for(double u0);
  /// Default basis: minimum plus a safety margin.
  static PlaneWaveBasis for_depth(double u0);

  std::size_t size() const { return static_cast<std::size_t>(2 * m_max + 1); }
};

enum class Parity { kEven, kOdd };

const char* to_string(Parity parity);

struct BlochState {
  int band_index = 0;
  double energy = 0.0;  // E_L
  Parity parity = Parity::kEven;
  std::vector<Complex> coefficients;  // index m + m_max

  Complex coefficient(int m) const;
};

struct BandSpectrum {
  double u0 = 0.0;
  PlaneWaveBasis basis;
  std::vector<BlochState> states;        // sorted by energy, band_index = position
  std::vector<double> zone_edge_energies;  // same bands at quasimomentum kappa_L
};

/// Diagonalizes diag (2m)^2 + u0/2, off-diagonal -u0/4, split into the even
/// (cosine) and odd (sine) blocks.
BandSpectrum band_spectrum_q0(double u0, const PlaneWaveBasis& basis);

/// True if band n dips below the potential maximum anywhere in the zone.
bool is_bound_band(const BandSpectrum& spectrum, std::size_t band);

/// Number of bands with a state below u0.
std::size_t count_bound_states(const BandSpectrum& spectrum);

struct ProjectionEntry {
  int band_index = 0;
  double energy = 0.0;
  Parity parity = Parity::kEven;
  Complex amplitude;  // <n|uniform>
  double occupation = 0.0;
  bool bound = false;
};

struct ProjectionTable {
  double u0 = 0.0;
  std::vector<ProjectionEntry> entries;  // parallel to BandSpectrum::states
  double bound_fraction = 0.0;           // population of bound bands
  double captured_fraction = 0.0;        // bound states plus the first unbound even state
  double total = 0.0;
};

ProjectionTable project_uniform(const BandSpectrum& spectrum);

/// Exact propagation of the uniform state by phase-evolving its eigen-expansion.
DiffractionSpectrum evolve_spectral(const ProjectionTable& table, const BandSpectrum& spectrum, double t);

/// One even-parity state with its spacing to the next even state.
struct GapPoint {
  int band_index = 0;
  double energy = 0.0;
  double gap = 0.0;             // to the next even-parity state
  double normalized_gap = 0.0;  // gap / gap of the lowest even pair (or raw gap, see GapSeries)
  double occupation = 0.0;
  bool bound = false;
};

/// Even states from the ground state up to the first unbound one.
struct GapSeries {
  std::vector<GapPoint> points;
  bool normalized = true;  // false when fewer than two even states are bound
};

GapSeries even_gap_series(const ProjectionTable& table);

}  // namespace latdiff
