#include "latdiff/propagator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include <unsupported/Eigen/FFT>

#include "latdiff/error.hpp"
#include "latdiff/units.hpp"

namespace latdiff {

namespace {

constexpr double kNormTolerance = 1e-8;
constexpr double kDefaultStepsPerRamanNath = 2000.0;
constexpr double kMaxStepFractionOfRamanNath = 1.0 / 20.0;

// Signed Fourier index for DFT bin k. Mode k carries wavenumber 2 * signed_index.
long signed_index(std::size_t k, std::size_t n) {
  return k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

class SplitStepper {
 public:
  SplitStepper(const SpatialGrid& grid, double u0, double g)
      : n_(grid.size()), g_(g), potential_(n_), wavenumber_sq_(n_), momentum_(n_) {
    for (std::size_t j = 0; j < n_; ++j) {
      const double s = std::sin(grid.position(j));
      potential_[j] = u0 * s * s;
      const double k = 2.0 * static_cast<double>(signed_index(j, n_));
      wavenumber_sq_[j] = k * k;
    }
  }

  // Advances psi by n_steps steps of size h.
  void advance(std::vector<Complex>& psi, double h, std::size_t n_steps) {
    std::vector<Complex> half_kick(n_), full_kick(n_), potential_phase;
    for (std::size_t j = 0; j < n_; ++j) {
      half_kick[j] = std::polar(1.0, -wavenumber_sq_[j] * 0.5 * h);
      full_kick[j] = std::polar(1.0, -wavenumber_sq_[j] * h);
    }
    if (g_ == 0.0) {
      potential_phase.resize(n_);
      for (std::size_t j = 0; j < n_; ++j) potential_phase[j] = std::polar(1.0, -potential_[j] * h);
    }

    kinetic(psi, half_kick);
    for (std::size_t step = 0; step < n_steps; ++step) {
      if (g_ == 0.0) {
        for (std::size_t j = 0; j < n_; ++j) psi[j] *= potential_phase[j];
      } else {
        for (std::size_t j = 0; j < n_; ++j) {
          psi[j] *= std::polar(1.0, -(potential_[j] + g_ * std::norm(psi[j])) * h);
        }
      }
      kinetic(psi, step + 1 < n_steps ? full_kick : half_kick);
    }
  }

 private:
  void kinetic(std::vector<Complex>& psi, const std::vector<Complex>& kick) {
    fft_.fwd(momentum_, psi);
    for (std::size_t j = 0; j < n_; ++j) momentum_[j] *= kick[j];
    fft_.inv(psi, momentum_);
  }

  std::size_t n_;
  double g_;
  std::vector<double> potential_;
  std::vector<double> wavenumber_sq_;
  std::vector<Complex> momentum_;
  Eigen::FFT<double> fft_;
};

std::vector<Complex> fourier_coefficients(const WaveState& state) {
  const std::size_t n = state.grid.size();
  std::vector<Complex> coeffs(n);
  Eigen::FFT<double> fft;
  fft.fwd(coeffs, state.amplitudes);
  for (auto& c : coeffs) c /= static_cast<double>(n);
  return coeffs;
}

}  // namespace

SpatialGrid::SpatialGrid(std::size_t n_points) : n_points_(n_points) {
  if (n_points < 64 || !std::has_single_bit(n_points)) {
    throw Error("grid size must be a power of two >= 64 (got " + std::to_string(n_points) + ")");
  }
}

double SpatialGrid::spacing() const noexcept { return kPi / static_cast<double>(n_points_); }

double SpatialGrid::position(std::size_t j) const noexcept {
  return -0.5 * kPi + static_cast<double>(j) * spacing();
}

std::vector<double> SpatialGrid::positions() const {
  std::vector<double> x(n_points_);
  for (std::size_t j = 0; j < n_points_; ++j) x[j] = position(j);
  return x;
}

double WaveState::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return sum / static_cast<double>(amplitudes.size());
}

void PulseSchedule::validate() const {
  if (!(depth_u0 >= 0.0) || !std::isfinite(depth_u0)) throw Error("pulse depth must be >= 0");
  if (!(dt > 0.0)) throw Error("pulse time step must be > 0");
  if (!(t_pulse >= dt)) throw Error("pulse duration must be >= the time step");
  const double t_rn = raman_nath_time_internal(depth_u0);
  if (dt > kMaxStepFractionOfRamanNath * t_rn) {
    throw Error("time step " + std::to_string(dt) + " exceeds t_RN/20 = " +
                std::to_string(kMaxStepFractionOfRamanNath * t_rn));
  }
  if (!std::is_sorted(sample_times.begin(), sample_times.end())) {
    throw Error("sample times must be sorted");
  }
  for (double t : sample_times) {
    if (t < 0.0 || t > t_pulse) throw Error("sample time outside [0, t_pulse]");
  }
}

double DiffractionSpectrum::at(int n) const {
  if (n < -n_max || n > n_max) return 0.0;
  return populations[static_cast<std::size_t>(n + n_max)];
}

double DiffractionSpectrum::total() const {
  return std::accumulate(populations.begin(), populations.end(), 0.0);
}

WaveState init_uniform_state(const SpatialGrid& grid) {
  return WaveState{grid, std::vector<Complex>(grid.size(), Complex{1.0, 0.0}), 0.0};
}

std::vector<WaveState> evolve_pulse(WaveState state, const PulseSchedule& schedule) {
  schedule.validate();
  if (std::abs(state.norm() - 1.0) > kNormTolerance) {
    throw Error("initial state is not normalized (norm " + std::to_string(state.norm()) + ")");
  }

  SplitStepper stepper(state.grid, schedule.depth_u0, schedule.g1d_internal);
  std::vector<WaveState> snapshots;
  snapshots.reserve(schedule.sample_times.size());
  const double t0 = state.time;
  double elapsed = 0.0;
  for (double target : schedule.sample_times) {
    const double span = target - elapsed;
    if (span > 0.0) {
      const auto n_steps = static_cast<std::size_t>(std::ceil(span / schedule.dt - 1e-9));
      stepper.advance(state.amplitudes, span / static_cast<double>(n_steps), n_steps);
      elapsed = target;
    }
    state.time = t0 + elapsed;
    snapshots.push_back(state);
  }
  return snapshots;
}

DiffractionSpectrum momentum_spectrum(const WaveState& state) {
  const std::size_t n = state.grid.size();
  const auto coeffs = fourier_coefficients(state);
  DiffractionSpectrum spectrum;
  spectrum.time = state.time;
  spectrum.n_max = state.grid.max_order();
  spectrum.populations.resize(static_cast<std::size_t>(2 * spectrum.n_max + 1));
  for (int order = -spectrum.n_max; order <= spectrum.n_max; ++order) {
    const auto k = static_cast<std::size_t>((order + static_cast<long>(n)) % static_cast<long>(n));
    spectrum.populations[static_cast<std::size_t>(order + spectrum.n_max)] = std::norm(coeffs[k]);
  }
  return spectrum;
}

std::vector<double> density_profile(const WaveState& state) {
  std::vector<double> rho(state.amplitudes.size());
  std::transform(state.amplitudes.begin(), state.amplitudes.end(), rho.begin(),
                 [](const Complex& a) { return std::norm(a); });
  return rho;
}

double mean_energy(const WaveState& state, double u0, double g1d_internal) {
  const std::size_t n = state.grid.size();
  const auto coeffs = fourier_coefficients(state);
  double kinetic = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double wavenumber = 2.0 * static_cast<double>(signed_index(k, n));
    kinetic += wavenumber * wavenumber * std::norm(coeffs[k]);
  }
  double potential = 0.0;
  double interaction = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double s = std::sin(state.grid.position(j));
    const double rho = std::norm(state.amplitudes[j]);
    potential += u0 * s * s * rho;
    interaction += 0.5 * g1d_internal * rho * rho;
  }
  return kinetic + (potential + interaction) / static_cast<double>(n);
}

double default_time_step(double u0) {
  return raman_nath_time_internal(u0) / kDefaultStepsPerRamanNath;
}

}  // namespace latdiff
