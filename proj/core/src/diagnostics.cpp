#include "latdiff/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "latdiff/error.hpp"
#include "latdiff/units.hpp"

namespace latdiff {

namespace {

constexpr double kMinColumnsPerPeriod = 50.0;
constexpr double kKernelHalfWidthSigmas = 8.0;

void check_pulse_times(std::span<const double> times) {
  if (times.empty()) throw Error("carpet needs at least one pulse duration");
  if (times.front() < 0.0) throw Error("pulse durations must be >= 0");
  if (!std::is_sorted(times.begin(), times.end())) throw Error("pulse durations must be sorted");
}

// Vertex abscissa of the parabola through three points, clamped to the bracket.
double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);
  if (curvature == 0.0) return x1;
  const double slope = d01 + curvature * (x1 - x0);
  return std::clamp(x1 - slope / (2.0 * curvature), x0, x2);
}

double median(std::vector<double> values) {
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<long>(mid), values.end());
  double m = values[mid];
  if (values.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(values.begin(), values.begin() + static_cast<long>(mid)));
  }
  return m;
}

}  // namespace

const char* to_string(CarpetSource source) {
  return source == CarpetSource::kQuantum ? "quantum" : "classical";
}

double Carpet::harmonic_period() const { return harmonic_period_internal(u0); }

std::vector<WaveState> quantum_snapshots(double u0, std::span<const double> pulse_times,
                                         const QuantumEngineSettings& settings) {
  check_pulse_times(pulse_times);
  const SpatialGrid grid(settings.grid_points);
  auto state = init_uniform_state(grid);
  const double t_max = pulse_times.back();
  if (t_max == 0.0) return std::vector<WaveState>(pulse_times.size(), state);

  PulseSchedule schedule;
  schedule.depth_u0 = u0;
  schedule.t_pulse = t_max;
  schedule.dt = settings.dt > 0.0 ? settings.dt : std::min(default_time_step(u0), t_max);
  schedule.g1d_internal = settings.g1d_internal;
  schedule.sample_times.assign(pulse_times.begin(), pulse_times.end());
  return evolve_pulse(std::move(state), schedule);
}

TrajectorySet classical_ensemble(double u0, std::span<const double> pulse_times,
                                 const ClassicalEngineSettings& settings) {
  check_pulse_times(pulse_times);
  EnsembleSpec spec;
  spec.n_particles = settings.n_particles;
  spec.shape = settings.shape;
  spec.sample_times.assign(pulse_times.begin(), pulse_times.end());
  if (settings.dt > 0.0) {
    spec.dt = settings.dt;
  } else {
    const double period = harmonic_period_internal(u0);
    spec.dt = std::isfinite(period) ? period / 1000.0 : std::max(pulse_times.back(), 1.0) / 1000.0;
  }
  return evolve_ensemble(spec, u0);
}

double clipped_mass(const DiffractionSpectrum& spectrum, const MomentumAxis& axis) {
  double lost = 0.0;
  for (int n = -spectrum.n_max; n <= spectrum.n_max; ++n) {
    if (!axis.index_of_order(n)) lost += spectrum.at(n);
  }
  return lost;
}

std::vector<double> rasterize(const DiffractionSpectrum& spectrum, const MomentumAxis& axis) {
  if (const double lost = clipped_mass(spectrum, axis); lost > kMaxClippedMass) {
    throw Error("momentum axis of " + std::to_string(axis.half_orders) + " orders drops population " +
                std::to_string(lost));
  }
  std::vector<double> column(axis.size(), 0.0);
  for (int n = -axis.half_orders; n <= axis.half_orders; ++n) {
    if (n < -spectrum.n_max || n > spectrum.n_max) continue;
    column[*axis.index_of_order(n)] += spectrum.at(n);
  }
  return column;
}

Carpet build_carpet(const CarpetRequest& request) {
  check_pulse_times(request.pulse_times);
  Carpet carpet;
  carpet.source = request.engine;
  carpet.u0 = request.u0;
  carpet.axis = request.axis;
  carpet.times = request.pulse_times;
  carpet.columns.reserve(request.pulse_times.size());

  if (request.engine == CarpetSource::kQuantum) {
    for (const auto& snapshot : quantum_snapshots(request.u0, request.pulse_times, request.quantum)) {
      const auto spectrum = momentum_spectrum(snapshot);
      carpet.columns.push_back(rasterize(spectrum, request.axis));
      carpet.clipped.push_back(clipped_mass(spectrum, request.axis));
    }
  } else {
    const auto set = classical_ensemble(request.u0, request.pulse_times, request.classical);
    for (double t : set.times) carpet.columns.push_back(momentum_histogram(set, t, request.axis));
    carpet.clipped.assign(carpet.columns.size(), 0.0);
  }
  return carpet;
}

std::vector<double> gaussian_blur_column(std::span<const double> column, const MomentumAxis& axis,
                                         double sigma_p) {
  if (!(sigma_p >= 0.0)) throw Error("blur width must be >= 0");
  if (column.size() != axis.size()) throw Error("column does not match the momentum axis");
  std::vector<double> out(column.begin(), column.end());
  if (sigma_p == 0.0) return out;

  const auto n = static_cast<long>(column.size());
  const long reach = static_cast<long>(std::ceil(kKernelHalfWidthSigmas * sigma_p / axis.width()));
  std::vector<double> kernel(static_cast<std::size_t>(2 * reach + 1));
  for (long k = -reach; k <= reach; ++k) {
    const double dp = static_cast<double>(k) * axis.width();
    kernel[static_cast<std::size_t>(k + reach)] = std::exp(-0.5 * dp * dp / (sigma_p * sigma_p));
  }

  std::fill(out.begin(), out.end(), 0.0);
  for (long i = 0; i < n; ++i) {
    const double mass = column[static_cast<std::size_t>(i)];
    if (mass == 0.0) continue;
    const long lo = std::max(0L, i - reach);
    const long hi = std::min(n - 1, i + reach);
    double weight = 0.0;
    for (long j = lo; j <= hi; ++j) weight += kernel[static_cast<std::size_t>(j - i + reach)];
    for (long j = lo; j <= hi; ++j) {
      out[static_cast<std::size_t>(j)] += mass * kernel[static_cast<std::size_t>(j - i + reach)] / weight;
    }
  }
  return out;
}

Carpet gaussian_blur(const Carpet& carpet, double sigma_p) {
  Carpet out = carpet;
  for (auto& column : out.columns) column = gaussian_blur_column(column, carpet.axis, sigma_p);
  return out;
}

DepthEstimate detect_kmax(const Carpet& carpet, double threshold,
                          std::optional<double> photon_to_lattice_ratio) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw Error("k_max threshold must lie in (0, 1)");
  if (carpet.columns.empty()) throw Error("empty carpet");
  if (carpet.u0 > 0.0) {
    const double span = carpet.times.back() - carpet.times.front();
    if (span < carpet.harmonic_period() * (1.0 - 1e-9)) {
      throw Error("carpet spans " + std::to_string(span / carpet.harmonic_period()) +
                  " T_ho; k_max needs at least one T_ho");
    }
  }

  DepthEstimate est;
  for (const auto& column : carpet.columns) {
    const double peak = *std::max_element(column.begin(), column.end());
    if (peak <= 0.0) continue;
    for (std::size_t i = 0; i < column.size(); ++i) {
      if (column[i] > threshold * peak) est.k_max = std::max(est.k_max, std::abs(carpet.axis.center(i)));
    }
  }
  est.depth_lattice_units = est.k_max * est.k_max;
  if (photon_to_lattice_ratio) est.depth_photon_units = est.depth_lattice_units / *photon_to_lattice_ratio;
  return est;
}

double rms_width(std::span<const double> column, const MomentumAxis& axis) {
  double second = 0.0;
  for (std::size_t i = 0; i < column.size(); ++i) {
    const double p = axis.center(i);
    second += p * p * column[i];
  }
  return std::sqrt(second);
}

std::optional<double> CollapseReport::first_collapse_offset() const {
  if (collapse_times.empty()) return std::nullopt;
  return (collapse_times.front() - 0.5 * harmonic_period) / harmonic_period;
}

CollapseReport detect_collapses(const Carpet& carpet) {
  const double period = carpet.harmonic_period();
  if (!std::isfinite(period)) throw Error("collapse detection needs a lattice with u0 > 0");
  const std::size_t n = carpet.times.size();
  if (n < 3) throw Error("collapse detection needs at least three columns");
  const double span = carpet.times.back() - carpet.times.front();
  if (span < 2.0 * period * (1.0 - 1e-9)) {
    throw Error("collapse detection needs a carpet spanning >= 2 T_ho (got " +
                std::to_string(span / period) + ")");
  }
  const double columns_per_period = static_cast<double>(n - 1) * period / span;
  if (columns_per_period < kMinColumnsPerPeriod * (1.0 - 1e-9)) {
    throw Error("collapse detection needs >= 50 columns per T_ho (got " +
                std::to_string(columns_per_period) + ")");
  }

  CollapseReport report;
  report.harmonic_period = period;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = rms_width(carpet.columns[i], carpet.axis);
    report.width_series.push_back({carpet.times[i], w[i]});
  }

  const auto half_window = static_cast<std::size_t>(std::round(0.5 * columns_per_period));
  std::vector<std::size_t> minima;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(w[i] < w[i - 1] && w[i] < w[i + 1])) continue;
    const std::size_t lo = i > half_window ? i - half_window : 0;
    const std::size_t hi = std::min(n - 1, i + half_window);
    if (w[i] < median({w.begin() + static_cast<long>(lo), w.begin() + static_cast<long>(hi) + 1})) {
      minima.push_back(i);
    }
  }

  const auto refined = [&](std::size_t i) {
    return parabola_vertex(carpet.times[i - 1], w[i - 1], carpet.times[i], w[i], carpet.times[i + 1], w[i + 1]);
  };
  for (std::size_t m = 0; m < minima.size(); ++m) {
    const std::size_t i = minima[m];
    report.collapse_times.push_back(refined(i));
    const std::size_t stop = m + 1 < minima.size() ? minima[m + 1] : n - 1;
    for (std::size_t j = i + 1; j < stop && j + 1 < n; ++j) {
      if (w[j] > w[j - 1] && w[j] > w[j + 1]) {
        report.revival_times.push_back(refined(j));
        break;
      }
    }
  }
  return report;
}

double compare_distributions(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("distributions use different momentum binnings");
  double l1 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) l1 += std::abs(a[i] - b[i]);
  return l1;
}

}  // namespace latdiff
