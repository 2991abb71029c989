#include "latdiff/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "latdiff/error.hpp"
#include "latdiff/units.hpp"

namespace latdiff {

namespace {

constexpr double kMinStepsPerPeriod = 1000.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_release_point(double z0) {
  if (!(std::abs(z0) < 0.5 * kPi)) {
    throw Error("release point z0 = " + std::to_string(z0) +
                " must lie strictly inside (-pi/2, pi/2); the lips are the separatrix");
  }
}

double potential_curvature(double x, double u0, PotentialShape shape) {
  return shape == PotentialShape::kSinusoidal ? 2.0 * u0 * std::cos(2.0 * x) : 2.0 * u0;
}

// One position-Verlet step: half drift, kick, half drift.
inline void verlet_step(double& x, double& p, double u0, double h, PotentialShape shape) {
  x += p * h;  // dx/dt = 2p over h/2
  p += potential_force(x, u0, shape) * h;
  x += p * h;
}

// Cubic Hermite root of p(t) on [0, h] given end values and slopes; p0 and p1
// bracket zero.
double hermite_zero(double p0, double dp0, double p1, double dp1, double h) {
  const auto value = [&](double s) {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * h * dp0 + (-2 * s3 + 3 * s2) * p1 +
           (s3 - s2) * h * dp1;
  };
  double lo = 0.0, hi = 1.0;
  double f_lo = p0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = value(mid);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi) * h;
}

bool crosses_zero(double a, double b) { return (a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0); }

}  // namespace

double potential_energy(double x, double u0, PotentialShape shape) {
  if (shape == PotentialShape::kSinusoidal) {
    const double s = std::sin(x);
    return u0 * s * s;
  }
  return u0 * x * x;
}

double potential_force(double x, double u0, PotentialShape shape) {
  return shape == PotentialShape::kSinusoidal ? -u0 * std::sin(2.0 * x) : -2.0 * u0 * x;
}

double shadow_energy(double x, double p, double u0, double dt, PotentialShape shape) {
  const double force = potential_force(x, u0, shape);
  const double curvature = potential_curvature(x, u0, shape);
  return p * p + potential_energy(x, u0, shape) +
         dt * dt * (force * force - p * p * curvature) / 6.0;
}

double max_momentum(double u0) { return std::sqrt(std::max(u0, 0.0)); }

void verlet_advance(double& x, double& p, double u0, double dt, std::size_t n_steps,
                    PotentialShape shape) {
  for (std::size_t i = 0; i < n_steps; ++i) verlet_step(x, p, u0, dt, shape);
}

Trajectory integrate_trajectory(double z0, double u0, double dt, double t_max, PotentialShape shape) {
  check_release_point(z0);
  if (!(u0 >= 0.0)) throw Error("classical depth must be >= 0");
  if (!(dt > 0.0)) throw Error("classical time step must be > 0");
  if (!(t_max >= 0.0)) throw Error("classical t_max must be >= 0");
  const double period = harmonic_period_internal(u0);
  if (dt > period / kMinStepsPerPeriod) {
    throw Error("classical time step exceeds T_ho/1000 (" + std::to_string(period / kMinStepsPerPeriod) + ")");
  }

  const auto n_steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
  const double h = n_steps > 0 ? t_max / static_cast<double>(n_steps) : 0.0;

  Trajectory traj;
  traj.initial_position = z0;
  traj.times.reserve(n_steps + 1);
  traj.positions.reserve(n_steps + 1);
  traj.momenta.reserve(n_steps + 1);

  double x = z0, p = 0.0;
  traj.times.push_back(0.0);
  traj.positions.push_back(x);
  traj.momenta.push_back(p);
  for (std::size_t i = 1; i <= n_steps; ++i) {
    const double x_prev = x, p_prev = p;
    verlet_step(x, p, u0, h, shape);
    const double t = static_cast<double>(i) * h;
    if (crosses_zero(p_prev, p)) {
      const double offset = hermite_zero(p_prev, potential_force(x_prev, u0, shape), p,
                                         potential_force(x, u0, shape), h);
      traj.turning_times.push_back(t - h + offset);
    }
    traj.times.push_back(t);
    traj.positions.push_back(x);
    traj.momenta.push_back(p);
  }
  return traj;
}

double complete_elliptic_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw Error("elliptic modulus must lie in [0, 1)");
  double a = 1.0;
  double b = std::sqrt(1.0 - k * k);
  for (int i = 0; i < 64 && std::abs(a - b) > 4.0 * std::numeric_limits<double>::epsilon() * a; ++i) {
    const double mean = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = mean;
  }
  return kPi / (2.0 * a);
}

double oscillation_period(double z0, double u0) {
  check_release_point(z0);
  if (!(u0 > 0.0)) throw Error("oscillation period needs u0 > 0");
  const double omega = 2.0 * std::sqrt(u0);
  return 4.0 / omega * complete_elliptic_k(std::abs(std::sin(z0)));
}

void EnsembleSpec::validate(double u0) const {
  if (n_particles < 100) throw Error("ensemble needs at least 100 particles");
  if (!(dt > 0.0)) throw Error("ensemble time step must be > 0");
  const double period = harmonic_period_internal(u0);
  if (dt > period / kMinStepsPerPeriod) throw Error("ensemble time step exceeds T_ho/1000");
  if (sample_times.empty()) throw Error("ensemble needs at least one sample time");
  if (!std::is_sorted(sample_times.begin(), sample_times.end()) || sample_times.front() < 0.0) {
    throw Error("ensemble sample times must be sorted and >= 0");
  }
}

std::vector<double> midpoint_positions(std::size_t n) {
  std::vector<double> z0(n);
  const double h = kPi / static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    const double z = -0.5 * kPi + (static_cast<double>(i) + 0.5) * h;
    z0[i] = z;
    z0[n - 1 - i] = -z;
  }
  if (n % 2 == 1) z0[n / 2] = 0.0;
  return z0;
}

std::size_t TrajectorySet::sample_index(double t) const {
  const auto it = std::lower_bound(times.begin(), times.end(), t - 1e-12 * std::max(1.0, std::abs(t)));
  if (it == times.end() || std::abs(*it - t) > 1e-12 * std::max(1.0, std::abs(t))) {
    throw Error("time " + std::to_string(t) + " is not on the ensemble's time base");
  }
  return static_cast<std::size_t>(it - times.begin());
}

TrajectorySet evolve_ensemble(const EnsembleSpec& spec, double u0) {
  if (!(u0 >= 0.0)) throw Error("classical depth must be >= 0");
  spec.validate(u0);

  TrajectorySet set;
  set.u0 = u0;
  set.shape = spec.shape;
  set.initial_positions = midpoint_positions(spec.n_particles);
  set.times = spec.sample_times;
  set.first_turning_times.assign(spec.n_particles, kInf);

  std::vector<double> x = set.initial_positions;
  std::vector<double> p(spec.n_particles, 0.0);
  double elapsed = 0.0;
  for (double target : spec.sample_times) {
    const double span = target - elapsed;
    if (span > 0.0) {
      const auto n_steps = static_cast<std::size_t>(std::ceil(span / spec.dt - 1e-9));
      const double h = span / static_cast<double>(n_steps);
      for (std::size_t i = 0; i < spec.n_particles; ++i) {
        double xi = x[i], pi = p[i];
        for (std::size_t s = 0; s < n_steps; ++s) {
          const double p_prev = pi, x_prev = xi;
          verlet_step(xi, pi, u0, h, spec.shape);
          if (set.first_turning_times[i] == kInf && crosses_zero(p_prev, pi)) {
            set.first_turning_times[i] =
                elapsed + static_cast<double>(s) * h +
                hermite_zero(p_prev, potential_force(x_prev, u0, spec.shape), pi,
                             potential_force(xi, u0, spec.shape), h);
          }
        }
        x[i] = xi;
        p[i] = pi;
      }
      elapsed = target;
    }
    set.positions.push_back(x);
    set.momenta.push_back(p);
  }
  return set;
}

std::vector<double> momentum_histogram(const TrajectorySet& set, double t, const MomentumAxis& axis) {
  const auto& momenta = set.momenta[set.sample_index(t)];
  std::vector<double> hist(axis.size(), 0.0);
  const double weight = 1.0 / static_cast<double>(momenta.size());
  for (double p : momenta) {
    const auto bin = axis.index_of(p);
    if (!bin) throw Error("momentum " + std::to_string(p) + " falls outside the histogram axis");
    hist[*bin] += weight;
  }
  return hist;
}

MomentumDensity momentum_histogram(const TrajectorySet& set, double t, std::size_t n_bins) {
  if (n_bins == 0) throw Error("histogram needs at least one bin");
  const auto& momenta = set.momenta[set.sample_index(t)];
  const double range = 1.05 * std::max(max_momentum(set.u0), 1e-12);
  const double width = 2.0 * range / static_cast<double>(n_bins);

  MomentumDensity out;
  out.centers.resize(n_bins);
  out.density.assign(n_bins, 0.0);
  for (std::size_t i = 0; i < n_bins; ++i) out.centers[i] = -range + (static_cast<double>(i) + 0.5) * width;
  const double weight = 1.0 / (static_cast<double>(momenta.size()) * width);
  for (double p : momenta) {
    auto bin = static_cast<long>(std::floor((p + range) / width));
    bin = std::clamp<long>(bin, 0, static_cast<long>(n_bins) - 1);
    out.density[static_cast<std::size_t>(bin)] += weight;
  }
  return out;
}

std::vector<PhasePoint> phase_portrait(const TrajectorySet& set, double t) {
  const std::size_t k = set.sample_index(t);
  std::vector<PhasePoint> curve(set.initial_positions.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    curve[i] = {set.initial_positions[i], set.positions[k][i], set.momenta[k][i]};
  }
  return curve;
}

double enclosed_area(const std::vector<PhasePoint>& polygon) {
  double twice_area = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % polygon.size()];
    twice_area += a.position * b.momentum - b.position * a.momentum;
  }
  return 0.5 * std::abs(twice_area);
}

std::vector<Caustic> find_caustics(const TrajectorySet& set, double t) {
  const std::size_t k = set.sample_index(t);
  const auto& z0 = set.initial_positions;
  const auto& p = set.momenta[k];
  std::vector<Caustic> caustics;
  if (z0.size() < 3) return caustics;

  // p identically zero (t = 0) has no isolated stationary points.
  if (std::all_of(p.begin(), p.end(), [](double v) { return v == 0.0; })) return caustics;

  for (std::size_t i = 1; i + 1 < z0.size(); ++i) {
    const double left = p[i] - p[i - 1];
    const double right = p[i + 1] - p[i];
    const bool extremum = (left > 0.0 && right <= 0.0) || (left < 0.0 && right >= 0.0);
    if (!extremum) continue;
    // Parabola through the three samples, expanded about the middle one:
    // p(z) = y1 + slope (z - x1) + curvature (z - x1)^2.
    const double x0 = z0[i - 1], x1 = z0[i], x2 = z0[i + 1];
    const double d01 = (p[i] - p[i - 1]) / (x1 - x0);
    const double d12 = (p[i + 1] - p[i]) / (x2 - x1);
    const double curvature = (d12 - d01) / (x2 - x0);
    const double slope = d01 + curvature * (x1 - x0);
    Caustic c{set.times[k], p[i], x1};
    if (curvature != 0.0) {
      const double dz = std::clamp(-slope / (2.0 * curvature), x0 - x1, x2 - x1);
      c.initial_position = x1 + dz;
      c.momentum = p[i] + slope * dz + curvature * dz * dz;
    }
    caustics.push_back(c);
  }
  return caustics;
}

}  // namespace latdiff
