#include <doctest.h>

#include <cmath>
#include <random>

#include "latdiff/bloch.hpp"
#include "latdiff/error.hpp"
#include "latdiff/propagator.hpp"
#include "latdiff/units.hpp"
#include "oracles.hpp"

using namespace latdiff;

namespace {

std::vector<WaveState> run(double u0, std::vector<double> samples, double dt = 0.0, double g = 0.0,
                           std::size_t points = 512) {
  PulseSchedule s;
  s.depth_u0 = u0;
  s.t_pulse = samples.back();
  s.dt = dt > 0.0 ? dt : default_time_step(u0);
  s.g1d_internal = g;
  s.sample_times = std::move(samples);
  return evolve_pulse(init_uniform_state(SpatialGrid(points)), s);
}

double max_bessel_error(const DiffractionSpectrum& sp, double beta) {
  double worst = 0.0;
  for (int n = -sp.n_max; n <= sp.n_max; ++n) {
    const double j = std::cyl_bessel_j(std::abs(n), beta);
    worst = std::max(worst, std::abs(sp.at(n) - j * j));
  }
  return worst;
}

std::vector<double> orders(const DiffractionSpectrum& sp, int n_max) {
  std::vector<double> v;
  for (int n = -n_max; n <= n_max; ++n) v.push_back(sp.at(n));
  return v;
}

}  // namespace

TEST_CASE("grid sizes") {
  CHECK_THROWS_AS(SpatialGrid(100), Error);
  CHECK_THROWS_AS(SpatialGrid(32), Error);
  const SpatialGrid g(256);
  CHECK(g.spacing() == doctest::Approx(kPi / 256));
  CHECK(g.position(0) == doctest::Approx(-kPi / 2));
  CHECK(g.max_order() == 64);
}

TEST_CASE("uniform initial state") {
  const auto psi = init_uniform_state(SpatialGrid(256));
  for (const auto& a : psi.amplitudes) CHECK(a == Complex(1.0, 0.0));
  CHECK(psi.norm() == 1.0);
  const auto sp = momentum_spectrum(psi);
  CHECK(sp.at(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sp.total() == doctest::Approx(1.0).epsilon(1e-15));
  for (double rho : density_profile(psi)) CHECK(rho == 1.0);
}

TEST_CASE("phase grating spectrum against quadrature and Bessel values") {
  for (double beta : {0.7, 2.405, 6.0, 15.0}) {
    auto psi = init_uniform_state(SpatialGrid(512));
    for (std::size_t j = 0; j < psi.amplitudes.size(); ++j) {
      psi.amplitudes[j] = std::exp(Complex(0.0, beta * std::cos(2.0 * psi.grid.position(j))));
    }
    const auto sp = momentum_spectrum(psi);
    for (int n = -40; n <= 40; ++n) {
      const double quad = std::norm(oracle::phase_grating_coefficient(n, beta));
      const double bessel = std::pow(std::cyl_bessel_j(std::abs(n), beta), 2);
      CAPTURE(beta);
      CAPTURE(n);
      CHECK(sp.at(n) == doctest::Approx(quad).epsilon(1e-12).scale(1.0));
      CHECK(sp.at(n) == doctest::Approx(bessel).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("Parseval for an arbitrary state") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  auto psi = init_uniform_state(SpatialGrid(128));
  for (auto& a : psi.amplitudes) a = Complex(normal(rng), normal(rng));
  const auto sp = momentum_spectrum(psi);
  double all = 0.0;
  for (double p : sp.populations) all += p;
  // max_order = N/4 keeps half of the DFT; compare against the full sum of |c_k|^2.
  CHECK(all <= psi.norm() + 1e-12);
  auto band_limited = init_uniform_state(SpatialGrid(128));
  for (std::size_t j = 0; j < 128; ++j) {
    const double x = band_limited.grid.position(j);
    band_limited.amplitudes[j] = Complex(0.3 + std::cos(2 * x), 0.7 * std::sin(6 * x) - std::cos(40 * x));
  }
  CHECK(momentum_spectrum(band_limited).total() == doctest::Approx(band_limited.norm()).epsilon(1e-13));
}

TEST_CASE("free uniform state is stationary") {
  const auto snaps = run(0.0, {0.5, 3.0}, 0.01);
  for (const auto& s : snaps) CHECK(momentum_spectrum(s).at(0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("unitarity over ten harmonic periods") {
  const double u0 = 30.0;
  const double t = 10.0 * harmonic_period_internal(u0);
  for (double g : {0.0, 2.0}) {
    const auto snaps = run(u0, {t}, 0.0, g);
    CHECK(std::abs(snaps.back().norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("energy is conserved during the pulse") {
  const double u0 = 30.0;
  const double T = harmonic_period_internal(u0);
  const std::vector<double> times{0.0, 0.25 * T, 0.5 * T, 2.0 * T, 10.0 * T};
  const double dt = 0.5 * default_time_step(u0);
  const auto snaps = run(u0, times, dt);
  const double e0 = mean_energy(snaps.front(), u0);
  CHECK(e0 == doctest::Approx(u0 / 2));
  for (const auto& s : snaps) CHECK(std::abs(mean_energy(s, u0) - e0) < 1e-8 * u0);
  // The splitting error is bounded and second order in dt.
  const auto coarse = run(u0, times, 2.0 * dt);
  const double ratio = std::abs(mean_energy(coarse[1], u0) - e0) / std::abs(mean_energy(snaps[1], u0) - e0);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("parity of the order populations") {
  const auto snaps = run(592.6, {0.37, 1.1}, 0.0, 1.5);
  for (const auto& s : snaps) {
    const auto sp = momentum_spectrum(s);
    for (int n = 1; n <= sp.n_max; ++n) CHECK(std::abs(sp.at(n) - sp.at(-n)) < 1e-9);
    const auto rho = density_profile(s);
    for (std::size_t j = 1; j < rho.size() / 2; ++j) CHECK(rho[j] == doctest::Approx(rho[rho.size() - j]).epsilon(1e-9));
  }
}

TEST_CASE("halving the default step changes populations by < 1e-6") {
  const double u0 = 30.0;
  const double t = harmonic_period_internal(u0);
  const auto a = momentum_spectrum(run(u0, {t}).back());
  const auto b = momentum_spectrum(run(u0, {t}, 0.5 * default_time_step(u0)).back());
  for (int n = -a.n_max; n <= a.n_max; ++n) CHECK(std::abs(a.at(n) - b.at(n)) < 1e-6);
}

TEST_CASE("Raman-Nath regime up to 0.2 t_RN") {
  const double u0 = 30.0;
  const double t_rn = raman_nath_time_internal(u0);
  const auto snaps = run(u0, {0.05 * t_rn, 0.1 * t_rn, 0.2 * t_rn});
  for (const auto& s : snaps) {
    CHECK(max_bessel_error(momentum_spectrum(s), 0.5 * u0 * s.time) < 5e-3);
  }
}

TEST_CASE("split-step agrees with the eigen-expansion") {
  const double u0 = 30.0;
  const double T = harmonic_period_internal(u0);
  const auto spectrum = band_spectrum_q0(u0, PlaneWaveBasis::for_depth(u0));
  const auto table = project_uniform(spectrum);
  const auto snaps = run(u0, {T, 2.0 * T});
  for (const auto& s : snaps) {
    const auto exact = evolve_spectral(table, spectrum, s.time);
    const int n = std::min(exact.n_max, 60);
    CHECK(oracle::l1(orders(momentum_spectrum(s), n), orders(exact, n)) < 1e-6);
  }
}

TEST_CASE("density focuses at the well center near a quarter period") {
  const double u0 = 30.0 * std::pow(2.0 * 1.8 / 0.81, 2);
  const auto snaps = run(u0, {0.25 * harmonic_period_internal(u0)});
  const auto rho = density_profile(snaps.back());
  double mean = 0.0;
  for (double r : rho) mean += r / static_cast<double>(rho.size());
  CHECK(mean == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rho[rho.size() / 2] > 5.0 * mean);
  CHECK(*std::max_element(rho.begin(), rho.end()) == rho[rho.size() / 2]);
}

TEST_CASE("schedule validation") {
  const double u0 = 30.0;
  const double t_rn = raman_nath_time_internal(u0);
  CHECK_THROWS_AS(run(u0, {t_rn}, t_rn / 10), Error);
  CHECK_THROWS_AS(run(u0, {0.5, 0.2}), Error);
  PulseSchedule s;
  s.depth_u0 = u0;
  s.t_pulse = 0.1;
  s.dt = default_time_step(u0);
  s.sample_times = {0.2};
  CHECK_THROWS_AS(evolve_pulse(init_uniform_state(SpatialGrid(128)), s), Error);
  s.sample_times = {0.1};
  auto psi = init_uniform_state(SpatialGrid(128));
  psi.amplitudes[3] *= 2.0;
  CHECK_THROWS_AS(evolve_pulse(psi, s), Error);
}
