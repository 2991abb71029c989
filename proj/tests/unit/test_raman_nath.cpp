#include <doctest.h>

#include <cmath>

#include "latdiff/error.hpp"
#include "latdiff/raman_nath.hpp"
#include "oracles.hpp"

using namespace latdiff;

TEST_CASE("zero pulse leaves everything in order 0") {
  const auto rn = rn_populations(30.0, 0.0, 25);
  CHECK(rn.pulse_area == 0.0);
  CHECK(rn.at(0) == doctest::Approx(1.0).epsilon(1e-15));
  for (int n = 1; n <= 25; ++n) {
    CHECK(rn.at(n) == 0.0);
    CHECK(rn.at(-n) == 0.0);
  }
}

TEST_CASE("populations sum to one up to pulse area 100") {
  for (double beta : {0.01, 1.0, 7.3, 33.0, 64.0, 100.0}) {
    const auto rn = rn_populations(2.0, beta, rn_min_orders(beta));
    double sum = 0.0;
    for (double p : rn.populations) sum += p;
    CAPTURE(beta);
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("first zero of J_0") {
  const double zero = 2.404825557695773;
  CHECK(std::abs(oracle::bessel_j_series(0, zero)) < 1e-14);
  const auto rn = rn_populations(2.0, zero, rn_min_orders(zero));
  CHECK(rn.pulse_area == doctest::Approx(zero));
  CHECK(rn.at(0) < 1e-6);
}

TEST_CASE("Bessel sequence against series and std::cyl_bessel_j") {
  for (double x : {1e-9, 0.3, 2.0, 6.0}) {
    const auto j = bessel_j_sequence(45, x);
    for (int n = 0; n <= 45; ++n) {
      CAPTURE(x);
      CAPTURE(n);
      CHECK(j[static_cast<std::size_t>(n)] == doctest::Approx(oracle::bessel_j_series(n, x)).epsilon(1e-12).scale(1.0));
    }
  }
  for (double x : {9.5, 18.0, 25.0, 60.0, 99.0}) {
    const auto j = bessel_j_sequence(130, x);
    for (int n = 0; n <= 130; ++n) {
      CAPTURE(x);
      CAPTURE(n);
      CHECK(std::abs(j[static_cast<std::size_t>(n)] - std::cyl_bessel_j(n, x)) < 1e-12);
    }
  }
}

TEST_CASE("populations are symmetric in n") {
  const auto rn = rn_populations(30.0, 0.4, 40);
  for (int n = 1; n <= 40; ++n) CHECK(rn.at(n) == rn.at(-n));
}

TEST_CASE("truncation guard") {
  CHECK_THROWS_AS(rn_populations(30.0, 2.0, 40), Error);  // beta = 30
  CHECK_NOTHROW(rn_populations(30.0, 2.0, 50));
  CHECK(rn_min_orders(30.0) == 50);
}

TEST_CASE("validity window") {
  const double u0 = 30.0;
  const double t_rn = 1.0 / std::sqrt(u0);
  auto v = rn_is_valid_internal(0.05 * t_rn, u0);
  CHECK(v.valid);
  CHECK(v.margin == doctest::Approx(0.05));
  v = rn_is_valid_internal(0.2 * t_rn, u0);
  CHECK(v.valid);
  CHECK(v.margin == doctest::Approx(0.2));
  v = rn_is_valid_internal(t_rn, u0);
  CHECK_FALSE(v.valid);
  CHECK(v.margin == doctest::Approx(1.0));
}

TEST_CASE("validity in seconds uses the lattice's t_RN") {
  const auto s = derive_scales(LatticeSpec{{33.0, EnergyUnit::kPhotonRecoil}, 1.8e-6}, PhysicalConstants{});
  CHECK(rn_is_valid(0.1 * s.raman_nath_time, s).valid);
  CHECK(rn_is_valid(0.1 * s.raman_nath_time, s).margin == doctest::Approx(0.1));
  CHECK_FALSE(rn_is_valid(0.5 * s.raman_nath_time, s).valid);
}
