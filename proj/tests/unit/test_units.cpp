#include <doctest.h>

#include <cmath>
#include <limits>

#include "latdiff/error.hpp"
#include "latdiff/units.hpp"

using namespace latdiff;

namespace {

LatticeSpec lattice(double period_um, double depth, EnergyUnit unit = EnergyUnit::kPhotonRecoil) {
  return LatticeSpec{{depth, unit}, period_um * 1e-6};
}

struct TableRow {
  double period_um, depth_er, atoms, diameter_um, diameter_err_um;
};

// Reference lattices: period, measured depth, atom number and measured
// Thomas-Fermi diameter with its uncertainty.
constexpr TableRow kTable[] = {
    {1.80, 33, 12e4, 55, 6},
    {3.5, 26, 14e4, 57, 6},
    {6.5, 32, 4e4, 45, 4},
    {9.3, 29, 5e4, 46, 5},
};

}  // namespace

TEST_CASE("counter-propagating lattice has equal lattice and photon recoils") {
  const PhysicalConstants c;
  const auto s = derive_scales(lattice(0.405, 30), c);
  CHECK(*s.photon_to_lattice_ratio() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.depth_lattice_units == doctest::Approx(30.0).epsilon(1e-12));
}

TEST_CASE("9.3 um lattice at 30 E_R is about 15.8e3 E_L deep") {
  const auto s = derive_scales(lattice(9.3, 30), PhysicalConstants{});
  CHECK(s.depth_lattice_units == doctest::Approx(15.8e3).epsilon(5e-3));
}

TEST_CASE("harmonic frequency from two independent formulas") {
  const PhysicalConstants c;
  for (const auto& row : kTable) {
    const auto s = derive_scales(lattice(row.period_um, row.depth_er), c);
    const double omega = s.kappa_l * std::sqrt(2.0 * s.depth / c.atomic_mass);
    CHECK(s.omega_ho == doctest::Approx(omega).epsilon(1e-12));
    CHECK(omega_ho_from_recoil(s, c) == doctest::Approx(omega).epsilon(1e-12));
    CHECK(s.harmonic_period == doctest::Approx(2.0 * kPi / omega).epsilon(1e-12));
    CHECK(s.raman_nath_time == doctest::Approx(s.harmonic_period / kPi).epsilon(1e-12));
  }
}

TEST_CASE("depth given in lattice recoils") {
  const auto s = derive_scales(lattice(3.5, 500, EnergyUnit::kLatticeRecoil), PhysicalConstants{});
  CHECK(s.depth_lattice_units == doctest::Approx(500.0).epsilon(1e-14));
  CHECK(*s.depth_photon_units() * *s.photon_to_lattice_ratio() == doctest::Approx(500.0).epsilon(1e-12));
}

TEST_CASE("zero depth has infinite oscillation scales") {
  const auto s = derive_scales(lattice(1.8, 0), PhysicalConstants{});
  CHECK(std::isinf(s.harmonic_period));
  CHECK(std::isinf(s.raman_nath_time));
  CHECK(std::isinf(harmonic_period_internal(0.0)));
}

TEST_CASE("internal units") {
  const PhysicalConstants c;
  const auto s = derive_scales(lattice(6.5, 32), c);
  const auto p = to_internal_units(s, c);
  CHECK(p.u0 == doctest::Approx(s.depth_lattice_units).epsilon(1e-14));
  CHECK(p.harmonic_period == doctest::Approx(kPi / std::sqrt(p.u0)).epsilon(1e-12));
  CHECK(p.raman_nath_time == doctest::Approx(1.0 / std::sqrt(p.u0)).epsilon(1e-12));
  CHECK(p.time_to_si(p.harmonic_period) == doctest::Approx(s.harmonic_period).epsilon(1e-12));
  CHECK(p.position_to_si(kPi) == doctest::Approx(6.5e-6).epsilon(1e-12));
  CHECK(p.energy_to_si(p.u0) == doctest::Approx(s.depth).epsilon(1e-12));
  CHECK(p.momentum_to_internal(p.momentum_to_si(3.0)) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("invalid lattices are rejected") {
  const PhysicalConstants c;
  CHECK_THROWS_AS(derive_scales(lattice(-1.0, 30), c), Error);
  CHECK_THROWS_AS(derive_scales(lattice(0.3, 30), c), Error);
  CHECK_THROWS_AS(derive_scales(lattice(1.8, -1), c), Error);
  PhysicalConstants no_laser;
  no_laser.laser_wavelength.reset();
  CHECK_THROWS_AS(derive_scales(lattice(1.8, 30), no_laser), Error);
  CHECK_NOTHROW(derive_scales(lattice(1.8, 30, EnergyUnit::kLatticeRecoil), no_laser));
}

TEST_CASE("Thomas-Fermi geometry against the closed form") {
  const PhysicalConstants c;
  TrapSpec trap;
  trap.atom_number = 7e4;
  const auto g = thomas_fermi_geometry(trap, c);

  const double w[3] = {2 * kPi * trap.nu_x, 2 * kPi * trap.nu_y, 2 * kPi * trap.nu_z};
  const double wbar = std::cbrt(w[0] * w[1] * w[2]);
  const double abar = std::sqrt(c.hbar / (c.atomic_mass * wbar));
  const double mu = 0.5 * c.hbar * wbar * std::pow(15.0 * trap.atom_number * c.scattering_length / abar, 0.4);
  CHECK(g.chemical_potential == doctest::Approx(mu).epsilon(1e-12));
  CHECK(g.radius_x == doctest::Approx(std::sqrt(2 * mu / (c.atomic_mass * w[0] * w[0]))).epsilon(1e-12));
  CHECK(g.radius_z == doctest::Approx(std::sqrt(2 * mu / (c.atomic_mass * w[2] * w[2]))).epsilon(1e-12));

  const double g3 = 4 * kPi * c.hbar * c.hbar * c.scattering_length / c.atomic_mass;
  CHECK(g.g_3d == doctest::Approx(g3).epsilon(1e-12));
  CHECK(g.g_1d == doctest::Approx(4 * g3 / (3 * kPi * g.radius_x * g.radius_y)).epsilon(1e-12));
  CHECK(g.peak_linear_density == doctest::Approx(15.0 * trap.atom_number / (16.0 * g.radius_z)).epsilon(1e-12));

  // The TF profile integrates to N: n1(z) = n1(0) (1 - z^2/R^2)^2.
  double total = 0.0;
  const int steps = 20000;
  for (int i = 0; i < steps; ++i) {
    const double z = -g.radius_z + (i + 0.5) * 2 * g.radius_z / steps;
    const double u = 1.0 - z * z / (g.radius_z * g.radius_z);
    total += g.peak_linear_density * u * u * 2 * g.radius_z / steps;
  }
  CHECK(total == doctest::Approx(trap.atom_number).epsilon(1e-6));
}

TEST_CASE("Thomas-Fermi diameters match the measured ones") {
  const PhysicalConstants c;
  for (const auto& row : kTable) {
    TrapSpec trap;
    trap.atom_number = row.atoms;
    const auto g = thomas_fermi_geometry(trap, c);
    CAPTURE(row.period_um);
    CHECK(std::abs(g.diameter_z() * 1e6 - row.diameter_um) <= row.diameter_err_um);
  }
}

TEST_CASE("mean-field coupling in lattice recoils") {
  const PhysicalConstants c;
  TrapSpec trap;
  trap.atom_number = 12e4;
  const auto g = thomas_fermi_geometry(trap, c);
  const auto s = derive_scales(lattice(1.8, 33), c);
  CHECK(interaction_internal(g, s) == doctest::Approx(g.g_1d * g.peak_linear_density / s.lattice_recoil));
  CHECK(interaction_internal(g, s) > 0.0);
  CHECK(interaction_internal(g, s) < 1e-2 * s.depth_lattice_units);
}

TEST_CASE("invalid traps are rejected") {
  TrapSpec trap;
  trap.atom_number = 0;
  CHECK_THROWS_AS(thomas_fermi_geometry(trap, PhysicalConstants{}), Error);
  trap = TrapSpec{};
  trap.nu_x = -1;
  CHECK_THROWS_AS(thomas_fermi_geometry(trap, PhysicalConstants{}), Error);
}
