#include "latdiff/units.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "latdiff/error.hpp"

namespace latdiff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(std::string(what) + " must be finite and > 0 (got " + std::to_string(value) + ")");
  }
}

}  // namespace

void PhysicalConstants::validate() const {
  require_positive(hbar, "hbar");
  require_positive(atomic_mass, "atomic_mass");
  require_positive(scattering_length, "scattering_length");
  if (laser_wavelength) require_positive(*laser_wavelength, "laser_wavelength");
}

void LatticeSpec::validate(const PhysicalConstants& consts) const {
  require_positive(period, "lattice period");
  if (!(depth.value >= 0.0) || !std::isfinite(depth.value)) {
    throw Error("lattice depth must be finite and >= 0 (got " + std::to_string(depth.value) + ")");
  }
  if (consts.laser_wavelength) {
    // Two-beam lattice: d = lambda / (2 sin(theta/2)) >= lambda / 2.
    const double min_period = 0.5 * *consts.laser_wavelength;
    if (period < min_period * (1.0 - 1e-12)) {
      throw Error("lattice period " + std::to_string(period) + " m is below lambda/2 = " +
                  std::to_string(min_period) + " m");
    }
  } else if (depth.unit == EnergyUnit::kPhotonRecoil) {
    throw Error("depth quoted in E_R requires a laser wavelength");
  }
}

std::optional<double> DerivedScales::photon_to_lattice_ratio() const {
  if (!photon_recoil) return std::nullopt;
  return *photon_recoil / lattice_recoil;
}

std::optional<double> DerivedScales::depth_photon_units() const {
  if (!photon_recoil) return std::nullopt;
  return depth / *photon_recoil;
}

DerivedScales derive_scales(const LatticeSpec& spec, const PhysicalConstants& consts) {
  consts.validate();
  spec.validate(consts);

  const double hbar = consts.hbar;
  const double mass = consts.atomic_mass;

  DerivedScales s;
  s.kappa_l = kPi / spec.period;
  s.lattice_recoil = hbar * hbar * s.kappa_l * s.kappa_l / (2.0 * mass);
  if (consts.laser_wavelength) {
    const double k = 2.0 * kPi / *consts.laser_wavelength;
    s.photon_recoil = hbar * hbar * k * k / (2.0 * mass);
  }

  switch (spec.depth.unit) {
    case EnergyUnit::kLatticeRecoil:
      s.depth = spec.depth.value * s.lattice_recoil;
      break;
    case EnergyUnit::kPhotonRecoil:
      s.depth = spec.depth.value * *s.photon_recoil;
      break;
  }
  s.depth_lattice_units = s.depth / s.lattice_recoil;

  s.omega_ho = std::sqrt(2.0 * s.depth * kPi * kPi / (mass * spec.period * spec.period));
  if (s.omega_ho > 0.0) {
    s.harmonic_period = 2.0 * kPi / s.omega_ho;
    s.raman_nath_time = consts.hbar / std::sqrt(s.depth * s.lattice_recoil);
  } else {
    s.harmonic_period = kInf;
    s.raman_nath_time = kInf;
  }
  return s;
}

double omega_ho_from_recoil(const DerivedScales& scales, const PhysicalConstants& consts) {
  return 2.0 * std::sqrt(scales.depth * scales.lattice_recoil) / consts.hbar;
}

void TrapSpec::validate() const {
  require_positive(nu_z, "trap nu_z");
  require_positive(nu_x, "trap nu_x");
  require_positive(nu_y, "trap nu_y");
  require_positive(atom_number, "atom number");
}

CondensateGeometry thomas_fermi_geometry(const TrapSpec& trap, const PhysicalConstants& consts) {
  trap.validate();
  consts.validate();

  const double hbar = consts.hbar;
  const double mass = consts.atomic_mass;
  const double a_s = consts.scattering_length;

  const double omega_x = 2.0 * kPi * trap.nu_x;
  const double omega_y = 2.0 * kPi * trap.nu_y;
  const double omega_z = 2.0 * kPi * trap.nu_z;
  const double omega_bar = std::cbrt(omega_x * omega_y * omega_z);
  const double a_bar = std::sqrt(hbar / (mass * omega_bar));

  CondensateGeometry g;
  g.chemical_potential =
      0.5 * hbar * omega_bar * std::pow(15.0 * trap.atom_number * a_s / a_bar, 0.4);
  const auto radius = [&](double omega) {
    return std::sqrt(2.0 * g.chemical_potential / (mass * omega * omega));
  };
  g.radius_x = radius(omega_x);
  g.radius_y = radius(omega_y);
  g.radius_z = radius(omega_z);

  g.g_3d = 4.0 * kPi * hbar * hbar * a_s / mass;
  g.g_1d = 4.0 * g.g_3d / (3.0 * kPi * g.radius_x * g.radius_y);
  // Integrating the inverted parabola over x, y gives n(z) = 15N/(16 R_z) (1 - z^2/R_z^2)^2.
  g.peak_linear_density = 15.0 * trap.atom_number / (16.0 * g.radius_z);
  return g;
}

double harmonic_period_internal(double u0) {
  return u0 > 0.0 ? kPi / std::sqrt(u0) : kInf;
}

double raman_nath_time_internal(double u0) {
  return u0 > 0.0 ? 1.0 / std::sqrt(u0) : kInf;
}

DimensionlessProblem to_internal_units(const DerivedScales& scales, const PhysicalConstants& consts) {
  DimensionlessProblem p;
  p.u0 = scales.depth_lattice_units;
  p.harmonic_period = harmonic_period_internal(p.u0);
  p.raman_nath_time = raman_nath_time_internal(p.u0);
  p.energy_unit = scales.lattice_recoil;
  p.time_unit = consts.hbar / scales.lattice_recoil;
  p.length_unit = 1.0 / scales.kappa_l;
  p.momentum_unit = consts.hbar * scales.kappa_l;
  return p;
}

double interaction_internal(const CondensateGeometry& geometry, const DerivedScales& scales) {
  return geometry.g_1d * geometry.peak_linear_density / scales.lattice_recoil;
}

}  // namespace latdiff
