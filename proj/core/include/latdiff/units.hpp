#pragma once

// Physical constants, lattice and trap parameters, and the derived scales
// shared by every engine.
//
// Internal convention used throughout the library: hbar = 1, position
// x = kappa_L * z so one lattice period spans [-pi/2, pi/2), energies in the
// lattice recoil E_L, time in hbar / E_L, momentum in hbar * kappa_L. In these
// units H = p^2 + u0 sin^2(x), T_ho = pi / sqrt(u0), t_RN = 1 / sqrt(u0) and
// diffraction order n sits at momentum 2n.

#include <optional>

namespace latdiff {

inline constexpr double kPi = 3.14159265358979323846;

struct PhysicalConstants {
  double hbar = 1.054571817e-34;             // J s
  double atomic_mass = 1.4431608951e-25;     // kg, 87Rb
  double scattering_length = 5.31e-9;        // m, F=1 background value
  std::optional<double> laser_wavelength = 810e-9;  // m

  void validate() const;
};

/// Which recoil energy a lattice depth is quoted in.
enum class EnergyUnit {
  kPhotonRecoil,   // E_R = hbar^2 k^2 / 2M, k = 2 pi / lambda
  kLatticeRecoil,  // E_L = hbar^2 kappa_L^2 / 2M, kappa_L = pi / d
};

struct LatticeDepth {
  double value = 0.0;
  EnergyUnit unit = EnergyUnit::kPhotonRecoil;
};

struct LatticeSpec {
  LatticeDepth depth;
  double period = 0.0;  // m

  void validate(const PhysicalConstants& consts) const;
};

struct DerivedScales {
  double kappa_l = 0.0;                 // 1/m
  double lattice_recoil = 0.0;          // E_L, J
  std::optional<double> photon_recoil;  // E_R, J (needs a wavelength)
  double depth = 0.0;                   // U0, J
  double depth_lattice_units = 0.0;     // U0 / E_L
  double omega_ho = 0.0;                // rad/s
  double harmonic_period = 0.0;         // T_ho, s (infinite when U0 = 0)
  double raman_nath_time = 0.0;         // t_RN, s (infinite when U0 = 0)

  /// E_R / E_L = (2d / lambda)^2, when a wavelength is known.
  std::optional<double> photon_to_lattice_ratio() const;
  /// U0 / E_R, when a wavelength is known.
  std::optional<double> depth_photon_units() const;
};

DerivedScales derive_scales(const LatticeSpec& spec, const PhysicalConstants& consts);

/// Harmonic frequency of a lattice site computed from hbar*omega = 2 sqrt(U0 E_L).
double omega_ho_from_recoil(const DerivedScales& scales, const PhysicalConstants& consts);

struct TrapSpec {
  double nu_z = 8.2;   // Hz, lattice direction
  double nu_x = 24.0;  // Hz
  double nu_y = 24.0;  // Hz
  double atom_number = 1.0e5;

  void validate() const;
};

/// Thomas-Fermi condensate in a harmonic trap and its 1D reduction.
struct CondensateGeometry {
  double radius_x = 0.0;  // m
  double radius_y = 0.0;  // m
  double radius_z = 0.0;  // m
  double chemical_potential = 0.0;     // J
  double g_3d = 0.0;                   // J m^3
  double g_1d = 0.0;                   // J m
  double peak_linear_density = 0.0;    // atoms/m along z at the cloud center

  double diameter_z() const { return 2.0 * radius_z; }
};

CondensateGeometry thomas_fermi_geometry(const TrapSpec& trap, const PhysicalConstants& consts);

/// The lattice problem in internal units plus the factors that map back to SI.
struct DimensionlessProblem {
  double u0 = 0.0;               // depth in E_L
  double harmonic_period = 0.0;  // T_ho in hbar/E_L
  double raman_nath_time = 0.0;  // t_RN in hbar/E_L
  double time_unit = 0.0;        // s per internal time unit
  double length_unit = 0.0;      // m per internal length unit (1/kappa_L)
  double momentum_unit = 0.0;    // kg m/s per internal momentum unit
  double energy_unit = 0.0;      // J per internal energy unit

  double time_to_internal(double seconds) const { return seconds / time_unit; }
  double time_to_si(double t) const { return t * time_unit; }
  double position_to_internal(double metres) const { return metres / length_unit; }
  double position_to_si(double x) const { return x * length_unit; }
  double momentum_to_internal(double si) const { return si / momentum_unit; }
  double momentum_to_si(double p) const { return p * momentum_unit; }
  double energy_to_internal(double joules) const { return joules / energy_unit; }
  double energy_to_si(double e) const { return e * energy_unit; }
};

DimensionlessProblem to_internal_units(const DerivedScales& scales, const PhysicalConstants& consts);

/// Harmonic period pi/sqrt(u0) in internal time (infinite for u0 = 0).
double harmonic_period_internal(double u0);
/// Raman-Nath time 1/sqrt(u0) in internal time (infinite for u0 = 0).
double raman_nath_time_internal(double u0);

/// Mean-field coupling for a wavefunction normalized to unit mean density:
/// g_1d times the peak linear density, in units of E_L.
double interaction_internal(const CondensateGeometry& geometry, const DerivedScales& scales);

}  // namespace latdiff
