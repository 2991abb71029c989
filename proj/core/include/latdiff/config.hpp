#pragma once

// Run configuration: a JSON document with the sections lattice, constants,
// trap, engine, pulse, diagnostics and output. Unknown keys are rejected.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latdiff/classical.hpp"
#include "latdiff/diagnostics.hpp"
#include "latdiff/units.hpp"

namespace latdiff {

struct EngineConfig {
  CarpetSource kind = CarpetSource::kQuantum;
  bool mean_field = true;
  std::size_t grid_points = SpatialGrid::kDefaultPoints;
  int steps_per_t_rn = 2000;
  std::size_t particles = 4000;
  int steps_per_t_ho = 1000;
  PotentialShape potential = PotentialShape::kSinusoidal;
};

/// Pulse durations in units of T_ho: either an explicit list or
/// `columns` equally spaced values over [0, t_max_t_ho].
struct PulseConfig {
  double t_max_t_ho = 2.5;
  std::size_t columns = 251;
  std::vector<double> times_t_ho;

  std::vector<double> durations_t_ho() const;
};

struct DiagnosticsConfig {
  double blur_orders = 0.5;  // Gaussian sigma in order spacings (2 hbar kappa_L)
  double kmax_threshold = kDefaultKmaxThreshold;
  int bins_per_order = 4;
  int margin_orders = 24;
};

struct OutputConfig {
  std::string directory = "out";
  std::size_t trajectory_count = 41;
  std::vector<double> portrait_times_t_ho{0.0, 0.25, 0.5, 0.75, 1.0};
};

struct RunConfig {
  LatticeSpec lattice;
  PhysicalConstants constants;
  TrapSpec trap;
  EngineConfig engine;
  PulseConfig pulse;
  DiagnosticsConfig diagnostics;
  OutputConfig output;

  /// Throws ConfigError naming the first offending key.
  void validate() const;
};

/// Parses and validates a configuration; absent keys take their defaults.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::filesystem::path& path);

std::vector<std::string> preset_names();
std::optional<std::string_view> preset_text(std::string_view name);

RunConfig load_preset(std::string_view name);

}  // namespace latdiff
