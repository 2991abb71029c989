#pragma once

// Subcommand dispatch: each subcommand runs one engine for a RunConfig and
// writes its CSV (and PGM) files into an output directory.

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "latdiff/config.hpp"

namespace latdiff {

enum class Subcommand { kCarpet, kBloch, kClassical, kCaustics, kRamanNath, kScales };

inline constexpr const char* kOutputDirEnv = "SIM_OUT_DIR";

std::optional<Subcommand> parse_subcommand(std::string_view name);
const char* to_string(Subcommand command);
std::vector<Subcommand> all_subcommands();

/// SIM_OUT_DIR if set and non-empty, else the command-line directory, else
/// the config's output.directory.
std::filesystem::path resolve_output_dir(const RunConfig& config,
                                         const std::optional<std::filesystem::path>& cli_dir);

/// Quantities shared by all subcommands, in internal units.
struct RunContext {
  DerivedScales scales;
  CondensateGeometry geometry;
  double u0 = 0.0;
  double time_unit = 1.0;  // T_ho, or hbar/E_L when u0 = 0
  double g1d_internal = 0.0;
  std::vector<double> pulse_times;
  MomentumAxis axis;
  QuantumEngineSettings quantum;
  ClassicalEngineSettings classical;
};

RunContext make_context(const RunConfig& config);

/// Runs one subcommand, creating out_dir if needed; returns the files written.
std::vector<std::filesystem::path> run_subcommand(Subcommand command, const RunConfig& config,
                                                  const std::filesystem::path& out_dir);

}  // namespace latdiff
