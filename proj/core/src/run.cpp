#include "latdiff/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>

#include "latdiff/bloch.hpp"
#include "latdiff/error.hpp"
#include "latdiff/output.hpp"
#include "latdiff/raman_nath.hpp"

namespace fs = std::filesystem;

namespace latdiff {

namespace {

using Files = std::vector<fs::path>;

constexpr Subcommand kAll[] = {Subcommand::kCarpet,   Subcommand::kBloch,     Subcommand::kClassical,
                               Subcommand::kCaustics, Subcommand::kRamanNath, Subcommand::kScales};

double as_fraction_of_period(double x) { return x / kPi; }

std::vector<std::uint8_t> to_gray(const Carpet& carpet) {
  const std::size_t width = carpet.columns.size();
  const std::size_t height = carpet.axis.size();
  double peak = 0.0;
  for (const auto& column : carpet.columns) peak = std::max(peak, *std::max_element(column.begin(), column.end()));

  std::vector<std::uint8_t> pixels(width * height, 0);
  if (peak <= 0.0) return pixels;
  for (std::size_t c = 0; c < width; ++c) {
    for (std::size_t b = 0; b < height; ++b) {
      const double level = std::round(255.0 * carpet.columns[c][b] / peak);
      pixels[(height - 1 - b) * width + c] = static_cast<std::uint8_t>(std::clamp(level, 0.0, 255.0));
    }
  }
  return pixels;
}

void write_analysis(const fs::path& path, const Carpet& blurred, const RunConfig& config,
                    const RunContext& ctx) {
  CsvWriter csv(path, {"quantity", "value"});
  csv.cell("max_clipped_mass").cell(*std::max_element(blurred.clipped.begin(), blurred.clipped.end())).end_row();
  const double span = blurred.times.back() - blurred.times.front();
  const double period = harmonic_period_internal(ctx.u0);

  if (ctx.u0 == 0.0 || span >= period * (1.0 - 1e-9)) {
    const auto est = detect_kmax(blurred, config.diagnostics.kmax_threshold, ctx.scales.photon_to_lattice_ratio());
    csv.cell("k_max_hbar_kappa").cell(est.k_max).end_row();
    csv.cell("depth_estimate_e_l").cell(est.depth_lattice_units).end_row();
    if (est.depth_photon_units) csv.cell("depth_estimate_e_r").cell(*est.depth_photon_units).end_row();
  }

  const double columns_per_period =
      span > 0.0 ? static_cast<double>(blurred.times.size() - 1) * period / span : 0.0;
  if (ctx.u0 > 0.0 && span >= 2.0 * period * (1.0 - 1e-9) && columns_per_period >= 50.0 * (1.0 - 1e-9)) {
    const auto report = detect_collapses(blurred);
    for (std::size_t i = 0; i < report.collapse_times.size(); ++i) {
      csv.cell("collapse_" + std::to_string(i + 1) + "_t_over_tho").cell(report.collapse_times[i] / period).end_row();
    }
    for (std::size_t i = 0; i < report.revival_times.size(); ++i) {
      csv.cell("revival_" + std::to_string(i + 1) + "_t_over_tho").cell(report.revival_times[i] / period).end_row();
    }
    if (const auto offset = report.first_collapse_offset()) {
      csv.cell("first_collapse_offset_t_over_tho").cell(*offset).end_row();
    }
  }
  csv.close();
}

Files run_carpet(const RunConfig& config, const RunContext& ctx, const fs::path& dir) {
  Files files;
  Carpet carpet;
  carpet.source = config.engine.kind;
  carpet.u0 = ctx.u0;
  carpet.axis = ctx.axis;
  carpet.times = ctx.pulse_times;

  if (config.engine.kind == CarpetSource::kQuantum) {
    const auto snapshots = quantum_snapshots(ctx.u0, ctx.pulse_times, ctx.quantum);

    CsvWriter orders(dir / "orders.csv", {"t_over_tho", "n", "population"});
    CsvWriter density(dir / "density.csv", {"t_over_tho", "z_over_d", "density"});
    for (std::size_t c = 0; c < snapshots.size(); ++c) {
      const double t = ctx.pulse_times[c] / ctx.time_unit;
      const auto spectrum = momentum_spectrum(snapshots[c]);
      carpet.columns.push_back(rasterize(spectrum, ctx.axis));
      carpet.clipped.push_back(clipped_mass(spectrum, ctx.axis));
      for (int n = -ctx.axis.half_orders; n <= ctx.axis.half_orders; ++n) {
        orders.cell(t).cell(n).cell(spectrum.at(n)).end_row();
      }
      const auto profile = density_profile(snapshots[c]);
      for (std::size_t j = 0; j < profile.size(); ++j) {
        density.cell(t).cell(as_fraction_of_period(snapshots[c].grid.position(j))).cell(profile[j]).end_row();
      }
    }
    orders.close();
    density.close();
    files.push_back(dir / "orders.csv");
    files.push_back(dir / "density.csv");
  } else {
    const auto set = classical_ensemble(ctx.u0, ctx.pulse_times, ctx.classical);
    for (double t : set.times) carpet.columns.push_back(momentum_histogram(set, t, ctx.axis));
    carpet.clipped.assign(carpet.columns.size(), 0.0);
  }

  const auto blurred = gaussian_blur(carpet, 2.0 * config.diagnostics.blur_orders);

  CsvWriter csv(dir / "carpet.csv", {"t_over_tho", "p_hbar_kappa", "density", "density_blurred"});
  for (std::size_t c = 0; c < carpet.columns.size(); ++c) {
    for (std::size_t b = 0; b < ctx.axis.size(); ++b) {
      csv.cell(carpet.times[c] / ctx.time_unit)
          .cell(ctx.axis.center(b))
          .cell(carpet.columns[c][b])
          .cell(blurred.columns[c][b])
          .end_row();
    }
  }
  csv.close();
  files.push_back(dir / "carpet.csv");

  write_pgm(dir / "carpet.pgm", blurred.columns.size(), ctx.axis.size(), to_gray(blurred));
  files.push_back(dir / "carpet.pgm");

  write_analysis(dir / "analysis.csv", blurred, config, ctx);
  files.push_back(dir / "analysis.csv");
  return files;
}

Files run_bloch(const RunContext& ctx, const fs::path& dir) {
  const auto spectrum = band_spectrum_q0(ctx.u0, PlaneWaveBasis::for_depth(ctx.u0));
  const auto table = project_uniform(spectrum);

  CsvWriter states(dir / "bloch_states.csv", {"band_index", "energy_e_l", "parity", "occupation", "bound"});
  for (const auto& e : table.entries) {
    states.cell(e.band_index).cell(e.energy).cell(to_string(e.parity)).cell(e.occupation).cell(e.bound ? 1 : 0).end_row();
  }
  states.close();

  const auto gaps = even_gap_series(table);
  CsvWriter gap_csv(dir / "bloch_gaps.csv",
                    {"band_index", "energy_e_l", "gap_e_l", "normalized_gap", "occupation", "bound"});
  for (const auto& g : gaps.points) {
    gap_csv.cell(g.band_index).cell(g.energy).cell(g.gap).cell(g.normalized_gap).cell(g.occupation).cell(g.bound ? 1 : 0).end_row();
  }
  gap_csv.close();

  CsvWriter summary(dir / "bloch_summary.csv", {"quantity", "value"});
  summary.cell("depth_e_l").cell(ctx.u0).end_row();
  summary.cell("basis_m_max").cell(spectrum.basis.m_max).end_row();
  summary.cell("bound_states").cell(count_bound_states(spectrum)).end_row();
  summary.cell("bound_fraction").cell(table.bound_fraction).end_row();
  summary.cell("captured_fraction").cell(table.captured_fraction).end_row();
  summary.cell("gaps_normalized").cell(gaps.normalized ? 1 : 0).end_row();
  summary.close();
  return {dir / "bloch_states.csv", dir / "bloch_gaps.csv", dir / "bloch_summary.csv"};
}

Files run_classical(const RunConfig& config, const RunContext& ctx, const fs::path& dir) {
  std::vector<double> portrait_times;
  for (double f : config.output.portrait_times_t_ho) portrait_times.push_back(f * ctx.time_unit);
  std::vector<double> samples = ctx.pulse_times;
  samples.insert(samples.end(), portrait_times.begin(), portrait_times.end());
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  const auto set = classical_ensemble(ctx.u0, samples, ctx.classical);
  const std::size_t n = set.initial_positions.size();
  const std::size_t count = std::min(config.output.trajectory_count, n);

  std::vector<std::size_t> picks;
  for (std::size_t i = 0; i < count; ++i) {
    picks.push_back(count == 1 ? n / 2 : static_cast<std::size_t>(std::llround(static_cast<double>(i) * static_cast<double>(n - 1) / static_cast<double>(count - 1))));
  }

  CsvWriter traj(dir / "trajectories.csv", {"t_over_tho", "z0_over_d", "z_over_d", "p_hbar_kappa"});
  for (double t : ctx.pulse_times) {
    const auto k = set.sample_index(t);
    for (auto i : picks) {
      traj.cell(t / ctx.time_unit)
          .cell(as_fraction_of_period(set.initial_positions[i]))
          .cell(as_fraction_of_period(set.positions[k][i]))
          .cell(set.momenta[k][i])
          .end_row();
    }
  }
  traj.close();

  CsvWriter turning(dir / "turning_times.csv", {"z0_over_d", "first_turning_t_over_tho", "period_t_over_tho"});
  for (auto i : picks) {
    const double z0 = set.initial_positions[i];
    const double period = ctx.u0 > 0.0 && config.engine.potential == PotentialShape::kSinusoidal && z0 != 0.0
                              ? oscillation_period(z0, ctx.u0) / ctx.time_unit
                              : std::nan("");
    turning.cell(as_fraction_of_period(z0)).cell(set.first_turning_times[i] / ctx.time_unit).cell(period).end_row();
  }
  turning.close();

  CsvWriter portrait(dir / "portrait.csv", {"t_over_tho", "z0_over_d", "z_over_d", "p_hbar_kappa"});
  for (double t : portrait_times) {
    for (const auto& pt : phase_portrait(set, t)) {
      portrait.cell(t / ctx.time_unit)
          .cell(as_fraction_of_period(pt.initial_position))
          .cell(as_fraction_of_period(pt.position))
          .cell(pt.momentum)
          .end_row();
    }
  }
  portrait.close();
  return {dir / "trajectories.csv", dir / "turning_times.csv", dir / "portrait.csv"};
}

Files run_caustics(const RunContext& ctx, const fs::path& dir) {
  const auto set = classical_ensemble(ctx.u0, ctx.pulse_times, ctx.classical);
  const double p_max = max_momentum(ctx.u0);
  CsvWriter csv(dir / "caustics.csv", {"t_over_tho", "p_hbar_kappa", "p_over_pmax", "z0_over_d"});
  for (double t : set.times) {
    for (const auto& c : find_caustics(set, t)) {
      csv.cell(t / ctx.time_unit).cell(c.momentum).cell(c.momentum / p_max).cell(as_fraction_of_period(c.initial_position)).end_row();
    }
  }
  csv.close();
  return {dir / "caustics.csv"};
}

Files run_raman_nath(const RunContext& ctx, const fs::path& dir) {
  const double t_rn = raman_nath_time_internal(ctx.u0);
  std::vector<double> times;
  for (double t : ctx.pulse_times) {
    if (t <= t_rn) times.push_back(t);
  }

  CsvWriter csv(dir / "ramannath.csv",
                {"t_over_t_rn", "pulse_area", "valid", "n", "population_bessel", "population_split_step"});
  if (!times.empty() && ctx.u0 > 0.0) {
    QuantumEngineSettings single = ctx.quantum;
    single.g1d_internal = 0.0;
    const auto snapshots = quantum_snapshots(ctx.u0, times, single);
    const int n_max = rn_min_orders(0.5 * ctx.u0 * times.back());
    for (std::size_t k = 0; k < times.size(); ++k) {
      const auto prediction = rn_populations(ctx.u0, times[k], n_max);
      const auto spectrum = momentum_spectrum(snapshots[k]);
      const auto validity = rn_is_valid_internal(times[k], ctx.u0);
      for (int n = -n_max; n <= n_max; ++n) {
        csv.cell(validity.margin)
            .cell(prediction.pulse_area)
            .cell(validity.valid ? 1 : 0)
            .cell(n)
            .cell(prediction.at(n))
            .cell(n <= spectrum.n_max && n >= -spectrum.n_max ? spectrum.at(n) : 0.0)
            .end_row();
      }
    }
  }
  csv.close();
  return {dir / "ramannath.csv"};
}

Files run_scales(const RunConfig& config, const RunContext& ctx, const fs::path& dir) {
  const auto& s = ctx.scales;
  const auto& g = ctx.geometry;
  CsvWriter csv(dir / "scales.csv", {"quantity", "value", "unit"});
  const auto row = [&](const char* name, double value, const char* unit) {
    csv.cell(name).cell(value).cell(unit).end_row();
  };
  row("period", config.lattice.period, "m");
  row("kappa_l", s.kappa_l, "1/m");
  row("lattice_recoil", s.lattice_recoil, "J");
  if (s.photon_recoil) {
    row("photon_recoil", *s.photon_recoil, "J");
    row("photon_to_lattice_ratio", *s.photon_to_lattice_ratio(), "1");
    row("depth_e_r", *s.depth_photon_units(), "E_R");
  }
  row("depth", s.depth, "J");
  row("depth_e_l", s.depth_lattice_units, "E_L");
  row("omega_ho", s.omega_ho, "rad/s");
  row("harmonic_period", s.harmonic_period, "s");
  row("raman_nath_time", s.raman_nath_time, "s");
  row("harmonic_period_internal", harmonic_period_internal(ctx.u0), "hbar/E_L");
  row("raman_nath_time_internal", raman_nath_time_internal(ctx.u0), "hbar/E_L");
  row("max_momentum", max_momentum(ctx.u0), "hbar*kappa_l");
  row("chemical_potential", g.chemical_potential, "J");
  row("radius_z", g.radius_z, "m");
  row("radius_x", g.radius_x, "m");
  row("radius_y", g.radius_y, "m");
  row("diameter_z", g.diameter_z(), "m");
  row("g_3d", g.g_3d, "J*m^3");
  row("g_1d", g.g_1d, "J*m");
  row("peak_linear_density", g.peak_linear_density, "1/m");
  row("g1d_internal", interaction_internal(g, s), "E_L");
  csv.close();
  return {dir / "scales.csv"};
}

}  // namespace

std::optional<Subcommand> parse_subcommand(std::string_view name) {
  for (auto c : kAll) {
    if (name == to_string(c)) return c;
  }
  return std::nullopt;
}

const char* to_string(Subcommand command) {
  switch (command) {
    case Subcommand::kCarpet: return "carpet";
    case Subcommand::kBloch: return "bloch";
    case Subcommand::kClassical: return "classical";
    case Subcommand::kCaustics: return "caustics";
    case Subcommand::kRamanNath: return "ramannath";
    case Subcommand::kScales: return "scales";
  }
  return "?";
}

std::vector<Subcommand> all_subcommands() { return {std::begin(kAll), std::end(kAll)}; }

fs::path resolve_output_dir(const RunConfig& config, const std::optional<fs::path>& cli_dir) {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  if (cli_dir && !cli_dir->empty()) return *cli_dir;
  return config.output.directory;
}

RunContext make_context(const RunConfig& config) {
  config.validate();
  RunContext ctx;
  ctx.scales = derive_scales(config.lattice, config.constants);
  ctx.geometry = thomas_fermi_geometry(config.trap, config.constants);
  ctx.u0 = ctx.scales.depth_lattice_units;
  const double period = harmonic_period_internal(ctx.u0);
  ctx.time_unit = std::isfinite(period) ? period : 1.0;
  ctx.g1d_internal = config.engine.mean_field ? interaction_internal(ctx.geometry, ctx.scales) : 0.0;
  for (double f : config.pulse.durations_t_ho()) ctx.pulse_times.push_back(f * ctx.time_unit);
  ctx.axis = MomentumAxis::for_depth(ctx.u0, config.diagnostics.bins_per_order, config.diagnostics.margin_orders);

  ctx.quantum.grid_points = config.engine.grid_points;
  ctx.quantum.g1d_internal = ctx.g1d_internal;
  if (ctx.u0 > 0.0) ctx.quantum.dt = raman_nath_time_internal(ctx.u0) / config.engine.steps_per_t_rn;

  ctx.classical.n_particles = config.engine.particles;
  ctx.classical.shape = config.engine.potential;
  if (ctx.u0 > 0.0) ctx.classical.dt = period / config.engine.steps_per_t_ho;
  return ctx;
}

std::vector<fs::path> run_subcommand(Subcommand command, const RunConfig& config, const fs::path& out_dir) {
  const auto ctx = make_context(config);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create output directory " + out_dir.string() + ": " + ec.message());

  switch (command) {
    case Subcommand::kCarpet: return run_carpet(config, ctx, out_dir);
    case Subcommand::kBloch: return run_bloch(ctx, out_dir);
    case Subcommand::kClassical: return run_classical(config, ctx, out_dir);
    case Subcommand::kCaustics: return run_caustics(ctx, out_dir);
    case Subcommand::kRamanNath: return run_raman_nath(ctx, out_dir);
    case Subcommand::kScales: return run_scales(config, ctx, out_dir);
  }
  throw Error("unknown subcommand");
}

}  // namespace latdiff
