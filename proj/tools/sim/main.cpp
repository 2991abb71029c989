#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "latdiff/config.hpp"
#include "latdiff/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Optical lattice diffraction simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::string out_dir;

  for (auto command : latdiff::all_subcommands()) {
    auto* sub = app.add_subcommand(latdiff::to_string(command));
    auto* cfg = sub->add_option("--config", config_path, "JSON run configuration");
    auto* pre = sub->add_option("--preset", preset, "built-in configuration (table1-a .. table1-d)");
    cfg->excludes(pre);
    sub->add_option("--out", out_dir, "output directory (" + std::string(latdiff::kOutputDirEnv) + " overrides)");
  }

  CLI11_PARSE(app, argc, argv);

  const auto* chosen = app.get_subcommands().front();
  const auto command = latdiff::parse_subcommand(chosen->get_name());

  try {
    latdiff::RunConfig config;
    if (!config_path.empty()) {
      config = latdiff::load_config(config_path);
    } else if (!preset.empty()) {
      config = latdiff::load_preset(preset);
    } else {
      std::fprintf(stderr, "error: one of --config or --preset is required\n");
      return 2;
    }
    std::optional<std::filesystem::path> cli_out;
    if (!out_dir.empty()) cli_out = out_dir;
    const auto dir = latdiff::resolve_output_dir(config, cli_out);
    for (const auto& file : latdiff::run_subcommand(*command, config, dir)) {
      std::printf("%s\n", file.string().c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
