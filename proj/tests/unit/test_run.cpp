#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "latdiff/error.hpp"
#include "latdiff/run.hpp"

using namespace latdiff;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "latdiff_test_run" / name;
  fs::remove_all(dir);
  return dir;
}

std::map<std::string, std::string> read_table(const fs::path& path) {
  std::map<std::string, std::string> values;
  std::istringstream in(slurp(path));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    values[line.substr(0, a)] = line.substr(a + 1, b == std::string::npos ? std::string::npos : b - a - 1);
  }
  return values;
}

RunConfig small_config() {
  return parse_config(R"({
    "lattice": {"depth": 30, "period_um": 1.8},
    "engine": {"particles": 400},
    "pulse": {"t_max_t_ho": 1.2, "columns": 25},
    "output": {"portrait_times_t_ho": [0.5]}
  })");
}

}  // namespace

TEST_CASE("subcommand names") {
  for (auto c : all_subcommands()) CHECK(parse_subcommand(to_string(c)) == c);
  CHECK_FALSE(parse_subcommand("spectrum").has_value());
  CHECK(all_subcommands().size() == 6);
}

TEST_CASE("output directory precedence") {
  RunConfig cfg = small_config();
  cfg.output.directory = "from-config";
  unsetenv(kOutputDirEnv);
  CHECK(resolve_output_dir(cfg, std::nullopt) == "from-config");
  CHECK(resolve_output_dir(cfg, fs::path("from-cli")) == "from-cli");
  setenv(kOutputDirEnv, "from-env", 1);
  CHECK(resolve_output_dir(cfg, fs::path("from-cli")) == "from-env");
  setenv(kOutputDirEnv, "", 1);
  CHECK(resolve_output_dir(cfg, fs::path("from-cli")) == "from-cli");
  unsetenv(kOutputDirEnv);
}

TEST_CASE("scales report for table1-d") {
  const auto dir = fresh_dir("scales");
  run_subcommand(Subcommand::kScales, load_preset("table1-d"), dir);
  const auto values = read_table(dir / "scales.csv");
  CHECK(std::stod(values.at("depth_e_l")) == doctest::Approx(15.8e3 * 29.0 / 30.0).epsilon(1e-2));
  CHECK(std::stod(values.at("depth_e_r")) == doctest::Approx(29.0));
}

TEST_CASE("carpet on table1-a over two harmonic periods") {
  auto cfg = load_preset("table1-a");
  cfg.pulse.times_t_ho = {0.0, 2.0};
  const auto dir = fresh_dir("carpet");
  const auto files = run_subcommand(Subcommand::kCarpet, cfg, dir);
  for (const char* name : {"carpet.csv", "carpet.pgm", "orders.csv", "density.csv", "analysis.csv"}) {
    CHECK(fs::exists(dir / name));
  }
  CHECK(files.size() == 5);

  std::map<std::string, double> sums;
  std::istringstream in(slurp(dir / "carpet.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "t_over_tho,p_hbar_kappa,density,density_blurred");
  while (std::getline(in, line)) {
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    const auto c = line.find(',', b + 1);
    sums[line.substr(0, a)] += std::stod(line.substr(b + 1, c - b - 1));
  }
  REQUIRE(sums.size() == 2);
  for (const auto& [t, sum] : sums) CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));

  const auto pgm = slurp(dir / "carpet.pgm");
  CHECK(pgm.rfind("P5\n2 ", 0) == 0);
}

TEST_CASE("every subcommand is deterministic") {
  const auto cfg = small_config();
  for (auto c : all_subcommands()) {
    const auto a = fresh_dir(std::string("det_a_") + to_string(c));
    const auto b = fresh_dir(std::string("det_b_") + to_string(c));
    const auto files_a = run_subcommand(c, cfg, a);
    const auto files_b = run_subcommand(c, cfg, b);
    REQUIRE(files_a.size() == files_b.size());
    for (std::size_t i = 0; i < files_a.size(); ++i) {
      CAPTURE(files_a[i]);
      CHECK(fs::file_size(files_a[i]) > 0);
      CHECK(slurp(files_a[i]) == slurp(files_b[i]));
    }
  }
}

TEST_CASE("engine errors surface from the runner") {
  auto cfg = small_config();
  cfg.engine.particles = 5;
  CHECK_THROWS_AS(run_subcommand(Subcommand::kClassical, cfg, fresh_dir("bad")), ConfigError);
}
