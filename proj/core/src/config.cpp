#include "latdiff/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "latdiff/error.hpp"

namespace latdiff {

namespace {

using Json = nlohmann::json;

// Reads one JSON object, remembering which keys were consumed.
class Section {
 public:
  Section(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_, "must be an object");
  }

  std::string key(std::string_view name) const {
    return path_.empty() ? std::string(name) : path_ + "." + std::string(name);
  }

  const Json* find(std::string_view name) {
    seen_.emplace(name);
    const auto it = node_.find(std::string(name));
    return it == node_.end() ? nullptr : &*it;
  }

  bool has(std::string_view name) const { return node_.contains(std::string(name)); }

  void number(std::string_view name, double& out) {
    if (const Json* v = find(name)) {
      if (!v->is_number()) throw ConfigError(key(name), "must be a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ConfigError(key(name), "must be finite");
    }
  }

  template <typename Int>
  void integer(std::string_view name, Int& out) {
    if (const Json* v = find(name)) {
      if (!v->is_number_integer()) throw ConfigError(key(name), "must be an integer");
      const auto raw = v->get<long long>();
      if (raw < 0) throw ConfigError(key(name), "must be >= 0");
      out = static_cast<Int>(raw);
    }
  }

  void boolean(std::string_view name, bool& out) {
    if (const Json* v = find(name)) {
      if (!v->is_boolean()) throw ConfigError(key(name), "must be true or false");
      out = v->get<bool>();
    }
  }

  void string(std::string_view name, std::string& out) {
    if (const Json* v = find(name)) {
      if (!v->is_string()) throw ConfigError(key(name), "must be a string");
      out = v->get<std::string>();
    }
  }

  void number_list(std::string_view name, std::vector<double>& out) {
    if (const Json* v = find(name)) {
      if (!v->is_array()) throw ConfigError(key(name), "must be an array of numbers");
      out.clear();
      for (const auto& item : *v) {
        if (!item.is_number()) throw ConfigError(key(name), "must be an array of numbers");
        out.push_back(item.get<double>());
      }
    }
  }

  std::optional<Section> child(std::string_view name) {
    if (const Json* v = find(name)) return Section(*v, key(name));
    return std::nullopt;
  }

  void reject_unknown() const {
    for (const auto& item : node_.items()) {
      if (!seen_.contains(item.key())) throw ConfigError(key(item.key()), "unknown key");
    }
  }

 private:
  const Json& node_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

void parse_lattice(Section& s, RunConfig& cfg) {
  s.number("depth", cfg.lattice.depth.value);
  std::string unit = "E_R";
  s.string("depth_unit", unit);
  if (unit == "E_R") {
    cfg.lattice.depth.unit = EnergyUnit::kPhotonRecoil;
  } else if (unit == "E_L") {
    cfg.lattice.depth.unit = EnergyUnit::kLatticeRecoil;
  } else {
    throw ConfigError(s.key("depth_unit"), "must be \"E_R\" or \"E_L\"");
  }
  double period_um = 0.0;
  s.number("period_um", period_um);
  cfg.lattice.period = period_um * 1e-6;
  if (const Json* v = s.find("wavelength_nm")) {
    if (v->is_null()) {
      cfg.constants.laser_wavelength.reset();
    } else if (v->is_number()) {
      cfg.constants.laser_wavelength = v->get<double>() * 1e-9;
    } else {
      throw ConfigError(s.key("wavelength_nm"), "must be a number or null");
    }
  }
  s.reject_unknown();
}

void parse_constants(Section& s, RunConfig& cfg) {
  double a_nm = cfg.constants.scattering_length * 1e9;
  s.number("scattering_length_nm", a_nm);
  cfg.constants.scattering_length = a_nm * 1e-9;
  s.number("atomic_mass_kg", cfg.constants.atomic_mass);
  s.reject_unknown();
}

void parse_trap(Section& s, RunConfig& cfg) {
  s.number("nu_z_hz", cfg.trap.nu_z);
  s.number("nu_x_hz", cfg.trap.nu_x);
  s.number("nu_y_hz", cfg.trap.nu_y);
  s.number("atom_number", cfg.trap.atom_number);
  s.reject_unknown();
}

void parse_engine(Section& s, RunConfig& cfg) {
  std::string kind = to_string(cfg.engine.kind);
  s.string("kind", kind);
  if (kind == "quantum") {
    cfg.engine.kind = CarpetSource::kQuantum;
  } else if (kind == "classical") {
    cfg.engine.kind = CarpetSource::kClassical;
  } else {
    throw ConfigError(s.key("kind"), "must be \"quantum\" or \"classical\"");
  }
  s.boolean("mean_field", cfg.engine.mean_field);
  s.integer("grid_points", cfg.engine.grid_points);
  s.integer("steps_per_t_rn", cfg.engine.steps_per_t_rn);
  s.integer("particles", cfg.engine.particles);
  s.integer("steps_per_t_ho", cfg.engine.steps_per_t_ho);
  std::string potential = "sinusoidal";
  s.string("potential", potential);
  if (potential == "sinusoidal") {
    cfg.engine.potential = PotentialShape::kSinusoidal;
  } else if (potential == "harmonic") {
    cfg.engine.potential = PotentialShape::kHarmonic;
  } else {
    throw ConfigError(s.key("potential"), "must be \"sinusoidal\" or \"harmonic\"");
  }
  s.reject_unknown();
}

void parse_pulse(Section& s, RunConfig& cfg) {
  if (s.has("times_t_ho") && (s.has("t_max_t_ho") || s.has("columns"))) {
    throw ConfigError(s.key("times_t_ho"), "cannot be combined with t_max_t_ho or columns");
  }
  s.number("t_max_t_ho", cfg.pulse.t_max_t_ho);
  s.integer("columns", cfg.pulse.columns);
  s.number_list("times_t_ho", cfg.pulse.times_t_ho);
  s.reject_unknown();
}

void parse_diagnostics(Section& s, RunConfig& cfg) {
  s.number("blur_orders", cfg.diagnostics.blur_orders);
  s.number("kmax_threshold", cfg.diagnostics.kmax_threshold);
  s.integer("bins_per_order", cfg.diagnostics.bins_per_order);
  s.integer("margin_orders", cfg.diagnostics.margin_orders);
  s.reject_unknown();
}

void parse_output(Section& s, RunConfig& cfg) {
  s.string("directory", cfg.output.directory);
  s.integer("trajectory_count", cfg.output.trajectory_count);
  s.number_list("portrait_times_t_ho", cfg.output.portrait_times_t_ho);
  s.reject_unknown();
}

void check_times(const std::vector<double>& times, const std::string& key) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) throw ConfigError(key, "times must be finite and >= 0");
    if (i > 0 && times[i] <= times[i - 1]) throw ConfigError(key, "times must be strictly increasing");
  }
}

}  // namespace

std::vector<double> PulseConfig::durations_t_ho() const {
  if (!times_t_ho.empty()) return times_t_ho;
  if (columns == 1) return {t_max_t_ho};
  std::vector<double> t(columns);
  for (std::size_t i = 0; i < columns; ++i) {
    t[i] = t_max_t_ho * static_cast<double>(i) / static_cast<double>(columns - 1);
  }
  return t;
}

void RunConfig::validate() const {
  try {
    constants.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("constants", e.what());
  }
  if (!(lattice.period > 0.0)) throw ConfigError("lattice.period_um", "must be > 0");
  if (!(lattice.depth.value >= 0.0)) throw ConfigError("lattice.depth", "must be >= 0");
  try {
    lattice.validate(constants);
  } catch (const Error& e) {
    throw ConfigError("lattice", e.what());
  }
  try {
    trap.validate();
  } catch (const Error& e) {
    throw ConfigError("trap", e.what());
  }

  const auto n = engine.grid_points;
  if (n < 64 || (n & (n - 1)) != 0) throw ConfigError("engine.grid_points", "must be a power of two >= 64");
  if (engine.steps_per_t_rn < 20) throw ConfigError("engine.steps_per_t_rn", "must be >= 20 (dt <= t_RN/20)");
  if (engine.particles < 100) throw ConfigError("engine.particles", "must be >= 100");
  if (engine.steps_per_t_ho < 1000) throw ConfigError("engine.steps_per_t_ho", "must be >= 1000 (dt <= T_ho/1000)");

  if (pulse.times_t_ho.empty()) {
    if (!(pulse.t_max_t_ho >= 0.0)) throw ConfigError("pulse.t_max_t_ho", "must be >= 0");
    if (pulse.columns < 1) throw ConfigError("pulse.columns", "must be >= 1");
  } else {
    check_times(pulse.times_t_ho, "pulse.times_t_ho");
  }

  if (!(diagnostics.blur_orders >= 0.0)) throw ConfigError("diagnostics.blur_orders", "must be >= 0");
  if (!(diagnostics.kmax_threshold > 0.0 && diagnostics.kmax_threshold < 1.0)) {
    throw ConfigError("diagnostics.kmax_threshold", "must lie in (0, 1)");
  }
  if (diagnostics.bins_per_order < 1) throw ConfigError("diagnostics.bins_per_order", "must be >= 1");

  const auto scales = derive_scales(lattice, constants);
  const auto axis = MomentumAxis::for_depth(scales.depth_lattice_units, diagnostics.bins_per_order,
                                            diagnostics.margin_orders);
  const int max_order = static_cast<int>(n / 4);
  if (engine.kind == CarpetSource::kQuantum && axis.half_orders > max_order) {
    throw ConfigError("diagnostics.margin_orders",
                      "momentum axis needs " + std::to_string(axis.half_orders) + " orders but a " +
                          std::to_string(n) + "-point grid resolves " + std::to_string(max_order));
  }
  if (output.directory.empty()) throw ConfigError("output.directory", "must not be empty");
  check_times(output.portrait_times_t_ho, "output.portrait_times_t_ho");
}

RunConfig parse_config(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }

  RunConfig cfg;
  Section top(root, "");
  if (auto s = top.child("lattice")) parse_lattice(*s, cfg);
  if (auto s = top.child("constants")) parse_constants(*s, cfg);
  if (auto s = top.child("trap")) parse_trap(*s, cfg);
  if (auto s = top.child("engine")) parse_engine(*s, cfg);
  if (auto s = top.child("pulse")) parse_pulse(*s, cfg);
  if (auto s = top.child("diagnostics")) parse_diagnostics(*s, cfg);
  if (auto s = top.child("output")) parse_output(*s, cfg);
  top.reject_unknown();

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

RunConfig load_preset(std::string_view name) {
  const auto text = preset_text(name);
  if (!text) throw Error("unknown preset " + std::string(name));
  return parse_config(*text);
}

}  // namespace latdiff
