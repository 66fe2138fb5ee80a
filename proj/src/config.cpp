#include "cryoheat/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cryoheat {

using nlohmann::json;

namespace {

// Rejects keys outside `allowed` so that a misspelt unit suffix is an error
// rather than a silently ignored default.
void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
T get(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": key '" + key + "' has the wrong type");
  }
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  return get<T>(obj, key, where);
}

}  // namespace

StaticMode static_mode_from_string(const std::string& text) {
  if (text == "net") return StaticMode::Net;
  if (text == "incoming") return StaticMode::Incoming;
  throw ConfigError("static_mode must be 'net' or 'incoming', got '" + text + "'");
}

RunConfig default_run_config() {
  RunConfig c;
  const FridgeModel fridge = FridgeModel::xld1000sl();
  c.fridge_name = fridge.name();
  for (const auto& s : fridge.stages()) {
    c.stages.push_back({s.name, s.temperature_K, s.cooling_power_W, s.incoming_length_m});
  }
  c.below_mxc_length_m = fridge.below_last_length_m();
  c.line_capacity = static_cast<long>(fridge.line_capacity());

  c.cable_name = "SC-086/50-SCN-CN";
  c.layers = {{"outer", 0.2389, "outer_k"}, {"dielectric", 0.3098, "ptfe_k"}, {"inner", 0.0324, "inner_k"}};
  c.conductor_layer = "inner";
  c.resistivity_material = "inner_rho";

  c.lines = {
      {"qubit_xy", {}, 0.0, std::nullopt, 50.0},
      {"qubit_flux", {{"4K", 20.0}}, 0.4, std::nullopt, 50.0},
      {"coupler_flux", {{"4K", 20.0}}, 0.4, std::nullopt, 50.0},
      {"read_in", {}, 0.0, std::nullopt, 50.0},
      {"read_out", {{"4K", 0.0}}, 0.0, std::nullopt, 50.0},
      {"twpa_pump", {{"4K", 10.0}, {"Still", 10.0}, {"CP", 10.0}}, 0.0, -40.0, 50.0},
  };
  c.fixed_loads = {{"LNA", "4K", 7.8, "readout_circuit"}};
  return c;
}

RunConfig parse_run_config(const std::string& json_text, const std::string& source,
                           const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": invalid JSON: " + e.what());
  }
  check_keys(root, {"material_files", "fridge", "cable", "lines", "fixed_loads", "processor", "budget"},
             source);

  RunConfig c;
  for (const auto& f : get_or<std::vector<std::string>>(root, "material_files", {}, source)) {
    std::filesystem::path p(f);
    if (p.is_relative()) p = base_dir / p;
    c.material_files.push_back(std::filesystem::absolute(p).lexically_normal().string());
  }

  const json& fridge = root.contains("fridge") ? root.at("fridge") : throw ConfigError(source + ": missing 'fridge'");
  const std::string fw = source + ": fridge";
  check_keys(fridge, {"name", "stages", "below_mxc_length_m", "line_capacity"}, fw);
  c.fridge_name = get_or<std::string>(fridge, "name", "fridge", fw);
  if (!fridge.contains("stages") || !fridge.at("stages").is_array()) {
    throw ConfigError(fw + ": 'stages' must be an array");
  }
  for (const auto& s : fridge.at("stages")) {
    const std::string sw = fw + ".stages";
    check_keys(s, {"name", "temperature_K", "cooling_power_W", "incoming_length_m"}, sw);
    RunConfig::StageEntry e;
    e.name = get<std::string>(s, "name", sw);
    e.temperature_K = get<double>(s, "temperature_K", sw);
    if (s.contains("cooling_power_W")) e.cooling_power_W = get<double>(s, "cooling_power_W", sw);
    e.incoming_length_m = get_or<double>(s, "incoming_length_m", 0.0, sw);
    c.stages.push_back(e);
  }
  c.below_mxc_length_m = get<double>(fridge, "below_mxc_length_m", fw);
  c.line_capacity = get<long>(fridge, "line_capacity", fw);

  if (!root.contains("cable")) throw ConfigError(source + ": missing 'cable'");
  const json& cable = root.at("cable");
  const std::string cw = source + ": cable";
  check_keys(cable, {"name", "layers", "conductor_layer", "resistivity"}, cw);
  c.cable_name = get_or<std::string>(cable, "name", "cable", cw);
  if (!cable.contains("layers") || !cable.at("layers").is_array()) {
    throw ConfigError(cw + ": 'layers' must be an array");
  }
  for (const auto& l : cable.at("layers")) {
    check_keys(l, {"name", "area_mm2", "conductivity"}, cw + ".layers");
    c.layers.push_back({get<std::string>(l, "name", cw), get<double>(l, "area_mm2", cw),
                        get<std::string>(l, "conductivity", cw)});
  }
  c.conductor_layer = get_or<std::string>(cable, "conductor_layer", "", cw);
  c.resistivity_material = get_or<std::string>(cable, "resistivity", "", cw);

  if (root.contains("lines")) {
    const std::string lw = source + ": lines";
    const json& lines = root.at("lines");
    if (!lines.is_object()) throw ConfigError(lw + ": expected an object keyed by line kind");
    for (const auto& [kind, l] : lines.items()) {
      check_keys(l, {"attenuation_dB", "current_mA", "power_dBm", "z0_ohm"}, lw + "." + kind);
      RunConfig::LineEntry e;
      e.kind = kind;
      e.attenuation_dB = get_or<std::map<std::string, double>>(l, "attenuation_dB", {}, lw);
      e.current_mA = get_or<double>(l, "current_mA", 0.0, lw);
      if (l.contains("power_dBm")) e.power_dBm = get<double>(l, "power_dBm", lw);
      e.z0_ohm = get_or<double>(l, "z0_ohm", 50.0, lw);
      c.lines.push_back(e);
    }
  }

  if (root.contains("fixed_loads")) {
    const std::string xw = source + ": fixed_loads";
    for (const auto& f : root.at("fixed_loads")) {
      check_keys(f, {"label", "stage", "power_mW", "per"}, xw);
      c.fixed_loads.push_back({get_or<std::string>(f, "label", "fixed", xw),
                               get<std::string>(f, "stage", xw), get<double>(f, "power_mW", xw),
                               get_or<std::string>(f, "per", "readout_circuit", xw)});
    }
  }

  if (root.contains("processor")) {
    const std::string pw = source + ": processor";
    const json& p = root.at("processor");
    check_keys(p, {"n", "readout_multiplex"}, pw);
    c.processor_n = get_or<long>(p, "n", c.processor_n, pw);
    c.readout_multiplex = get_or<long>(p, "readout_multiplex", c.readout_multiplex, pw);
  }

  if (root.contains("budget")) {
    const std::string bw = source + ": budget";
    const json& b = root.at("budget");
    check_keys(b, {"margin", "static_mode", "readout_chain_guidance"}, bw);
    c.margin = get_or<double>(b, "margin", c.margin, bw);
    c.static_mode = get_or<std::string>(b, "static_mode", c.static_mode, bw);
    c.readout_chain_guidance = get_or<long>(b, "readout_chain_guidance", c.readout_chain_guidance, bw);
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path.string(), path.parent_path());
}

std::string dump_run_config(const RunConfig& c) {
  json root;
  root["material_files"] = c.material_files;

  json stages = json::array();
  for (const auto& s : c.stages) {
    json j{{"name", s.name}, {"temperature_K", s.temperature_K}};
    if (s.cooling_power_W) j["cooling_power_W"] = *s.cooling_power_W;
    if (s.incoming_length_m != 0.0) j["incoming_length_m"] = s.incoming_length_m;
    stages.push_back(j);
  }
  root["fridge"] = {{"name", c.fridge_name},
                    {"stages", stages},
                    {"below_mxc_length_m", c.below_mxc_length_m},
                    {"line_capacity", c.line_capacity}};

  json layers = json::array();
  for (const auto& l : c.layers) {
    layers.push_back({{"name", l.name}, {"area_mm2", l.area_mm2}, {"conductivity", l.material}});
  }
  root["cable"] = {{"name", c.cable_name}, {"layers", layers}};
  if (!c.conductor_layer.empty()) root["cable"]["conductor_layer"] = c.conductor_layer;
  if (!c.resistivity_material.empty()) root["cable"]["resistivity"] = c.resistivity_material;

  json lines = json::object();
  for (const auto& l : c.lines) {
    json j{{"attenuation_dB", l.attenuation_dB}, {"current_mA", l.current_mA}, {"z0_ohm", l.z0_ohm}};
    if (l.power_dBm) j["power_dBm"] = *l.power_dBm;
    lines[l.kind] = j;
  }
  root["lines"] = lines;

  json fixed = json::array();
  for (const auto& f : c.fixed_loads) {
    fixed.push_back({{"label", f.label}, {"stage", f.stage}, {"power_mW", f.power_mW}, {"per", f.per}});
  }
  root["fixed_loads"] = fixed;
  root["processor"] = {{"n", c.processor_n}, {"readout_multiplex", c.readout_multiplex}};
  root["budget"] = {{"margin", c.margin},
                    {"static_mode", c.static_mode},
                    {"readout_chain_guidance", c.readout_chain_guidance}};
  return root.dump(2) + "\n";
}

ResolvedConfig resolve(const RunConfig& c) {
  MaterialLibrary materials;
  for (const auto& f : c.material_files) materials.add(load_model_file(f));

  std::vector<Stage> stages;
  for (const auto& s : c.stages) {
    stages.push_back({s.name, s.temperature_K, s.cooling_power_W, s.incoming_length_m});
  }
  if (c.line_capacity <= 0) throw ConfigError("line_capacity must be > 0");
  FridgeModel fridge(c.fridge_name, std::move(stages), c.below_mxc_length_m,
                     static_cast<std::size_t>(c.line_capacity));

  constexpr double kMm2 = 1e-6;
  CableSpec cable;
  cable.name = c.cable_name;
  for (const auto& l : c.layers) {
    cable.layers.push_back({l.name, l.area_mm2 * kMm2, materials.get(l.material)});
  }
  if (!c.resistivity_material.empty()) {
    const auto it = std::find_if(c.layers.begin(), c.layers.end(),
                                 [&](const auto& l) { return l.name == c.conductor_layer; });
    if (it == c.layers.end()) {
      throw ConfigError("conductor_layer '" + c.conductor_layer + "' is not a cable layer");
    }
    cable.conductor = Conductor{materials.get(c.resistivity_material), it->area_mm2 * kMm2};
  }
  cable.validate();

  ProcessorModel processor;
  processor.n = c.processor_n;
  processor.readout_multiplex = c.readout_multiplex;
  for (const auto& l : c.lines) {
    LineSpec spec;
    spec.kind = line_kind_from_string(l.kind);
    spec.attenuation_dB = l.attenuation_dB;
    for (const auto& [stage, dB] : l.attenuation_dB) {
      fridge.index_of(stage);
      if (dB < 0.0) throw ConfigError("line '" + l.kind + "': attenuation must be >= 0 dB");
    }
    if (l.current_mA < 0.0) throw ConfigError("line '" + l.kind + "': current must be >= 0");
    spec.target_current_A = l.current_mA * 1e-3;
    spec.pump_power_W = l.power_dBm ? dbm_to_watts(*l.power_dBm) : 0.0;
    spec.z0_ohm = l.z0_ohm;
    if (!(spec.z0_ohm > 0.0)) throw ConfigError("line '" + l.kind + "': z0_ohm must be > 0");
    processor.lines[spec.kind] = spec;
  }
  processor.validate();

  std::vector<FixedLoad> fixed;
  for (const auto& f : c.fixed_loads) {
    fridge.index_of(f.stage);
    if (f.power_mW < 0.0) throw ConfigError("fixed load '" + f.label + "': power must be >= 0");
    fixed.push_back({f.stage, f.power_mW * 1e-3, f.label, fixed_scale_from_string(f.per)});
  }

  BudgetOptions options;
  options.margin = c.margin;
  if (!(options.margin > 0.0)) throw ConfigError("margin must be > 0");
  options.static_mode = static_mode_from_string(c.static_mode);
  options.readout_chain_guidance = c.readout_chain_guidance;

  return ResolvedConfig{std::move(materials), std::move(fridge), std::move(cable),
                        std::move(processor), std::move(fixed), options};
}

}  // namespace cryoheat
