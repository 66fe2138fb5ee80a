#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cryoheat/attenuators.hpp"
#include "cryoheat/cables.hpp"
#include "cryoheat/fridge.hpp"
#include "cryoheat/materials.hpp"
#include "cryoheat/system.hpp"

namespace cryoheat {

// Run configuration exactly as written in the JSON file. Key names carry
// their units (temperature_K, area_mm2, current_mA, power_dBm, ...); the
// conversion to SI happens in resolve().
struct RunConfig {
  struct StageEntry {
    std::string name;
    double temperature_K = 0.0;
    std::optional<double> cooling_power_W;
    double incoming_length_m = 0.0;
  };
  struct LayerEntry {
    std::string name;
    double area_mm2 = 0.0;
    std::string material;
  };
  struct LineEntry {
    std::string kind;
    std::map<std::string, double> attenuation_dB;
    double current_mA = 0.0;
    std::optional<double> power_dBm;
    double z0_ohm = 50.0;
  };
  struct FixedEntry {
    std::string label;
    std::string stage;
    double power_mW = 0.0;
    std::string per = "readout_circuit";
  };

  std::vector<std::string> material_files;  // absolute after loading

  std::string fridge_name;
  std::vector<StageEntry> stages;
  double below_mxc_length_m = 0.0;
  long line_capacity = 0;

  std::string cable_name;
  std::vector<LayerEntry> layers;
  std::string conductor_layer;
  std::string resistivity_material;

  std::vector<LineEntry> lines;
  std::vector<FixedEntry> fixed_loads;

  long processor_n = 12;
  long readout_multiplex = 6;

  double margin = 1.0;
  std::string static_mode = "net";
  long readout_chain_guidance = 24;
};

// XLD1000-SL + SC-086/50-SCN-CN reference configuration.
RunConfig default_run_config();

// Relative material paths are resolved against base_dir.
RunConfig parse_run_config(const std::string& json_text, const std::string& source,
                           const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);
std::string dump_run_config(const RunConfig& config);

struct ResolvedConfig {
  MaterialLibrary materials;
  FridgeModel fridge;
  CableSpec cable;
  ProcessorModel processor;
  std::vector<FixedLoad> fixed_loads;
  BudgetOptions options;
};

ResolvedConfig resolve(const RunConfig& config);

StaticMode static_mode_from_string(const std::string& text);

}  // namespace cryoheat
