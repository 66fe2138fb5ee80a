#include "cryoheat/cables.hpp"

#include <numeric>

namespace cryoheat {

void CableSpec::validate() const {
  if (layers.empty()) throw ConfigError("cable '" + name + "' has no layers");
  for (const auto& layer : layers) {
    if (!(layer.area_m2 > 0.0)) {
      throw ConfigError("cable '" + name + "': layer '" + layer.name + "' area must be > 0");
    }
    if (layer.conductivity.kind() != PropertyKind::ThermalConductivity) {
      throw ConfigError("cable '" + name + "': layer '" + layer.name +
                        "' needs a thermal conductivity model");
    }
  }
  if (conductor) {
    if (!(conductor->area_m2 > 0.0)) throw ConfigError("cable '" + name + "': conductor area must be > 0");
    if (conductor->resistivity.kind() != PropertyKind::Resistivity) {
      throw ConfigError("cable '" + name + "': conductor needs a resistivity model");
    }
  }
}

CableSpec CableSpec::sc086_50_scn_cn() {
  constexpr double kMm2 = 1e-6;
  CableSpec cable{"SC-086/50-SCN-CN",
                  {
                      {"outer", 0.2389 * kMm2, builtin::outer_k()},
                      {"dielectric", 0.3098 * kMm2, builtin::ptfe_k()},
                      {"inner", 0.0324 * kMm2, builtin::inner_k()},
                  },
                  Conductor{builtin::inner_rho(), 0.0324 * kMm2}};
  return cable;
}

double layer_static_load(const CableLayer& layer, const Segment& segment) {
  if (!(segment.length_m > 0.0)) throw ConfigError("segment length must be > 0");
  if (segment.t_high_K <= segment.t_low_K) return 0.0;
  return layer.area_m2 / segment.length_m *
         layer.conductivity.integrate(segment.t_low_K, segment.t_high_K);
}

double cable_static_load(const CableSpec& cable, const Segment& segment) {
  return std::accumulate(cable.layers.begin(), cable.layers.end(), 0.0,
                         [&](double acc, const CableLayer& layer) {
                           return acc + layer_static_load(layer, segment);
                         });
}

double stage_net_static(const CableSpec& cable, const FridgeModel& fridge, std::string_view stage,
                        long count, StaticMode mode) {
  const std::size_t i = fridge.index_of(stage);
  if (count < 0) throw ConfigError("cable count must be >= 0");
  if (count == 0 || i == 0) return 0.0;
  const double incoming = cable_static_load(cable, fridge.incoming_segment(i));
  double outgoing = 0.0;
  if (mode == StaticMode::Net && i + 1 < fridge.size()) {
    outgoing = cable_static_load(cable, fridge.incoming_segment(i + 1));
  }
  return static_cast<double>(count) * (incoming - outgoing);
}

}  // namespace cryoheat
