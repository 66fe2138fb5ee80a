#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cryoheat/fridge.hpp"
#include "cryoheat/materials.hpp"

namespace cryoheat {

// One parallel conduction path of a coax (outer, dielectric, centre).
struct CableLayer {
  std::string name;
  double area_m2 = 0.0;
  PolyLogModel conductivity;
};

// Centre conductor used for Ohmic heating.
struct Conductor {
  PolyLogModel resistivity;
  double area_m2 = 0.0;
};

struct CableSpec {
  std::string name;
  std::vector<CableLayer> layers;
  std::optional<Conductor> conductor;

  // Validates areas and model kinds; throws ConfigError.
  void validate() const;

  // SC-086/50-SCN-CN semi-rigid coax with the built-in material models.
  static CableSpec sc086_50_scn_cn();
};

// (A / L) * integral of k over the segment.
double layer_static_load(const CableLayer& layer, const Segment& segment);

double cable_static_load(const CableSpec& cable, const Segment& segment);

enum class StaticMode {
  Net,       // incoming minus outgoing
  Incoming,  // incoming only
};

/// Static conduction load on one stage from `count` identical cables.
/// The room-temperature stage has no budget and returns 0; the run below the
/// coldest stage is isothermal and carries nothing.
double stage_net_static(const CableSpec& cable, const FridgeModel& fridge,
                        std::string_view stage, long count, StaticMode mode = StaticMode::Net);

}  // namespace cryoheat
