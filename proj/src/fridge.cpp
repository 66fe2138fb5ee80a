#include "cryoheat/fridge.hpp"

#include <cmath>

namespace cryoheat {

FridgeModel::FridgeModel(std::string name, std::vector<Stage> stages, double below_last_length_m,
                         std::size_t line_capacity)
    : name_(std::move(name)),
      stages_(std::move(stages)),
      below_last_length_m_(below_last_length_m),
      line_capacity_(line_capacity) {
  if (stages_.size() < 2) throw ConfigError("fridge needs at least two stages");
  if (line_capacity_ == 0) throw ConfigError("fridge line capacity must be positive");
  if (!(below_last_length_m_ >= 0.0)) throw ConfigError("below-stage cable length must be >= 0");
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    const Stage& s = stages_[i];
    if (s.name.empty()) throw ConfigError("stage names must be non-empty");
    for (std::size_t j = 0; j < i; ++j) {
      if (stages_[j].name == s.name) throw ConfigError("duplicate stage '" + s.name + "'");
    }
    if (!(s.temperature_K > 0.0)) throw ConfigError("stage '" + s.name + "': temperature must be > 0");
    if (i > 0) {
      if (!(s.temperature_K < stages_[i - 1].temperature_K)) {
        throw ConfigError("stage temperatures must strictly decrease ('" + s.name + "')");
      }
      if (!(s.incoming_length_m > 0.0)) {
        throw ConfigError("stage '" + s.name + "': incoming cable length must be > 0");
      }
    }
    if (s.cooling_power_W && !(*s.cooling_power_W > 0.0)) {
      throw ConfigError("stage '" + s.name + "': cooling power must be > 0");
    }
  }
}

FridgeModel FridgeModel::xld1000sl() {
  return FridgeModel("XLD1000-SL",
                     {
                         {"300K", 297.0, std::nullopt, 0.0},
                         {"50K", 40.0, 30.0, 0.3053},
                         {"4K", 3.5, 0.7, 0.3155},
                         {"Still", 1.4, 7e-3, 0.2775},
                         {"CP", 0.2, 1e-3, 0.1965},
                         {"MXC", 0.02, 30e-6, 0.1965},
                     },
                     0.1965, 1008);
}

std::size_t FridgeModel::index_of(std::string_view stage_name) const {
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    if (stages_[i].name == stage_name) return i;
  }
  throw UnknownStage(std::string(stage_name));
}

Segment FridgeModel::incoming_segment(std::size_t index) const {
  if (index == 0 || index >= stages_.size()) {
    throw UnknownStage("#" + std::to_string(index) + " (no incoming segment)");
  }
  const Stage& up = stages_[index - 1];
  const Stage& low = stages_[index];
  return Segment{up.name, low.name, low.incoming_length_m, up.temperature_K, low.temperature_K};
}

Segment FridgeModel::below_last_segment() const {
  const Stage& last = stages_.back();
  return Segment{last.name, "package", below_last_length_m_, last.temperature_K,
                 last.temperature_K};
}

}  // namespace cryoheat
