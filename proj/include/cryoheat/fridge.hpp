#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cryoheat/errors.hpp"

namespace cryoheat {

// One thermal anchoring stage. The first (room-temperature) stage has no
// cooling power and no incoming cable run.
struct Stage {
  std::string name;
  double temperature_K = 0.0;
  std::optional<double> cooling_power_W;
  double incoming_length_m = 0.0;  // cable run from the stage above
};

// Cable run between two anchoring points. Isothermal runs (t_high == t_low)
// are allowed for resistance but carry no conduction load.
struct Segment {
  std::string upper;
  std::string lower;
  double length_m = 0.0;
  double t_high_K = 0.0;
  double t_low_K = 0.0;
};

/// Stages ordered from warmest to coldest. The last stage is the mixing
/// chamber; an isothermal run below it leads to the processor package.
class FridgeModel {
 public:
  FridgeModel(std::string name, std::vector<Stage> stages, double below_last_length_m,
              std::size_t line_capacity);

  // Bluefors XLD1000-SL with two PT-420 pulse tubes and HDW coax.
  static FridgeModel xld1000sl();

  const std::string& name() const { return name_; }
  const std::vector<Stage>& stages() const { return stages_; }
  std::size_t size() const { return stages_.size(); }
  const Stage& stage(std::size_t index) const { return stages_.at(index); }
  std::size_t index_of(std::string_view stage_name) const;
  double below_last_length_m() const { return below_last_length_m_; }
  std::size_t line_capacity() const { return line_capacity_; }

  // Segment arriving at stage `index` (index >= 1).
  Segment incoming_segment(std::size_t index) const;
  // Isothermal run from the coldest stage to the package.
  Segment below_last_segment() const;

 private:
  std::string name_;
  std::vector<Stage> stages_;
  double below_last_length_m_;
  std::size_t line_capacity_;
};

}  // namespace cryoheat
