#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cryoheat/cables.hpp"
#include "cryoheat/fridge.hpp"

namespace cryoheat {

/// Matched T-pad attenuator: series r1 at the input, series r2 at the output,
/// shunt r3 from the middle node to ground.
struct TPad {
  double attenuation_dB = 0.0;
  double z0_ohm = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
};

TPad synthesize_tpad(double attenuation_dB, double z0_ohm = 50.0);

// P[W] = 10^((dBm - 30) / 10)
double dbm_to_watts(double dBm);
double watts_to_dbm(double watts);

enum class LineKind { QubitXY, QubitFlux, CouplerFlux, ReadIn, ReadOut, TwpaPump };

std::string_view to_string(LineKind kind);
LineKind line_kind_from_string(std::string_view text);
inline bool is_dc(LineKind kind) {
  return kind == LineKind::QubitFlux || kind == LineKind::CouplerFlux;
}

struct LineSpec {
  LineKind kind = LineKind::QubitXY;
  std::map<std::string, double> attenuation_dB;  // stage name -> dB; 0 dB means no pad
  double target_current_A = 0.0;                 // DC lines: current at the coldest stage
  double pump_power_W = 0.0;                     // pump: power at the directional coupler
  double z0_ohm = 50.0;
};

enum class FixedScale { PerReadoutCircuit, PerQubit, Once };

// Fixed dissipator (e.g. a 4K LNA), replicated according to `scale`.
struct FixedLoad {
  std::string stage;
  double power_W = 0.0;
  std::string label;
  FixedScale scale = FixedScale::PerReadoutCircuit;
};

std::string_view to_string(FixedScale scale);
FixedScale fixed_scale_from_string(std::string_view text);

// Mean resistance of the centre conductor along a segment, assuming a
// temperature that varies linearly with position: (L/A)(1/dT) int rho dT.
// Isothermal segments use rho(T) directly.
double segment_resistance(const CableSpec& cable, const Segment& segment);

struct PadCurrents {
  std::size_t stage = 0;
  TPad pad;
  double current_in_A = 0.0;
  double current_out_A = 0.0;
};

struct CurrentProfile {
  // [i] is the current in the segment arriving at stage i; [0] is unused.
  std::vector<double> segment_current_A;
  double below_current_A = 0.0;  // isothermal run to the package
  std::vector<PadCurrents> pads;  // warmest first
};

/// DC currents needed to deliver the line's target current at the coldest
/// stage. Walks upward; at each pad I_in = I_out (r2 + r3 + R_load) / r3
/// where R_load is the DC resistance seen at the pad output: cable runs down
/// to the coldest stage plate (the chip is a short) plus any lower pads.
CurrentProfile back_propagate_current(const LineSpec& line, const FridgeModel& fridge,
                                      const CableSpec& cable);

/// RMS currents of a pump tone under matched power flow: each pad multiplies
/// the power above it by 10^(dB/10).
CurrentProfile pump_current_profile(const LineSpec& pump, const FridgeModel& fridge);

struct StageActiveLoad {
  double coax_W = 0.0;         // segment arriving at this stage
  double below_W = 0.0;        // isothermal run below the coldest stage
  double attenuator_W = 0.0;   // pads anchored here
  double termination_W = 0.0;  // pump termination resistor

  double total() const { return coax_W + below_W + attenuator_W + termination_W; }
};

struct ActiveLoads {
  std::vector<StageActiveLoad> stages;  // indexed like FridgeModel::stages()

  double total(std::size_t stage) const { return stages.at(stage).total(); }
};

// Ohmic loads of one line. Segment heat goes to the colder end; pad heat to
// its own stage. Lines without current yield zeros; pump lines delegate to
// twpa_pump_loads.
ActiveLoads line_active_loads(const LineSpec& line, const FridgeModel& fridge,
                              const CableSpec& cable);

ActiveLoads twpa_pump_loads(const LineSpec& pump, const FridgeModel& fridge,
                            const CableSpec& cable);

}  // namespace cryoheat
