#include "cryoheat/attenuators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace cryoheat {

TPad synthesize_tpad(double attenuation_dB, double z0_ohm) {
  if (!(attenuation_dB > 0.0) || !std::isfinite(attenuation_dB)) {
    throw InvalidAttenuation("T-pad attenuation must be > 0 dB");
  }
  if (!(z0_ohm > 0.0)) throw InvalidAttenuation("T-pad impedance must be > 0 Ohm");
  const double a = std::pow(10.0, attenuation_dB / 20.0);
  const double series = z0_ohm * (a - 1.0) / (a + 1.0);
  const double shunt = 2.0 * z0_ohm * a / (a * a - 1.0);
  return TPad{attenuation_dB, z0_ohm, series, series, shunt};
}

double dbm_to_watts(double dBm) { return std::pow(10.0, (dBm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

namespace {

constexpr std::array<std::pair<LineKind, std::string_view>, 6> kKindNames{{
    {LineKind::QubitXY, "qubit_xy"},
    {LineKind::QubitFlux, "qubit_flux"},
    {LineKind::CouplerFlux, "coupler_flux"},
    {LineKind::ReadIn, "read_in"},
    {LineKind::ReadOut, "read_out"},
    {LineKind::TwpaPump, "twpa_pump"},
}};

// Pads by stage index; entries of 0 dB are dropped.
std::vector<std::pair<std::size_t, double>> pads_of(const LineSpec& line,
                                                    const FridgeModel& fridge) {
  std::vector<std::pair<std::size_t, double>> pads;
  for (const auto& [stage, dB] : line.attenuation_dB) {
    const std::size_t idx = fridge.index_of(stage);
    if (dB < 0.0) throw InvalidAttenuation("negative attenuation at stage '" + stage + "'");
    if (dB > 0.0) pads.emplace_back(idx, dB);
  }
  return pads;
}

double pad_at(const std::vector<std::pair<std::size_t, double>>& pads, std::size_t stage) {
  for (const auto& [idx, dB] : pads) {
    if (idx == stage) return dB;
  }
  return 0.0;
}

const PolyLogModel& resistivity_of(const CableSpec& cable) {
  if (!cable.conductor) {
    throw ConfigError("cable '" + cable.name + "' has no conductor resistivity model");
  }
  return cable.conductor->resistivity;
}

}  // namespace

std::string_view to_string(LineKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

LineKind line_kind_from_string(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  throw ConfigError("unknown line kind '" + std::string(text) + "'");
}

std::string_view to_string(FixedScale scale) {
  switch (scale) {
    case FixedScale::PerReadoutCircuit:
      return "readout_circuit";
    case FixedScale::PerQubit:
      return "qubit";
    case FixedScale::Once:
      return "system";
  }
  return "unknown";
}

FixedScale fixed_scale_from_string(std::string_view text) {
  if (text == "readout_circuit") return FixedScale::PerReadoutCircuit;
  if (text == "qubit") return FixedScale::PerQubit;
  if (text == "system") return FixedScale::Once;
  throw ConfigError("unknown fixed-load scale '" + std::string(text) + "'");
}

double segment_resistance(const CableSpec& cable, const Segment& segment) {
  const PolyLogModel& rho = resistivity_of(cable);
  if (segment.length_m == 0.0) return 0.0;
  if (!(segment.length_m > 0.0)) throw ConfigError("segment length must be >= 0");
  const double geometry = segment.length_m / cable.conductor->area_m2;
  const double span = segment.t_high_K - segment.t_low_K;
  if (span < 0.0) throw ConfigError("segment upper temperature below lower temperature");
  if (span == 0.0) return geometry * rho.evaluate(segment.t_low_K);
  return geometry * rho.integrate(segment.t_low_K, segment.t_high_K) / span;
}

CurrentProfile back_propagate_current(const LineSpec& line, const FridgeModel& fridge,
                                      const CableSpec& cable) {
  if (!is_dc(line.kind)) {
    throw NoTargetCurrent("line kind '" + std::string(to_string(line.kind)) +
                          "' carries no DC target current");
  }
  if (!(line.target_current_A >= 0.0)) throw ConfigError("target current must be >= 0");
  const auto pads = pads_of(line, fridge);

  CurrentProfile profile;
  profile.segment_current_A.assign(fridge.size(), 0.0);
  profile.below_current_A = line.target_current_A;

  double current = line.target_current_A;
  double r_load = 0.0;
  for (std::size_t i = fridge.size(); i-- > 0;) {
    if (const double dB = pad_at(pads, i); dB > 0.0) {
      const TPad pad = synthesize_tpad(dB, line.z0_ohm);
      const double current_in = current * (pad.r2 + pad.r3 + r_load) / pad.r3;
      profile.pads.push_back({i, pad, current_in, current});
      const double branch = pad.r2 + r_load;
      r_load = pad.r1 + pad.r3 * branch / (pad.r3 + branch);
      current = current_in;
    }
    if (i >= 1) {
      profile.segment_current_A[i] = current;
      r_load += segment_resistance(cable, fridge.incoming_segment(i));
    }
  }
  std::reverse(profile.pads.begin(), profile.pads.end());
  return profile;
}

CurrentProfile pump_current_profile(const LineSpec& pump, const FridgeModel& fridge) {
  if (!(pump.pump_power_W >= 0.0)) throw ConfigError("pump power must be >= 0");
  const auto pads = pads_of(pump, fridge);
  CurrentProfile profile;
  profile.segment_current_A.assign(fridge.size(), 0.0);
  double power = pump.pump_power_W;
  for (std::size_t i = fridge.size(); i-- > 0;) {
    if (const double dB = pad_at(pads, i); dB > 0.0) {
      const double power_in = power * std::pow(10.0, dB / 10.0);
      profile.pads.push_back({i, synthesize_tpad(dB, pump.z0_ohm), std::sqrt(power_in / pump.z0_ohm),
                              std::sqrt(power / pump.z0_ohm)});
      power = power_in;
    }
    if (i >= 1) profile.segment_current_A[i] = std::sqrt(power / pump.z0_ohm);
  }
  std::reverse(profile.pads.begin(), profile.pads.end());
  return profile;
}

ActiveLoads line_active_loads(const LineSpec& line, const FridgeModel& fridge,
                              const CableSpec& cable) {
  if (line.kind == LineKind::TwpaPump) return twpa_pump_loads(line, fridge, cable);

  ActiveLoads loads;
  loads.stages.assign(fridge.size(), {});
  if (!is_dc(line.kind) || line.target_current_A == 0.0) return loads;

  const CurrentProfile profile = back_propagate_current(line, fridge, cable);
  for (std::size_t i = 1; i < fridge.size(); ++i) {
    const double current = profile.segment_current_A[i];
    loads.stages[i].coax_W =
        current * current * segment_resistance(cable, fridge.incoming_segment(i));
  }
  loads.stages.back().below_W = profile.below_current_A * profile.below_current_A *
                                segment_resistance(cable, fridge.below_last_segment());
  for (const auto& p : profile.pads) {
    const double shunt = p.current_in_A - p.current_out_A;
    loads.stages[p.stage].attenuator_W += p.current_in_A * p.current_in_A * p.pad.r1 +
                                          shunt * shunt * p.pad.r3 +
                                          p.current_out_A * p.current_out_A * p.pad.r2;
  }
  return loads;
}

ActiveLoads twpa_pump_loads(const LineSpec& pump, const FridgeModel& fridge,
                            const CableSpec& cable) {
  ActiveLoads loads;
  loads.stages.assign(fridge.size(), {});
  if (pump.pump_power_W == 0.0) return loads;

  const auto pads = pads_of(pump, fridge);
  loads.stages.back().termination_W = pump.pump_power_W;
  double power = pump.pump_power_W;
  for (std::size_t i = fridge.size(); i-- > 0;) {
    if (const double dB = pad_at(pads, i); dB > 0.0) {
      const double power_in = power * std::pow(10.0, dB / 10.0);
      loads.stages[i].attenuator_W += power_in - power;
      power = power_in;
    }
  }

  const CurrentProfile profile = pump_current_profile(pump, fridge);
  for (std::size_t i = 1; i < fridge.size(); ++i) {
    const double current = profile.segment_current_A[i];
    loads.stages[i].coax_W =
        current * current * segment_resistance(cable, fridge.incoming_segment(i));
  }
  return loads;
}

}  // namespace cryoheat
