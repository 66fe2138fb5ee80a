#include <gtest/gtest.h>

#include <cmath>

#include "cryoheat/attenuators.hpp"
#include "oracles.hpp"

namespace cryoheat {
namespace {

const FridgeModel kFridge = FridgeModel::xld1000sl();
const CableSpec kCable = CableSpec::sc086_50_scn_cn();

LineSpec flux(std::map<std::string, double> pads = {{"4K", 20.0}}) {
  return LineSpec{LineKind::QubitFlux, std::move(pads), 0.4e-3, 0.0, 50.0};
}

TEST(SynthesizeTPad, TwentyDecibels) {
  const TPad p = synthesize_tpad(20.0, 50.0);
  EXPECT_NEAR(p.r1, 40.909, 5e-4);
  EXPECT_NEAR(p.r2, 40.909, 5e-4);
  EXPECT_NEAR(p.r3, 10.101, 5e-4);
}

TEST(SynthesizeTPad, TenDecibelsByTwoPortAnalysis) {
  const TPad p = synthesize_tpad(10.0, 50.0);
  EXPECT_NEAR(p.r1, 25.975, 5e-4);
  EXPECT_NEAR(p.r3, 35.136, 5e-4);
  const auto port = oracle::analyse_tee(p.r1, p.r2, p.r3, 50.0);
  EXPECT_NEAR(port.input_impedance, 50.0, 1e-9);
  EXPECT_NEAR(20.0 * std::log10(1.0 / port.voltage_ratio), 10.0, 1e-9);
}

TEST(SynthesizeTPad, MatchedAcrossRange) {
  for (double dB = 0.5; dB <= 60.0; dB += 0.5) {
    for (double z0 : {25.0, 50.0, 75.0}) {
      const TPad p = synthesize_tpad(dB, z0);
      const auto port = oracle::analyse_tee(p.r1, p.r2, p.r3, z0);
      EXPECT_NEAR(port.input_impedance, z0, 1e-9 * z0);
      // Divider law: I_out / I_in = 10^(-dB/20) when loaded by z0.
      const double ratio = p.r3 / (p.r3 + p.r2 + z0);
      EXPECT_NEAR(ratio, std::pow(10.0, -dB / 20.0), 1e-9);
      // Energy: fraction dissipated in the pad.
      const double p_in = z0;  // unit input current
      const double p_out = ratio * ratio * z0;
      EXPECT_NEAR((p_in - p_out) / p_in, 1.0 - std::pow(10.0, -dB / 10.0), 1e-9);
      EXPECT_GT(p.r1, 0.0);
      EXPECT_GT(p.r3, 0.0);
    }
  }
}

TEST(SynthesizeTPad, SmallAttenuationLimit) {
  const TPad p = synthesize_tpad(1e-6, 50.0);
  EXPECT_LT(p.r1, 1e-5);
  EXPECT_GT(p.r3, 1e6);
}

TEST(SynthesizeTPad, Rejects) {
  EXPECT_THROW(synthesize_tpad(0.0, 50.0), InvalidAttenuation);
  EXPECT_THROW(synthesize_tpad(-3.0, 50.0), InvalidAttenuation);
  EXPECT_THROW(synthesize_tpad(10.0, 0.0), InvalidAttenuation);
}

TEST(DecibelMilliwatts, Conversions) {
  EXPECT_DOUBLE_EQ(dbm_to_watts(-40.0), 1e-7);
  EXPECT_DOUBLE_EQ(dbm_to_watts(30.0), 1.0);
  EXPECT_NEAR(watts_to_dbm(1e-7), -40.0, 1e-12);
}

TEST(SegmentResistance, ConstantRegion) {
  const double r = segment_resistance(kCable, kFridge.incoming_segment(4));
  EXPECT_NEAR(r, 9.928e-9 * 0.1965 / 3.24e-8, 1e-12);
  EXPECT_NEAR(r, 0.0602, 5e-5);
}

TEST(SegmentResistance, TopSegmentMatchesTrapezoid) {
  // Frozen: (L/A)(1/dT) * 10^6-panel trapezoid of rho over [40, 297] K.
  constexpr double kFrozen = 1.2664718350948685;
  const double got = segment_resistance(kCable, kFridge.incoming_segment(1));
  EXPECT_NEAR(got, kFrozen, 1e-5 * kFrozen);
  const double live = 0.3053 / 3.24e-8 * oracle::trapezoid(oracle::resistivity, 40.0, 297.0) / 257.0;
  EXPECT_NEAR(got, live, 1e-5 * live);
}

TEST(SegmentResistance, DegenerateSegments) {
  EXPECT_EQ(segment_resistance(kCable, Segment{"a", "b", 0.0, 40.0, 4.0}), 0.0);
  const Segment iso{"MXC", "package", 0.1965, 0.02, 0.02};
  EXPECT_NEAR(segment_resistance(kCable, iso), 9.928e-9 * 0.1965 / 3.24e-8, 1e-12);
  CableSpec bare = kCable;
  bare.conductor.reset();
  EXPECT_THROW(segment_resistance(bare, iso), ConfigError);
}

TEST(BackPropagate, FluxLineReference) {
  const auto profile = back_propagate_current(flux(), kFridge, kCable);
  ASSERT_EQ(profile.pads.size(), 1u);
  EXPECT_EQ(profile.pads[0].stage, kFridge.index_of("4K"));
  EXPECT_NEAR(profile.pads[0].current_in_A, 2.029e-3, 0.005 * 2.029e-3);
  EXPECT_EQ(profile.segment_current_A[1], profile.pads[0].current_in_A);
  EXPECT_EQ(profile.segment_current_A[2], profile.pads[0].current_in_A);
  for (std::size_t i = 3; i < kFridge.size(); ++i) EXPECT_EQ(profile.segment_current_A[i], 0.4e-3);
  EXPECT_EQ(profile.below_current_A, 0.4e-3);
}

TEST(BackPropagate, LoadIsCableBelowPad) {
  const auto profile = back_propagate_current(flux(), kFridge, kCable);
  const TPad pad = synthesize_tpad(20.0, 50.0);
  double r_load = 0.0;
  for (std::size_t i = 3; i < kFridge.size(); ++i) r_load += segment_resistance(kCable, kFridge.incoming_segment(i));
  EXPECT_NEAR(profile.pads[0].current_in_A, 0.4e-3 * (pad.r2 + pad.r3 + r_load) / pad.r3, 1e-15);
}

TEST(BackPropagate, NoPadsAndZeroDecibels) {
  for (const auto& pads : {std::map<std::string, double>{}, std::map<std::string, double>{{"4K", 0.0}}}) {
    const auto profile = back_propagate_current(flux(pads), kFridge, kCable);
    EXPECT_TRUE(profile.pads.empty());
    for (std::size_t i = 1; i < kFridge.size(); ++i) EXPECT_EQ(profile.segment_current_A[i], 0.4e-3);
  }
}

TEST(BackPropagate, StackedPadsMonotone) {
  const auto profile =
      back_propagate_current(flux({{"50K", 3.0}, {"4K", 20.0}, {"CP", 6.0}}), kFridge, kCable);
  ASSERT_EQ(profile.pads.size(), 3u);
  for (const auto& p : profile.pads) EXPECT_GT(p.current_in_A, p.current_out_A);
  // Warmest first, and each pad's output feeds the segment below it.
  EXPECT_LT(profile.pads[0].stage, profile.pads[1].stage);
  EXPECT_EQ(profile.pads[0].current_out_A, profile.segment_current_A[2]);
  EXPECT_EQ(profile.pads[1].current_out_A, profile.segment_current_A[3]);
}

TEST(BackPropagate, RfLinesRejected) {
  LineSpec xy{LineKind::QubitXY, {}, 0.0, 0.0, 50.0};
  EXPECT_THROW(back_propagate_current(xy, kFridge, kCable), NoTargetCurrent);
  LineSpec unknown = flux({{"1K", 20.0}});
  EXPECT_THROW(back_propagate_current(unknown, kFridge, kCable), UnknownStage);
}

TEST(LineActiveLoads, FluxLineAttenuator) {
  const auto loads = line_active_loads(flux(), kFridge, kCable);
  EXPECT_NEAR(loads.stages[2].attenuator_W, 2.018e-4, 0.01 * 2.018e-4);
  for (std::size_t i = 0; i < kFridge.size(); ++i) {
    if (i != 2) EXPECT_EQ(loads.stages[i].attenuator_W, 0.0);
  }
}

TEST(LineActiveLoads, PadLoadIsSumOfResistors) {
  const auto profile = back_propagate_current(flux(), kFridge, kCable);
  const auto loads = line_active_loads(flux(), kFridge, kCable);
  const auto& p = profile.pads[0];
  const double shunt = p.current_in_A - p.current_out_A;
  EXPECT_DOUBLE_EQ(loads.stages[2].attenuator_W,
                   p.current_in_A * p.current_in_A * p.pad.r1 + shunt * shunt * p.pad.r3 +
                       p.current_out_A * p.current_out_A * p.pad.r2);
}

TEST(LineActiveLoads, CoaxLoadsGoToColderStage) {
  const auto profile = back_propagate_current(flux(), kFridge, kCable);
  const auto loads = line_active_loads(flux(), kFridge, kCable);
  EXPECT_EQ(loads.stages[0].total(), 0.0);
  for (std::size_t i = 1; i < kFridge.size(); ++i) {
    const double current = profile.segment_current_A[i];
    EXPECT_DOUBLE_EQ(loads.stages[i].coax_W,
                     current * current * segment_resistance(kCable, kFridge.incoming_segment(i)));
  }
  const double below = 0.4e-3 * 0.4e-3 * segment_resistance(kCable, kFridge.below_last_segment());
  EXPECT_DOUBLE_EQ(loads.stages.back().below_W, below);
}

TEST(LineActiveLoads, Additivity) {
  const auto loads = line_active_loads(flux({{"4K", 20.0}, {"Still", 3.0}}), kFridge, kCable);
  for (const auto& s : loads.stages) {
    EXPECT_EQ(s.total(), s.coax_W + s.below_W + s.attenuator_W + s.termination_W);
  }
}

TEST(LineActiveLoads, ZeroCurrentLines) {
  for (auto kind : {LineKind::QubitXY, LineKind::ReadIn, LineKind::ReadOut}) {
    const auto loads = line_active_loads(LineSpec{kind, {{"4K", 20.0}}, 0.0, 0.0, 50.0}, kFridge, kCable);
    for (const auto& s : loads.stages) EXPECT_EQ(s.total(), 0.0);
  }
  LineSpec idle = flux();
  idle.target_current_A = 0.0;
  for (const auto& s : line_active_loads(idle, kFridge, kCable).stages) EXPECT_EQ(s.total(), 0.0);
}

LineSpec pump(double power_W = 1e-7) {
  return LineSpec{LineKind::TwpaPump, {{"4K", 10.0}, {"Still", 10.0}, {"CP", 10.0}}, 0.0, power_W, 50.0};
}

TEST(TwpaPump, PowerFlow) {
  const auto loads = twpa_pump_loads(pump(), kFridge, kCable);
  EXPECT_NEAR(loads.stages[2].attenuator_W, 9e-5, 1e-18);
  EXPECT_NEAR(loads.stages[3].attenuator_W, 9e-6, 1e-19);
  EXPECT_NEAR(loads.stages[4].attenuator_W, 9e-7, 1e-20);
  EXPECT_EQ(loads.stages[5].termination_W, 1e-7);
  EXPECT_EQ(loads.stages[5].attenuator_W, 0.0);
  // Ohmic loss in the pump coax is small next to the pads.
  for (std::size_t i = 1; i < kFridge.size(); ++i) EXPECT_LT(loads.stages[i].coax_W, 3e-6);
}

TEST(TwpaPump, RmsCurrentAtCoupler) {
  const auto profile = pump_current_profile(pump(), kFridge);
  EXPECT_NEAR(profile.segment_current_A.back(), std::sqrt(1e-7 / 50.0), 1e-18);
  EXPECT_NEAR(profile.segment_current_A.back(), 0.0447e-3, 0.02 * 0.0447e-3);
  // Each 10 dB pad scales the current by sqrt(10).
  EXPECT_NEAR(profile.segment_current_A[4] / profile.segment_current_A[5], std::sqrt(10.0), 1e-12);
  EXPECT_NEAR(profile.segment_current_A[1], std::sqrt(1e-4 / 50.0), 1e-15);
}

TEST(TwpaPump, SinglePad) {
  LineSpec one{LineKind::TwpaPump, {{"CP", 10.0}}, 0.0, 1e-7, 50.0};
  const auto loads = twpa_pump_loads(one, kFridge, kCable);
  EXPECT_NEAR(loads.stages[4].attenuator_W, 9e-7, 1e-20);
}

TEST(TwpaPump, ZeroPower) {
  for (const auto& s : twpa_pump_loads(pump(0.0), kFridge, kCable).stages) EXPECT_EQ(s.total(), 0.0);
  EXPECT_EQ(line_active_loads(pump(), kFridge, kCable).stages[4].attenuator_W,
            twpa_pump_loads(pump(), kFridge, kCable).stages[4].attenuator_W);
}

TEST(LineKinds, Names) {
  for (auto k : {LineKind::QubitXY, LineKind::QubitFlux, LineKind::CouplerFlux, LineKind::ReadIn,
                 LineKind::ReadOut, LineKind::TwpaPump}) {
    EXPECT_EQ(line_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(line_kind_from_string("laser"), ConfigError);
}

}  // namespace
}  // namespace cryoheat
