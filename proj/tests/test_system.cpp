#include <gtest/gtest.h>

#include "cryoheat/system.hpp"

namespace cryoheat {
namespace {

const FridgeModel kFridge = FridgeModel::xld1000sl();
const CableSpec kCable = CableSpec::sc086_50_scn_cn();

ProcessorModel processor(long n) {
  ProcessorModel p;
  p.n = n;
  p.lines = default_line_templates();
  return p;
}

TEST(LineCounts, ModelSizesTable) {
  const std::vector<std::array<long, 4>> table{{10, 100, 180, 17}, {11, 121, 220, 21},
                                               {12, 144, 264, 24}, {13, 169, 312, 29},
                                               {14, 196, 364, 33}, {15, 225, 420, 38}};
  const std::vector<long> totals{431, 525, 624, 737, 855, 984};
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto c = processor_line_counts(processor(table[i][0]));
    EXPECT_EQ(c.qubits, table[i][1]);
    EXPECT_EQ(c.couplers, table[i][2]);
    EXPECT_EQ(c.readout_circuits, table[i][3]);
    EXPECT_EQ(c.qubit_xy + c.qubit_flux, 2 * table[i][1]);
    EXPECT_EQ(c.read_in + c.read_out + c.pump, 3 * table[i][3]);
    EXPECT_EQ(c.total, totals[i]);
  }
}

TEST(LineCounts, EdgeCases) {
  const auto one = processor_line_counts(processor(1));
  EXPECT_EQ(one.qubits, 1);
  EXPECT_EQ(one.couplers, 0);
  EXPECT_EQ(one.readout_circuits, 1);
  EXPECT_EQ(one.total, 5);
  EXPECT_EQ(processor_line_counts(processor(16)).total, 1121);
  EXPECT_THROW(processor_line_counts(processor(0)), ConfigError);
}

TEST(SystemBudget, CapacityExceeded) {
  try {
    system_budget(processor(16), kFridge, kCable, default_fixed_loads());
    FAIL();
  } catch (const CapacityExceeded& e) {
    EXPECT_EQ(e.required(), 1121u);
    EXPECT_EQ(e.available(), 1008u);
  }
  EXPECT_NO_THROW(system_budget(processor(15), kFridge, kCable, default_fixed_loads()));
}

TEST(SystemBudget, Decomposition) {
  const auto r = system_budget(processor(12), kFridge, kCable, default_fixed_loads());
  ASSERT_EQ(r.stages.size(), 5u);
  for (const auto& s : r.stages) {
    EXPECT_EQ(s.active_W, s.active_flux_W + s.active_pump_W);
    EXPECT_EQ(s.total_W, s.static_W + s.active_W + s.fixed_W);
    EXPECT_EQ(s.fraction, s.total_W / s.cooling_power_W);
    EXPECT_EQ(s.pass, s.fraction <= 1.0);
  }
}

TEST(SystemBudget, ComponentsFromLineModels) {
  const auto p = processor(12);
  const auto r = system_budget(p, kFridge, kCable, default_fixed_loads());
  const auto c = r.counts;
  const auto flux = line_active_loads(p.lines.at(LineKind::QubitFlux), kFridge, kCable);
  const auto pump = twpa_pump_loads(p.lines.at(LineKind::TwpaPump), kFridge, kCable);
  for (const auto& s : r.stages) {
    const std::size_t i = kFridge.index_of(s.stage);
    EXPECT_DOUBLE_EQ(s.static_W, c.total * stage_net_static(kCable, kFridge, s.stage, 1));
    EXPECT_NEAR(s.active_flux_W, (c.qubit_flux + c.coupler_flux) * flux.total(i), 1e-12 * s.active_flux_W + 1e-30);
    EXPECT_NEAR(s.active_pump_W, c.pump * pump.total(i), 1e-12 * s.active_pump_W + 1e-30);
    EXPECT_EQ(s.fixed_W, s.stage == "4K" ? c.readout_circuits * 7.8e-3 : 0.0);
  }
}

TEST(SystemBudget, FourKelvinDominatesAt144Qubits) {
  const auto r = system_budget(processor(12), kFridge, kCable, default_fixed_loads());
  EXPECT_EQ(r.max_fraction_stage().stage, "4K");
  EXPECT_TRUE(r.all_pass());
  EXPECT_TRUE(r.notes.empty());
}

TEST(SystemBudget, MarginAndReadoutNotes) {
  BudgetOptions opts;
  opts.margin = 0.5;
  const auto r = system_budget(processor(12), kFridge, kCable, default_fixed_loads(), opts);
  EXPECT_TRUE(r.all_pass());
  EXPECT_FALSE(r.all_within_margin());
  EXPECT_EQ(r.notes.size(), 1u);
  const auto big = system_budget(processor(13), kFridge, kCable, default_fixed_loads());
  ASSERT_FALSE(big.notes.empty());
  EXPECT_NE(big.notes[0].find("29 readout chains"), std::string::npos);
}

TEST(SystemBudget, StaticOnlyFullFridge) {
  const auto r = static_budget(1008, kFridge, kCable);
  for (const auto& s : r.stages) {
    EXPECT_EQ(s.static_W, stage_net_static(kCable, kFridge, s.stage, 1008));
    EXPECT_EQ(s.total_W, s.static_W);
  }
}

TEST(SweepSizes, MonotoneAndFlagged) {
  const auto entries = sweep_sizes(10, 16, processor(1), kFridge, kCable, default_fixed_loads());
  ASSERT_EQ(entries.size(), 7u);
  for (std::size_t i = 0; i < entries.size(); ++i) EXPECT_EQ(entries[i].n, 10 + static_cast<long>(i));
  EXPECT_FALSE(entries.back().report.has_value());
  ASSERT_TRUE(entries.back().error.has_value());
  EXPECT_NE(entries.back().error->find("1121"), std::string::npos);
  for (std::size_t i = 1; i + 1 < entries.size(); ++i) {
    const auto& prev = *entries[i - 1].report;
    const auto& cur = *entries[i].report;
    for (std::size_t s = 0; s < cur.stages.size(); ++s) {
      EXPECT_GE(cur.stages[s].total_W, prev.stages[s].total_W) << cur.stages[s].stage;
    }
  }
}

TEST(SweepSizes, EmptyRange) {
  EXPECT_TRUE(sweep_sizes(5, 4, processor(1), kFridge, kCable, default_fixed_loads()).empty());
}

TEST(SweepSizes, MatchesSequentialEvaluation) {
  const auto entries = sweep_sizes(10, 12, processor(1), kFridge, kCable, default_fixed_loads());
  for (const auto& e : entries) {
    const auto direct = system_budget(processor(e.n), kFridge, kCable, default_fixed_loads());
    for (std::size_t s = 0; s < direct.stages.size(); ++s) {
      EXPECT_EQ(e.report->stages[s].total_W, direct.stages[s].total_W);
    }
  }
}

}  // namespace
}  // namespace cryoheat
