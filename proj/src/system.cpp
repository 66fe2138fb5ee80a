#include "cryoheat/system.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace cryoheat {

void ProcessorModel::validate() const {
  if (n < 1) throw ConfigError("processor array edge n must be >= 1");
  if (readout_multiplex < 1) throw ConfigError("readout multiplex factor must be >= 1");
  for (const auto& [kind, spec] : lines) {
    if (spec.kind != kind) throw ConfigError("line template kind mismatch");
    if (spec.target_current_A < 0.0 || spec.pump_power_W < 0.0) {
      throw ConfigError("line currents and powers must be >= 0");
    }
  }
}

std::map<LineKind, LineSpec> default_line_templates() {
  std::map<LineKind, LineSpec> t;
  t[LineKind::QubitXY] = LineSpec{LineKind::QubitXY, {}, 0.0, 0.0, 50.0};
  t[LineKind::QubitFlux] = LineSpec{LineKind::QubitFlux, {{"4K", 20.0}}, 0.4e-3, 0.0, 50.0};
  t[LineKind::CouplerFlux] = LineSpec{LineKind::CouplerFlux, {{"4K", 20.0}}, 0.4e-3, 0.0, 50.0};
  t[LineKind::ReadIn] = LineSpec{LineKind::ReadIn, {}, 0.0, 0.0, 50.0};
  t[LineKind::ReadOut] = LineSpec{LineKind::ReadOut, {}, 0.0, 0.0, 50.0};
  t[LineKind::TwpaPump] = LineSpec{LineKind::TwpaPump,
                                   {{"4K", 10.0}, {"Still", 10.0}, {"CP", 10.0}},
                                   0.0,
                                   dbm_to_watts(-40.0),
                                   50.0};
  return t;
}

std::vector<FixedLoad> default_fixed_loads() {
  return {FixedLoad{"4K", 7.8e-3, "LNA", FixedScale::PerReadoutCircuit}};
}

long LineCounts::of(LineKind kind) const {
  switch (kind) {
    case LineKind::QubitXY:
      return qubit_xy;
    case LineKind::QubitFlux:
      return qubit_flux;
    case LineKind::CouplerFlux:
      return coupler_flux;
    case LineKind::ReadIn:
      return read_in;
    case LineKind::ReadOut:
      return read_out;
    case LineKind::TwpaPump:
      return pump;
  }
  return 0;
}

LineCounts processor_line_counts(const ProcessorModel& processor) {
  if (processor.n < 1) throw ConfigError("processor array edge n must be >= 1");
  if (processor.readout_multiplex < 1) throw ConfigError("readout multiplex factor must be >= 1");
  const long n = processor.n;
  LineCounts c;
  c.qubits = n * n;
  c.couplers = 2 * n * (n - 1);
  c.readout_circuits = (c.qubits + processor.readout_multiplex - 1) / processor.readout_multiplex;
  c.qubit_xy = c.qubits;
  c.qubit_flux = c.qubits;
  c.coupler_flux = c.couplers;
  c.read_in = c.readout_circuits;
  c.read_out = c.readout_circuits;
  c.pump = c.readout_circuits;
  c.total = c.qubit_xy + c.qubit_flux + c.coupler_flux + c.read_in + c.read_out + c.pump;
  return c;
}

bool BudgetReport::all_pass() const {
  return std::all_of(stages.begin(), stages.end(), [](const StageBudget& s) { return s.pass; });
}

bool BudgetReport::all_within_margin() const {
  return std::all_of(stages.begin(), stages.end(),
                     [](const StageBudget& s) { return s.within_margin; });
}

const StageBudget& BudgetReport::max_fraction_stage() const {
  if (stages.empty()) throw Error("budget report has no stages");
  return *std::max_element(stages.begin(), stages.end(),
                           [](const StageBudget& a, const StageBudget& b) {
                             return a.fraction < b.fraction;
                           });
}

namespace {

void finish_stage(StageBudget& s, double margin) {
  s.active_W = s.active_flux_W + s.active_pump_W;
  s.total_W = s.static_W + s.active_W + s.fixed_W;
  s.fraction = s.total_W / s.cooling_power_W;
  s.pass = s.fraction <= 1.0;
  s.within_margin = s.fraction <= margin;
}

std::vector<StageBudget> cooled_stages(const FridgeModel& fridge) {
  std::vector<StageBudget> out;
  for (const auto& st : fridge.stages()) {
    if (!st.cooling_power_W) continue;
    StageBudget s;
    s.stage = st.name;
    s.temperature_K = st.temperature_K;
    s.cooling_power_W = *st.cooling_power_W;
    out.push_back(s);
  }
  return out;
}

}  // namespace

BudgetReport system_budget(const ProcessorModel& processor, const FridgeModel& fridge,
                           const CableSpec& cable, const std::vector<FixedLoad>& fixed,
                           const BudgetOptions& options) {
  processor.validate();
  const LineCounts counts = processor_line_counts(processor);
  if (counts.total > static_cast<long>(fridge.line_capacity())) {
    throw CapacityExceeded(static_cast<std::size_t>(counts.total), fridge.line_capacity());
  }

  BudgetReport report;
  report.n = processor.n;
  report.counts = counts;
  report.capacity = fridge.line_capacity();
  report.margin = options.margin;
  report.stages = cooled_stages(fridge);

  // Per-line active loads by kind, indexed by fridge stage.
  std::map<LineKind, ActiveLoads> per_line;
  for (const auto& [kind, spec] : processor.lines) {
    if (counts.of(kind) > 0) per_line.emplace(kind, line_active_loads(spec, fridge, cable));
  }

  for (auto& s : report.stages) {
    const std::size_t idx = fridge.index_of(s.stage);
    s.static_W = stage_net_static(cable, fridge, s.stage, counts.total, options.static_mode);
    for (const auto& [kind, loads] : per_line) {
      const double w = static_cast<double>(counts.of(kind)) * loads.total(idx);
      (kind == LineKind::TwpaPump ? s.active_pump_W : s.active_flux_W) += w;
    }
    for (const auto& f : fixed) {
      if (fridge.index_of(f.stage) != idx) continue;
      long copies = 1;
      if (f.scale == FixedScale::PerReadoutCircuit) copies = counts.readout_circuits;
      if (f.scale == FixedScale::PerQubit) copies = counts.qubits;
      s.fixed_W += static_cast<double>(copies) * f.power_W;
    }
    finish_stage(s, options.margin);
  }

  if (counts.readout_circuits > options.readout_chain_guidance) {
    std::ostringstream os;
    os << counts.readout_circuits << " readout chains exceed the mixing-chamber space guidance of "
       << options.readout_chain_guidance;
    report.notes.push_back(os.str());
  }
  if (report.all_pass() && !report.all_within_margin()) {
    std::ostringstream os;
    os << "all stages fit the cooling power but not the " << options.margin * 100.0
       << "% engineering margin";
    report.notes.push_back(os.str());
  }
  return report;
}

BudgetReport static_budget(long count, const FridgeModel& fridge, const CableSpec& cable,
                           const BudgetOptions& options) {
  BudgetReport report;
  report.counts.total = count;
  report.capacity = fridge.line_capacity();
  report.margin = options.margin;
  report.stages = cooled_stages(fridge);
  for (auto& s : report.stages) {
    s.static_W = stage_net_static(cable, fridge, s.stage, count, options.static_mode);
    finish_stage(s, options.margin);
  }
  return report;
}

std::vector<SweepEntry> sweep_sizes(long n_first, long n_last, const ProcessorModel& base,
                                    const FridgeModel& fridge, const CableSpec& cable,
                                    const std::vector<FixedLoad>& fixed,
                                    const BudgetOptions& options) {
  std::vector<std::future<SweepEntry>> jobs;
  for (long n = n_first; n <= n_last; ++n) {
    jobs.push_back(std::async(std::launch::async, [&, n] {
      ProcessorModel p = base;
      p.n = n;
      SweepEntry entry;
      entry.n = n;
      entry.counts = processor_line_counts(p);
      try {
        entry.report = system_budget(p, fridge, cable, fixed, options);
      } catch (const CapacityExceeded& e) {
        entry.error = e.what();
      }
      return entry;
    }));
  }
  std::vector<SweepEntry> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace cryoheat

namespace cryoheat {

CapacityExceeded::CapacityExceeded(std::size_t required, std::size_t available)
    : Error("configuration requires " + std::to_string(required) +
            " lines but the fridge capacity is " + std::to_string(available)),
      required_(required),
      available_(available) {}

}  // namespace cryoheat
