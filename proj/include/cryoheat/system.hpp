#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cryoheat/attenuators.hpp"
#include "cryoheat/cables.hpp"
#include "cryoheat/fridge.hpp"

namespace cryoheat {

// n x n flux-tunable transmons with a tunable coupler on every nearest-
// neighbour edge and `readout_multiplex` qubits per readout circuit.
struct ProcessorModel {
  long n = 1;
  long readout_multiplex = 6;
  std::map<LineKind, LineSpec> lines;  // one template per line kind

  void validate() const;
};

// Templates for the reference wiring: 20 dB at 4K on flux lines with 0.4 mA
// at the mixing chamber, pump at -40 dBm behind 10 dB pads at 4K/Still/CP.
std::map<LineKind, LineSpec> default_line_templates();
// One 7.8 mW LNA at 4K per readout circuit.
std::vector<FixedLoad> default_fixed_loads();

struct LineCounts {
  long qubits = 0;
  long couplers = 0;
  long readout_circuits = 0;
  long qubit_xy = 0;
  long qubit_flux = 0;
  long coupler_flux = 0;
  long read_in = 0;
  long read_out = 0;
  long pump = 0;
  long total = 0;

  long of(LineKind kind) const;
};

LineCounts processor_line_counts(const ProcessorModel& processor);

struct BudgetOptions {
  double margin = 1.0;  // usable fraction of each stage's cooling power
  StaticMode static_mode = StaticMode::Net;
  long readout_chain_guidance = 24;  // MXC space guidance, annotated only
};

struct StageBudget {
  std::string stage;
  double temperature_K = 0.0;
  double static_W = 0.0;
  double active_flux_W = 0.0;  // DC lines: coax + pads
  double active_pump_W = 0.0;  // pump lines: coax + pads + termination
  double active_W = 0.0;
  double fixed_W = 0.0;
  double total_W = 0.0;
  double cooling_power_W = 0.0;
  double fraction = 0.0;
  bool pass = false;           // fraction <= 1
  bool within_margin = false;  // fraction <= margin
};

struct BudgetReport {
  long n = 0;
  LineCounts counts;
  std::size_t capacity = 0;
  double margin = 1.0;
  std::vector<StageBudget> stages;  // cooled stages, warmest first
  std::vector<std::string> notes;

  bool all_pass() const;
  bool all_within_margin() const;
  const StageBudget& max_fraction_stage() const;
};

/// Per-stage heat budget of a processor wired into `fridge`.
/// Throws CapacityExceeded when the processor needs more lines than the
/// fridge carries.
BudgetReport system_budget(const ProcessorModel& processor, const FridgeModel& fridge,
                           const CableSpec& cable, const std::vector<FixedLoad>& fixed,
                           const BudgetOptions& options = {});

// Static loads only, for `count` idle cables.
BudgetReport static_budget(long count, const FridgeModel& fridge, const CableSpec& cable,
                           const BudgetOptions& options = {});

struct SweepEntry {
  long n = 0;
  LineCounts counts;
  std::optional<BudgetReport> report;  // empty when capacity was exceeded
  std::optional<std::string> error;
};

// One entry per n in [n_first, n_last], in order. Sizes are evaluated
// concurrently; an entry that exceeds capacity is flagged and the sweep
// continues.
std::vector<SweepEntry> sweep_sizes(long n_first, long n_last, const ProcessorModel& base,
                                    const FridgeModel& fridge, const CableSpec& cable,
                                    const std::vector<FixedLoad>& fixed,
                                    const BudgetOptions& options = {});

}  // namespace cryoheat
