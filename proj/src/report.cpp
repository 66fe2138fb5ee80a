#include "cryoheat/report.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <ostream>

#include "json.hpp"

namespace cryoheat {

using nlohmann::ordered_json;

std::string sci4(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", value);
  return buf;
}

std::string full(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

void write_budget_csv(std::ostream& out, const std::vector<BudgetReport>& reports,
                      const std::string& banner) {
  if (!banner.empty()) out << "# " << banner << "\n";
  out << "n,stage,temperature_K,lines,static_W,active_flux_W,active_pump_W,active_W,fixed_W,"
         "total_W,cooling_power_W,fraction,pass,within_margin\n";
  for (const auto& r : reports) {
    for (const auto& s : r.stages) {
      out << r.n << ',' << s.stage << ',' << full(s.temperature_K) << ',' << r.counts.total << ','
          << full(s.static_W) << ',' << full(s.active_flux_W) << ',' << full(s.active_pump_W)
          << ',' << full(s.active_W) << ',' << full(s.fixed_W) << ',' << full(s.total_W) << ','
          << full(s.cooling_power_W) << ',' << full(s.fraction) << ',' << (s.pass ? 1 : 0) << ','
          << (s.within_margin ? 1 : 0) << '\n';
    }
  }
}

namespace {

ordered_json counts_json(const LineCounts& c) {
  return ordered_json{{"qubits", c.qubits},         {"couplers", c.couplers},
                      {"readout_circuits", c.readout_circuits},
                      {"qubit_xy", c.qubit_xy},     {"qubit_flux", c.qubit_flux},
                      {"coupler_flux", c.coupler_flux},
                      {"read_in", c.read_in},       {"read_out", c.read_out},
                      {"pump", c.pump},             {"total", c.total}};
}

}  // namespace

std::string budget_summary_json(const std::vector<SweepEntry>& entries) {
  ordered_json root = ordered_json::array();
  for (const auto& e : entries) {
    ordered_json j{{"n", e.n}, {"counts", counts_json(e.counts)}};
    if (e.error) {
      j["error"] = *e.error;
    } else {
      const BudgetReport& r = *e.report;
      j["capacity"] = r.capacity;
      j["margin"] = r.margin;
      j["all_pass"] = r.all_pass();
      j["all_within_margin"] = r.all_within_margin();
      j["max_fraction_stage"] = r.max_fraction_stage().stage;
      ordered_json stages = ordered_json::array();
      for (const auto& s : r.stages) {
        stages.push_back({{"stage", s.stage},
                          {"static_W", s.static_W},
                          {"active_W", s.active_W},
                          {"fixed_W", s.fixed_W},
                          {"total_W", s.total_W},
                          {"cooling_power_W", s.cooling_power_W},
                          {"fraction", s.fraction},
                          {"pass", s.pass}});
      }
      j["stages"] = stages;
      j["notes"] = r.notes;
    }
    root.push_back(j);
  }
  return root.dump(2) + "\n";
}

std::string plot_data_json(const std::vector<SweepEntry>& entries) {
  std::map<std::string, std::pair<std::vector<long>, std::vector<double>>> series;
  std::vector<std::string> order;
  for (const auto& e : entries) {
    if (!e.report) continue;
    for (const auto& s : e.report->stages) {
      if (!series.contains(s.stage)) order.push_back(s.stage);
      auto& [xs, ys] = series[s.stage];
      xs.push_back(e.n);
      ys.push_back(s.fraction);
    }
  }
  ordered_json root = ordered_json::array();
  for (const auto& stage : order) {
    const auto& [xs, ys] = series[stage];
    root.push_back({{"stage", stage}, {"x_n", xs}, {"y_fraction", ys}});
  }
  return root.dump(2) + "\n";
}

void print_budget_table(std::ostream& out, const BudgetReport& r) {
  char buf[256];
  out << "n = " << r.n << "  (" << r.counts.qubits << " qubits, " << r.counts.total << " of "
      << r.capacity << " lines)\n";
  std::snprintf(buf, sizeof buf, "%-6s %11s %11s %11s %11s %11s %9s  %s\n", "stage", "static_W",
                "active_W", "fixed_W", "total_W", "cooling_W", "fraction", "ok");
  out << buf;
  for (const auto& s : r.stages) {
    std::snprintf(buf, sizeof buf, "%-6s %11s %11s %11s %11s %11s %9s  %s\n", s.stage.c_str(),
                  sci4(s.static_W).c_str(), sci4(s.active_W).c_str(), sci4(s.fixed_W).c_str(),
                  sci4(s.total_W).c_str(), sci4(s.cooling_power_W).c_str(),
                  sci4(s.fraction).c_str(), s.within_margin ? "yes" : "NO");
    out << buf;
  }
  for (const auto& note : r.notes) out << "note: " << note << "\n";
}

}  // namespace cryoheat
