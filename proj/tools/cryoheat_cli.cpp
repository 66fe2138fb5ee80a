// cryoheat: cryogenic coax heat-budget calculator.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cryoheat/attenuators.hpp"
#include "cryoheat/cables.hpp"
#include "cryoheat/config.hpp"
#include "cryoheat/fitting.hpp"
#include "cryoheat/materials.hpp"
#include "cryoheat/report.hpp"
#include "cryoheat/system.hpp"

namespace {

using namespace cryoheat;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudgetFail = 2;
constexpr int kExitCapacityFail = 3;

struct Common {
  std::string config_path;
  std::vector<std::string> material_files;
  std::optional<double> margin;
};

RunConfig load_or_default(const Common& common) {
  RunConfig cfg = common.config_path.empty() ? default_run_config()
                                             : load_run_config(common.config_path);
  for (const auto& f : common.material_files) {
    cfg.material_files.push_back(std::filesystem::absolute(f).lexically_normal().string());
  }
  if (common.margin) cfg.margin = *common.margin;
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::pair<long, long> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw ConfigError("sweep range must look like A..B");
  try {
    return {std::stol(text.substr(0, dots)), std::stol(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ConfigError("sweep range must look like A..B, got '" + text + "'");
  }
}

int cmd_materials_eval(const Common& common, const std::string& material,
                       const std::vector<double>& temps) {
  const ResolvedConfig rc = resolve(load_or_default(common));
  const PolyLogModel& model = rc.materials.get(material);
  std::cout << "T_K," << to_string(model.kind()) << "_SI\n";
  for (double t : temps) {
    try {
      std::cout << full(t) << ',' << full(model.evaluate(t)) << '\n';
    } catch (const TemperatureOutOfRange& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitError;
    }
  }
  return kExitOk;
}

int run_budget_entries(const std::vector<SweepEntry>& entries, const std::string& format,
                       const std::string& out_path, const std::string& plot_path, bool quiet) {
  std::vector<BudgetReport> reports;
  for (const auto& e : entries) {
    if (e.report) reports.push_back(*e.report);
  }

  std::string body;
  if (format == "csv") {
    std::ostringstream os;
    write_budget_csv(os, reports);
    body = os.str();
  } else {
    body = budget_summary_json(entries);
  }
  write_text(out_path, body);
  if (!plot_path.empty()) write_text(plot_path, plot_data_json(entries));

  bool capacity_fail = false;
  bool budget_fail = false;
  for (const auto& e : entries) {
    if (e.error) {
      capacity_fail = true;
      std::cerr << "n = " << e.n << ": " << *e.error << "\n";
    } else if (!e.report->all_within_margin()) {
      budget_fail = true;
    }
  }
  if (!quiet && !out_path.empty() && out_path != "-") {
    for (const auto& r : reports) print_budget_table(std::cout, r);
  }
  if (capacity_fail) return kExitCapacityFail;
  if (budget_fail) {
    for (const auto& r : reports) {
      for (const auto& s : r.stages) {
        if (!s.within_margin) {
          std::cerr << "n = " << r.n << ": stage " << s.stage << " at fraction "
                    << sci4(s.fraction) << " exceeds margin " << r.margin << "\n";
        }
      }
    }
    return kExitBudgetFail;
  }
  return kExitOk;
}

int cmd_budget(const Common& common, std::optional<long> n, const std::string& sweep,
               const std::string& format, const std::string& out_path,
               const std::string& plot_path, bool quiet) {
  const ResolvedConfig rc = resolve(load_or_default(common));
  long first = n.value_or(rc.processor.n);
  long last = first;
  if (!sweep.empty()) std::tie(first, last) = parse_range(sweep);
  const auto entries = sweep_sizes(first, last, rc.processor, rc.fridge, rc.cable, rc.fixed_loads,
                                   rc.options);
  return run_budget_entries(entries, format, out_path, plot_path, quiet);
}

int cmd_cable_static(const Common& common, long count, const std::string& mode) {
  const ResolvedConfig rc = resolve(load_or_default(common));
  const StaticMode m = static_mode_from_string(mode.empty() ? "net" : mode);
  std::cout << "stage,segment_load_W,stage_load_W,count,total_W,cooling_power_W,fraction\n";
  for (std::size_t i = 1; i < rc.fridge.size(); ++i) {
    const Stage& st = rc.fridge.stage(i);
    const double seg = cable_static_load(rc.cable, rc.fridge.incoming_segment(i));
    const double one = stage_net_static(rc.cable, rc.fridge, st.name, 1, m);
    const double total = stage_net_static(rc.cable, rc.fridge, st.name, count, m);
    std::cout << st.name << ',' << sci4(seg) << ',' << sci4(one) << ',' << count << ','
              << sci4(total) << ',';
    if (st.cooling_power_W) {
      std::cout << sci4(*st.cooling_power_W) << ',' << sci4(total / *st.cooling_power_W);
    } else {
      std::cout << ',';
    }
    std::cout << '\n';
  }
  return kExitOk;
}

int cmd_line_active(const Common& common, const std::string& kind_name) {
  const ResolvedConfig rc = resolve(load_or_default(common));
  const LineKind kind = line_kind_from_string(kind_name);
  const auto it = rc.processor.lines.find(kind);
  if (it == rc.processor.lines.end()) throw ConfigError("no template for line '" + kind_name + "'");
  const LineSpec& line = it->second;

  CurrentProfile profile;
  if (is_dc(kind) && line.target_current_A > 0.0) {
    profile = back_propagate_current(line, rc.fridge, rc.cable);
  } else if (kind == LineKind::TwpaPump) {
    profile = pump_current_profile(line, rc.fridge);
  } else {
    profile.segment_current_A.assign(rc.fridge.size(), 0.0);
  }
  const ActiveLoads loads = line_active_loads(line, rc.fridge, rc.cable);

  std::cout << "stage,attenuation_dB,current_in_mA,coax_W,below_W,attenuator_W,termination_W,total_W\n";
  for (std::size_t i = 1; i < rc.fridge.size(); ++i) {
    const Stage& st = rc.fridge.stage(i);
    const auto a = line.attenuation_dB.find(st.name);
    const double dB = a == line.attenuation_dB.end() ? 0.0 : a->second;
    const StageActiveLoad& l = loads.stages[i];
    std::cout << st.name << ',' << dB << ',' << sci4(profile.segment_current_A[i] * 1e3) << ','
              << sci4(l.coax_W) << ',' << sci4(l.below_W) << ',' << sci4(l.attenuator_W) << ','
              << sci4(l.termination_W) << ',' << sci4(l.total()) << '\n';
  }
  return kExitOk;
}

int cmd_fit(const std::string& csv, int degree, double t_cap, const std::string& kind_name,
            const std::string& name, const std::string& out, const std::string& residuals) {
  PropertyKind kind = PropertyKind::ThermalConductivity;
  if (kind_name == "resistivity") {
    kind = PropertyKind::Resistivity;
  } else if (kind_name != "thermal_conductivity") {
    throw ConfigError("kind must be thermal_conductivity or resistivity");
  }
  const MeasurementSeries raw = load_measurements_csv(csv, kind);
  const MeasurementSeries kept = filter_measurements(raw, t_cap);
  std::cerr << "excluded " << kept.removed << " point(s) above " << t_cap << " K\n";
  const FitResult fit = fit_polylog(kept, degree, name);
  write_text(out, serialize_model(fit.model));
  if (!residuals.empty()) {
    std::ofstream r(residuals);
    if (!r) throw Error("cannot write '" + residuals + "'");
    write_residuals_csv(r, kept, fit);
  }
  std::cerr << "points used: " << kept.points.size() << ", RMS log10 residual: "
            << sci4(fit.rms_log10_residual) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cryogenic coax wiring heat-budget calculator"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON run configuration (default: XLD1000-SL)");
    sub->add_option("--material-file", common.material_files, "Extra material definition file(s)");
  };

  auto* materials = app.add_subcommand("materials", "Material property models");
  materials->require_subcommand(1);
  auto* eval = materials->add_subcommand("eval", "Evaluate a material at temperatures");
  std::string material;
  std::vector<double> temps;
  eval->add_option("material", material, "Material name")->required();
  eval->add_option("temperatures", temps, "Temperatures in K")->required();
  add_common(eval);
  auto* list = materials->add_subcommand("list", "List known materials");
  add_common(list);
  auto* show = materials->add_subcommand("show", "Print a material definition");
  show->add_option("material", material, "Material name")->required();
  add_common(show);

  auto* fit = app.add_subcommand("fit", "Fit a log-polynomial model to measurements");
  std::string csv, kind_name = "thermal_conductivity", fit_name = "fitted", fit_out, residuals;
  int degree = 8;
  double t_cap = 300.0;
  fit->add_option("csv", csv, "CSV with header temperature_K,value")->required();
  fit->add_option("--degree", degree, "Polynomial degree")->capture_default_str();
  fit->add_option("--t-cap", t_cap, "Discard points above this temperature (K)")->capture_default_str();
  fit->add_option("--kind", kind_name, "thermal_conductivity or resistivity")->capture_default_str();
  fit->add_option("--name", fit_name, "Name of the fitted material")->capture_default_str();
  fit->add_option("--out", fit_out, "Material definition output (default stdout)");
  fit->add_option("--residuals", residuals, "Residual CSV output");

  auto* cable = app.add_subcommand("cable", "Cable computations");
  cable->require_subcommand(1);
  auto* cable_static = cable->add_subcommand("static", "Static conduction loads per stage");
  long count = 1;
  std::string mode;
  cable_static->add_option("--count", count, "Number of cables")->capture_default_str();
  cable_static->add_option("--mode", mode, "net (default) or incoming");
  add_common(cable_static);

  auto* line = app.add_subcommand("line", "Line computations");
  line->require_subcommand(1);
  auto* line_active = line->add_subcommand("active", "Active loads of one line");
  std::string line_kind = "qubit_flux";
  line_active->add_option("--line", line_kind, "Line kind")->capture_default_str();
  add_common(line_active);

  std::optional<long> n;
  std::string sweep, format = "csv", out, plot;
  bool quiet = false;
  auto add_budget = [&](CLI::App* sub, bool is_sweep) {
    add_common(sub);
    if (is_sweep) {
      sub->add_option("--sweep", sweep, "Range of array edges, A..B")->required();
    } else {
      sub->add_option("--n", n, "Array edge n (default from config)");
      sub->add_option("--sweep", sweep, "Range of array edges, A..B");
    }
    sub->add_option("--margin", common.margin, "Usable fraction of cooling power");
    sub->add_option("--format", format, "csv or summary")
        ->check(CLI::IsMember({"csv", "summary"}))
        ->capture_default_str();
    sub->add_option("--out", out, "Report file (default stdout)");
    sub->add_option("--plot-data", plot, "Write n vs fraction series to this file");
    sub->add_flag("--quiet", quiet, "No human-readable table");
  };
  auto* budget = app.add_subcommand("budget", "Heat budget of one processor size");
  add_budget(budget, false);
  auto* sweep_cmd = app.add_subcommand("sweep", "Heat budget over a range of sizes");
  add_budget(sweep_cmd, true);

  auto* config = app.add_subcommand("config", "Configuration helpers");
  config->require_subcommand(1);
  auto* config_show = config->add_subcommand("show", "Print the resolved configuration");
  add_common(config_show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*eval) return cmd_materials_eval(common, material, temps);
    if (*list) {
      const ResolvedConfig rc = resolve(load_or_default(common));
      for (const auto& name : rc.materials.names()) std::cout << name << "\n";
      return kExitOk;
    }
    if (*show) {
      const ResolvedConfig rc = resolve(load_or_default(common));
      std::cout << serialize_model(rc.materials.get(material));
      return kExitOk;
    }
    if (*fit) return cmd_fit(csv, degree, t_cap, kind_name, fit_name, fit_out, residuals);
    if (*cable_static) return cmd_cable_static(common, count, mode);
    if (*line_active) return cmd_line_active(common, line_kind);
    if (*budget) return cmd_budget(common, n, sweep, format, out, plot, quiet);
    if (*sweep_cmd) return cmd_budget(common, std::nullopt, sweep, format, out, plot, quiet);
    if (*config_show) {
      std::cout << dump_run_config(load_or_default(common));
      return kExitOk;
    }
  } catch (const cryoheat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
