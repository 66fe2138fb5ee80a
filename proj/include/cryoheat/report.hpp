#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cryoheat/system.hpp"

namespace cryoheat {

// Machine CSV: one row per cooled stage per report, full precision.
// A leading "# ..." line is written only when `banner` is non-empty.
void write_budget_csv(std::ostream& out, const std::vector<BudgetReport>& reports,
                      const std::string& banner = {});

// JSON summary of a sweep or single budget; capacity failures appear as
// entries with an "error" field.
std::string budget_summary_json(const std::vector<SweepEntry>& entries);

// n vs fraction series per stage, for external plotting.
std::string plot_data_json(const std::vector<SweepEntry>& entries);

// Human-readable table, 4 significant figures.
void print_budget_table(std::ostream& out, const BudgetReport& report);

std::string sci4(double value);  // "%.3e"
std::string full(double value);  // round-trip precision

}  // namespace cryoheat
