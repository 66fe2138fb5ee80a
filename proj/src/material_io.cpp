#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "cryoheat/materials.hpp"

namespace cryoheat {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

std::string format_coefficient(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.7g", value);
  return buf;
}

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  std::size_t line;
};

double parse_number(const Entry& e, const std::string& source, const std::string& key) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(source, e.line, "invalid number for '" + key + "': '" + e.value + "'");
  }
  return v;
}

}  // namespace

std::string serialize_model(const PolyLogModel& model) {
  std::ostringstream os;
  os << "# log10-polynomial property model\n";
  os << "name = " << model.name() << "\n";
  os << "kind = " << to_string(model.kind()) << "\n";
  os << "t_min_K = " << shortest(model.t_min()) << "\n";
  os << "t_max_K = " << shortest(model.t_max()) << "\n";
  if (const auto* c = std::get_if<ConstantBelow>(&model.low_extension())) {
    os << "low_extension = constant_below\n";
    os << "low_constant = " << shortest(c->value) << "\n";
  } else {
    os << "low_extension = linear_to_origin\n";
  }
  if (const auto* up = std::get_if<EvaluateUpTo>(&model.high_extension())) {
    os << "high_extension = evaluate_up_to\n";
    os << "high_limit_K = " << shortest(up->limit_K) << "\n";
  } else {
    os << "high_extension = forbidden\n";
  }
  os << "coefficients =";
  for (double c : model.coefficients()) os << ' ' << format_coefficient(c);
  os << "\n";
  return os.str();
}

PolyLogModel parse_model(std::string_view text, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(source, line_no, "empty key");
    if (entries.contains(key)) throw ParseError(source, line_no, "duplicate key '" + key + "'");
    entries.emplace(std::move(key), Entry{std::move(value), line_no});
  }

  auto require = [&](const std::string& key) -> const Entry& {
    auto it = entries.find(key);
    if (it == entries.end()) throw ParseError(source, line_no, "missing key '" + key + "'");
    return it->second;
  };

  const std::string name = require("name").value;

  const Entry& kind_e = require("kind");
  PropertyKind kind;
  if (kind_e.value == "thermal_conductivity") {
    kind = PropertyKind::ThermalConductivity;
  } else if (kind_e.value == "resistivity") {
    kind = PropertyKind::Resistivity;
  } else {
    throw ParseError(source, kind_e.line, "unknown kind '" + kind_e.value + "'");
  }

  const double t_min = parse_number(require("t_min_K"), source, "t_min_K");
  const double t_max = parse_number(require("t_max_K"), source, "t_max_K");

  LowExtension low = LinearToOrigin{};
  if (auto it = entries.find("low_extension"); it != entries.end()) {
    if (it->second.value == "constant_below") {
      low = ConstantBelow{parse_number(require("low_constant"), source, "low_constant")};
    } else if (it->second.value != "linear_to_origin") {
      throw ParseError(source, it->second.line, "unknown low_extension '" + it->second.value + "'");
    }
  }

  HighExtension high = Forbidden{};
  if (auto it = entries.find("high_extension"); it != entries.end()) {
    if (it->second.value == "evaluate_up_to") {
      high = EvaluateUpTo{parse_number(require("high_limit_K"), source, "high_limit_K")};
    } else if (it->second.value != "forbidden") {
      throw ParseError(source, it->second.line,
                       "unknown high_extension '" + it->second.value + "'");
    }
  }

  const Entry& coeff_e = require("coefficients");
  PolyLogCoefficients coeffs{};
  std::istringstream cs(coeff_e.value);
  std::string token;
  std::size_t count = 0;
  while (cs >> token) {
    if (count == kPolyLogCoefficients) {
      throw ParseError(source, coeff_e.line, "expected exactly 9 coefficients");
    }
    coeffs[count++] = parse_number(Entry{token, coeff_e.line}, source, "coefficients");
  }
  if (count != kPolyLogCoefficients) {
    throw ParseError(source, coeff_e.line, "expected exactly 9 coefficients");
  }

  try {
    return PolyLogModel(name, coeffs, t_min, t_max, kind, low, high);
  } catch (const InvalidModel& e) {
    throw ParseError(source, line_no, e.what());
  }
}

PolyLogModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open material file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str(), path);
}

void save_model_file(const PolyLogModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write material file '" + path + "'");
  out << serialize_model(model);
}

}  // namespace cryoheat
