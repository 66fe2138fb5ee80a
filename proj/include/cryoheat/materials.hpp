#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cryoheat/errors.hpp"

namespace cryoheat {

enum class PropertyKind { ThermalConductivity, Resistivity };

std::string_view to_string(PropertyKind kind);
std::string_view unit_of(PropertyKind kind);

// Below t_min the value falls on a straight line from (t_min, f(t_min)) to the origin.
struct LinearToOrigin {
  bool operator==(const LinearToOrigin&) const = default;
};

// Below t_min the value is a fixed constant (model unit).
struct ConstantBelow {
  double value;
  bool operator==(const ConstantBelow&) const = default;
};

// Above t_max evaluation is an error.
struct Forbidden {
  bool operator==(const Forbidden&) const = default;
};

// The fit may be evaluated beyond t_max up to limit_K.
struct EvaluateUpTo {
  double limit_K;
  bool operator==(const EvaluateUpTo&) const = default;
};

using LowExtension = std::variant<LinearToOrigin, ConstantBelow>;
using HighExtension = std::variant<Forbidden, EvaluateUpTo>;

inline constexpr std::size_t kPolyLogCoefficients = 9;
using PolyLogCoefficients = std::array<double, kPolyLogCoefficients>;

// Default relative tolerance for property integrals.
inline constexpr double kIntegrationRelTol = 1e-10;

/// Temperature-dependent material property of the form
///
///   f(T) = 10^( a + b x + c x^2 + ... + i x^8 ),   x = log10(T / 1 K)
///
/// valid on [t_min, t_max], with explicit policies for temperatures outside
/// that window. Values are SI: W/(m K) for thermal conductivity, Ohm m for
/// resistivity. Immutable once constructed.
class PolyLogModel {
 public:
  PolyLogModel(std::string name, PolyLogCoefficients coefficients, double t_min_K,
               double t_max_K, PropertyKind kind, LowExtension low = LinearToOrigin{},
               HighExtension high = Forbidden{});

  const std::string& name() const { return name_; }
  const PolyLogCoefficients& coefficients() const { return coefficients_; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  PropertyKind kind() const { return kind_; }
  const LowExtension& low_extension() const { return low_; }
  const HighExtension& high_extension() const { return high_; }

  // Highest temperature at which evaluate() succeeds.
  double upper_limit() const;

  // Raw fit 10^poly(log10 T) with no range checks.
  double fit_value(double t_K) const;

  double evaluate(double t_K) const;

  // Definite integral of evaluate() over [t_low, t_high]. t_low may be 0.
  // Extension regions are integrated in closed form; the fitted region by
  // adaptive Gauss-Kronrod quadrature to rel_tol.
  double integrate(double t_low_K, double t_high_K, double rel_tol = kIntegrationRelTol) const;

  bool operator==(const PolyLogModel&) const = default;

 private:
  std::string name_;
  PolyLogCoefficients coefficients_;
  double t_min_;
  double t_max_;
  PropertyKind kind_;
  LowExtension low_;
  HighExtension high_;
};

double eval_property(const PolyLogModel& model, double t_K);
double integrate_property(const PolyLogModel& model, double t_low_K, double t_high_K);

/// Named collection of property models. Starts with the built-in coax
/// materials; more can be added or loaded from material definition files.
class MaterialLibrary {
 public:
  MaterialLibrary();  // built-ins only

  static MaterialLibrary empty();

  const PolyLogModel& get(const std::string& name) const;
  bool contains(const std::string& name) const { return models_.contains(name); }
  void add(PolyLogModel model);  // replaces an existing entry of the same name
  std::vector<std::string> names() const;

 private:
  struct EmptyTag {};
  explicit MaterialLibrary(EmptyTag) {}

  std::map<std::string, PolyLogModel> models_;
};

namespace builtin {
// Silver-plated C7150 cupronickel centre conductor.
PolyLogModel inner_k();
// C7150 cupronickel outer conductor.
PolyLogModel outer_k();
// PTFE dielectric (NIST Teflon curve).
PolyLogModel ptfe_k();
// DC resistivity of the centre conductor; constant below 3.8 K.
PolyLogModel inner_rho();
}  // namespace builtin

// Material definition files: "key = value" lines, '#' comments.
std::string serialize_model(const PolyLogModel& model);
PolyLogModel parse_model(std::string_view text, const std::string& source = "<string>");
PolyLogModel load_model_file(const std::string& path);
void save_model_file(const PolyLogModel& model, const std::string& path);

// Seven significant figures, trailing zeros kept ("122.5470").
std::string format_coefficient(double value);

}  // namespace cryoheat
