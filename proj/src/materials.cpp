#include "cryoheat/materials.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cryoheat {

TemperatureOutOfRange::TemperatureOutOfRange(const std::string& model, double temperature_K)
    : Error([&] {
        std::ostringstream os;
        os << "temperature " << temperature_K << " K is outside the evaluable range of '"
           << model << "'";
        return os.str();
      }()),
      temperature_K_(temperature_K) {}

std::string_view to_string(PropertyKind kind) {
  switch (kind) {
    case PropertyKind::ThermalConductivity:
      return "thermal_conductivity";
    case PropertyKind::Resistivity:
      return "resistivity";
  }
  return "unknown";
}

std::string_view unit_of(PropertyKind kind) {
  return kind == PropertyKind::ThermalConductivity ? "W/(m K)" : "Ohm m";
}

PolyLogModel::PolyLogModel(std::string name, PolyLogCoefficients coefficients, double t_min_K,
                           double t_max_K, PropertyKind kind, LowExtension low,
                           HighExtension high)
    : name_(std::move(name)),
      coefficients_(coefficients),
      t_min_(t_min_K),
      t_max_(t_max_K),
      kind_(kind),
      low_(low),
      high_(high) {
  if (!(t_min_ > 0.0) || !(t_min_ < t_max_) || !std::isfinite(t_max_)) {
    throw InvalidModel("model '" + name_ + "': require 0 < t_min < t_max");
  }
  for (double c : coefficients_) {
    if (!std::isfinite(c)) throw InvalidModel("model '" + name_ + "': non-finite coefficient");
  }
  if (const auto* up = std::get_if<EvaluateUpTo>(&high_); up && !(up->limit_K >= t_max_)) {
    throw InvalidModel("model '" + name_ + "': extension limit below t_max");
  }
  if (const auto* c = std::get_if<ConstantBelow>(&low_); c && !(c->value > 0.0)) {
    throw InvalidModel("model '" + name_ + "': low-temperature constant must be positive");
  }
  if (std::holds_alternative<LinearToOrigin>(low_)) {
    const double anchor = fit_value(t_min_);
    if (!std::isfinite(anchor) || !(anchor > 0.0)) {
      throw InvalidModel("model '" + name_ + "': value at t_min is not finite and positive");
    }
  }
}

double PolyLogModel::upper_limit() const {
  if (const auto* up = std::get_if<EvaluateUpTo>(&high_)) return up->limit_K;
  return t_max_;
}

double PolyLogModel::fit_value(double t_K) const {
  const double x = std::log10(t_K);
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return std::pow(10.0, acc);
}

double PolyLogModel::evaluate(double t_K) const {
  if (!(t_K > 0.0) || t_K > upper_limit()) throw TemperatureOutOfRange(name_, t_K);
  if (t_K >= t_min_) return fit_value(t_K);
  if (const auto* c = std::get_if<ConstantBelow>(&low_)) return c->value;
  return fit_value(t_min_) * (t_K / t_min_);
}

double PolyLogModel::integrate(double t_low_K, double t_high_K, double rel_tol) const {
  if (!(t_low_K >= 0.0) || t_high_K > upper_limit() || !(t_high_K >= t_low_K)) {
    throw TemperatureOutOfRange(name_, t_low_K < 0.0 ? t_low_K : t_high_K);
  }
  double total = 0.0;

  // Extension region: closed form.
  if (t_low_K < t_min_) {
    const double a = t_low_K;
    const double b = std::min(t_high_K, t_min_);
    if (const auto* c = std::get_if<ConstantBelow>(&low_)) {
      total += c->value * (b - a);
    } else {
      const double slope = fit_value(t_min_) / t_min_;
      total += 0.5 * slope * (b * b - a * a);
    }
  }

  // Fitted region.
  const double a = std::max(t_low_K, t_min_);
  const double b = t_high_K;
  if (b > a) {
    using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
    const unsigned depth = (b - a) < 1e-6 * b ? 0u : 20u;
    double error = 0.0;
    double l1 = 0.0;
    auto f = [this](double t) { return fit_value(t); };
    const double piece = Quad::integrate(f, a, b, depth, rel_tol, &error, &l1);
    const double roundoff =
        64.0 * std::numeric_limits<double>::epsilon() * b * (l1 / (b - a));
    if (!std::isfinite(piece) || error > std::max(rel_tol * l1 * 10.0, roundoff)) {
      std::ostringstream os;
      os << "integral of '" << name_ << "' over [" << a << ", " << b
         << "] K did not reach relative tolerance " << rel_tol << " (error estimate " << error
         << ")";
      throw IntegrationFailure(os.str());
    }
    total += piece;
  }
  return total;
}

double eval_property(const PolyLogModel& model, double t_K) { return model.evaluate(t_K); }

double integrate_property(const PolyLogModel& model, double t_low_K, double t_high_K) {
  return model.integrate(t_low_K, t_high_K);
}

namespace builtin {

PolyLogModel outer_k() {
  return PolyLogModel("outer_k",
                      {-3.198399, 20.49947, -66.11415, 117.6898, -121.4773, 76.21467,
                       -28.74949, 5.984756, -0.5266892},
                      2.0, 297.6, PropertyKind::ThermalConductivity, LinearToOrigin{},
                      EvaluateUpTo{300.0});
}

PolyLogModel ptfe_k() {
  return PolyLogModel("ptfe_k",
                      {2.7380, -30.677, 89.430, -136.99, 124.69, -69.556, 23.320, -4.3135,
                       0.33829},
                      4.0, 300.0, PropertyKind::ThermalConductivity, LinearToOrigin{},
                      Forbidden{});
}

PolyLogModel inner_k() {
  return PolyLogModel("inner_k",
                      {-2.750003, 25.84512, -74.18405, 113.5856, -96.84387, 46.38328,
                       -11.82451, 1.321682, -0.02456645},
                      2.3, 292.6, PropertyKind::ThermalConductivity, LinearToOrigin{},
                      EvaluateUpTo{300.0});
}

PolyLogModel inner_rho() {
  return PolyLogModel("inner_rho",
                      {-8.327474, 10.01214, -52.83315, 122.5470, -152.7599, 109.0327,
                       -44.41614, 9.598158, -0.8539285},
                      3.8, 300.0, PropertyKind::Resistivity, ConstantBelow{9.928e-9},
                      Forbidden{});
}

}  // namespace builtin

MaterialLibrary::MaterialLibrary() {
  for (auto m : {builtin::inner_k(), builtin::outer_k(), builtin::ptfe_k(), builtin::inner_rho()}) {
    add(std::move(m));
  }
}

MaterialLibrary MaterialLibrary::empty() { return MaterialLibrary(EmptyTag{}); }

const PolyLogModel& MaterialLibrary::get(const std::string& name) const {
  auto it = models_.find(name);
  if (it == models_.end()) throw UnknownMaterial(name);
  return it->second;
}

void MaterialLibrary::add(PolyLogModel model) {
  auto name = model.name();
  models_.insert_or_assign(std::move(name), std::move(model));
}

std::vector<std::string> MaterialLibrary::names() const {
  std::vector<std::string> out;
  out.reserve(models_.size());
  for (const auto& [name, _] : models_) out.push_back(name);
  return out;
}

}  // namespace cryoheat
