#include "cryoheat/fitting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <Eigen/Dense>

namespace cryoheat {

namespace {

void check_point(const Measurement& m, const std::string& source) {
  if (!(m.temperature_K > 0.0) || !(m.value > 0.0) || !std::isfinite(m.temperature_K) ||
      !std::isfinite(m.value)) {
    throw InvalidModel("series '" + source + "': temperatures and values must be positive");
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

MeasurementSeries filter_measurements(const MeasurementSeries& series, double t_cap_K) {
  MeasurementSeries out;
  out.kind = series.kind;
  out.source = series.source;
  std::copy_if(series.points.begin(), series.points.end(), std::back_inserter(out.points),
               [t_cap_K](const Measurement& m) { return m.temperature_K <= t_cap_K; });
  out.removed = series.removed + (series.points.size() - out.points.size());
  if (out.points.empty()) {
    throw EmptyAfterFilter("no measurements at or below " + std::to_string(t_cap_K) + " K in '" +
                           series.source + "'");
  }
  return out;
}

FitResult fit_polylog(const MeasurementSeries& series, int degree, const std::string& name) {
  if (degree < 1 || degree > static_cast<int>(kPolyLogCoefficients) - 1) {
    throw InvalidModel("fit degree must be between 1 and 8");
  }
  const std::size_t n = series.points.size();
  const auto terms = static_cast<std::size_t>(degree) + 1;
  if (n <= terms) {
    throw InsufficientData("fit of degree " + std::to_string(degree) + " needs more than " +
                           std::to_string(terms) + " points, got " + std::to_string(n));
  }
  for (const auto& m : series.points) check_point(m, series.source);

  Eigen::VectorXd x(n);
  Eigen::VectorXd y(n);
  for (std::size_t r = 0; r < n; ++r) {
    x(r) = std::log10(series.points[r].temperature_K);
    y(r) = std::log10(series.points[r].value);
  }
  const double lo = x.minCoeff();
  const double hi = x.maxCoeff();
  const double centre = 0.5 * (lo + hi);
  const double half = hi > lo ? 0.5 * (hi - lo) : 1.0;

  Eigen::MatrixXd vander(n, terms);
  for (std::size_t r = 0; r < n; ++r) {
    const double u = (x(r) - centre) / half;
    double p = 1.0;
    for (std::size_t c = 0; c < terms; ++c, p *= u) vander(r, c) = p;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vander);
  if (qr.rank() < static_cast<Eigen::Index>(terms)) {
    throw SingularSystem("least-squares system is rank deficient (rank " +
                         std::to_string(qr.rank()) + " of " + std::to_string(terms) + ")");
  }
  const Eigen::VectorXd scaled = qr.solve(y);

  // sum_j s_j ((x - m)/h)^j  ->  sum_k c_k x^k
  PolyLogCoefficients coeffs{};
  for (int j = 0; j <= degree; ++j) {
    const double sj = scaled(j) / std::pow(half, j);
    for (int k = 0; k <= j; ++k) {
      coeffs[k] += sj * binomial(j, k) * std::pow(-centre, j - k);
    }
  }

  double t_lo = series.points.front().temperature_K;
  double t_hi = t_lo;
  for (const auto& m : series.points) {
    t_lo = std::min(t_lo, m.temperature_K);
    t_hi = std::max(t_hi, m.temperature_K);
  }
  if (!(t_lo < t_hi)) throw SingularSystem("all measurements share one temperature");

  LowExtension low = LinearToOrigin{};
  if (series.kind == PropertyKind::Resistivity) {
    const PolyLogModel probe(name, coeffs, t_lo, t_hi, series.kind, LinearToOrigin{});
    low = ConstantBelow{probe.fit_value(t_lo)};
  }

  FitResult result{PolyLogModel(name, coeffs, t_lo, t_hi, series.kind, low, Forbidden{}), degree,
                   {}, 0.0};
  double sum_sq = 0.0;
  result.log10_residuals.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double fitted = std::log10(result.model.fit_value(series.points[r].temperature_K));
    const double res = y(r) - fitted;
    result.log10_residuals.push_back(res);
    sum_sq += res * res;
  }
  result.rms_log10_residual = std::sqrt(sum_sq / static_cast<double>(n));
  return result;
}

MeasurementSeries read_measurements_csv(std::istream& in, PropertyKind kind,
                                        const std::string& source) {
  MeasurementSeries series;
  series.kind = kind;
  series.source = source;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!header_seen) {
      std::string compact;
      for (char ch : line) {
        if (ch != ' ' && ch != '\t') compact.push_back(ch);
      }
      if (compact != "temperature_K,value") {
        throw ParseError(source, line_no, "expected header 'temperature_K,value'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(source, line_no, "expected two columns");
    auto field = [&](std::string_view s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      if (b == std::string_view::npos) throw ParseError(source, line_no, "empty field");
      s = s.substr(b, e - b + 1);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(source, line_no, "malformed number '" + std::string(s) + "'");
      }
      return v;
    };
    const std::string_view view(line);
    const Measurement m{field(view.substr(0, comma)), field(view.substr(comma + 1))};
    if (!(m.temperature_K > 0.0) || !(m.value > 0.0)) {
      throw ParseError(source, line_no, "temperature and value must be positive");
    }
    series.points.push_back(m);
  }
  if (!header_seen) throw ParseError(source, line_no, "missing header 'temperature_K,value'");
  return series;
}

MeasurementSeries load_measurements_csv(const std::string& path, PropertyKind kind) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open measurement file '" + path + "'");
  return read_measurements_csv(in, kind, path);
}

void write_residuals_csv(std::ostream& out, const MeasurementSeries& series, const FitResult& fit) {
  out << "temperature_K,measured,fitted,log10_residual\n";
  char buf[128];
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    const auto& m = series.points[i];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", m.temperature_K, m.value,
                  fit.model.fit_value(m.temperature_K), fit.log10_residuals[i]);
    out << buf;
  }
}

}  // namespace cryoheat
