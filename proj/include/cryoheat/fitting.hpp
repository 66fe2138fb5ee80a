#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cryoheat/materials.hpp"

namespace cryoheat {

struct Measurement {
  double temperature_K;
  double value;  // SI, unit given by the series kind
};

// Raw property measurements. Temperatures and values must be positive.
struct MeasurementSeries {
  std::vector<Measurement> points;
  PropertyKind kind = PropertyKind::ThermalConductivity;
  std::string source;
  std::size_t removed = 0;  // points dropped by filter_measurements
};

// Keeps points with temperature <= t_cap, in order.
MeasurementSeries filter_measurements(const MeasurementSeries& series, double t_cap_K);

struct FitResult {
  PolyLogModel model;
  int degree = 0;
  std::vector<double> log10_residuals;  // log10(measured) - log10(fitted), per point
  double rms_log10_residual = 0.0;
};

/// Ordinary least squares of log10(value) against a polynomial in log10(T).
///
/// The Vandermonde system is built on an affinely rescaled abscissa and solved
/// with column-pivoted Householder QR; the solution is then mapped back to the
/// monomial basis in log10(T). Coefficients above `degree` are zero.
/// The fitted model spans [min T, max T] of the series, extends linearly to
/// the origin (conductivity) or as a constant (resistivity) below it, and is
/// forbidden above it.
FitResult fit_polylog(const MeasurementSeries& series, int degree = 8,
                      const std::string& name = "fitted");

// CSV with header "temperature_K,value"; '#' lines and blank lines skipped.
MeasurementSeries read_measurements_csv(std::istream& in, PropertyKind kind,
                                        const std::string& source);
MeasurementSeries load_measurements_csv(const std::string& path, PropertyKind kind);

// Columns: temperature_K,measured,fitted,log10_residual
void write_residuals_csv(std::ostream& out, const MeasurementSeries& series, const FitResult& fit);

}  // namespace cryoheat
