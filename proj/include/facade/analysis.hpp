#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "facade/domain_model.hpp"
#include "facade/field.hpp"

namespace facade {

// -k dT/dx at x = L per row, W/m², one-sided three-point gradient inside the last layer
// or the two-point face gradient when that layer is thinner than two cells.
std::vector<double> inside_flux_profile(const Field2D& u, const Grid2D& grid,
                                        const ReferenceScales& scales);

// Height average of the inside flux, trapezoid in y. Positive when heat enters the zone.
double inside_flux(const Field2D& u, const Grid2D& grid, const ReferenceScales& scales);

struct FluxSeries {
  std::vector<double> time;  // s
  std::vector<double> flux;  // W/m²

  void push(double t, double j) {
    time.push_back(t);
    flux.push_back(j);
  }
  std::size_t size() const noexcept { return time.size(); }
};

// ∫ J dt over [begin, end] in MJ/m², trapezoid with linear interpolation at the ends.
double thermal_load(const FluxSeries& series, double begin, double end);

// Running integral at each sample, MJ/m².
std::vector<double> cumulative_load(const FluxSeries& series);

struct MonthlyLoad {
  std::string month;  // YYYY-MM
  double begin = 0.0;  // s, series time axis
  double end = 0.0;
  double energy = 0.0;  // MJ/m²
};

// Splits the series span along calendar months. Series time 0 is midnight of `start`.
std::vector<MonthlyLoad> monthly_loads(const FluxSeries& series, std::chrono::sys_days start);

enum class ErrorKind { L2, Normalized, Relative };

// Weighted RMS of the difference; weights need not be normalized. The normalized kind
// divides by the range of `reference`, the relative kind by |reference| nodewise and
// throws when |reference| < floor somewhere.
double error_metric(ErrorKind kind, std::span<const double> value,
                    std::span<const double> reference, std::span<const double> weights,
                    double floor = 1e-12);

// Field version with trapezoid weights on the uniform grid.
double error_metric(ErrorKind kind, const Field2D& value, const Field2D& reference,
                    double floor = 1e-12);

// Time-series version with trapezoid weights from the timestamps.
double series_error(ErrorKind kind, std::span<const double> time, std::span<const double> value,
                    std::span<const double> reference, double floor = 1e-12);

std::vector<double> trapezoid_weights(std::span<const double> abscissae);

double cpu_ratio(double measured, double reference);

// (value - reference) / |reference| in percent.
double relative_difference_percent(double value, double reference);

void write_flux_csv(const std::filesystem::path& path, const FluxSeries& series);
void write_loads_csv(const std::filesystem::path& path, const std::vector<MonthlyLoad>& loads);

struct ErrorRow {
  std::string scheme;
  double dt = 0.0;
  double eps2 = 0.0;
  double rcpu = 0.0;
};
void write_error_table(const std::filesystem::path& path, const std::vector<ErrorRow>& rows);

}  // namespace facade
