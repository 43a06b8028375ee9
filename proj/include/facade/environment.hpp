#pragma once

#include <filesystem>
#include <optional>
#include <vector>

namespace facade {

enum class Interpolation { Hold, Linear };

// Uniformly sampled climate data. Times are seconds from the start of the weather file.
class EnvironmentSeries {
 public:
  struct Columns {
    std::vector<double> time;         // s
    std::vector<double> t_out;        // K
    std::vector<double> t_in;         // K
    std::vector<double> wind;         // m/s
    std::vector<double> q_direct;     // W/m^2, facade-normal direct component
    std::vector<double> q_diffuse;    // W/m^2
    std::vector<double> q_reflected;  // W/m^2
    std::vector<double> sunlit;       // sunlit area ratio S
    std::vector<double> tan_theta;    // optional; empty when unavailable
  };

  explicit EnvironmentSeries(Columns columns, Interpolation interpolation = Interpolation::Hold);

  std::size_t size() const noexcept { return c_.time.size(); }
  double start() const noexcept { return c_.time.front(); }
  double end() const noexcept { return c_.time.back(); }
  double step() const noexcept { return step_; }
  Interpolation interpolation() const noexcept { return interpolation_; }
  bool has_tan_theta() const noexcept { return !c_.tan_theta.empty(); }
  bool contains(double t) const noexcept;

  double outside_temperature(double t) const { return sample(c_.t_out, t); }
  double inside_temperature(double t) const { return sample(c_.t_in, t); }
  double wind_speed(double t) const { return sample(c_.wind, t); }
  double direct_flux(double t) const { return sample(c_.q_direct, t); }
  double diffuse_flux(double t) const { return sample(c_.q_diffuse, t); }
  double reflected_flux(double t) const { return sample(c_.q_reflected, t); }
  double sunlit_ratio(double t) const { return sample(c_.sunlit, t); }
  double tan_theta(double t) const;

  const Columns& columns() const noexcept { return c_; }

  // Same samples with some columns replaced, e.g. to overwrite the inside temperature.
  EnvironmentSeries with_columns(Columns columns) const {
    return EnvironmentSeries(std::move(columns), interpolation_);
  }

 private:
  double sample(const std::vector<double>& column, double t) const;

  Columns c_;
  double step_ = 0.0;
  Interpolation interpolation_;
};

// Convective coefficient h = h10 + h11 (v / v0) (y / y0)^beta.
struct ConvectionModel {
  double h10 = 5.82;  // W/(m^2 K)
  double h11 = 3.96;  // W/(m^2 K)
  double beta = 0.32;
  double v0 = 1.0;    // m/s
  double y0 = 1.0;    // m

  void validate() const;
};

struct ShadingGeometry {
  double front_height = 3.0;    // F, m
  double front_distance = 5.0;  // D, m
  double facade_height = 3.0;   // H, m

  void validate() const;
};

// `y_floor` replaces y below it; the solver passes half a cell height.
double surface_coefficient(const ConvectionModel& model, double y, double wind,
                           double y_floor = 0.0);
double surface_coefficient(const ConvectionModel& model, double y, double t,
                           const EnvironmentSeries& env, double y_floor = 0.0);

// Trapezoidal average of h over y in [0, H] and over the samples in [start, start + duration].
double mean_surface_coefficient(const ConvectionModel& model, const EnvironmentSeries& env,
                                double height, double duration, double y_floor = 0.0,
                                std::size_t height_points = 1001);

double shadow_height(double sunlit_ratio, double height);

// 0 in the shadow (y <= shadow height), 1 above it. Without a shadow the whole facade is lit.
inline int sunlit_indicator(double y, double shadow) noexcept {
  return y > shadow || shadow <= 0.0 ? 1 : 0;
}

// Fraction of [lo, hi] lying above `shadow`.
double sunlit_fraction(double lo, double hi, double shadow) noexcept;

// alpha (q_dr chi + q_df + q_rf) at height y.
double incident_flux(double y, double t, const EnvironmentSeries& env,
                     const ShadingGeometry& geometry, double absorptivity);

// Throws IoError on unreadable files, missing columns, malformed rows or rows
// violating the series invariants.
EnvironmentSeries load_environment(const std::filesystem::path& path,
                                   Interpolation interpolation = Interpolation::Hold);

void write_environment(const std::filesystem::path& path, const EnvironmentSeries& env);

}  // namespace facade
