#include "facade/synthetic_climate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "facade/errors.hpp"

namespace facade {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::size_t sample_count(double days, double step) {
  if (!(days > 0.0) || !(step > 0.0)) throw ConfigError("climate span and step must be positive");
  return static_cast<std::size_t>(std::llround(days * 86400.0 / step)) + 1;
}

}  // namespace

EnvironmentSeries synthetic_climate(const SyntheticClimate& spec) {
  using namespace std::chrono;
  const std::size_t n = sample_count(spec.days, spec.step_seconds);
  const sys_days new_year{year_month_day{spec.start_date}.year() / January / 1};
  const double first_day = static_cast<double>((spec.start_date - new_year).count());
  const double phi = spec.latitude_deg * kDeg;
  const double two_pi = 2.0 * std::numbers::pi;

  EnvironmentSeries::Columns c;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * spec.step_seconds;
    const double hour = std::fmod(t / 3600.0, 24.0);
    const double day = first_day + std::floor(t / 86400.0) + 1.0;

    c.time.push_back(t);
    c.t_out.push_back(spec.outside_mean +
                      spec.outside_amplitude * std::cos(two_pi * (hour - 15.0) / 24.0));
    c.t_in.push_back(spec.inside_temperature);
    c.wind.push_back(std::max(0.0, spec.wind_mean + spec.wind_amplitude *
                                                        std::cos(two_pi * (hour - 14.0) / 24.0)));

    double q_dir = 0.0, q_diff = 0.0, q_refl = 0.0, sunlit = 0.0, tan_profile = 0.0;
    const double decl = 23.45 * kDeg * std::sin(two_pi * (284.0 + day) / 365.0);
    const double omega = 15.0 * kDeg * (hour - 12.0);
    const double sin_alt =
        std::sin(phi) * std::sin(decl) + std::cos(phi) * std::cos(decl) * std::cos(omega);
    if (spec.sun && sin_alt > 0.0) {
      const double alt = std::asin(sin_alt);
      const double azimuth =
          std::atan2(std::sin(omega) * std::cos(decl),
                     std::cos(omega) * std::cos(decl) * std::sin(phi) - std::sin(decl) * std::cos(phi));
      const double cos_incidence = std::cos(alt) * std::cos(azimuth);
      const double dni = spec.direct_normal_peak * std::pow(sin_alt, 0.3);
      const double dhi = spec.diffuse_peak * sin_alt;
      q_diff = 0.5 * dhi;
      q_refl = 0.5 * spec.ground_albedo * (dni * sin_alt + dhi);
      if (cos_incidence > 0.0) {
        q_dir = dni * cos_incidence;
        tan_profile = std::tan(alt) / std::cos(azimuth);
        const double shadow = std::clamp(spec.front_height - spec.front_distance * tan_profile, 0.0,
                                         spec.facade_height);
        sunlit = 1.0 - shadow / spec.facade_height;
      }
    }
    c.q_direct.push_back(q_dir);
    c.q_diffuse.push_back(q_diff);
    c.q_reflected.push_back(q_refl);
    c.sunlit.push_back(sunlit);
    c.tan_theta.push_back(tan_profile);
  }
  return EnvironmentSeries(std::move(c));
}

EnvironmentSeries constant_climate(double days, double step_seconds, double outside_kelvin,
                                   double inside_kelvin, double wind) {
  const std::size_t n = sample_count(days, step_seconds);
  EnvironmentSeries::Columns c;
  for (std::size_t k = 0; k < n; ++k) c.time.push_back(static_cast<double>(k) * step_seconds);
  c.t_out.assign(n, outside_kelvin);
  c.t_in.assign(n, inside_kelvin);
  c.wind.assign(n, wind);
  c.q_direct.assign(n, 0.0);
  c.q_diffuse.assign(n, 0.0);
  c.q_reflected.assign(n, 0.0);
  c.sunlit.assign(n, 1.0);
  return EnvironmentSeries(std::move(c));
}

}  // namespace facade
