#pragma once

#include <chrono>

#include "facade/environment.hpp"

namespace facade {

// Clear-sky weather for a vertical facade facing the equator with a parallel front
// building. Sun position from the usual declination and hour-angle formulas.
struct SyntheticClimate {
  std::chrono::sys_days start_date{std::chrono::year{2023} / 1 / 1};
  double days = 7.0;
  double step_seconds = 3600.0;

  double outside_mean = 278.15;       // K
  double outside_amplitude = 4.0;     // K, daily swing, warmest at 15 h
  double inside_temperature = 293.15; // K
  double wind_mean = 3.0;             // m/s
  double wind_amplitude = 1.0;        // m/s, daily swing, strongest at 14 h

  double latitude_deg = 48.85;
  double direct_normal_peak = 800.0;  // W/m², beam irradiance with the sun at the zenith
  double diffuse_peak = 120.0;        // W/m², horizontal diffuse at the zenith
  double ground_albedo = 0.2;
  bool sun = true;

  double front_height = 3.0;    // m
  double front_distance = 5.0;  // m
  double facade_height = 3.0;   // m
};

// Columns include tan_theta, the tangent of the sun's profile angle on the facade, so
// that the shadow height is clamp(F - D tanθ, 0, H).
EnvironmentSeries synthetic_climate(const SyntheticClimate& spec);

// Constant outside/inside temperature, no wind, no sun.
EnvironmentSeries constant_climate(double days, double step_seconds, double outside_kelvin,
                                   double inside_kelvin, double wind = 0.0);

}  // namespace facade
