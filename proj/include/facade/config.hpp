#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "facade/environment.hpp"
#include "facade/scenario.hpp"
#include "facade/sensitivity.hpp"

namespace facade {

// Inside air temperature T_in(t) = mean + amplitude cos(2π (day - peak_day) / period_days),
// with day counted from January 1 of the start year.
struct InsideSinusoid {
  double mean = 293.15;      // K
  double amplitude = 2.0;    // K
  double peak_day = 196.0;   // warmest day of the year
  double period_days = 365.0;

  double operator()(double seconds_since_new_year) const;
};

struct ValidationSettings {
  std::size_t nx = 101;
  std::size_t ny = 101;
  double final_time = 0.04;
  std::size_t n_terms = 50;
  double dt_df = 1e-4;
  double dt_explicit = 1e-5;
  double dt_implicit = 1e-4;
  double dt_adi = 1e-4;
  std::vector<double> sweep = {2e-5, 5e-5, 1e-4, 2e-4, 5e-4, 1e-3};
  std::size_t timing_repeats = 3;
};

struct RunConfig {
  FacadeModel model;
  RunSettings settings;
  std::filesystem::path environment_file;
  Interpolation interpolation = Interpolation::Hold;
  std::optional<InsideSinusoid> inside;  // replaces the file's inside temperature when set
  std::filesystem::path output_dir = "out";
  std::vector<Probe> probes;             // empty selects the default probes
  SensitivityOptions sensitivity;
  PerturbationVector perturbation;       // defaults to 5 % reducing inflow
  ValidationSettings validation;

  // Checks the model, the settings and that the environment file exists.
  void validate() const;
  std::vector<Probe> probe_list() const;
};

// INI file with sections [run], [grid], [wall], [layerN], [scales], [environment],
// [convection], [shading], [inside], [surface], [model], [outputs], [sensitivity],
// [validation]. Relative paths are resolved against the file's directory. Throws
// ConfigError on bad values and IoError on unreadable files.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});

// "YYYY-MM-DD".
std::chrono::sys_days parse_date(const std::string& text);

// Environment of a run with the inside sinusoid applied when configured.
std::shared_ptr<const EnvironmentSeries> load_run_environment(const RunConfig& config);
EnvironmentSeries apply_inside_sinusoid(const EnvironmentSeries& env, const InsideSinusoid& inside,
                                        std::chrono::sys_days start_date);

struct BatchSite {
  std::string label;
  std::filesystem::path environment_file;
};

// CSV with header "label,environment_file"; paths relative to the manifest.
struct BatchManifest {
  std::vector<BatchSite> sites;
  void validate() const;  // nonempty, unique labels
};

BatchManifest load_manifest(const std::filesystem::path& path);

}  // namespace facade
