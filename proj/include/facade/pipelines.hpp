#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "facade/config.hpp"
#include "facade/reference_solutions.hpp"
#include "facade/scenario.hpp"
#include "facade/sensitivity.hpp"

namespace facade {

// Validation problem: Robin on all four edges with zero data.
BoundaryConditions validation_boundary(const ValidationCase& vc);

struct ValidationRow {
  Scheme scheme = Scheme::DufortFrankel;
  double dt = 0.0;
  double dx = 0.0;
  double eps2 = 0.0;      // NaN when the run diverged
  double seconds = 0.0;   // best of the timing repeats, stepping only
  double rcpu = 0.0;      // against the implicit Euler row of the table
  bool diverged = false;
  std::size_t diverged_step = 0;
};

struct ValidationResult {
  std::vector<ValidationRow> table;  // four schemes plus explicit Euler at the DF step
  std::vector<ValidationRow> sweep;
};

// One scheme on the validation grid up to settings.final_time.
ValidationRow run_validation_scheme(Scheme scheme, double dt, const ValidationSettings& settings,
                                    const Field2D& exact, std::size_t repeats = 1);

ValidationResult run_validation(const ValidationSettings& settings);

// validation_table.csv and validation_sweep.csv.
void write_validation_outputs(const std::filesystem::path& dir, const ValidationResult& result);

// probes.csv, flux.csv, loads.csv, timing.csv.
void write_simulation_outputs(const std::filesystem::path& dir, const SimulationReport& report);

FacadeProblem make_problem(const RunConfig& config, std::shared_ptr<const EnvironmentSeries> env);
SimulationReport run_facade(const RunConfig& config, std::shared_ptr<const EnvironmentSeries> env);

struct HypothesisVariant {
  bool one_dimensional = false;
  RadiationMode radiation = RadiationMode::Shaded;
  ConvectionMode convection = ConvectionMode::Varying;

  std::string model_label() const;       // "2D" or "1D"
  std::string shading_label() const;     // "shaded", "sunlit_ratio", "full_sun"
  std::string convection_label() const;  // "varying", "constant", "at_height"
};

// Full 2D model first, then the six simplified ones.
std::vector<HypothesisVariant> hypothesis_variants();

struct HypothesisRow {
  HypothesisVariant variant;
  std::vector<MonthlyLoad> loads;
  std::vector<double> relative_error_percent;  // signed, against the first row
};

std::vector<HypothesisRow> run_hypothesis_matrix(const RunConfig& config,
                                                 std::shared_ptr<const EnvironmentSeries> env);

// Wide table: model,shading,convection,output then one column per month, with an
// E_MJ and an eps_r_percent line per variant.
void write_hypotheses_csv(const std::filesystem::path& path, const std::vector<HypothesisRow>& rows);

struct BatchRow {
  std::string site;
  double eps2n_flux = 0.0;
  double eps2n_load = 0.0;
  std::string status = "ok";  // or the error message of a failed site
};

// Normalized errors of the standard 1D model against the full 2D model on J(t) and on
// the cumulative load E(t).
BatchRow compare_one_two(const RunConfig& config, std::shared_ptr<const EnvironmentSeries> env);

// Sites run in parallel on `threads` workers (0: hardware concurrency). A failing site
// yields a row with its message and does not stop the others.
std::vector<BatchRow> run_batch(const RunConfig& config, const BatchManifest& manifest,
                                unsigned threads = 0);

void write_batch_csv(const std::filesystem::path& path, const std::vector<BatchRow>& rows);

struct SensitivityRun {
  SensitivityReport report;
  PerturbationVector delta;
  double plain_seconds = 0.0;
  double cost_ratio = 0.0;  // sensitivity run over plain run
};

SensitivityRun run_sensitivity_pipeline(const RunConfig& config,
                                        std::shared_ptr<const EnvironmentSeries> env);

// sensitivity_loads.csv, sensitivity_probes.csv, sensitivity_flux.csv, sensitivity_timing.csv.
void write_sensitivity_outputs(const std::filesystem::path& dir, const SensitivityRun& run);

}  // namespace facade
