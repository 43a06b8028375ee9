#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "facade/analysis.hpp"
#include "facade/boundary.hpp"
#include "facade/domain_model.hpp"
#include "facade/environment.hpp"
#include "facade/solver.hpp"

namespace facade {

enum class ConvectionMode {
  Varying,   // h(y, t) from the wind and height law
  Constant,  // h̄, the space-time mean over the horizon
  AtHeight,  // h(y_ref, t), uniform along the facade
};

enum class RadiationMode {
  Shaded,       // direct flux only above the shadow height
  SunlitRatio,  // α (q_dr S + q_df + q_rf), uniform along the facade
  FullSun,      // α (q_dr + q_df + q_rf), no shading
};

// Concrete, wood fibre and gypsum layers, 0.37 m thick and 3 m high.
WallAssembly default_wall();

struct FacadeModel {
  WallAssembly wall = default_wall();
  ConvectionModel convection;
  ShadingGeometry shading;
  double absorptivity = 0.6;
  double inside_coefficient = 10.0;  // h3, W/(m² K)
  ConvectionMode convection_mode = ConvectionMode::Varying;
  std::optional<double> constant_coefficient;  // h̄ override
  double reference_height = 1.5;               // m, for AtHeight
  RadiationMode radiation = RadiationMode::Shaded;
  double front_height_shift = 0.0;    // raises the shadow by this much
  double front_distance_shift = 0.0;  // lowers the shadow by this times tanθ
  bool one_dimensional = false;
  ReferenceScales scales;  // length scales and k0/c0 are filled from the wall

  void validate() const;
};

// Wall, climate and discretization turned into the dimensionless problem. In 1D mode
// the grid is a three-row strip whose row spacing equals the 2D one.
class FacadeProblem {
 public:
  FacadeProblem(FacadeModel model, std::shared_ptr<const EnvironmentSeries> env, std::size_t nx,
                std::size_t ny, double horizon_seconds);

  const FacadeModel& model() const noexcept { return model_; }
  const EnvironmentSeries& environment() const noexcept { return *env_; }
  std::shared_ptr<const EnvironmentSeries> environment_ptr() const noexcept { return env_; }
  const Grid2D& grid() const noexcept { return grid_; }
  const ReferenceScales& scales() const noexcept { return scales_; }
  double horizon() const noexcept { return horizon_; }
  double mean_coefficient() const noexcept { return mean_h_; }
  double y_floor() const noexcept { return y_floor_; }

  double physical_time(double t_star) const { return env_->start() + t_star * scales_.time; }
  double physical_y(std::size_t i) const { return grid_.y[i] * scales_.length_y; }
  // Dual cell of row i along the facade, clipped to [0, H], physical metres.
  double cell_low(std::size_t i) const { return cell_lo_[i]; }
  double cell_high(std::size_t i) const { return cell_hi_[i]; }

  double surface_coefficient_at(std::size_t i, double t_phys) const;
  double shadow_height_at(double t_phys) const;
  double exterior_flux_at(std::size_t i, double t_phys) const;  // W/m²

  DiffusionOperator make_operator() const;
  BoundaryConditions boundary_conditions() const;
  Field2D uniform_field(double kelvin) const;

 private:
  FacadeModel model_;
  std::shared_ptr<const EnvironmentSeries> env_;
  Grid2D grid_;
  ReferenceScales scales_;
  double horizon_;
  double mean_h_ = 0.0;
  double y_floor_ = 0.0;
  std::vector<double> cell_lo_, cell_hi_;
};

struct Probe {
  std::string name;
  double x = 0.0;  // m from the exterior surface
  double y = 0.0;  // m from the bottom
};

// Nodes at x ∈ {0, L} and y ∈ {0.3, 1.5, 2.7} m (heights clipped to the wall).
std::vector<Probe> default_probes(const WallAssembly& wall);

struct RunSettings {
  Scheme scheme = Scheme::DufortFrankel;
  double dt_seconds = 36.0;
  double horizon_seconds = 86400.0;
  double output_every_seconds = 3600.0;
  double initial_temperature = 293.15;  // K, uniform
  std::chrono::sys_days start_date{std::chrono::year{2023} / 1 / 1};
  std::size_t nx = 101;
  std::size_t ny = 81;

  std::size_t steps() const;
  std::size_t output_stride() const;
};

struct SimulationReport {
  std::vector<std::string> probe_names;
  std::vector<double> probe_time;                 // s
  std::vector<std::vector<double>> probe_values;  // K, one row per output time
  FluxSeries flux;
  std::vector<MonthlyLoad> loads;
  Field2D final_field;                            // dimensionless
  double elapsed_seconds = 0.0;                   // stepping loop only
  std::size_t steps = 0;
  double mean_coefficient = 0.0;
};

// Grid node closest to a probe.
std::pair<std::size_t, std::size_t> probe_node(const FacadeProblem& problem, const Probe& probe);

SimulationReport simulate(const FacadeProblem& problem, const RunSettings& settings,
                          const std::vector<Probe>& probes);

void write_probes_csv(const std::filesystem::path& path, const SimulationReport& report);

}  // namespace facade
