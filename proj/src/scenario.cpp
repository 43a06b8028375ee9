#include "facade/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "facade/errors.hpp"

namespace facade {

WallAssembly default_wall() {
  return WallAssembly({{"concrete", 0.20, 1.40, 2.00e6},
                       {"wood_fiber", 0.15, 0.05, 0.85e6},
                       {"gypsum", 0.02, 0.25, 0.85e6}},
                      3.0);
}

void FacadeModel::validate() const {
  convection.validate();
  shading.validate();
  if (absorptivity < 0.0 || absorptivity > 1.0) throw ConfigError("absorptivity must lie in [0, 1]");
  if (inside_coefficient < 0.0) throw ConfigError("inside coefficient must be non-negative");
  if (constant_coefficient && *constant_coefficient < 0.0)
    throw ConfigError("constant surface coefficient must be non-negative");
  if (!(reference_height >= 0.0) || reference_height > wall.height())
    throw ConfigError("reference height must lie on the facade");
  if (std::abs(shading.facade_height - wall.height()) > 1e-9 * wall.height())
    throw ConfigError("shading facade height differs from the wall height");
  if (one_dimensional) {
    if (convection_mode == ConvectionMode::Varying)
      throw ConfigError("1D mode needs a height-independent surface coefficient");
    if (radiation == RadiationMode::Shaded)
      throw ConfigError("1D mode needs height-independent radiation (ratio or full sun)");
    if (front_height_shift != 0.0 || front_distance_shift != 0.0)
      throw ConfigError("1D mode does not model the shadow height");
  }
}

FacadeProblem::FacadeProblem(FacadeModel model, std::shared_ptr<const EnvironmentSeries> env,
                             std::size_t nx, std::size_t ny, double horizon_seconds)
    : model_(std::move(model)), env_(std::move(env)), horizon_(horizon_seconds) {
  if (!env_) throw ConfigError("missing environment series");
  model_.validate();
  if (ny < 3) throw ConfigError("ny must be at least 3");
  if (!(horizon_ > 0.0)) throw ConfigError("horizon must be positive");
  if (!env_->contains(env_->start() + horizon_))
    throw ConfigError("environment series does not cover the simulation horizon");

  const ReferenceScales base = model_.scales;
  scales_ = ReferenceScales::for_wall(model_.wall);
  scales_.temperature = base.temperature;
  scales_.delta_t = base.delta_t;
  scales_.time = base.time;
  const double height = model_.wall.height();
  const double dy_phys = height / static_cast<double>(ny - 1);
  if (model_.one_dimensional) scales_.length_y = 2.0 * dy_phys;
  scales_.validate();
  grid_ = build_grid(model_.wall, nx, model_.one_dimensional ? 3 : ny, scales_);
  y_floor_ = 0.5 * dy_phys;

  cell_lo_.resize(grid_.ny);
  cell_hi_.resize(grid_.ny);
  const double half = 0.5 * grid_.dy * scales_.length_y;
  for (std::size_t i = 0; i < grid_.ny; ++i) {
    const double y = physical_y(i);
    cell_lo_[i] = std::max(y - half, 0.0);
    cell_hi_[i] = std::min(y + half, scales_.length_y);
  }

  if (model_.constant_coefficient) {
    mean_h_ = *model_.constant_coefficient;
  } else {
    mean_h_ = mean_surface_coefficient(model_.convection, *env_, height, horizon_, y_floor_);
  }
  if (model_.radiation == RadiationMode::Shaded && model_.front_distance_shift != 0.0 &&
      !env_->has_tan_theta())
    throw ConfigError("front distance shift needs the solar angle (tan_theta or cos_theta)");
}

double FacadeProblem::surface_coefficient_at(std::size_t i, double t) const {
  switch (model_.convection_mode) {
    case ConvectionMode::Varying:
      return surface_coefficient(model_.convection, physical_y(i), env_->wind_speed(t), y_floor_);
    case ConvectionMode::Constant:
      return mean_h_;
    case ConvectionMode::AtHeight:
      return surface_coefficient(model_.convection, model_.reference_height, env_->wind_speed(t),
                                 y_floor_);
  }
  return mean_h_;
}

double FacadeProblem::shadow_height_at(double t) const {
  const double height = model_.wall.height();
  double h = shadow_height(env_->sunlit_ratio(t), height) + model_.front_height_shift;
  if (model_.front_distance_shift != 0.0) h -= model_.front_distance_shift * env_->tan_theta(t);
  return std::clamp(h, 0.0, height);
}

double FacadeProblem::exterior_flux_at(std::size_t i, double t) const {
  const double diffuse = env_->diffuse_flux(t) + env_->reflected_flux(t);
  const double direct = env_->direct_flux(t);
  switch (model_.radiation) {
    case RadiationMode::Shaded: {
      if (direct == 0.0) return model_.absorptivity * diffuse;
      const double lit = sunlit_fraction(cell_lo_[i], cell_hi_[i], shadow_height_at(t));
      return model_.absorptivity * (direct * lit + diffuse);
    }
    case RadiationMode::SunlitRatio:
      return model_.absorptivity * (direct * env_->sunlit_ratio(t) + diffuse);
    case RadiationMode::FullSun:
      return model_.absorptivity * (direct + diffuse);
  }
  return 0.0;
}

DiffusionOperator FacadeProblem::make_operator() const {
  return DiffusionOperator(grid_, scales_.fourier_x(), scales_.fourier_y());
}

BoundaryConditions FacadeProblem::boundary_conditions() const {
  auto self = std::make_shared<const FacadeProblem>(*this);
  BoundaryConditions bc;
  bc.set(Edge::XMin, [self](double ts, std::span<const double>, std::span<double> biot,
                            std::span<double> load) {
    const auto& s = self->scales_;
    const double t = self->physical_time(ts);
    const double u_out = to_dimensionless(self->env_->outside_temperature(t), s);
    for (std::size_t i = 0; i < biot.size(); ++i) {
      const double bi = biot_number(self->surface_coefficient_at(i, t), s, Edge::XMin);
      biot[i] = bi;
      load[i] = bi * u_out + dimensionless_flux(self->exterior_flux_at(i, t), s, Edge::XMin);
    }
  });
  bc.set(Edge::XMax, [self](double ts, std::span<const double>, std::span<double> biot,
                            std::span<double> load) {
    const auto& s = self->scales_;
    const double t = self->physical_time(ts);
    const double bi = biot_number(self->model_.inside_coefficient, s, Edge::XMax);
    const double u_in = to_dimensionless(self->env_->inside_temperature(t), s);
    std::fill(biot.begin(), biot.end(), bi);
    std::fill(load.begin(), load.end(), bi * u_in);
  });
  return bc;
}

Field2D FacadeProblem::uniform_field(double kelvin) const {
  return grid_.make_field(to_dimensionless(kelvin, scales_));
}

std::vector<Probe> default_probes(const WallAssembly& wall) {
  std::vector<Probe> out;
  for (double x : {0.0, wall.length()}) {
    for (double y : {0.3, 1.5, 2.7}) {
      const double yy = std::min(y, wall.height());
      std::ostringstream name;
      name << "T_x" << x << "_y" << yy << "_K";
      out.push_back({name.str(), x, yy});
    }
  }
  return out;
}

std::size_t RunSettings::steps() const {
  if (!(dt_seconds > 0.0)) throw ConfigError("time step must be positive");
  if (!(horizon_seconds > 0.0)) throw ConfigError("horizon must be positive");
  const double n = std::round(horizon_seconds / dt_seconds);
  if (std::abs(n * dt_seconds - horizon_seconds) > 1e-6 * dt_seconds)
    throw ConfigError("horizon must be a whole number of time steps");
  return static_cast<std::size_t>(n);
}

std::size_t RunSettings::output_stride() const {
  if (!(output_every_seconds > 0.0)) throw ConfigError("output interval must be positive");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(output_every_seconds / dt_seconds)));
}

std::pair<std::size_t, std::size_t> probe_node(const FacadeProblem& problem, const Probe& probe) {
  const auto& g = problem.grid();
  const auto& s = problem.scales();
  if (probe.x < 0.0 || probe.x > s.length_x * (1 + 1e-12) || probe.y < 0.0 ||
      probe.y > problem.model().wall.height() * (1 + 1e-12))
    throw ConfigError("probe '" + probe.name + "' lies outside the wall");
  const auto j = static_cast<std::size_t>(std::llround(probe.x / s.length_x / g.dx));
  std::size_t i = 0;
  if (problem.model().one_dimensional) {
    i = 1;
  } else {
    i = static_cast<std::size_t>(std::llround(probe.y / s.length_y / g.dy));
  }
  return {std::min(j, g.nx - 1), std::min(i, g.ny - 1)};
}

SimulationReport simulate(const FacadeProblem& problem, const RunSettings& settings,
                          const std::vector<Probe>& probes) {
  const auto& scales = problem.scales();
  const std::size_t steps = settings.steps();
  const std::size_t stride = settings.output_stride();
  if (settings.horizon_seconds > problem.horizon() * (1 + 1e-12))
    throw ConfigError("run horizon exceeds the prepared problem horizon");

  SolverConfig config;
  config.scheme = settings.scheme;
  config.dt = settings.dt_seconds / scales.time;
  Solver solver(problem.make_operator(), problem.boundary_conditions(), config);

  std::vector<std::pair<std::size_t, std::size_t>> nodes;
  SimulationReport report;
  for (const auto& p : probes) {
    nodes.push_back(probe_node(problem, p));
    report.probe_names.push_back(p.name);
  }
  report.mean_coefficient = problem.mean_coefficient();

  const double t_start = problem.environment().start();
  auto record = [&](const Field2D& u, std::size_t step) {
    const double t = t_start + static_cast<double>(step) * settings.dt_seconds;
    std::vector<double> row;
    row.reserve(nodes.size());
    for (auto [j, i] : nodes) row.push_back(to_kelvin(u(j, i), scales));
    report.probe_time.push_back(t);
    report.probe_values.push_back(std::move(row));
    report.flux.push(t, inside_flux(u, problem.grid(), scales));
  };

  const Field2D u0 = problem.uniform_field(settings.initial_temperature);
  const auto clock_start = std::chrono::steady_clock::now();
  record(u0, 0);
  solver.reset(u0, 0.0);
  if (solver.step() > 0 && (solver.step() % stride == 0 || solver.step() == steps))
    record(solver.field(), solver.step());
  while (solver.step() < steps) {
    solver.advance();
    if (solver.step() % stride == 0 || solver.step() == steps) record(solver.field(), solver.step());
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  report.steps = solver.step();
  report.final_field = solver.field();
  report.loads = monthly_loads(report.flux, settings.start_date);
  return report;
}

void write_probes_csv(const std::filesystem::path& path, const SimulationReport& report) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << std::setprecision(12) << "t_seconds";
  for (const auto& name : report.probe_names) out << ',' << name;
  out << '\n';
  for (std::size_t k = 0; k < report.probe_time.size(); ++k) {
    out << report.probe_time[k];
    for (double v : report.probe_values[k]) out << ',' << v;
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace facade
