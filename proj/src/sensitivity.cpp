#include "facade/sensitivity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "facade/analysis.hpp"
#include "facade/diagnostics.hpp"
#include "facade/errors.hpp"

namespace facade {

double PerturbationVector::operator[](Parameter p) const noexcept {
  switch (p) {
    case Parameter::H11: return h11;
    case Parameter::Beta: return beta;
    case Parameter::FrontHeight: return front_height;
    case Parameter::FrontDistance: return front_distance;
  }
  return 0.0;
}

PerturbationVector PerturbationVector::reducing_inflow(const ConvectionModel& model,
                                                       double facade_height, double relative) {
  return {relative * model.h11, -relative * model.beta, relative * facade_height,
          -relative * facade_height};
}

void PerturbationVector::validate(const ShadingGeometry& geometry) const {
  for (double v : {h11, beta, front_height, front_distance})
    if (!std::isfinite(v)) throw ConfigError("perturbation components must be finite");
  if (geometry.front_distance + front_distance <= 0.0)
    throw ConfigError("perturbed front distance must stay positive");
}

double dh_dh11(const ConvectionModel& model, double y, double wind, double y_floor) {
  const double yy = std::max(y, y_floor);
  return (wind / model.v0) * std::pow(yy / model.y0, model.beta);
}

double dh_dh11(const ConvectionModel& model, double y, double t, const EnvironmentSeries& env,
               double y_floor) {
  return dh_dh11(model, y, env.wind_speed(t), y_floor);
}

double dh_dbeta(const ConvectionModel& model, double y, double wind, double y_floor) {
  const double r = std::max(y, y_floor) / model.y0;
  if (wind == 0.0) return 0.0;
  return model.h11 * (wind / model.v0) * std::log(r) * std::pow(r, model.beta);
}

double dh_dbeta(const ConvectionModel& model, double y, double t, const EnvironmentSeries& env,
                double y_floor) {
  return dh_dbeta(model, y, env.wind_speed(t), y_floor);
}

double dchi_dF(double y, double shadow, double facade_height, double delta_f) {
  if (!(delta_f > 0.0)) throw ConfigError("band width must be positive");
  const double top = std::min(shadow + delta_f, facade_height);
  return (y > shadow && y <= top) ? -1.0 / delta_f : 0.0;
}

double dchi_dD(double y, double shadow, double delta_d, double tan_theta) {
  if (!(delta_d > 0.0)) throw ConfigError("band width must be positive");
  const double bottom = std::max(shadow - delta_d * tan_theta, 0.0);
  return (y > bottom && y <= shadow) ? 1.0 / delta_d : 0.0;
}

double band_cell_average(double lo, double hi, double band_lo, double band_hi, double value) {
  if (!(hi > lo)) return 0.0;
  const double overlap = std::min(hi, band_hi) - std::max(lo, band_lo);
  return overlap > 0.0 ? value * overlap / (hi - lo) : 0.0;
}

double taylor_expand(double nominal, const std::array<double, 4>& sensitivities,
                     const PerturbationVector& delta) {
  double out = nominal;
  for (Parameter p : kAllParameters) out += sensitivities[static_cast<int>(p)] * delta[p];
  return out;
}

Field2D taylor_expand(const Field2D& nominal, const std::array<const Field2D*, 4>& sensitivities,
                      const PerturbationVector& delta) {
  Field2D out = nominal;
  for (Parameter p : kAllParameters) {
    const Field2D* s = sensitivities[static_cast<int>(p)];
    const double d = delta[p];
    if (d == 0.0) continue;
    if (!s || !s->same_shape(nominal)) throw ConfigError("sensitivity field shape mismatch");
    auto o = out.values();
    auto v = s->values();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] += d * v[k];
  }
  return out;
}

namespace {

double band_width(double requested, const FacadeProblem& problem) {
  return requested > 0.0 ? requested : problem.grid().dy * problem.scales().length_y;
}

}  // namespace

void sensitivity_boundary(Parameter which, const FacadeProblem& problem,
                          const SensitivityOptions& options, double t_star,
                          const BoundaryValues& temperature_bv, const Field2D& temperature,
                          BoundaryValues& out) {
  const auto& grid = problem.grid();
  if (out[Edge::XMin].biot.size() != grid.ny || out[Edge::YMin].biot.size() != grid.nx)
    out.resize(grid.nx, grid.ny);
  for (Edge e : kAllEdges) {
    out[e].biot = temperature_bv[e].biot;
    std::fill(out[e].load.begin(), out[e].load.end(), 0.0);
  }

  const auto& model = problem.model();
  const auto& env = problem.environment();
  const auto& s = problem.scales();
  const double t = problem.physical_time(t_star);
  auto& load = out[Edge::XMin].load;
  const double biot_per_h = s.length_x / s.conductivity;

  switch (which) {
    case Parameter::H11:
    case Parameter::Beta: {
      const double wind = env.wind_speed(t);
      if (wind == 0.0) return;
      const double u_out = to_dimensionless(env.outside_temperature(t), s);
      for (std::size_t i = 0; i < grid.ny; ++i) {
        const double y = problem.physical_y(i);
        const double dh = which == Parameter::H11
                              ? dh_dh11(model.convection, y, wind, problem.y_floor())
                              : dh_dbeta(model.convection, y, wind, problem.y_floor());
        load[i] = biot_per_h * dh * (u_out - temperature(0, i));
      }
      return;
    }
    case Parameter::FrontHeight:
    case Parameter::FrontDistance: {
      const double direct = env.direct_flux(t);
      if (direct == 0.0) return;
      const double height = model.wall.height();
      const double shadow = problem.shadow_height_at(t);
      double lo = 0.0, hi = 0.0, density = 0.0;
      if (which == Parameter::FrontHeight) {
        const double delta = band_width(options.band_front_height, problem);
        lo = shadow;
        hi = std::min(shadow + delta, height);
        density = -1.0 / delta;
      } else {
        if (!env.has_tan_theta()) return;
        const double delta = band_width(options.band_front_distance, problem);
        lo = std::max(shadow - delta * env.tan_theta(t), 0.0);
        hi = shadow;
        density = 1.0 / delta;
      }
      if (!(hi > lo)) return;
      const double scale = model.absorptivity * direct * s.length_x / (s.conductivity * s.delta_t);
      for (std::size_t i = 0; i < grid.ny; ++i)
        load[i] = scale * band_cell_average(problem.cell_low(i), problem.cell_high(i), lo, hi,
                                            density);
      return;
    }
  }
}

FieldState step_sensitivity(Parameter which, const FieldState& theta_state,
                            const FieldState& temperature_state, const FacadeProblem& problem,
                            const SensitivityOptions& options, const DiffusionOperator& op,
                            const BoundaryConditions& bc, double dt) {
  if (!theta_state.curr.same_shape(temperature_state.curr))
    throw ConfigError("sensitivity and temperature fields differ in shape");
  BoundaryValues bv_t, bv_s;
  bc.evaluate(theta_state.time, op.grid(), bv_t);
  sensitivity_boundary(which, problem, options, theta_state.time, bv_t, temperature_state.curr,
                       bv_s);
  Field2D next(op.nx(), op.ny());
  dufort_frankel_update(op, bv_s, theta_state.prev, theta_state.curr, next, dt,
                        theta_state.step + 1);
  return FieldState{theta_state.curr, std::move(next), theta_state.step + 1,
                    theta_state.time + dt};
}

SensitivityReport run_sensitivity(const FacadeProblem& problem, const RunSettings& settings,
                                  const std::vector<Probe>& probes,
                                  const SensitivityOptions& options) {
  const auto& model = problem.model();
  if (model.one_dimensional || model.convection_mode != ConvectionMode::Varying ||
      model.radiation != RadiationMode::Shaded)
    throw ConfigError("sensitivity runs need the 2D model with varying convection and shading");
  if (settings.scheme != Scheme::DufortFrankel)
    throw ConfigError("sensitivity runs use the DuFort-Frankel scheme");

  SensitivityReport report;
  report.distance_enabled = problem.environment().has_tan_theta();
  if (!report.distance_enabled)
    warn("environment has no solar angle; front distance sensitivity disabled");

  const auto& scales = problem.scales();
  const auto& grid = problem.grid();
  const std::size_t steps = settings.steps();
  const std::size_t stride = settings.output_stride();
  const double dt = settings.dt_seconds / scales.time;
  const DiffusionOperator op = problem.make_operator();
  const BoundaryConditions bc = problem.boundary_conditions();
  tau_diagnostic(grid, op.fourier_x(), op.fourier_y(), dt);

  std::vector<std::pair<std::size_t, std::size_t>> nodes;
  for (const auto& p : probes) {
    nodes.push_back(probe_node(problem, p));
    report.nominal.probe_names.push_back(p.name);
  }
  report.nominal.mean_coefficient = problem.mean_coefficient();

  Field2D t_prev = problem.uniform_field(settings.initial_temperature);
  Field2D t_curr = t_prev;
  Field2D t_next(grid.nx, grid.ny);
  std::array<Field2D, 4> s_prev, s_curr, s_next;
  for (std::size_t p = 0; p < 4; ++p) {
    s_prev[p] = grid.make_field();
    s_curr[p] = grid.make_field();
    s_next[p] = grid.make_field();
  }

  const double t_start = problem.environment().start();
  auto record = [&](std::size_t step) {
    const double t = t_start + static_cast<double>(step) * settings.dt_seconds;
    std::vector<double> row;
    for (auto [j, i] : nodes) row.push_back(to_kelvin(t_curr(j, i), scales));
    report.nominal.probe_time.push_back(t);
    report.nominal.probe_values.push_back(std::move(row));
    report.nominal.flux.push(t, inside_flux(t_curr, grid, scales));
    for (std::size_t p = 0; p < 4; ++p) {
      std::vector<double> srow;
      for (auto [j, i] : nodes) srow.push_back(scales.delta_t * s_curr[p](j, i));
      report.probe_sensitivity[p].push_back(std::move(srow));
      report.flux_sensitivity[p].push(t, inside_flux(s_curr[p], grid, scales));
    }
  };

  BoundaryValues bv_t, bv_s;
  bv_t.resize(grid.nx, grid.ny);
  bv_s.resize(grid.nx, grid.ny);
  auto active = [&](std::size_t p) {
    return report.distance_enabled || static_cast<Parameter>(p) != Parameter::FrontDistance;
  };

  const auto clock_start = std::chrono::steady_clock::now();
  record(0);

  // Explicit sub-steps to level 1, all fields together.
  bc.evaluate(0.0, grid, bv_t);
  const std::size_t nsub = bootstrap_substep_count(op, bv_t, dt, 10, 1000);
  const double sub = dt / static_cast<double>(nsub);
  for (std::size_t k = 0; k < nsub; ++k) {
    const double ts = static_cast<double>(k) * sub;
    if (k > 0) bc.evaluate(ts, grid, bv_t);
    for (std::size_t p = 0; p < 4; ++p) {
      if (!active(p)) continue;
      sensitivity_boundary(static_cast<Parameter>(p), problem, options, ts, bv_t, t_curr, bv_s);
      euler_update(op, bv_s, s_curr[p], s_next[p], sub, 1, "df bootstrap");
      std::swap(s_curr[p], s_next[p]);
    }
    euler_update(op, bv_t, t_curr, t_next, sub, 1, "df bootstrap");
    std::swap(t_curr, t_next);
  }
  std::size_t step = 1;
  if (stride == 1 || steps == 1) record(1);

  while (step < steps) {
    const double ts = static_cast<double>(step) * dt;
    bc.evaluate(ts, grid, bv_t);
    for (std::size_t p = 0; p < 4; ++p) {
      if (!active(p)) continue;
      sensitivity_boundary(static_cast<Parameter>(p), problem, options, ts, bv_t, t_curr, bv_s);
      dufort_frankel_update(op, bv_s, s_prev[p], s_curr[p], s_next[p], dt, step + 1);
      std::swap(s_prev[p], s_curr[p]);
      std::swap(s_curr[p], s_next[p]);
    }
    dufort_frankel_update(op, bv_t, t_prev, t_curr, t_next, dt, step + 1);
    std::swap(t_prev, t_curr);
    std::swap(t_curr, t_next);
    ++step;
    if (step % stride == 0 || step == steps) record(step);
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  report.nominal.elapsed_seconds = report.elapsed_seconds;
  report.nominal.steps = step;
  report.nominal.final_field = t_curr;
  report.final_fields = s_curr;
  report.nominal.loads = monthly_loads(report.nominal.flux, settings.start_date);
  for (std::size_t p = 0; p < 4; ++p) {
    for (const auto& m : monthly_loads(report.flux_sensitivity[p], settings.start_date))
      report.monthly_sensitivity[p].push_back(m.energy);
  }
  return report;
}

}  // namespace facade
