#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "facade/boundary.hpp"
#include "facade/environment.hpp"
#include "facade/scenario.hpp"
#include "facade/solver.hpp"

namespace facade {

// Parameters of the exterior boundary, in this order everywhere below.
enum class Parameter : int { H11 = 0, Beta = 1, FrontHeight = 2, FrontDistance = 3 };
inline constexpr std::array<Parameter, 4> kAllParameters = {
    Parameter::H11, Parameter::Beta, Parameter::FrontHeight, Parameter::FrontDistance};

struct PerturbationVector {
  double h11 = 0.0;             // W/(m² K)
  double beta = 0.0;
  double front_height = 0.0;    // m
  double front_distance = 0.0;  // m

  double operator[](Parameter p) const noexcept;

  // (δh11, -δβ, δF, -δD) with every magnitude `relative` times h11, β, H and H.
  static PerturbationVector reducing_inflow(const ConvectionModel& model, double facade_height,
                                            double relative = 0.05);
  PerturbationVector operator-() const { return {-h11, -beta, -front_height, -front_distance}; }
  void validate(const ShadingGeometry& geometry) const;
};

// ∂h/∂h11 = (v/v0)(y/y0)^β with y clamped below by y_floor.
double dh_dh11(const ConvectionModel& model, double y, double wind, double y_floor = 0.0);
double dh_dh11(const ConvectionModel& model, double y, double t, const EnvironmentSeries& env,
               double y_floor = 0.0);

// ∂h/∂β = h11 (v/v0) ln(y/y0) (y/y0)^β with y clamped below by y_floor.
double dh_dbeta(const ConvectionModel& model, double y, double wind, double y_floor = 0.0);
double dh_dbeta(const ConvectionModel& model, double y, double t, const EnvironmentSeries& env,
                double y_floor = 0.0);

// -1/δF on (h, min(h + δF, H)], 0 elsewhere.
double dchi_dF(double y, double shadow, double facade_height, double delta_f);
// +1/δD on (max(h - δD tanθ, 0), h], 0 elsewhere.
double dchi_dD(double y, double shadow, double delta_d, double tan_theta);

// Average over the cell [lo, hi] of a density `value` supported on the band (band_lo, band_hi].
double band_cell_average(double lo, double hi, double band_lo, double band_hi, double value);

// value + Σ sensitivity_i δ_i.
double taylor_expand(double nominal, const std::array<double, 4>& sensitivities,
                     const PerturbationVector& delta);
Field2D taylor_expand(const Field2D& nominal, const std::array<const Field2D*, 4>& sensitivities,
                      const PerturbationVector& delta);

struct SensitivityOptions {
  double band_front_height = 0.0;    // m, δF inside ∂χ/∂F; 0 selects one cell height
  double band_front_distance = 0.0;  // m, δD inside ∂χ/∂D; 0 selects one cell height
};

// Dimensionless tangent fields ϑ_p = ∂u/∂p, one per parameter.
struct SensitivityState {
  std::array<FieldState, 4> theta;
  bool distance_enabled = true;
};

// Robin data of ϑ_p at time t* given the temperature field at the same level. Bi is
// that of the temperature problem; only the exterior edge carries a load.
void sensitivity_boundary(Parameter which, const FacadeProblem& problem,
                          const SensitivityOptions& options, double t_star,
                          const BoundaryValues& temperature_bv, const Field2D& temperature,
                          BoundaryValues& out);

// One DuFort-Frankel step of ϑ_p with data sampled at theta_state.time.
FieldState step_sensitivity(Parameter which, const FieldState& theta_state,
                            const FieldState& temperature_state, const FacadeProblem& problem,
                            const SensitivityOptions& options, const DiffusionOperator& op,
                            const BoundaryConditions& bc, double dt);

struct SensitivityReport {
  SimulationReport nominal;
  std::array<FluxSeries, 4> flux_sensitivity;                         // ∂J/∂p
  std::array<std::vector<std::vector<double>>, 4> probe_sensitivity;  // ∂T/∂p, K per unit p
  std::array<std::vector<double>, 4> monthly_sensitivity;             // ∂E/∂p per month
  std::array<Field2D, 4> final_fields;                                // ϑ_p at the last step
  bool distance_enabled = true;
  double elapsed_seconds = 0.0;
};

// Co-steps T and the four tangent fields with the DuFort-Frankel scheme.
SensitivityReport run_sensitivity(const FacadeProblem& problem, const RunSettings& settings,
                                  const std::vector<Probe>& probes,
                                  const SensitivityOptions& options = {});

}  // namespace facade
