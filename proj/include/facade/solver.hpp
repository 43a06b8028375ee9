#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "facade/boundary.hpp"
#include "facade/domain_model.hpp"
#include "facade/field.hpp"

namespace facade {

enum class Scheme { DufortFrankel, EulerExplicit, EulerImplicit, ADI };

std::string_view scheme_name(Scheme s) noexcept;         // "df", "explicit", "implicit", "adi"
std::optional<Scheme> parse_scheme(std::string_view name) noexcept;

// Two consecutive time levels. For single-level schemes `prev` is the previous step.
struct FieldState {
  Field2D prev;
  Field2D curr;
  std::size_t step = 0;
  double time = 0.0;
};

// DuFort-Frankel weights for a node with λ_x = 2Δt Fo_x k/(c Δx²), λ_y likewise.
struct SchemeCoefficients {
  double lambda_x = 0.0;
  double lambda_y = 0.0;
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  double sigma_xy = 0.0;

  static SchemeCoefficients from_lambdas(double lambda_x, double lambda_y);
};

// Per-node DuFort-Frankel coefficients of the interior stencil, row-major like Field2D.
std::vector<SchemeCoefficients> scheme_coefficients(const Grid2D& grid, double fourier_x,
                                                    double fourier_y, double dt);

struct SolverConfig {
  Scheme scheme = Scheme::DufortFrankel;
  double dt = 1e-4;
  std::size_t bootstrap_substeps = 10;
  std::size_t max_bootstrap_substeps = 1000;
  double implicit_tolerance = 1e-10;
  double tau_warning = 0.1;

  void validate() const;
};

// Semi-discrete operator du/dt = L u + s on the node-centred grid. Boundary nodes use
// half (or quarter) control volumes, which is the ghost-node Robin elimination with
// face conductivities.
class DiffusionOperator {
 public:
  enum class Direction { X, Y, Both };

  DiffusionOperator(Grid2D grid, double fourier_x, double fourier_y);

  const Grid2D& grid() const noexcept { return grid_; }
  std::size_t nx() const noexcept { return grid_.nx; }
  std::size_t ny() const noexcept { return grid_.ny; }
  double fourier_x() const noexcept { return fo_x_; }
  double fourier_y() const noexcept { return fo_y_; }

  // Neighbour weights; boundary doubling is included.
  double west(std::size_t j) const noexcept { return west_[j]; }
  double east(std::size_t j) const noexcept { return east_[j]; }
  double south(std::size_t i, std::size_t j) const noexcept {
    return i == 0 ? 0.0 : (i + 1 == grid_.ny ? 2.0 * vert_[j] : vert_[j]);
  }
  double north(std::size_t i, std::size_t j) const noexcept {
    return i + 1 == grid_.ny ? 0.0 : (i == 0 ? 2.0 * vert_[j] : vert_[j]);
  }
  double vertical(std::size_t j) const noexcept { return vert_[j]; }

  // Multiplier of (load - Bi u) on an x-edge node of column j, or a y-edge node of column j.
  double edge_gain_x(std::size_t j) const noexcept { return gain_x_[j]; }
  double edge_gain_y(std::size_t j) const noexcept { return gain_y_[j]; }

  // For row i: nb[j] = Σ w u_nb, diag[j] = Σ w + boundary sinks, src[j] = boundary source.
  // Only the terms of `dir` are included.
  void row_terms(const BoundaryValues& bv, const Field2D& u, std::size_t i, Direction dir,
                 double* nb, double* diag, double* src) const;

  // out = L u + s restricted to `dir`.
  void apply(const BoundaryValues& bv, const Field2D& u, Direction dir, Field2D& out) const;

  // Largest explicit-Euler step by Gershgorin, boundary sinks included.
  double explicit_limit(const BoundaryValues& bv) const;

 private:
  Grid2D grid_;
  double fo_x_;
  double fo_y_;
  std::vector<double> west_, east_, vert_, gain_x_, gain_y_;
};

// Largest stable explicit-Euler step ignoring boundary sinks: the nodewise minimum of
// 1 / (2 Fo_x k/(c Δx²) + 2 Fo_y k/(c Δy²)).
double cfl_limit(const Grid2D& grid, double fourier_x, double fourier_y);

// max over nodes of (Fo_x k/(c Δx²) + Fo_y k/(c Δy²)) Δt². Warns above `warn_above`.
double tau_diagnostic(const Grid2D& grid, double fourier_x, double fourier_y, double dt,
                      double warn_above = 0.1);

// Kernels writing a new level. All throw DivergenceError on non-finite output.
void euler_update(const DiffusionOperator& op, const BoundaryValues& bv, const Field2D& u,
                  Field2D& out, double dt, std::size_t step, std::string_view scheme = "explicit");
void dufort_frankel_update(const DiffusionOperator& op, const BoundaryValues& bv,
                           const Field2D& prev, const Field2D& curr, Field2D& out, double dt,
                           std::size_t step);

// Sub-step count used to bootstrap DF: starts at `initial` and doubles while a sub-step
// exceeds the explicit limit. Throws SolverError beyond `max_substeps`.
std::size_t bootstrap_substep_count(const DiffusionOperator& op, const BoundaryValues& bv,
                                    double dt, std::size_t initial, std::size_t max_substeps);

class ImplicitEulerSystem;
class AdiWorkspace;

// Time stepper holding the operator, boundary data and scratch buffers.
class Solver {
 public:
  Solver(DiffusionOperator op, BoundaryConditions bc, SolverConfig config);
  ~Solver();
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;

  // Sets the initial field at time t0. DF is bootstrapped to level 1 here.
  void reset(const Field2D& u0, double t0 = 0.0);
  void advance(std::size_t steps = 1);

  const FieldState& state() const noexcept { return state_; }
  const Field2D& field() const noexcept { return state_.curr; }
  double time() const noexcept { return state_.time; }
  std::size_t step() const noexcept { return state_.step; }
  const DiffusionOperator& op() const noexcept { return op_; }
  const BoundaryConditions& boundary() const noexcept { return bc_; }
  const SolverConfig& config() const noexcept { return config_; }
  std::size_t bootstrap_substeps() const noexcept { return substeps_used_; }
  double tau() const;

 private:
  double time_at(std::size_t step) const { return t0_ + static_cast<double>(step) * config_.dt; }
  void step_once();
  void bootstrap();

  DiffusionOperator op_;
  BoundaryConditions bc_;
  SolverConfig config_;
  FieldState state_;
  Field2D next_;
  BoundaryValues bv_, bv_half_;
  double t0_ = 0.0;
  std::size_t substeps_used_ = 0;
  bool ready_ = false;
  std::unique_ptr<ImplicitEulerSystem> implicit_;
  std::unique_ptr<AdiWorkspace> adi_;
};

// Pure transitions: state at level n (and n-1 for DF) to level n+1 at t = state.time + dt.
FieldState step_dufort_frankel(const FieldState& state, const DiffusionOperator& op,
                               const BoundaryConditions& bc, double dt);
FieldState step_euler_explicit(const FieldState& state, const DiffusionOperator& op,
                               const BoundaryConditions& bc, double dt);
FieldState step_euler_implicit(const FieldState& state, const DiffusionOperator& op,
                               const BoundaryConditions& bc, double dt,
                               double tolerance = 1e-10);
FieldState step_adi(const FieldState& state, const DiffusionOperator& op,
                    const BoundaryConditions& bc, double dt);

// u^{-1} = u^0 = u0 followed by explicit sub-steps to level 1.
FieldState bootstrap_first_step(const Field2D& u0, const DiffusionOperator& op,
                                const BoundaryConditions& bc, double dt, double t0 = 0.0,
                                std::size_t initial_substeps = 10,
                                std::size_t max_substeps = 1000);

}  // namespace facade
