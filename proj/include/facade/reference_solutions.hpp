#pragma once

#include <cstddef>
#include <vector>

#include "facade/domain_model.hpp"
#include "facade/field.hpp"

namespace facade {

// Phase form of the Robin-Robin condition on [0, 1]:
// μ - atan(Bi_L/μ) - atan(Bi_R/μ) - (m - 1)π, strictly increasing in μ.
double eigen_phase(double mu, double bi_left, double bi_right, std::size_t m);

// (μ² - Bi_L Bi_R) sin μ - μ (Bi_L + Bi_R) cos μ, scaled by (1 + μ² + Bi_L Bi_R + μ(Bi_L + Bi_R)).
double eigen_residual(double mu, double bi_left, double bi_right);

// First `count` positive roots of tan μ = μ(Bi_L + Bi_R) / (μ² - Bi_L Bi_R), increasing.
// Infinite Biot numbers give the Dirichlet limit.
std::vector<double> find_eigenvalues(double bi_left, double bi_right, std::size_t count);

// Eigenfunctions X_m(x) = μ cos μx + Bi_L sin μx on [0, 1] for one direction.
struct DirectionBasis {
  double bi_left = 0.0;
  double bi_right = 0.0;
  std::vector<double> mu;
  std::vector<double> norm;  // ∫ X_m² over [0, 1]

  static DirectionBasis build(double bi_left, double bi_right, std::size_t count);

  double value(std::size_t m, double x) const;
  double slope(std::size_t m, double x) const;
  // ∫ X_m over [0, a]
  double integral(std::size_t m, double a) const;
};

struct EigenBasis {
  DirectionBasis x;
  DirectionBasis y;
};

// Unit plateau on [0, La] x [0, Lb] decaying under homogeneous Robin data.
struct ValidationCase {
  double bi_xmin = 3.0;  // Γ1
  double bi_ymax = 0.5;  // Γ2
  double bi_xmax = 1.5;  // Γ3
  double bi_ymin = 4.0;  // Γ4
  double plateau_x = 0.6;
  double plateau_y = 0.5;
  double fourier_x = 1.0;
  double fourier_y = 1.0;
  double final_time = 0.04;

  // Plateau sampled on the grid nodes, closed set.
  Field2D initial_field(const Grid2D& grid) const;
};

class AnalyticalSolution {
 public:
  explicit AnalyticalSolution(ValidationCase vc = {}, std::size_t n_terms = 50);

  double operator()(double x, double y, double t) const;
  Field2D sample(const Grid2D& grid, double t) const;

  // Outward-normal derivative on an edge at position s along it (y on x-edges, x on y-edges).
  double normal_derivative(Edge edge, double s, double t) const;

  const EigenBasis& basis() const noexcept { return basis_; }
  const ValidationCase& validation_case() const noexcept { return case_; }
  std::size_t terms() const noexcept { return basis_.x.mu.size(); }

 private:
  ValidationCase case_;
  EigenBasis basis_;
  std::vector<double> coeff_;  // row-major m * n_terms + n
};

double analytical_solution(double x, double y, double t, const ValidationCase& vc = {},
                           std::size_t n_terms = 50);

// A cos(pπx) cos(qπy) exp(-(Fo_x p²π² + Fo_y q²π²) t) under adiabatic edges, k* = c* = 1.
struct CosineMode {
  int p = 1;
  int q = 1;
  double amplitude = 1.0;
  double fourier_x = 1.0;
  double fourier_y = 1.0;

  double decay_rate() const;
  double operator()(double x, double y, double t) const;
  Field2D sample(const Grid2D& grid, double t) const;

  // Exact solution of the semi-discrete system on a grid of spacing dx, dy: the same
  // nodal mode decaying with the discrete eigenvalue.
  double discrete_decay_rate(double dx, double dy) const;
  Field2D sample_discrete(const Grid2D& grid, double t) const;
};

CosineMode manufactured_solution(int p, int q, double amplitude = 1.0);

}  // namespace facade
