#include "facade/reference_solutions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "facade/errors.hpp"

namespace facade {

namespace {

constexpr double kPi = std::numbers::pi;

double phase_term(double bi, double mu) {
  // atan(Bi/μ), with Bi = inf giving π/2.
  return std::atan2(bi, mu);
}

}  // namespace

double eigen_phase(double mu, double bi_left, double bi_right, std::size_t m) {
  return mu - phase_term(bi_left, mu) - phase_term(bi_right, mu) -
         static_cast<double>(m - 1) * kPi;
}

double eigen_residual(double mu, double bi_left, double bi_right) {
  if (std::isinf(bi_left) || std::isinf(bi_right)) {
    // Divide through by the infinite Biot number(s).
    if (std::isinf(bi_left) && std::isinf(bi_right)) return std::sin(mu);
    const double b = std::isinf(bi_left) ? bi_right : bi_left;
    return (-b * std::sin(mu) - mu * std::cos(mu)) / (1.0 + mu + b);
  }
  const double f = (mu * mu - bi_left * bi_right) * std::sin(mu) -
                   mu * (bi_left + bi_right) * std::cos(mu);
  return f / (1.0 + mu * mu + bi_left * bi_right + mu * (bi_left + bi_right));
}

std::vector<double> find_eigenvalues(double bi_left, double bi_right, std::size_t count) {
  if (!(bi_left >= 0.0) || !(bi_right >= 0.0))
    throw ConfigError("Biot numbers must be non-negative");
  if (count == 0) throw ConfigError("eigenvalue count must be at least 1");
  const bool neumann = bi_left == 0.0 && bi_right == 0.0;

  std::vector<double> roots;
  roots.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) {
    // The Neumann problem's first root is μ = 0, which carries the mean; skip it.
    const std::size_t m = neumann ? k + 1 : k;
    double lo = static_cast<double>(m - 1) * kPi;
    double hi = static_cast<double>(m) * kPi;
    double f_lo = lo > 0.0 ? eigen_phase(lo, bi_left, bi_right, m) : -1.0;
    double f_hi = eigen_phase(hi, bi_left, bi_right, m);
    if (std::abs(f_hi) <= 1e-14 * hi) {
      roots.push_back(hi);
      continue;
    }
    if (f_lo == 0.0 && lo > 0.0) {
      roots.push_back(lo);
      continue;
    }
    if (!(f_lo < 0.0 && f_hi > 0.0))
      throw SolverError("eigenvalue bracketing failed for mode " + std::to_string(m));
    double mu = 0.5 * (lo + hi);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      mu = 0.5 * (lo + hi);
      const double f = eigen_phase(mu, bi_left, bi_right, m);
      if (f == 0.0) {
        lo = hi = mu;
        break;
      }
      (f < 0.0 ? lo : hi) = mu;
    }
    // Newton polish on the phase function, kept inside the bracket.
    mu = 0.5 * (lo + hi);
    for (int it = 0; it < 5; ++it) {
      const double f = eigen_phase(mu, bi_left, bi_right, m);
      const double dl = std::isinf(bi_left) ? 0.0 : bi_left / (mu * mu + bi_left * bi_left);
      const double dr = std::isinf(bi_right) ? 0.0 : bi_right / (mu * mu + bi_right * bi_right);
      const double next = mu - f / (1.0 + dl + dr);
      if (!(next > lo - 1e-13 && next < hi + 1e-13)) break;
      mu = next;
    }
    if (!roots.empty() && !(mu > roots.back()))
      throw SolverError("eigenvalue audit failed: roots not increasing at mode " +
                        std::to_string(m));
    roots.push_back(mu);
  }
  return roots;
}

DirectionBasis DirectionBasis::build(double bi_left, double bi_right, std::size_t count) {
  if (std::isinf(bi_left) || std::isinf(bi_right))
    throw ConfigError("analytical basis needs finite Biot numbers");
  DirectionBasis b;
  b.bi_left = bi_left;
  b.bi_right = bi_right;
  b.mu = find_eigenvalues(bi_left, bi_right, count);
  b.norm.reserve(count);
  for (double mu : b.mu) {
    const double m2 = mu * mu;
    b.norm.push_back(0.5 * ((m2 + bi_left * bi_left) * (1.0 + bi_right / (m2 + bi_right * bi_right)) +
                            bi_left));
  }
  return b;
}

double DirectionBasis::value(std::size_t m, double x) const {
  const double mu = this->mu[m];
  return mu * std::cos(mu * x) + bi_left * std::sin(mu * x);
}

double DirectionBasis::slope(std::size_t m, double x) const {
  const double mu = this->mu[m];
  return mu * (-mu * std::sin(mu * x) + bi_left * std::cos(mu * x));
}

double DirectionBasis::integral(std::size_t m, double a) const {
  const double mu = this->mu[m];
  return std::sin(mu * a) + bi_left * (1.0 - std::cos(mu * a)) / mu;
}

Field2D ValidationCase::initial_field(const Grid2D& grid) const {
  Field2D u = grid.make_field();
  for (std::size_t i = 0; i < grid.ny; ++i)
    for (std::size_t j = 0; j < grid.nx; ++j)
      if (grid.x[j] <= plateau_x + 1e-12 && grid.y[i] <= plateau_y + 1e-12) u(j, i) = 1.0;
  return u;
}

AnalyticalSolution::AnalyticalSolution(ValidationCase vc, std::size_t n_terms) : case_(vc) {
  if (n_terms == 0) throw ConfigError("n_terms must be at least 1");
  basis_.x = DirectionBasis::build(vc.bi_xmin, vc.bi_xmax, n_terms);
  basis_.y = DirectionBasis::build(vc.bi_ymin, vc.bi_ymax, n_terms);
  coeff_.resize(n_terms * n_terms);
  for (std::size_t m = 0; m < n_terms; ++m) {
    const double ax = basis_.x.integral(m, vc.plateau_x) / basis_.x.norm[m];
    for (std::size_t n = 0; n < n_terms; ++n)
      coeff_[m * n_terms + n] = ax * basis_.y.integral(n, vc.plateau_y) / basis_.y.norm[n];
  }
}

double AnalyticalSolution::operator()(double x, double y, double t) const {
  const std::size_t n_terms = terms();
  std::vector<double> ey(n_terms);
  for (std::size_t n = 0; n < n_terms; ++n) {
    const double nu = basis_.y.mu[n];
    ey[n] = basis_.y.value(n, y) * std::exp(-case_.fourier_y * nu * nu * t);
  }
  double sum = 0.0;
  for (std::size_t m = 0; m < n_terms; ++m) {
    const double mu = basis_.x.mu[m];
    const double ex = basis_.x.value(m, x) * std::exp(-case_.fourier_x * mu * mu * t);
    double inner = 0.0;
    for (std::size_t n = 0; n < n_terms; ++n) inner += coeff_[m * n_terms + n] * ey[n];
    sum += ex * inner;
  }
  return sum;
}

Field2D AnalyticalSolution::sample(const Grid2D& grid, double t) const {
  const std::size_t n_terms = terms();
  // Separable evaluation: tabulate per-direction factors once.
  std::vector<double> fx(grid.nx * n_terms), fy(grid.ny * n_terms);
  for (std::size_t m = 0; m < n_terms; ++m) {
    const double mu = basis_.x.mu[m];
    const double decay = std::exp(-case_.fourier_x * mu * mu * t);
    for (std::size_t j = 0; j < grid.nx; ++j)
      fx[j * n_terms + m] = basis_.x.value(m, grid.x[j]) * decay;
  }
  for (std::size_t n = 0; n < n_terms; ++n) {
    const double nu = basis_.y.mu[n];
    const double decay = std::exp(-case_.fourier_y * nu * nu * t);
    for (std::size_t i = 0; i < grid.ny; ++i)
      fy[i * n_terms + n] = basis_.y.value(n, grid.y[i]) * decay;
  }
  Field2D u = grid.make_field();
  std::vector<double> row(n_terms);
  for (std::size_t i = 0; i < grid.ny; ++i) {
    for (std::size_t m = 0; m < n_terms; ++m) {
      double s = 0.0;
      for (std::size_t n = 0; n < n_terms; ++n) s += coeff_[m * n_terms + n] * fy[i * n_terms + n];
      row[m] = s;
    }
    for (std::size_t j = 0; j < grid.nx; ++j) {
      double s = 0.0;
      for (std::size_t m = 0; m < n_terms; ++m) s += fx[j * n_terms + m] * row[m];
      u(j, i) = s;
    }
  }
  return u;
}

double AnalyticalSolution::normal_derivative(Edge edge, double s, double t) const {
  const std::size_t n_terms = terms();
  double sum = 0.0;
  for (std::size_t m = 0; m < n_terms; ++m) {
    const double mu = basis_.x.mu[m];
    const double ex = std::exp(-case_.fourier_x * mu * mu * t);
    for (std::size_t n = 0; n < n_terms; ++n) {
      const double nu = basis_.y.mu[n];
      const double a = coeff_[m * n_terms + n] * ex * std::exp(-case_.fourier_y * nu * nu * t);
      switch (edge) {
        case Edge::XMin: sum -= a * basis_.x.slope(m, 0.0) * basis_.y.value(n, s); break;
        case Edge::XMax: sum += a * basis_.x.slope(m, 1.0) * basis_.y.value(n, s); break;
        case Edge::YMin: sum -= a * basis_.x.value(m, s) * basis_.y.slope(n, 0.0); break;
        case Edge::YMax: sum += a * basis_.x.value(m, s) * basis_.y.slope(n, 1.0); break;
      }
    }
  }
  return sum;
}

double analytical_solution(double x, double y, double t, const ValidationCase& vc,
                           std::size_t n_terms) {
  if (!(t > 0.0)) throw ConfigError("analytical solution needs t* > 0");
  return AnalyticalSolution(vc, n_terms)(x, y, t);
}

double CosineMode::decay_rate() const {
  return (fourier_x * p * p + fourier_y * q * q) * kPi * kPi;
}

double CosineMode::operator()(double x, double y, double t) const {
  return amplitude * std::exp(-decay_rate() * t) * std::cos(p * kPi * x) * std::cos(q * kPi * y);
}

Field2D CosineMode::sample(const Grid2D& grid, double t) const {
  Field2D u = grid.make_field();
  for (std::size_t i = 0; i < grid.ny; ++i)
    for (std::size_t j = 0; j < grid.nx; ++j) u(j, i) = (*this)(grid.x[j], grid.y[i], t);
  return u;
}

double CosineMode::discrete_decay_rate(double dx, double dy) const {
  const double sx = std::sin(p * kPi * dx / 2.0);
  const double sy = std::sin(q * kPi * dy / 2.0);
  return fourier_x * 4.0 * sx * sx / (dx * dx) + fourier_y * 4.0 * sy * sy / (dy * dy);
}

Field2D CosineMode::sample_discrete(const Grid2D& grid, double t) const {
  Field2D u = sample(grid, 0.0);
  const double factor = std::exp(-discrete_decay_rate(grid.dx, grid.dy) * t);
  for (double& v : u.values()) v *= factor;
  return u;
}

CosineMode manufactured_solution(int p, int q, double amplitude) {
  if (p < 0 || q < 0) throw ConfigError("mode numbers must be non-negative");
  CosineMode mode;
  mode.p = p;
  mode.q = q;
  mode.amplitude = amplitude;
  return mode;
}

}  // namespace facade
