#include "facade/solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "facade/diagnostics.hpp"
#include "facade/errors.hpp"
#include "facade/tridiagonal.hpp"

namespace facade {

std::string_view scheme_name(Scheme s) noexcept {
  switch (s) {
    case Scheme::DufortFrankel: return "df";
    case Scheme::EulerExplicit: return "explicit";
    case Scheme::EulerImplicit: return "implicit";
    case Scheme::ADI: return "adi";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) noexcept {
  if (name == "df") return Scheme::DufortFrankel;
  if (name == "explicit") return Scheme::EulerExplicit;
  if (name == "implicit") return Scheme::EulerImplicit;
  if (name == "adi") return Scheme::ADI;
  return std::nullopt;
}

SchemeCoefficients SchemeCoefficients::from_lambdas(double lambda_x, double lambda_y) {
  const double denom = 1.0 + lambda_x + lambda_y;
  return {lambda_x, lambda_y, lambda_x / denom, lambda_y / denom,
          (1.0 - lambda_x - lambda_y) / denom};
}

std::vector<SchemeCoefficients> scheme_coefficients(const Grid2D& grid, double fourier_x,
                                                    double fourier_y, double dt) {
  std::vector<SchemeCoefficients> out;
  out.reserve(grid.node_count());
  for (std::size_t i = 0; i < grid.ny; ++i)
    for (std::size_t j = 0; j < grid.nx; ++j) {
      const double kc = grid.k[j] / grid.c[j];
      out.push_back(SchemeCoefficients::from_lambdas(2.0 * dt * fourier_x * kc / (grid.dx * grid.dx),
                                                     2.0 * dt * fourier_y * kc / (grid.dy * grid.dy)));
    }
  return out;
}

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be positive");
  if (bootstrap_substeps == 0 || max_bootstrap_substeps < bootstrap_substeps)
    throw ConfigError("invalid bootstrap sub-step settings");
  if (!(implicit_tolerance > 0.0)) throw ConfigError("implicit tolerance must be positive");
}

DiffusionOperator::DiffusionOperator(Grid2D grid, double fourier_x, double fourier_y)
    : grid_(std::move(grid)), fo_x_(fourier_x), fo_y_(fourier_y) {
  if (!(fo_x_ > 0.0) || !(fo_y_ > 0.0)) throw ConfigError("Fourier numbers must be positive");
  const std::size_t nx = grid_.nx;
  if (nx < 3 || grid_.ny < 3) throw ConfigError("grid needs at least 3 x 3 nodes");
  west_.assign(nx, 0.0);
  east_.assign(nx, 0.0);
  vert_.assign(nx, 0.0);
  gain_x_.assign(nx, 0.0);
  gain_y_.assign(nx, 0.0);
  const double dx2 = grid_.dx * grid_.dx;
  const double dy2 = grid_.dy * grid_.dy;
  for (std::size_t j = 0; j < nx; ++j) {
    const double c = grid_.c[j];
    if (j + 1 < nx) east_[j] = fo_x_ * grid_.k_face[j] / (c * dx2);
    if (j > 0) west_[j] = fo_x_ * grid_.k_face[j - 1] / (c * dx2);
    vert_[j] = fo_y_ * grid_.k[j] / (c * dy2);
    gain_y_[j] = 2.0 * fo_y_ / (c * grid_.dy);
  }
  east_[0] *= 2.0;
  west_[nx - 1] *= 2.0;
  gain_x_[0] = 2.0 * fo_x_ / (grid_.c[0] * grid_.dx);
  gain_x_[nx - 1] = 2.0 * fo_x_ / (grid_.c[nx - 1] * grid_.dx);
}

void DiffusionOperator::row_terms(const BoundaryValues& bv, const Field2D& u, std::size_t i,
                                  Direction dir, double* nb, double* diag, double* src) const {
  const std::size_t nx = grid_.nx;
  const std::size_t ny = grid_.ny;
  const double* r = u.row(i);
  std::fill(nb, nb + nx, 0.0);
  std::fill(diag, diag + nx, 0.0);
  std::fill(src, src + nx, 0.0);

  if (dir != Direction::Y) {
    nb[0] = east_[0] * r[1];
    diag[0] = east_[0];
    for (std::size_t j = 1; j + 1 < nx; ++j) {
      nb[j] = west_[j] * r[j - 1] + east_[j] * r[j + 1];
      diag[j] = west_[j] + east_[j];
    }
    nb[nx - 1] = west_[nx - 1] * r[nx - 2];
    diag[nx - 1] = west_[nx - 1];
    const auto& lo = bv[Edge::XMin];
    const auto& hi = bv[Edge::XMax];
    diag[0] += gain_x_[0] * lo.biot[i];
    src[0] += gain_x_[0] * lo.load[i];
    diag[nx - 1] += gain_x_[nx - 1] * hi.biot[i];
    src[nx - 1] += gain_x_[nx - 1] * hi.load[i];
  }

  if (dir != Direction::X) {
    if (i == 0 || i + 1 == ny) {
      const double* other = u.row(i == 0 ? 1 : ny - 2);
      const auto& edge = bv[i == 0 ? Edge::YMin : Edge::YMax];
      for (std::size_t j = 0; j < nx; ++j) {
        nb[j] += 2.0 * vert_[j] * other[j];
        diag[j] += 2.0 * vert_[j] + gain_y_[j] * edge.biot[j];
        src[j] += gain_y_[j] * edge.load[j];
      }
    } else {
      const double* below = u.row(i - 1);
      const double* above = u.row(i + 1);
      for (std::size_t j = 0; j < nx; ++j) {
        nb[j] += vert_[j] * (below[j] + above[j]);
        diag[j] += 2.0 * vert_[j];
      }
    }
  }
}

void DiffusionOperator::apply(const BoundaryValues& bv, const Field2D& u, Direction dir,
                              Field2D& out) const {
  if (!out.same_shape(u)) out = Field2D(u.nx(), u.ny());
  const std::size_t nx = grid_.nx;
  std::vector<double> nb(nx), d(nx), s(nx);
  for (std::size_t i = 0; i < grid_.ny; ++i) {
    row_terms(bv, u, i, dir, nb.data(), d.data(), s.data());
    const double* r = u.row(i);
    double* o = out.row(i);
    for (std::size_t j = 0; j < nx; ++j) o[j] = nb[j] - d[j] * r[j] + s[j];
  }
}

double DiffusionOperator::explicit_limit(const BoundaryValues& bv) const {
  double worst = 0.0;
  const std::size_t nx = grid_.nx;
  const std::size_t ny = grid_.ny;
  for (std::size_t i = 0; i < ny; ++i) {
    for (std::size_t j = 0; j < nx; ++j) {
      double d = west_[j] + east_[j] + 2.0 * vert_[j];
      if (j == 0) d += gain_x_[0] * bv[Edge::XMin].biot[i];
      if (j + 1 == nx) d += gain_x_[j] * bv[Edge::XMax].biot[i];
      if (i == 0) d += gain_y_[j] * bv[Edge::YMin].biot[j];
      if (i + 1 == ny) d += gain_y_[j] * bv[Edge::YMax].biot[j];
      worst = std::max(worst, d);
    }
  }
  return worst > 0.0 ? 1.0 / worst : std::numeric_limits<double>::infinity();
}

double cfl_limit(const Grid2D& grid, double fourier_x, double fourier_y) {
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.nx; ++j) {
    const double kc = grid.k[j] / grid.c[j];
    worst = std::max(worst, 2.0 * fourier_x * kc / (grid.dx * grid.dx) +
                                2.0 * fourier_y * kc / (grid.dy * grid.dy));
  }
  return 1.0 / worst;
}

double tau_diagnostic(const Grid2D& grid, double fourier_x, double fourier_y, double dt,
                      double warn_above) {
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.nx; ++j) {
    const double kc = grid.k[j] / grid.c[j];
    worst = std::max(worst, fourier_x * kc / (grid.dx * grid.dx) +
                                fourier_y * kc / (grid.dy * grid.dy));
  }
  const double tau = worst * dt * dt;
  if (tau > warn_above) {
    std::ostringstream msg;
    msg << "DuFort-Frankel consistency parameter tau = " << tau << " exceeds " << warn_above
        << "; reduce the time step";
    warn(msg.str());
  }
  return tau;
}

namespace {

struct RowBuffers {
  std::vector<double> nb, d, s;
  explicit RowBuffers(std::size_t n) : nb(n), d(n), s(n) {}
};

void require_finite(double checksum, std::string_view scheme, std::size_t step) {
  if (!std::isfinite(checksum)) throw DivergenceError(std::string(scheme), step);
}

}  // namespace

void euler_update(const DiffusionOperator& op, const BoundaryValues& bv, const Field2D& u,
                  Field2D& out, double dt, std::size_t step, std::string_view scheme) {
  if (!out.same_shape(u)) out = Field2D(u.nx(), u.ny());
  const std::size_t nx = op.nx();
  RowBuffers buf(nx);
  double checksum = 0.0;
  for (std::size_t i = 0; i < op.ny(); ++i) {
    op.row_terms(bv, u, i, DiffusionOperator::Direction::Both, buf.nb.data(), buf.d.data(),
                 buf.s.data());
    const double* r = u.row(i);
    double* o = out.row(i);
    for (std::size_t j = 0; j < nx; ++j) {
      o[j] = r[j] + dt * (buf.nb[j] - buf.d[j] * r[j] + buf.s[j]);
      checksum += o[j];
    }
  }
  require_finite(checksum, scheme, step);
}

void dufort_frankel_update(const DiffusionOperator& op, const BoundaryValues& bv,
                           const Field2D& prev, const Field2D& curr, Field2D& out, double dt,
                           std::size_t step) {
  if (!out.same_shape(curr)) out = Field2D(curr.nx(), curr.ny());
  const std::size_t nx = op.nx();
  RowBuffers buf(nx);
  double checksum = 0.0;
  for (std::size_t i = 0; i < op.ny(); ++i) {
    op.row_terms(bv, curr, i, DiffusionOperator::Direction::Both, buf.nb.data(), buf.d.data(),
                 buf.s.data());
    const double* p = prev.row(i);
    double* o = out.row(i);
    for (std::size_t j = 0; j < nx; ++j) {
      const double a = dt * buf.d[j];
      o[j] = (2.0 * dt * (buf.nb[j] + buf.s[j]) + (1.0 - a) * p[j]) / (1.0 + a);
      checksum += o[j];
    }
  }
  require_finite(checksum, "df", step);
}

std::size_t bootstrap_substep_count(const DiffusionOperator& op, const BoundaryValues& bv,
                                    double dt, std::size_t initial, std::size_t max_substeps) {
  const double limit = op.explicit_limit(bv);
  std::size_t n = std::max<std::size_t>(initial, 1);
  while (dt / static_cast<double>(n) > limit) {
    if (n >= max_substeps) {
      std::ostringstream msg;
      msg << "bootstrap needs more than " << max_substeps << " explicit sub-steps (dt = " << dt
          << ", explicit limit = " << limit << ")";
      throw SolverError(msg.str());
    }
    n = std::min(2 * n, max_substeps);
  }
  return n;
}

// Sparse (I + dt(D - W)) with boundary sinks refreshed each step.
class ImplicitEulerSystem {
 public:
  ImplicitEulerSystem(const DiffusionOperator& op, double dt, double tolerance)
      : dt_(dt), nx_(op.nx()), ny_(op.ny()) {
    const std::size_t n = nx_ * ny_;
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(5 * n);
    base_diag_.resize(n);
    for (std::size_t i = 0; i < ny_; ++i) {
      for (std::size_t j = 0; j < nx_; ++j) {
        const auto p = static_cast<Eigen::Index>(i * nx_ + j);
        const double w = op.west(j), e = op.east(j), s = op.south(i, j), no = op.north(i, j);
        base_diag_[p] = 1.0 + dt * (w + e + s + no);
        entries.emplace_back(p, p, base_diag_[p]);
        if (j > 0) entries.emplace_back(p, p - 1, -dt * w);
        if (j + 1 < nx_) entries.emplace_back(p, p + 1, -dt * e);
        if (i > 0) entries.emplace_back(p, p - static_cast<Eigen::Index>(nx_), -dt * s);
        if (i + 1 < ny_) entries.emplace_back(p, p + static_cast<Eigen::Index>(nx_), -dt * no);
      }
    }
    matrix_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    matrix_.setFromTriplets(entries.begin(), entries.end());
    matrix_.makeCompressed();
    diag_ptr_.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      const auto q = static_cast<Eigen::Index>(p);
      diag_ptr_[p] = &matrix_.coeffRef(q, q);
    }
    rhs_.resize(static_cast<Eigen::Index>(n));
    guess_.resize(static_cast<Eigen::Index>(n));
    solver_.setTolerance(tolerance);
    gain_x_lo_ = op.edge_gain_x(0);
    gain_x_hi_ = op.edge_gain_x(nx_ - 1);
    gain_y_.resize(nx_);
    for (std::size_t j = 0; j < nx_; ++j) gain_y_[j] = op.edge_gain_y(j);
  }

  // bv holds the data at t^{n+1}.
  void solve(const BoundaryValues& bv, const Field2D& u, Field2D& out, std::size_t step) {
    const std::size_t n = nx_ * ny_;
    for (std::size_t p = 0; p < n; ++p) {
      *diag_ptr_[p] = base_diag_[p];
      rhs_[static_cast<Eigen::Index>(p)] = u.values()[p];
      guess_[static_cast<Eigen::Index>(p)] = u.values()[p];
    }
    auto add = [&](std::size_t p, double gain, double biot, double load) {
      *diag_ptr_[p] += dt_ * gain * biot;
      rhs_[static_cast<Eigen::Index>(p)] += dt_ * gain * load;
    };
    for (std::size_t i = 0; i < ny_; ++i) {
      add(i * nx_, gain_x_lo_, bv[Edge::XMin].biot[i], bv[Edge::XMin].load[i]);
      add(i * nx_ + nx_ - 1, gain_x_hi_, bv[Edge::XMax].biot[i], bv[Edge::XMax].load[i]);
    }
    for (std::size_t j = 0; j < nx_; ++j) {
      add(j, gain_y_[j], bv[Edge::YMin].biot[j], bv[Edge::YMin].load[j]);
      add((ny_ - 1) * nx_ + j, gain_y_[j], bv[Edge::YMax].biot[j], bv[Edge::YMax].load[j]);
    }
    solver_.compute(matrix_);
    Eigen::VectorXd x = solver_.solveWithGuess(rhs_, guess_);
    if (solver_.info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "implicit: linear solve did not converge at step " << step << " (residual "
          << solver_.error() << ")";
      throw SolverError(msg.str());
    }
    if (!out.same_shape(u)) out = Field2D(u.nx(), u.ny());
    double checksum = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      out.values()[p] = x[static_cast<Eigen::Index>(p)];
      checksum += out.values()[p];
    }
    require_finite(checksum, "implicit", step);
  }

 private:
  double dt_;
  std::size_t nx_, ny_;
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix_;
  std::vector<double> base_diag_;
  std::vector<double*> diag_ptr_;
  Eigen::VectorXd rhs_, guess_;
  double gain_x_lo_ = 0.0, gain_x_hi_ = 0.0;
  std::vector<double> gain_y_;
  Eigen::BiCGSTAB<Eigen::SparseMatrix<double, Eigen::RowMajor>> solver_;
};

// Peaceman-Rachford splitting: x-implicit half step, then y-implicit half step.
class AdiWorkspace {
 public:
  explicit AdiWorkspace(const DiffusionOperator& op)
      : star_(op.nx(), op.ny()),
        nb_(op.nx()), d_(op.nx()), s_(op.nx()),
        lower_(op.nx()), diag_(op.nx()), upper_(op.nx()), scratch_(op.nx()),
        col_c_(op.nx() * op.ny()) {}

  // bv_n, bv_half, bv_next hold boundary data at t^n, t^{n+1/2}, t^{n+1}.
  void step(const DiffusionOperator& op, const BoundaryValues& bv_n,
            const BoundaryValues& bv_half, const BoundaryValues& bv_next, const Field2D& u,
            Field2D& out, double dt, std::size_t step_index) {
    using Dir = DiffusionOperator::Direction;
    const std::size_t nx = op.nx();
    const std::size_t ny = op.ny();
    const double h = 0.5 * dt;
    if (!out.same_shape(u)) out = Field2D(nx, ny);

    for (std::size_t i = 0; i < ny; ++i) {
      double* rhs = star_.row(i);
      const double* r = u.row(i);
      op.row_terms(bv_n, u, i, Dir::Y, nb_.data(), d_.data(), s_.data());
      for (std::size_t j = 0; j < nx; ++j)
        rhs[j] = r[j] + h * (nb_[j] - d_[j] * r[j] + s_[j]);
      op.row_terms(bv_half, u, i, Dir::X, nb_.data(), d_.data(), s_.data());
      for (std::size_t j = 0; j < nx; ++j) {
        rhs[j] += h * s_[j];
        lower_[j] = -h * op.west(j);
        upper_[j] = -h * op.east(j);
        diag_[j] = 1.0 + h * d_[j];
      }
      solve_tridiagonal_inplace(lower_, diag_, upper_, std::span<double>(rhs, nx), scratch_);
    }

    // Explicit x part on u*, then the y systems of all columns swept together.
    for (std::size_t i = 0; i < ny; ++i) {
      const double* r = star_.row(i);
      double* o = out.row(i);
      op.row_terms(bv_half, star_, i, Dir::X, nb_.data(), d_.data(), s_.data());
      for (std::size_t j = 0; j < nx; ++j) o[j] = r[j] + h * (nb_[j] - d_[j] * r[j] + s_[j]);
    }
    const auto& lo = bv_next[Edge::YMin];
    const auto& hi = bv_next[Edge::YMax];
    for (std::size_t j = 0; j < nx; ++j) out(j, 0) += h * op.edge_gain_y(j) * lo.load[j];
    for (std::size_t j = 0; j < nx; ++j) out(j, ny - 1) += h * op.edge_gain_y(j) * hi.load[j];

    auto diag_at = [&](std::size_t i, std::size_t j) {
      double d = 1.0 + h * 2.0 * op.vertical(j);
      if (i == 0) d += h * op.edge_gain_y(j) * lo.biot[j];
      if (i + 1 == ny) d += h * op.edge_gain_y(j) * hi.biot[j];
      return d;
    };
    for (std::size_t i = 0; i < ny; ++i) {
      double* r = out.row(i);
      double* c = col_c_.data() + i * nx;
      const double* r_prev = i > 0 ? out.row(i - 1) : nullptr;
      const double* c_prev = i > 0 ? col_c_.data() + (i - 1) * nx : nullptr;
      for (std::size_t j = 0; j < nx; ++j) {
        const double a = i > 0 ? -h * op.south(i, j) : 0.0;
        const double up = i + 1 < ny ? -h * op.north(i, j) : 0.0;
        const double pivot = diag_at(i, j) - (i > 0 ? a * c_prev[j] : 0.0);
        if (pivot == 0.0) throw SolverError("adi: zero pivot in y sweep");
        c[j] = up / pivot;
        r[j] = (r[j] - (i > 0 ? a * r_prev[j] : 0.0)) / pivot;
      }
    }
    double checksum = 0.0;
    for (std::size_t j = 0; j < nx; ++j) checksum += out(j, ny - 1);
    for (std::size_t i = ny - 1; i-- > 0;) {
      double* r = out.row(i);
      const double* r_next = out.row(i + 1);
      const double* c = col_c_.data() + i * nx;
      for (std::size_t j = 0; j < nx; ++j) {
        r[j] -= c[j] * r_next[j];
        checksum += r[j];
      }
    }
    require_finite(checksum, "adi", step_index);
  }

 private:
  Field2D star_;
  std::vector<double> nb_, d_, s_, lower_, diag_, upper_, scratch_, col_c_;
};

Solver::Solver(DiffusionOperator op, BoundaryConditions bc, SolverConfig config)
    : op_(std::move(op)), bc_(std::move(bc)), config_(config) {
  config_.validate();
  bv_.resize(op_.nx(), op_.ny());
  bv_half_.resize(op_.nx(), op_.ny());
  if (config_.scheme == Scheme::EulerImplicit)
    implicit_ = std::make_unique<ImplicitEulerSystem>(op_, config_.dt, config_.implicit_tolerance);
  if (config_.scheme == Scheme::ADI) adi_ = std::make_unique<AdiWorkspace>(op_);
}

Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

double Solver::tau() const {
  return tau_diagnostic(op_.grid(), op_.fourier_x(), op_.fourier_y(), config_.dt,
                        std::numeric_limits<double>::infinity());
}

void Solver::reset(const Field2D& u0, double t0) {
  if (u0.nx() != op_.nx() || u0.ny() != op_.ny())
    throw ConfigError("initial field does not match the grid");
  t0_ = t0;
  state_ = FieldState{u0, u0, 0, t0};
  next_ = Field2D(op_.nx(), op_.ny());
  substeps_used_ = 0;
  if (config_.scheme == Scheme::DufortFrankel) {
    tau_diagnostic(op_.grid(), op_.fourier_x(), op_.fourier_y(), config_.dt, config_.tau_warning);
    bootstrap();
  }
  ready_ = true;
}

void Solver::bootstrap() {
  bc_.evaluate(time_at(0), op_.grid(), bv_);
  const std::size_t n = bootstrap_substep_count(op_, bv_, config_.dt, config_.bootstrap_substeps,
                                                config_.max_bootstrap_substeps);
  const double sub = config_.dt / static_cast<double>(n);
  Field2D u = state_.curr;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) bc_.evaluate(t0_ + static_cast<double>(k) * sub, op_.grid(), bv_);
    euler_update(op_, bv_, u, next_, sub, 1, "df bootstrap");
    std::swap(u, next_);
  }
  state_.prev = state_.curr;
  state_.curr = std::move(u);
  state_.step = 1;
  state_.time = time_at(1);
  substeps_used_ = n;
}

void Solver::advance(std::size_t steps) {
  if (!ready_) throw ConfigError("solver advanced before reset");
  for (std::size_t k = 0; k < steps; ++k) step_once();
}

void Solver::step_once() {
  const std::size_t n = state_.step;
  const double t = time_at(n);
  const auto& grid = op_.grid();
  switch (config_.scheme) {
    case Scheme::DufortFrankel:
      bc_.evaluate(t, grid, bv_);
      dufort_frankel_update(op_, bv_, state_.prev, state_.curr, next_, config_.dt, n + 1);
      break;
    case Scheme::EulerExplicit:
      bc_.evaluate(t, grid, bv_);
      euler_update(op_, bv_, state_.curr, next_, config_.dt, n + 1);
      break;
    case Scheme::EulerImplicit:
      bc_.evaluate(time_at(n + 1), grid, bv_);
      implicit_->solve(bv_, state_.curr, next_, n + 1);
      break;
    case Scheme::ADI: {
      BoundaryValues bv_next;
      bc_.evaluate(t, grid, bv_);
      bc_.evaluate(t + 0.5 * config_.dt, grid, bv_half_);
      bc_.evaluate(time_at(n + 1), grid, bv_next);
      adi_->step(op_, bv_, bv_half_, bv_next, state_.curr, next_, config_.dt, n + 1);
      break;
    }
  }
  std::swap(state_.prev, state_.curr);
  std::swap(state_.curr, next_);
  state_.step = n + 1;
  state_.time = time_at(n + 1);
}

namespace {

FieldState advanced(const FieldState& state, Field2D next, double dt) {
  return FieldState{state.curr, std::move(next), state.step + 1, state.time + dt};
}

}  // namespace

FieldState step_dufort_frankel(const FieldState& state, const DiffusionOperator& op,
                               const BoundaryConditions& bc, double dt) {
  BoundaryValues bv;
  bc.evaluate(state.time, op.grid(), bv);
  Field2D next(op.nx(), op.ny());
  dufort_frankel_update(op, bv, state.prev, state.curr, next, dt, state.step + 1);
  return advanced(state, std::move(next), dt);
}

FieldState step_euler_explicit(const FieldState& state, const DiffusionOperator& op,
                               const BoundaryConditions& bc, double dt) {
  BoundaryValues bv;
  bc.evaluate(state.time, op.grid(), bv);
  Field2D next(op.nx(), op.ny());
  euler_update(op, bv, state.curr, next, dt, state.step + 1);
  return advanced(state, std::move(next), dt);
}

FieldState step_euler_implicit(const FieldState& state, const DiffusionOperator& op,
                               const BoundaryConditions& bc, double dt, double tolerance) {
  BoundaryValues bv;
  bc.evaluate(state.time + dt, op.grid(), bv);
  ImplicitEulerSystem system(op, dt, tolerance);
  Field2D next(op.nx(), op.ny());
  system.solve(bv, state.curr, next, state.step + 1);
  return advanced(state, std::move(next), dt);
}

FieldState step_adi(const FieldState& state, const DiffusionOperator& op,
                    const BoundaryConditions& bc, double dt) {
  BoundaryValues bv_n, bv_half, bv_next;
  bc.evaluate(state.time, op.grid(), bv_n);
  bc.evaluate(state.time + 0.5 * dt, op.grid(), bv_half);
  bc.evaluate(state.time + dt, op.grid(), bv_next);
  AdiWorkspace ws(op);
  Field2D next(op.nx(), op.ny());
  ws.step(op, bv_n, bv_half, bv_next, state.curr, next, dt, state.step + 1);
  return advanced(state, std::move(next), dt);
}

FieldState bootstrap_first_step(const Field2D& u0, const DiffusionOperator& op,
                                const BoundaryConditions& bc, double dt, double t0,
                                std::size_t initial_substeps, std::size_t max_substeps) {
  SolverConfig config;
  config.dt = dt;
  config.bootstrap_substeps = initial_substeps;
  config.max_bootstrap_substeps = max_substeps;
  config.tau_warning = std::numeric_limits<double>::infinity();
  Solver solver(op, bc, config);
  solver.reset(u0, t0);
  return solver.state();
}

}  // namespace facade
