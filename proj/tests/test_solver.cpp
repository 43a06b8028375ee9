#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "facade/errors.hpp"
#include "facade/pipelines.hpp"
#include "facade/reference_solutions.hpp"
#include "facade/solver.hpp"
#include "facade/tridiagonal.hpp"
#include "support.hpp"

using namespace facade;

namespace {

constexpr Scheme kSchemes[] = {Scheme::DufortFrankel, Scheme::EulerExplicit,
                               Scheme::EulerImplicit, Scheme::ADI};

Field2D run(Scheme scheme, const Grid2D& grid, const BoundaryConditions& bc, const Field2D& u0,
            double dt, std::size_t steps, double fo_x = 1.0, double fo_y = 1.0) {
  SolverConfig cfg;
  cfg.scheme = scheme;
  cfg.dt = dt;
  Solver s(DiffusionOperator(grid, fo_x, fo_y), bc, cfg);
  s.reset(u0);
  s.advance(steps - s.step());
  return s.field();
}

BoundaryConditions x_robin(double bi_left, double u_left, double bi_right, double u_right,
                           double q_left = 0.0) {
  BoundaryConditions bc;
  bc.set(Edge::XMin, BoundaryConditions::constant(bi_left, u_left, q_left))
      .set(Edge::XMax, BoundaryConditions::constant(bi_right, u_right));
  return bc;
}

}  // namespace

TEST_CASE("DuFort-Frankel weights sum to one") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 50.0);
  for (int k = 0; k < 200; ++k) {
    const auto c = SchemeCoefficients::from_lambdas(dist(rng), dist(rng));
    CHECK(std::abs(2 * c.sigma_x + 2 * c.sigma_y + c.sigma_xy - 1.0) <= 1e-14);
  }
  const auto c = SchemeCoefficients::from_lambdas(0.5, 0.25);
  CHECK(c.sigma_x == doctest::Approx(0.5 / 1.75));
  CHECK(c.sigma_y == doctest::Approx(0.25 / 1.75));
  CHECK(c.sigma_xy == doctest::Approx(0.25 / 1.75));
}

TEST_CASE("per-node lambdas follow the local material") {
  const Grid2D g = uniform_grid(11, 21, 0.5, 2.0);
  const auto coeffs = scheme_coefficients(g, 1.0, 3.0, 1e-3);
  REQUIRE(coeffs.size() == g.node_count());
  CHECK(coeffs[25].lambda_x == doctest::Approx(2e-3 * 0.5 / 2.0 / (0.1 * 0.1)));
  CHECK(coeffs[25].lambda_y == doctest::Approx(2e-3 * 3.0 * 0.5 / 2.0 / (0.05 * 0.05)));
}

TEST_CASE("DuFort-Frankel with vanishing step returns the older level") {
  const Grid2D g = uniform_grid(9, 7);
  const DiffusionOperator op(g, 1.0, 1.0);
  BoundaryValues bv;
  bv.resize(g.nx, g.ny);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field2D prev(g.nx, g.ny), curr(g.nx, g.ny), out(g.nx, g.ny);
  for (double& v : prev.values()) v = dist(rng);
  for (double& v : curr.values()) v = dist(rng);
  dufort_frankel_update(op, bv, prev, curr, out, 1e-300, 1);
  CHECK(testing::max_abs_diff(out, prev) <= 1e-14);
}

TEST_CASE("every scheme preserves a uniform field under equilibrium Robin data") {
  const Grid2D g = uniform_grid(21, 17, 1.0, 1.0);
  BoundaryConditions bc;
  for (Edge e : kAllEdges) bc.set(e, BoundaryConditions::constant(2.5, 0.7));
  const Field2D u0(g.nx, g.ny, 0.7);
  for (Scheme s : kSchemes) {
    CAPTURE(scheme_name(s));
    const double dt = s == Scheme::EulerExplicit ? 1e-4 : 1e-2;
    const Field2D u = run(s, g, bc, u0, dt, 30);
    CHECK(testing::max_abs_diff(u, u0) <= 1e-12);
  }
}

TEST_CASE("explicit Euler divergence beyond the CFL limit") {
  const ValidationCase vc;
  const Grid2D g = uniform_grid(101, 101);
  const Field2D u0 = vc.initial_field(g);
  CHECK(cfl_limit(g, 1.0, 1.0) == doctest::Approx(2.5e-5).epsilon(1e-12));
  CHECK_NOTHROW(run(Scheme::EulerExplicit, g, validation_boundary(vc), u0, 2.4e-5, 1667));
  try {
    run(Scheme::EulerExplicit, g, validation_boundary(vc), u0, 4e-5, 1000);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.step() > 0);
    CHECK(e.step() <= 1000);
    CHECK(std::string(e.what()).find(std::to_string(e.step())) != std::string::npos);
  }
}

TEST_CASE("non-finite input is reported as divergence with the step index") {
  const Grid2D g = uniform_grid(5, 5);
  const DiffusionOperator op(g, 1.0, 1.0);
  BoundaryValues bv;
  bv.resize(g.nx, g.ny);
  Field2D u(g.nx, g.ny), out(g.nx, g.ny);
  u(2, 2) = std::nan("");
  try {
    euler_update(op, bv, u, out, 1e-3, 42);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.step() == 42);
  }
}

TEST_CASE("implicit Euler reaches the steady linear profile") {
  const Grid2D g = uniform_grid(41, 5);
  const double bi1 = 3.0, u1 = 1.0, bi3 = 1.5, u3 = -0.5;
  // -b + Bi1 a = Bi1 u1 and b + Bi3 (a + b) = Bi3 u3 for u = a + b x.
  const double a = (bi1 * u1 * (1.0 + bi3) + bi3 * u3) / (bi1 * (1.0 + bi3) + bi3);
  const double b = bi1 * (a - u1);
  const Field2D u = run(Scheme::EulerImplicit, g, x_robin(bi1, u1, bi3, u3), Field2D(g.nx, g.ny),
                        10.0, 60);
  for (std::size_t i = 0; i < g.ny; ++i)
    for (std::size_t j = 0; j < g.nx; ++j) CHECK(std::abs(u(j, i) - (a + b * g.x[j])) <= 1e-8);
}

TEST_CASE("layered steady state carries the series flux exactly") {
  const WallAssembly wall = default_wall();
  const ReferenceScales s = ReferenceScales::for_wall(wall);
  const Grid2D g = build_grid(wall, 75, 3, s);
  const double bi1 = biot_number(8.0, s, Edge::XMin), bi3 = biot_number(10.0, s, Edge::XMax);
  const Field2D u = run(Scheme::EulerImplicit, g, x_robin(bi1, -1.0, bi3, 0.0),
                        Field2D(g.nx, g.ny), 1e3, 60, s.fourier_x(), s.fourier_y());
  const double flux = -1.0 * s.delta_t / (1.0 / 8.0 + wall.series_resistance() + 1.0 / 10.0);
  // Robin balance on the inside edge: q into the zone = h3 (T_surface - T_in).
  CHECK(10.0 * s.delta_t * u(g.nx - 1, 1) == doctest::Approx(flux).epsilon(1e-8));
  CHECK(8.0 * s.delta_t * (-1.0 - u(0, 1)) == doctest::Approx(flux).epsilon(1e-8));
}

TEST_CASE("column invariance: y-uniform data give identical rows and match the strip") {
  const Grid2D g2 = uniform_grid(31, 21, 1.0, 1.0);
  const Grid2D g1 = uniform_grid(31, 3, 1.0, 1.0);
  const auto bc = x_robin(3.0, 1.0, 1.5, 0.0, 0.4);
  Field2D a0(g2.nx, g2.ny), b0(g1.nx, g1.ny);
  for (std::size_t j = 0; j < g2.nx; ++j) {
    const double v = std::sin(3.0 * g2.x[j]);
    for (std::size_t i = 0; i < g2.ny; ++i) a0(j, i) = v;
    for (std::size_t i = 0; i < g1.ny; ++i) b0(j, i) = v;
  }
  for (Scheme s : kSchemes) {
    CAPTURE(scheme_name(s));
    const double dt = s == Scheme::EulerExplicit ? 1e-4 : 1e-3;
    const Field2D a = run(s, g2, bc, a0, dt, 100, 1.0, 0.3);
    // DuFort-Frankel keeps a λy (2u^n - u^{n+1} - u^{n-1}) term, so the strip needs the same λy.
    const double same_lambda = 0.3 * (g1.dy / g2.dy) * (g1.dy / g2.dy);
    const double strip_fo_y = s == Scheme::DufortFrankel ? same_lambda : 7.0;
    const Field2D b = run(s, g1, bc, b0, dt, 100, 1.0, strip_fo_y);
    const double scale = testing::max_abs(b);
    for (std::size_t i = 0; i < g2.ny; ++i)
      for (std::size_t j = 0; j < g2.nx; ++j) CHECK(std::abs(a(j, i) - b(j, 1)) <= 1e-10 * scale);
  }
}

TEST_CASE("Thomas solver") {
  SUBCASE("identity") {
    std::vector<double> z(4, 0.0), one(4, 1.0), rhs{1.0, -2.0, 3.5, 4.0};
    CHECK(solve_tridiagonal(z, one, z, rhs) == rhs);
  }
  SUBCASE("3x3 against a dense solve") {
    std::vector<double> lo{0.0, -1.0, 2.0}, d{4.0, 5.0, 3.0}, up{1.0, -2.0, 0.0}, rhs{1.0, 2.0, 3.0};
    Eigen::Matrix3d m;
    m << 4, 1, 0, -1, 5, -2, 0, 2, 3;
    const Eigen::Vector3d ref = m.fullPivLu().solve(Eigen::Vector3d(1, 2, 3));
    const auto x = solve_tridiagonal(lo, d, up, rhs);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(x[k] - ref[k]) <= 1e-14);
  }
  SUBCASE("1000 x 1000 diffusion matrix residual") {
    const std::size_t n = 1000;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> lo(n, -3.0), d(n, 7.0), up(n, -3.0), rhs(n);
    for (double& v : rhs) v = dist(rng);
    const auto x = solve_tridiagonal(lo, d, up, rhs);
    double res = 0.0, norm = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double ax = d[k] * x[k];
      if (k > 0) ax += lo[k] * x[k - 1];
      if (k + 1 < n) ax += up[k] * x[k + 1];
      res += (ax - rhs[k]) * (ax - rhs[k]);
      norm += rhs[k] * rhs[k];
    }
    CHECK(std::sqrt(res / norm) <= 1e-12);
  }
  SUBCASE("zero pivot") {
    std::vector<double> z(2, 0.0), d{0.0, 1.0}, rhs{1.0, 1.0};
    CHECK_THROWS_AS(solve_tridiagonal(z, d, z, rhs), SolverError);
  }
}

TEST_CASE("CFL limit") {
  CHECK(cfl_limit(uniform_grid(101, 101), 1.0, 1.0) == doctest::Approx(2.5e-5).epsilon(1e-12));
  for (std::size_t n : {11u, 21u, 51u}) {
    const Grid2D g = uniform_grid(n, n);
    CHECK(cfl_limit(g, 1.0, 1.0) == doctest::Approx(g.dx * g.dx / 4.0).epsilon(1e-12));
  }
  const WallAssembly wall = default_wall();
  const ReferenceScales s = ReferenceScales::for_wall(wall);
  const Grid2D g = build_grid(wall, 101, 31, s);
  double brute = 1e300;
  for (std::size_t j = 0; j < g.nx; ++j) {
    const double rate = 2.0 * s.fourier_x() * g.k[j] / (g.c[j] * g.dx * g.dx) +
                        2.0 * s.fourier_y() * g.k[j] / (g.c[j] * g.dy * g.dy);
    brute = std::min(brute, 1.0 / rate);
  }
  CHECK(cfl_limit(g, s.fourier_x(), s.fourier_y()) == doctest::Approx(brute).epsilon(1e-14));
}

TEST_CASE("tau diagnostic") {
  testing::WarningCapture warnings;
  for (std::size_t n : {11u, 41u, 161u}) {
    const Grid2D g = uniform_grid(n, n);
    CHECK(tau_diagnostic(g, 1.0, 1.0, g.dx * g.dx) == doctest::Approx(2.0 * g.dx * g.dx));
  }
  const Grid2D g = uniform_grid(101, 101);
  CHECK(tau_diagnostic(g, 1.0, 1.0, 1e-4) == doctest::Approx(2e-4));
  CHECK(warnings.messages.empty());
  CHECK(tau_diagnostic(g, 1.0, 1.0, 1e-2) == doctest::Approx(2.0));
  CHECK(warnings.messages.size() == 1);
}

TEST_CASE("DuFort-Frankel start-up") {
  SUBCASE("steady-consistent field is unchanged") {
    const Grid2D g = uniform_grid(21, 21);
    BoundaryConditions bc;
    for (Edge e : kAllEdges) bc.set(e, BoundaryConditions::constant(1.0, 0.3));
    const Field2D u0(g.nx, g.ny, 0.3);
    const auto st = bootstrap_first_step(u0, DiffusionOperator(g, 1, 1), bc, 1e-3);
    CHECK(st.step == 1);
    CHECK(testing::max_abs_diff(st.curr, u0) <= 1e-12);
    CHECK(st.prev == u0);
  }
  SUBCASE("plateau changes only near its edges and the boundary") {
    const ValidationCase vc;
    const Grid2D g = uniform_grid(101, 101);
    const Field2D u0 = vc.initial_field(g);
    const auto st = bootstrap_first_step(u0, DiffusionOperator(g, 1, 1), validation_boundary(vc), 1e-4);
    // 10 explicit sub-steps of a 5-point stencil reach at most 10 nodes (Manhattan).
    const long reach = 10;
    const long jx = std::lround(0.6 / g.dx), iy = std::lround(0.5 / g.dy);
    std::size_t changed = 0;
    for (long i = 0; i < 101; ++i)
      for (long j = 0; j < 101; ++j) {
        const long d_plateau = std::min(std::abs(j - jx) + (i > iy ? i - iy : 0),
                                        std::abs(i - iy) + (j > jx ? j - jx : 0));
        const long d_edge = std::min({j, i, 100 - j, 100 - i});
        const double diff = std::abs(st.curr(j, i) - u0(j, i));
        if (diff > 0.0) ++changed;
        if (std::min(d_plateau, d_edge) > reach + 1) CHECK(diff == 0.0);
      }
    CHECK(changed > 0);
  }
  SUBCASE("huge step engages the sub-step cascade") {
    const ValidationCase vc;
    const Grid2D g = uniform_grid(101, 101);
    const DiffusionOperator op(g, 1, 1);
    BoundaryValues bv;
    validation_boundary(vc).evaluate(0.0, g, bv);
    const std::size_t n = bootstrap_substep_count(op, bv, 1e-2, 10, 1000);
    CHECK(n > 10);
    CHECK(1e-2 / static_cast<double>(n) <= op.explicit_limit(bv));
    const auto st = bootstrap_first_step(vc.initial_field(g), op, validation_boundary(vc), 1e-2);
    for (double v : st.curr.values()) CHECK(std::isfinite(v));
    CHECK_THROWS_AS(bootstrap_first_step(vc.initial_field(g), op, validation_boundary(vc), 1.0),
                    SolverError);
  }
}

TEST_CASE("pure transitions agree with the stepper") {
  const ValidationCase vc;
  const Grid2D g = uniform_grid(31, 31);
  const DiffusionOperator op(g, 1, 1);
  const auto bc = validation_boundary(vc);
  const Field2D u0 = vc.initial_field(g);
  const double dt = 1e-3;
  FieldState st{u0, u0, 0, 0.0};
  for (Scheme s : {Scheme::EulerExplicit, Scheme::EulerImplicit, Scheme::ADI}) {
    CAPTURE(scheme_name(s));
    const double h = s == Scheme::EulerExplicit ? 1e-4 : dt;
    FieldState a{u0, u0, 0, 0.0};
    for (int k = 0; k < 5; ++k) {
      if (s == Scheme::EulerExplicit) a = step_euler_explicit(a, op, bc, h);
      if (s == Scheme::EulerImplicit) a = step_euler_implicit(a, op, bc, h, 1e-12);
      if (s == Scheme::ADI) a = step_adi(a, op, bc, h);
    }
    CHECK(a.step == 5);
    CHECK(testing::max_abs_diff(a.curr, run(s, g, bc, u0, h, 5)) <= 1e-9);
  }
  FieldState df = bootstrap_first_step(u0, op, bc, dt);
  for (int k = 0; k < 4; ++k) df = step_dufort_frankel(df, op, bc, dt);
  CHECK(df.step == 5);
  CHECK(testing::max_abs_diff(df.curr, run(Scheme::DufortFrankel, g, bc, u0, dt, 5)) <= 1e-14);
}

TEST_CASE("validation runs: DF and ADI error against the series solution") {
  const ValidationSettings settings;
  const Field2D exact = AnalyticalSolution().sample(uniform_grid(101, 101), 0.04);
  const auto df = run_validation_scheme(Scheme::DufortFrankel, 1e-4, settings, exact);
  const auto adi = run_validation_scheme(Scheme::ADI, 1e-4, settings, exact);
  CHECK(df.eps2 == doctest::Approx(4.64e-3).epsilon(5e-4 / 4.64e-3));
  CHECK(adi.eps2 == doctest::Approx(4.63e-3).epsilon(5e-4 / 4.63e-3));
}

TEST_CASE("scheme cross-agreement on the validation problem") {
  const ValidationCase vc;
  const Grid2D g = uniform_grid(101, 101);
  const Field2D u0 = vc.initial_field(g);
  const auto bc = validation_boundary(vc);
  std::vector<Field2D> out;
  out.push_back(run(Scheme::DufortFrankel, g, bc, u0, 1e-4, 400));
  out.push_back(run(Scheme::EulerExplicit, g, bc, u0, 1e-5, 4000));
  out.push_back(run(Scheme::EulerImplicit, g, bc, u0, 1e-4, 400));
  out.push_back(run(Scheme::ADI, g, bc, u0, 1e-4, 400));
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      {
        CAPTURE(a);
        CAPTURE(b);
        CHECK(error_metric(ErrorKind::Normalized, out[a], out[b]) <= 2e-3);
      }
}

TEST_CASE("DuFort-Frankel max-norm bound on the validation problem") {
  const ValidationCase vc;
  const Grid2D g = uniform_grid(101, 101);
  const Field2D u0 = vc.initial_field(g);
  testing::WarningCapture quiet;
  for (double dt : {1e-5, 1e-4, 1e-3, 1e-2}) {
    CAPTURE(dt);
    SolverConfig cfg;
    cfg.dt = dt;
    Solver s(DiffusionOperator(g, 1, 1), validation_boundary(vc), cfg);
    s.reset(u0);
    double peak = testing::max_abs(s.field());
    const auto steps = static_cast<std::size_t>(std::llround(0.04 / dt));
    while (s.step() < steps) {
      s.advance();
      peak = std::max(peak, testing::max_abs(s.field()));
    }
    // |u0| <= 1 and the Robin data are homogeneous.
    CHECK(peak <= 1.0 * (1.0 + 1e-6));
  }
}
