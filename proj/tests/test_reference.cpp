#include <doctest.h>

#include <cmath>
#include <numbers>

#include "facade/reference_solutions.hpp"
#include "facade/solver.hpp"
#include "support.hpp"

using namespace facade;

namespace {

constexpr double kPi = std::numbers::pi;

// Unscaled Robin-Robin characteristic function.
double characteristic(double mu, double bl, double br) {
  return (mu * mu - bl * br) * std::sin(mu) - mu * (bl + br) * std::cos(mu);
}

// Roots by a dense sign scan followed by bisection, independent of the library.
std::vector<double> scan_roots(double bl, double br, std::size_t count) {
  std::vector<double> roots;
  const double h = 1e-3;
  double a = 1e-9, fa = characteristic(a, bl, br);
  while (roots.size() < count) {
    const double b = a + h, fb = characteristic(b, bl, br);
    if (fa == 0.0 || fa * fb < 0.0) {
      double lo = a, hi = b;
      for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (characteristic(lo, bl, br) * characteristic(mid, bl, br) <= 0.0) hi = mid;
        else lo = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace

TEST_CASE("Neumann limit gives multiples of pi") {
  const auto mu = find_eigenvalues(0.0, 0.0, 8);
  REQUIRE(mu.size() == 8);
  for (std::size_t m = 0; m < mu.size(); ++m)
    CHECK(mu[m] == doctest::Approx(kPi * static_cast<double>(m + 1)).epsilon(1e-13));
}

TEST_CASE("Dirichlet limit against a dense sign scan") {
  const auto inf = find_eigenvalues(INFINITY, INFINITY, 6);
  for (std::size_t m = 0; m < inf.size(); ++m)
    CHECK(inf[m] == doctest::Approx(kPi * static_cast<double>(m + 1)).epsilon(1e-12));
  const auto big = find_eigenvalues(1e6, 1e6, 6);
  const auto scan = scan_roots(1e6, 1e6, 6);
  for (std::size_t m = 0; m < 6; ++m) CHECK(big[m] == doctest::Approx(scan[m]).epsilon(1e-9));
}

TEST_CASE("Robin-Robin roots for the validation Biot numbers") {
  for (auto [bl, br] : {std::pair{3.0, 1.5}, std::pair{4.0, 0.5}}) {
    const auto mu = find_eigenvalues(bl, br, 40);
    CHECK(mu[0] > 0.0);
    CHECK(mu[0] < kPi);
    const auto scan = scan_roots(bl, br, 10);
    for (std::size_t m = 0; m < mu.size(); ++m) {
      CHECK(std::abs(eigen_residual(mu[m], bl, br)) <= 1e-12);
      if (m < scan.size()) CHECK(mu[m] == doctest::Approx(scan[m]).epsilon(1e-10));
      if (m > 0) {
        CHECK(mu[m] > mu[m - 1]);
        // exactly one sign change of the characteristic function between consecutive roots
        int changes = 0;
        const int samples = 400;
        double prev = characteristic(mu[m - 1] + 1e-9, bl, br);
        for (int s = 1; s <= samples; ++s) {
          const double x = mu[m - 1] + 1e-9 + (mu[m] - mu[m - 1] - 2e-9) * s / samples;
          const double f = characteristic(x, bl, br);
          if (f * prev < 0.0) ++changes;
          prev = f;
        }
        CHECK(changes == 0);
      }
    }
  }
}

TEST_CASE("eigenfunction norms match quadrature") {
  const auto basis = DirectionBasis::build(3.0, 1.5, 6);
  for (std::size_t m = 0; m < 6; ++m) {
    const int n = 20000;
    double sum = 0.0, integral = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double x = static_cast<double>(k) / n;
      const double w = (k == 0 || k == n) ? 0.5 : 1.0;
      sum += w * basis.value(m, x) * basis.value(m, x);
      if (x <= 0.6 + 1e-15) integral += (k == 0 || k == 12000 ? 0.5 : 1.0) * basis.value(m, x);
    }
    CHECK(sum / n == doctest::Approx(basis.norm[m]).epsilon(1e-7));
    CHECK(integral / n == doctest::Approx(basis.integral(m, 0.6)).epsilon(1e-6));
  }
}

TEST_CASE("analytical solution decays to zero") {
  const AnalyticalSolution sol;
  CHECK(std::abs(sol(0.3, 0.3, 10.0)) < 1e-12);
  CHECK(sol(0.3, 0.25, 0.01) > 0.5);
  CHECK_THROWS(analytical_solution(0.3, 0.3, 0.0));
}

TEST_CASE("series integral approaches the plateau area at early time") {
  const AnalyticalSolution sol(ValidationCase{}, 200);
  const std::size_t n = 401;
  const Grid2D g = uniform_grid(n, n);
  const Field2D u = sol.sample(g, 1e-6);
  double integral = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double w = ((i == 0 || i + 1 == n) ? 0.5 : 1.0) * ((j == 0 || j + 1 == n) ? 0.5 : 1.0);
      integral += w * u(j, i) * g.dx * g.dy;
    }
  CHECK(integral == doctest::Approx(0.3).epsilon(5e-3));
}

TEST_CASE("doubling the number of terms changes the field by less than 1e-10 at t = 0.04") {
  const Grid2D g = uniform_grid(51, 51);
  const Field2D a = AnalyticalSolution(ValidationCase{}, 50).sample(g, 0.04);
  const Field2D b = AnalyticalSolution(ValidationCase{}, 100).sample(g, 0.04);
  CHECK(testing::max_abs_diff(a, b) < 1e-10);
}

TEST_CASE("analytical solution satisfies the Robin conditions") {
  const ValidationCase vc;
  const AnalyticalSolution sol(vc, 50);
  const double t = 0.04;
  CHECK(sol.normal_derivative(Edge::XMin, 0.5, t) + vc.bi_xmin * sol(0.0, 0.5, t) ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(sol.normal_derivative(Edge::XMax, 0.5, t) + vc.bi_xmax * sol(1.0, 0.5, t) ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(sol.normal_derivative(Edge::YMin, 0.5, t) + vc.bi_ymin * sol(0.5, 0.0, t) ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(sol.normal_derivative(Edge::YMax, 0.5, t) + vc.bi_ymax * sol(0.5, 1.0, t) ==
        doctest::Approx(0.0).epsilon(1e-10));
  // finite-difference slope on the exterior edge
  const double h = 1e-5;
  const double fd = -(-3 * sol(0.0, 0.5, t) + 4 * sol(h, 0.5, t) - sol(2 * h, 0.5, t)) / (2 * h);
  CHECK(fd + vc.bi_xmin * sol(0.0, 0.5, t) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("cosine mode is an exact solution and an exact discrete eigenvector") {
  const CosineMode mode = manufactured_solution(1, 1);
  CHECK(mode.decay_rate() == doctest::Approx(2.0 * kPi * kPi));
  CHECK(mode(0.0, 0.0, 0.1) == doctest::Approx(std::exp(-2.0 * kPi * kPi * 0.1)));

  const Grid2D g = uniform_grid(21, 21);
  const DiffusionOperator op(g, 1.0, 1.0);
  BoundaryValues bv;
  bv.resize(g.nx, g.ny);
  const Field2D u = mode.sample_discrete(g, 0.0);
  Field2D lu(g.nx, g.ny);
  op.apply(bv, u, DiffusionOperator::Direction::Both, lu);
  const double rate = mode.discrete_decay_rate(g.dx, g.dy);
  for (std::size_t k = 0; k < u.size(); ++k)
    CHECK(lu.values()[k] == doctest::Approx(-rate * u.values()[k]).epsilon(1e-10));
  const double h = g.dx;
  CHECK(rate == doctest::Approx(2.0 * 4.0 / (h * h) * std::pow(std::sin(kPi * h / 2.0), 2)));
}
