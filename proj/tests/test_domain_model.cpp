#include <doctest.h>

#include <cmath>
#include <random>

#include "facade/domain_model.hpp"
#include "facade/errors.hpp"
#include "facade/scenario.hpp"

using namespace facade;

namespace {

ReferenceScales scales_for(const WallAssembly& wall) { return ReferenceScales::for_wall(wall); }

}  // namespace

TEST_CASE("single homogeneous layer maps to unit coefficients") {
  const WallAssembly wall({{"slab", 1.0, 2.0, 3.0e6}}, 1.0);
  ReferenceScales s = scales_for(wall);
  CHECK(s.conductivity == 2.0);
  CHECK(s.capacity == 3.0e6);
  const Grid2D g = build_grid(wall, 11, 11, s);
  CHECK(g.dx == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(g.dy == doctest::Approx(0.1).epsilon(1e-15));
  for (std::size_t j = 0; j < g.nx; ++j) {
    CHECK(g.k[j] == 1.0);
    CHECK(g.c[j] == 1.0);
  }
  CHECK(g.x.front() == 0.0);
  CHECK(g.x.back() == 1.0);
  CHECK(g.y.back() == 1.0);
}

TEST_CASE("three-layer wall assigns conductivities per layer") {
  const WallAssembly wall = default_wall();
  CHECK(wall.length() == doctest::Approx(0.37).epsilon(1e-12));
  const ReferenceScales s = scales_for(wall);
  CHECK(s.conductivity == 1.4);
  const Grid2D g = build_grid(wall, 101, 11, s);
  for (std::size_t j = 0; j < g.nx; ++j) {
    const double x = g.x[j] * 0.37;
    if (x < 0.2 - 1e-12) {
      CHECK(g.k[j] == doctest::Approx(1.0).epsilon(1e-14));
    } else if (x > 0.2 + 1e-12 && x < 0.35 - 1e-12) {
      CHECK(g.k[j] == doctest::Approx(0.05 / 1.4).epsilon(1e-14));
    } else if (x > 0.35 + 1e-12) {
      CHECK(g.k[j] == doctest::Approx(0.25 / 1.4).epsilon(1e-14));
    }
  }
  CHECK(0.05 / 1.4 == doctest::Approx(0.035714).epsilon(1e-5));
  CHECK(0.25 / 1.4 == doctest::Approx(0.178571).epsilon(1e-5));
}

TEST_CASE("a node on an interface belongs to the layer on its +x side") {
  const WallAssembly wall({{"a", 0.1, 1.0, 1.0e6}, {"b", 0.1, 0.5, 2.0e6}}, 1.0);
  const Grid2D g = build_grid(wall, 11, 3, scales_for(wall));
  CHECK(g.layer[4] == 0);
  CHECK(g.layer[5] == 1);
  CHECK(g.k[5] == 0.5);
  CHECK(g.c[5] == 1.0);
  CHECK(wall.layer_at(0.1) == 1);
}

TEST_CASE("layer widths recovered from node assignment within one cell") {
  const WallAssembly wall = default_wall();
  const Grid2D g = build_grid(wall, 101, 5, scales_for(wall));
  const double cell = wall.length() * g.dx;
  for (std::size_t layer = 0; layer < wall.layers().size(); ++layer) {
    double width = 0.0;
    for (std::size_t j = 0; j < g.nx; ++j) {
      const double w = (j == 0 || j + 1 == g.nx) ? 0.5 * cell : cell;
      if (g.layer[j] == layer) width += w;
    }
    CHECK(std::abs(width - wall.layers()[layer].thickness) <= cell);
  }
}

TEST_CASE("thicknesses not summing to the declared length are rejected") {
  CHECK_THROWS_AS(WallAssembly({{"a", 0.16, 1.0, 1e6}, {"b", 0.20, 1.0, 1e6}}, 3.0, 1.0, 0.37),
                  ConfigError);
  CHECK_NOTHROW(WallAssembly({{"a", 0.17, 1.0, 1e6}, {"b", 0.20, 1.0, 1e6}}, 3.0, 1.0, 0.37));
}

TEST_CASE("invalid layers and grids are rejected") {
  CHECK_THROWS_AS(WallAssembly({{"a", 0.0, 1.0, 1e6}}, 3.0), ConfigError);
  CHECK_THROWS_AS(WallAssembly({{"a", 0.1, 0.0, 1e6}}, 3.0), ConfigError);
  CHECK_THROWS_AS(WallAssembly({{"a", 0.1, 1.0, -1.0}}, 3.0), ConfigError);
  const WallAssembly wall = default_wall();
  CHECK_THROWS_AS(build_grid(wall, 2, 11, scales_for(wall)), ConfigError);
  CHECK_THROWS_AS(build_grid(wall, 11, 2, scales_for(wall)), ConfigError);
}

TEST_CASE("nondimensionalization examples") {
  ReferenceScales s;
  s.temperature = 283.15;
  s.delta_t = 20.0;
  Field2D t(3, 3, 283.15);
  Field2D u = nondimensionalize(t, s);
  for (double v : u.values()) CHECK(v == 0.0);
  t.fill(303.15);
  u = nondimensionalize(t, s);
  for (double v : u.values()) CHECK(v == doctest::Approx(1.0));
  t.fill(293.15);
  u = nondimensionalize(t, s);
  for (double v : u.values()) CHECK(v == doctest::Approx(0.5).epsilon(1e-14));
  s.delta_t = 0.0;
  CHECK_THROWS_AS(nondimensionalize(t, s), ConfigError);
}

TEST_CASE("dimensionalize inverts nondimensionalize") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-50.0, 400.0);
  ReferenceScales s;
  Field2D t(17, 9);
  for (double& v : t.values()) v = dist(rng);
  const Field2D back = dimensionalize(nondimensionalize(t, s), s);
  for (std::size_t k = 0; k < t.size(); ++k)
    CHECK(std::abs(back.values()[k] - t.values()[k]) <= 1e-12 * std::abs(t.values()[k]) + 1e-12);
}

TEST_CASE("Biot numbers use the edge's reference length") {
  const WallAssembly wall = default_wall();
  const ReferenceScales s = scales_for(wall);
  CHECK(biot_number(0.0, s, Edge::XMin) == 0.0);
  CHECK(biot_number(s.conductivity / s.length_x, s, Edge::XMin) == doctest::Approx(1.0));
  CHECK(biot_number(10.0, s, Edge::XMax) == doctest::Approx(2.642857142857).epsilon(1e-12));
  CHECK(biot_number(10.0, s, Edge::YMax) == doctest::Approx(10.0 * 3.0 / 1.4));
  CHECK_THROWS_AS(biot_number(-1.0, s, Edge::XMin), ConfigError);
}

TEST_CASE("Fourier ratio equals (H/L)^2") {
  const ReferenceScales s = scales_for(default_wall());
  CHECK(s.fourier_x() / s.fourier_y() == doctest::Approx((3.0 / 0.37) * (3.0 / 0.37)).epsilon(1e-14));
  CHECK(s.fourier_x() == doctest::Approx(1.4 * 3600.0 / (2.0e6 * 0.37 * 0.37)));
}

TEST_CASE("harmonic conductivity equals the series value across an interface") {
  const WallAssembly wall({{"a", 0.1, 1.0, 1e6}, {"b", 0.1, 0.25, 1e6}}, 1.0);
  CHECK(wall.harmonic_conductivity(0.05, 0.15) == doctest::Approx(0.1 / (0.05 / 1.0 + 0.05 / 0.25)));
  CHECK(wall.series_resistance() == doctest::Approx(0.1 + 0.4));
}
