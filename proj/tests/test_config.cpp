#include <doctest.h>

#include <sstream>

#include "facade/config.hpp"
#include "facade/errors.hpp"
#include "facade/pipelines.hpp"
#include "facade/synthetic_climate.hpp"
#include "support.hpp"

using namespace facade;

TEST_CASE("INI parsing") {
  testing::TempDir dir;
  dir.file("env.csv", "t_seconds,T_out,T_in,v,q_dir,q_dif,q_ref,S\n0,270,293,2,0,0,0,1\n3600,271,293,2,0,0,0,1\n");
  std::istringstream in(R"([run]
scheme = implicit
dt = 60
horizon_seconds = 3600
start_date = 2023-02-01
[grid]
nx = 21
ny = 11
[environment]
file = env.csv
interpolation = linear
[convection]
mode = at_height
reference_height = 2.0
[shading]
radiation = full_sun
[model]
dimension = 1d
[probe1]
name = mid
x = 0.1
y = 1.0
)");
  const RunConfig c = parse_config(in, dir.path());
  CHECK(c.settings.scheme == Scheme::EulerImplicit);
  CHECK(c.settings.dt_seconds == 60.0);
  CHECK(c.settings.steps() == 60);
  CHECK(c.settings.nx == 21);
  CHECK(c.environment_file == dir.path() / "env.csv");
  CHECK(c.interpolation == Interpolation::Linear);
  CHECK(c.model.convection_mode == ConvectionMode::AtHeight);
  CHECK(c.model.reference_height == 2.0);
  CHECK(c.model.radiation == RadiationMode::FullSun);
  CHECK(c.model.one_dimensional);
  REQUIRE(c.probe_list().size() == 1);
  CHECK(c.probe_list()[0].name == "mid");
  CHECK(c.settings.start_date == parse_date("2023-02-01"));
  CHECK_NOTHROW(c.validate());
  CHECK(c.perturbation.h11 == doctest::Approx(0.198));
}

TEST_CASE("INI errors") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
  };
  CHECK_THROWS_AS(parse("[run]\nscheme = rk4\n"), ConfigError);
  CHECK_THROWS_AS(parse("[run]\ndt = -1\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("[run]\ndt = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse("[run]\nstart_date = 2023-13-01\n"), ConfigError);
  CHECK_THROWS_AS(parse("[shading]\nradiation = cloudy\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/run.ini"), IoError);
  const RunConfig c = parse("[run]\ndt = 36\n[environment]\nfile = /nonexistent.csv\n");
  CHECK_THROWS_AS(c.validate(), IoError);
}

TEST_CASE("inside sinusoid") {
  const InsideSinusoid s;
  CHECK(s(196.0 * 86400.0) == doctest::Approx(295.15));
  CHECK(s((196.0 + 182.5) * 86400.0) == doctest::Approx(291.15));
  const auto env = constant_climate(2.0, 3600.0, 270.0, 293.15, 0.0);
  const auto out = apply_inside_sinusoid(env, s, parse_date("2023-07-15"));
  CHECK(out.inside_temperature(0.0) == doctest::Approx(295.15));
  CHECK(out.outside_temperature(0.0) == 270.0);
}

TEST_CASE("batch manifests") {
  testing::TempDir dir;
  dir.file("m.csv", "label,environment_file\na,a.csv\nb,sub/b.csv\n");
  const auto m = load_manifest(dir.path() / "m.csv");
  REQUIRE(m.sites.size() == 2);
  CHECK(m.sites[1].environment_file == dir.path() / "sub/b.csv");
  dir.file("dup.csv", "label,environment_file\na,a.csv\na,b.csv\n");
  CHECK_THROWS_AS(load_manifest(dir.path() / "dup.csv"), ConfigError);
  dir.file("empty.csv", "label,environment_file\n");
  CHECK_THROWS_AS(load_manifest(dir.path() / "empty.csv"), ConfigError);
  dir.file("bad.csv", "site,file\na,a.csv\n");
  CHECK_THROWS_AS(load_manifest(dir.path() / "bad.csv"), ConfigError);
}

TEST_CASE("batch isolates failing sites") {
  testing::TempDir dir;
  SyntheticClimate spec;
  spec.days = 1.0;
  write_environment(dir.path() / "good.csv", synthetic_climate(spec));
  dir.file("bad.csv", "t_seconds,T_out\n0,x\n");
  RunConfig c;
  c.settings.horizon_seconds = 86400.0;
  c.settings.dt_seconds = 120.0;
  c.settings.nx = 21;
  c.settings.ny = 21;
  BatchManifest m{{{"good", dir.path() / "good.csv"}, {"bad", dir.path() / "bad.csv"}}};
  testing::WarningCapture quiet;
  const auto rows = run_batch(c, m, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].site == "good");
  CHECK(rows[0].status == "ok");
  CHECK(std::isfinite(rows[0].eps2n_flux));
  CHECK(rows[1].status != "ok");
  // thread count does not change the numbers
  const auto serial = run_batch(c, m, 1);
  CHECK(serial[0].eps2n_flux == rows[0].eps2n_flux);
  CHECK(serial[0].eps2n_load == rows[0].eps2n_load);
}

TEST_CASE("hypothesis matrix layout") {
  const auto v = hypothesis_variants();
  REQUIRE(v.size() == 7);
  CHECK_FALSE(v[0].one_dimensional);
  CHECK(v[0].radiation == RadiationMode::Shaded);
  CHECK(v[0].convection == ConvectionMode::Varying);
  SyntheticClimate spec;
  spec.days = 2.0;
  const auto env = std::make_shared<const EnvironmentSeries>(synthetic_climate(spec));
  RunConfig c;
  c.settings.horizon_seconds = 2 * 86400.0;
  c.settings.dt_seconds = 120.0;
  c.settings.nx = 21;
  c.settings.ny = 21;
  testing::WarningCapture quiet;
  const auto rows = run_hypothesis_matrix(c, env);
  REQUIRE(rows.size() == 7);
  for (double e : rows[0].relative_error_percent) CHECK(e == 0.0);
  // full sun never receives less energy than the shaded facade, so the load is less negative
  CHECK(rows[1].loads[0].energy >= rows[0].loads[0].energy);
}
