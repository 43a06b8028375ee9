#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "facade/config.hpp"
#include "facade/errors.hpp"
#include "facade/pipelines.hpp"
#include "facade/synthetic_climate.hpp"

using namespace facade;

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::string scheme;
  std::optional<double> dt;
  std::optional<std::size_t> nx, ny;
};

void add_common(CLI::App* cmd, Overrides& o, bool config_required) {
  auto* opt = cmd->add_option("--config", o.config, "INI configuration file");
  if (config_required) opt->required();
  cmd->add_option("--out", o.out, "output directory (overrides [outputs] dir)");
  cmd->add_option("--scheme", o.scheme, "df, explicit, implicit or adi");
  cmd->add_option("--dt", o.dt, "time step: seconds, or dimensionless for validate");
  cmd->add_option("--nx", o.nx, "nodes across the wall");
  cmd->add_option("--ny", o.ny, "nodes along the height");
}

RunConfig load(const Overrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (!o.out.empty()) c.output_dir = o.out;
  if (!o.scheme.empty()) {
    const auto s = parse_scheme(o.scheme);
    if (!s) throw ConfigError("unknown scheme '" + o.scheme + "'");
    c.settings.scheme = *s;
  }
  if (o.dt) c.settings.dt_seconds = *o.dt;
  if (o.nx) c.settings.nx = *o.nx;
  if (o.ny) c.settings.ny = *o.ny;
  return c;
}

RunConfig load_checked(const Overrides& o) {
  RunConfig c = load(o);
  c.validate();
  return c;
}

int run_validate(const Overrides& o) {
  RunConfig c = load(o);
  auto& v = c.validation;
  if (o.nx) v.nx = *o.nx;
  if (o.ny) v.ny = *o.ny;
  if (o.dt) v.dt_df = v.dt_implicit = v.dt_adi = *o.dt;
  const auto result = run_validation(v);
  write_validation_outputs(c.output_dir, result);
  std::printf("%-9s %-9s %-11s %-10s %s\n", "scheme", "dt_star", "eps2", "Rcpu", "status");
  for (const auto& r : result.table) {
    if (r.diverged)
      std::printf("%-9s %-9.2e %-11s %-10s diverged at step %zu\n",
                  std::string(scheme_name(r.scheme)).c_str(), r.dt, "-", "-", r.diverged_step);
    else
      std::printf("%-9s %-9.2e %-11.4e %-10.4f ok\n", std::string(scheme_name(r.scheme)).c_str(),
                  r.dt, r.eps2, r.rcpu);
  }
  return 0;
}

int run_simulate(const Overrides& o) {
  const RunConfig c = load_checked(o);
  const auto report = run_facade(c, load_run_environment(c));
  write_simulation_outputs(c.output_dir, report);
  std::printf("%zu steps in %.3f s, mean h %.4f W/(m2 K)\n", report.steps, report.elapsed_seconds,
              report.mean_coefficient);
  for (const auto& m : report.loads) std::printf("%s  E = %.6f MJ/m2\n", m.month.c_str(), m.energy);
  return 0;
}

int run_hypotheses(const Overrides& o) {
  const RunConfig c = load_checked(o);
  const auto rows = run_hypothesis_matrix(c, load_run_environment(c));
  std::filesystem::create_directories(c.output_dir);
  write_hypotheses_csv(c.output_dir / "hypotheses.csv", rows);
  for (const auto& r : rows) {
    std::printf("%s %-12s %-9s", r.variant.model_label().c_str(), r.variant.shading_label().c_str(),
                r.variant.convection_label().c_str());
    for (double e : r.relative_error_percent) std::printf(" %8.2f%%", e);
    std::printf("\n");
  }
  return 0;
}

int run_batch_cmd(const Overrides& o, const std::string& manifest_path, unsigned threads) {
  RunConfig c = load(o);
  c.model.validate();
  (void)c.settings.steps();
  const auto manifest = load_manifest(manifest_path);
  const auto rows = run_batch(c, manifest, threads);
  std::filesystem::create_directories(c.output_dir);
  write_batch_csv(c.output_dir / "batch_errors.csv", rows);
  int failed = 0;
  for (const auto& r : rows) {
    std::printf("%-16s %12.6g %12.6g %s\n", r.site.c_str(), r.eps2n_flux, r.eps2n_load,
                r.status.c_str());
    if (r.status != "ok") ++failed;
  }
  if (failed) std::fprintf(stderr, "%d of %zu sites failed\n", failed, rows.size());
  return 0;
}

int run_sensitivity_cmd(const Overrides& o) {
  const RunConfig c = load_checked(o);
  const auto run = run_sensitivity_pipeline(c, load_run_environment(c));
  write_sensitivity_outputs(c.output_dir, run);
  std::printf("sensitivity run %.3f s, plain run %.3f s, ratio %.2f\n",
              run.report.elapsed_seconds, run.plain_seconds, run.cost_ratio);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-dimensional facade heat transfer: validation, simulation and sensitivity"};
  app.require_subcommand(1);

  Overrides o;
  auto* validate = app.add_subcommand("validate", "analytical validation of the four schemes");
  add_common(validate, o, false);
  auto* simulate = app.add_subcommand("simulate", "facade simulation with probes, flux and loads");
  add_common(simulate, o, true);
  auto* hypotheses = app.add_subcommand("hypotheses", "monthly loads of the seven model variants");
  add_common(hypotheses, o, true);
  auto* batch = app.add_subcommand("batch", "1D against 2D errors for several sites");
  add_common(batch, o, true);
  std::string manifest;
  unsigned threads = 0;
  batch->add_option("--manifest", manifest, "CSV with label,environment_file")->required();
  batch->add_option("--threads", threads, "worker threads, 0 for all cores");
  auto* sensitivity = app.add_subcommand("sensitivity", "tangent sensitivities of the loads");
  add_common(sensitivity, o, true);

  auto* fixture = app.add_subcommand("fixture", "write a synthetic weather file");
  SyntheticClimate climate;
  std::string fixture_out, start = "2023-01-01";
  bool constant = false;
  fixture->add_option("--out", fixture_out, "CSV path")->required();
  fixture->add_option("--start", start, "first day, YYYY-MM-DD");
  fixture->add_option("--days", climate.days);
  fixture->add_option("--step", climate.step_seconds, "sample spacing, s");
  fixture->add_option("--outside-mean", climate.outside_mean, "K");
  fixture->add_option("--outside-amplitude", climate.outside_amplitude, "K");
  fixture->add_option("--inside", climate.inside_temperature, "K");
  fixture->add_option("--wind-mean", climate.wind_mean, "m/s");
  fixture->add_option("--wind-amplitude", climate.wind_amplitude, "m/s");
  fixture->add_option("--latitude", climate.latitude_deg, "degrees");
  fixture->add_option("--front-height", climate.front_height, "m");
  fixture->add_option("--front-distance", climate.front_distance, "m");
  fixture->add_flag("--no-sun", [&](std::int64_t) { climate.sun = false; });
  fixture->add_flag("--constant", constant, "constant temperatures, no wind, no sun");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return run_validate(o);
    if (*simulate) return run_simulate(o);
    if (*hypotheses) return run_hypotheses(o);
    if (*batch) return run_batch_cmd(o, manifest, threads);
    if (*sensitivity) return run_sensitivity_cmd(o);
    if (*fixture) {
      climate.start_date = parse_date(start);
      const auto env = constant ? constant_climate(climate.days, climate.step_seconds,
                                                   climate.outside_mean,
                                                   climate.inside_temperature, 0.0)
                                : synthetic_climate(climate);
      write_environment(fixture_out, env);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << '\n';
    return 3;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 4;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
