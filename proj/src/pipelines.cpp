#include "facade/pipelines.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <thread>

#include "facade/analysis.hpp"
#include "facade/errors.hpp"

namespace facade {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << std::setprecision(12);
  return out;
}

void finish_csv(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) fn(k);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

BoundaryConditions validation_boundary(const ValidationCase& vc) {
  BoundaryConditions bc;
  bc.set(Edge::XMin, BoundaryConditions::constant(vc.bi_xmin, 0.0))
      .set(Edge::YMax, BoundaryConditions::constant(vc.bi_ymax, 0.0))
      .set(Edge::XMax, BoundaryConditions::constant(vc.bi_xmax, 0.0))
      .set(Edge::YMin, BoundaryConditions::constant(vc.bi_ymin, 0.0));
  return bc;
}

ValidationRow run_validation_scheme(Scheme scheme, double dt, const ValidationSettings& settings,
                                    const Field2D& exact, std::size_t repeats) {
  const ValidationCase vc;
  const Grid2D grid = uniform_grid(settings.nx, settings.ny);
  const auto steps = static_cast<std::size_t>(std::llround(settings.final_time / dt));
  if (steps == 0 || std::abs(static_cast<double>(steps) * dt - settings.final_time) > 1e-9 * dt)
    throw ConfigError("final time must be a whole number of validation steps");

  ValidationRow row;
  row.scheme = scheme;
  row.dt = dt;
  row.dx = grid.dx;
  row.seconds = std::numeric_limits<double>::infinity();
  const Field2D u0 = vc.initial_field(grid);
  SolverConfig cfg;
  cfg.scheme = scheme;
  cfg.dt = dt;
  for (std::size_t r = 0; r < std::max<std::size_t>(repeats, 1); ++r) {
    Solver solver(DiffusionOperator(grid, vc.fourier_x, vc.fourier_y), validation_boundary(vc),
                  cfg);
    try {
      const auto start = std::chrono::steady_clock::now();
      solver.reset(u0);
      solver.advance(steps - solver.step());
      const double el =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      row.seconds = std::min(row.seconds, el);
      row.eps2 = error_metric(ErrorKind::L2, solver.field(), exact);
    } catch (const DivergenceError& e) {
      row.diverged = true;
      row.diverged_step = e.step();
      row.eps2 = kNaN;
      row.seconds = kNaN;
      return row;
    }
  }
  return row;
}

ValidationResult run_validation(const ValidationSettings& settings) {
  const ValidationCase vc;
  const Grid2D grid = uniform_grid(settings.nx, settings.ny);
  const AnalyticalSolution reference(vc, settings.n_terms);
  const Field2D exact = reference.sample(grid, settings.final_time);
  const std::size_t reps = settings.timing_repeats;

  ValidationResult result;
  result.table.push_back(run_validation_scheme(Scheme::DufortFrankel, settings.dt_df, settings, exact, reps));
  result.table.push_back(run_validation_scheme(Scheme::EulerExplicit, settings.dt_explicit, settings, exact, reps));
  result.table.push_back(run_validation_scheme(Scheme::EulerImplicit, settings.dt_implicit, settings, exact, reps));
  result.table.push_back(run_validation_scheme(Scheme::ADI, settings.dt_adi, settings, exact, reps));
  result.table.push_back(run_validation_scheme(Scheme::EulerExplicit, settings.dt_df, settings, exact, 1));
  const double reference_time = result.table[2].seconds;
  for (auto& row : result.table)
    row.rcpu = row.diverged ? kNaN : cpu_ratio(row.seconds, reference_time);

  for (Scheme s : {Scheme::DufortFrankel, Scheme::EulerExplicit, Scheme::EulerImplicit, Scheme::ADI}) {
    for (double dt : settings.sweep) {
      auto row = run_validation_scheme(s, dt, settings, exact, 1);
      row.rcpu = row.diverged ? kNaN : cpu_ratio(row.seconds, reference_time);
      result.sweep.push_back(row);
    }
  }
  return result;
}

void write_validation_outputs(const std::filesystem::path& dir, const ValidationResult& result) {
  ensure_dir(dir);
  const auto table_path = dir / "validation_table.csv";
  auto out = open_csv(table_path);
  out << "scheme,dt_star,dx_star,eps2,t_cpu_s,Rcpu,status\n";
  for (const auto& r : result.table) {
    out << scheme_name(r.scheme) << ',' << r.dt << ',' << r.dx << ',';
    if (r.diverged)
      out << "nan,nan,nan,diverged at step " << r.diverged_step << '\n';
    else
      out << r.eps2 << ',' << r.seconds << ',' << r.rcpu << ",ok\n";
  }
  finish_csv(out, table_path);

  std::vector<ErrorRow> rows;
  for (const auto& r : result.sweep)
    if (!r.diverged) rows.push_back({std::string(scheme_name(r.scheme)), r.dt, r.eps2, r.rcpu});
  write_error_table(dir / "validation_sweep.csv", rows);
}

void write_simulation_outputs(const std::filesystem::path& dir, const SimulationReport& report) {
  ensure_dir(dir);
  write_probes_csv(dir / "probes.csv", report);
  write_flux_csv(dir / "flux.csv", report.flux);
  write_loads_csv(dir / "loads.csv", report.loads);
  const auto path = dir / "timing.csv";
  auto out = open_csv(path);
  out << "steps,elapsed_seconds,mean_h_Wm2K\n"
      << report.steps << ',' << report.elapsed_seconds << ',' << report.mean_coefficient << '\n';
  finish_csv(out, path);
}

FacadeProblem make_problem(const RunConfig& config, std::shared_ptr<const EnvironmentSeries> env) {
  return FacadeProblem(config.model, std::move(env), config.settings.nx, config.settings.ny,
                       config.settings.horizon_seconds);
}

SimulationReport run_facade(const RunConfig& config, std::shared_ptr<const EnvironmentSeries> env) {
  const FacadeProblem problem = make_problem(config, std::move(env));
  return simulate(problem, config.settings, config.probe_list());
}

std::string HypothesisVariant::model_label() const { return one_dimensional ? "1D" : "2D"; }

std::string HypothesisVariant::shading_label() const {
  switch (radiation) {
    case RadiationMode::Shaded: return "shaded";
    case RadiationMode::SunlitRatio: return "sunlit_ratio";
    case RadiationMode::FullSun: return "full_sun";
  }
  return "";
}

std::string HypothesisVariant::convection_label() const {
  switch (convection) {
    case ConvectionMode::Varying: return "varying";
    case ConvectionMode::Constant: return "constant";
    case ConvectionMode::AtHeight: return "at_height";
  }
  return "";
}

std::vector<HypothesisVariant> hypothesis_variants() {
  using R = RadiationMode;
  using C = ConvectionMode;
  return {{false, R::Shaded, C::Varying},     {false, R::FullSun, C::Varying},
          {false, R::Shaded, C::Constant},    {false, R::FullSun, C::Constant},
          {true, R::SunlitRatio, C::Constant}, {true, R::SunlitRatio, C::AtHeight},
          {true, R::FullSun, C::Constant}};
}

namespace {

RunConfig with_variant(RunConfig config, const HypothesisVariant& v) {
  config.model.one_dimensional = v.one_dimensional;
  config.model.radiation = v.radiation;
  config.model.convection_mode = v.convection;
  if (v.one_dimensional) {
    config.model.front_height_shift = 0.0;
    config.model.front_distance_shift = 0.0;
  }
  return config;
}

}  // namespace

std::vector<HypothesisRow> run_hypothesis_matrix(const RunConfig& config,
                                                 std::shared_ptr<const EnvironmentSeries> env) {
  const auto variants = hypothesis_variants();
  std::vector<HypothesisRow> rows(variants.size());
  std::vector<std::exception_ptr> errors(variants.size());
  parallel_for(variants.size(), 0, [&](std::size_t k) {
    try {
      rows[k].variant = variants[k];
      rows[k].loads = run_facade(with_variant(config, variants[k]), env).loads;
    } catch (...) {
      errors[k] = std::current_exception();
    }
  });
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  const auto& ref = rows.front().loads;
  for (auto& row : rows) {
    for (std::size_t m = 0; m < row.loads.size(); ++m) {
      const double r = ref[m].energy;
      row.relative_error_percent.push_back(
          std::abs(r) > 0.0 ? relative_difference_percent(row.loads[m].energy, r)
                            : (row.loads[m].energy == r ? 0.0 : kNaN));
    }
  }
  return rows;
}

void write_hypotheses_csv(const std::filesystem::path& path, const std::vector<HypothesisRow>& rows) {
  auto out = open_csv(path);
  out << "model,shading,convection,output";
  if (!rows.empty())
    for (const auto& m : rows.front().loads) out << ',' << m.month;
  out << '\n';
  for (const auto& row : rows) {
    const auto& v = row.variant;
    const std::string head = v.model_label() + ',' + v.shading_label() + ',' + v.convection_label();
    out << head << ",E_MJ";
    for (const auto& m : row.loads) out << ',' << m.energy;
    out << '\n' << head << ",eps_r_percent";
    for (double e : row.relative_error_percent) out << ',' << e;
    out << '\n';
  }
  finish_csv(out, path);
}

BatchRow compare_one_two(const RunConfig& config, std::shared_ptr<const EnvironmentSeries> env) {
  const auto full = run_facade(
      with_variant(config, {false, RadiationMode::Shaded, ConvectionMode::Varying}), env);
  const auto simple = run_facade(
      with_variant(config, {true, RadiationMode::SunlitRatio, ConvectionMode::Constant}), env);
  BatchRow row;
  row.eps2n_flux = series_error(ErrorKind::Normalized, full.flux.time, simple.flux.flux,
                                full.flux.flux);
  const auto e_full = cumulative_load(full.flux);
  const auto e_simple = cumulative_load(simple.flux);
  row.eps2n_load = series_error(ErrorKind::Normalized, full.flux.time, e_simple, e_full);
  return row;
}

std::vector<BatchRow> run_batch(const RunConfig& config, const BatchManifest& manifest,
                                unsigned threads) {
  manifest.validate();
  std::vector<BatchRow> rows(manifest.sites.size());
  parallel_for(rows.size(), threads, [&](std::size_t k) {
    const auto& site = manifest.sites[k];
    try {
      RunConfig site_config = config;
      site_config.environment_file = site.environment_file;
      rows[k] = compare_one_two(site_config, load_run_environment(site_config));
    } catch (const std::exception& e) {
      rows[k].eps2n_flux = kNaN;
      rows[k].eps2n_load = kNaN;
      rows[k].status = e.what();
    }
    rows[k].site = site.label;
  });
  return rows;
}

void write_batch_csv(const std::filesystem::path& path, const std::vector<BatchRow>& rows) {
  auto out = open_csv(path);
  out << "site,eps2n_J,eps2n_E,status\n";
  for (const auto& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    out << r.site << ',' << r.eps2n_flux << ',' << r.eps2n_load << ',' << status << '\n';
  }
  finish_csv(out, path);
}

SensitivityRun run_sensitivity_pipeline(const RunConfig& config,
                                        std::shared_ptr<const EnvironmentSeries> env) {
  config.perturbation.validate(config.model.shading);
  RunSettings settings = config.settings;
  settings.scheme = Scheme::DufortFrankel;
  const FacadeProblem problem = make_problem(config, std::move(env));
  const auto probes = config.probe_list();

  SensitivityRun run;
  run.delta = config.perturbation;
  run.plain_seconds = simulate(problem, settings, probes).elapsed_seconds;
  run.report = run_sensitivity(problem, settings, probes, config.sensitivity);
  if (!run.report.distance_enabled) run.delta.front_distance = 0.0;
  run.cost_ratio = run.plain_seconds > 0.0 ? run.report.elapsed_seconds / run.plain_seconds : kNaN;
  return run;
}

void write_sensitivity_outputs(const std::filesystem::path& dir, const SensitivityRun& run) {
  ensure_dir(dir);
  const auto& rep = run.report;
  const auto& nominal = rep.nominal;

  const auto loads_path = dir / "sensitivity_loads.csv";
  auto loads = open_csv(loads_path);
  loads << "month,dE_h11,dE_beta,dE_F,dE_D,dE_total_plus,dE_total_minus\n";
  for (std::size_t m = 0; m < nominal.loads.size(); ++m) {
    loads << nominal.loads[m].month;
    double total = 0.0;
    for (Parameter p : kAllParameters) {
      const double d = run.delta[p] * rep.monthly_sensitivity[static_cast<int>(p)][m];
      total += d;
      loads << ',' << d;
    }
    loads << ',' << total << ',' << -total << '\n';
  }
  finish_csv(loads, loads_path);

  const auto probes_path = dir / "sensitivity_probes.csv";
  auto probes = open_csv(probes_path);
  probes << "t_seconds";
  for (const auto& name : nominal.probe_names)
    probes << ',' << name << ',' << name << "_plus," << name << "_minus";
  probes << '\n';
  for (std::size_t k = 0; k < nominal.probe_time.size(); ++k) {
    probes << nominal.probe_time[k];
    for (std::size_t q = 0; q < nominal.probe_names.size(); ++q) {
      std::array<double, 4> s{};
      for (Parameter p : kAllParameters)
        s[static_cast<int>(p)] = rep.probe_sensitivity[static_cast<int>(p)][k][q];
      const double t = nominal.probe_values[k][q];
      probes << ',' << t << ',' << taylor_expand(t, s, run.delta) << ','
             << taylor_expand(t, s, -run.delta);
    }
    probes << '\n';
  }
  finish_csv(probes, probes_path);

  const auto flux_path = dir / "sensitivity_flux.csv";
  auto flux = open_csv(flux_path);
  flux << "t_seconds,J_Wm2,J_plus_Wm2,J_minus_Wm2\n";
  for (std::size_t k = 0; k < nominal.flux.size(); ++k) {
    std::array<double, 4> s{};
    for (Parameter p : kAllParameters)
      s[static_cast<int>(p)] = rep.flux_sensitivity[static_cast<int>(p)].flux[k];
    const double j = nominal.flux.flux[k];
    flux << nominal.flux.time[k] << ',' << j << ',' << taylor_expand(j, s, run.delta) << ','
         << taylor_expand(j, s, -run.delta) << '\n';
  }
  finish_csv(flux, flux_path);

  const auto timing_path = dir / "sensitivity_timing.csv";
  auto timing = open_csv(timing_path);
  timing << "plain_seconds,sensitivity_seconds,cost_ratio,distance_enabled\n"
         << run.plain_seconds << ',' << rep.elapsed_seconds << ',' << run.cost_ratio << ','
         << (rep.distance_enabled ? 1 : 0) << '\n';
  finish_csv(timing, timing_path);
}

}  // namespace facade
