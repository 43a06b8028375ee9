#include "facade/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "facade/errors.hpp"

namespace facade {

namespace pt = boost::property_tree;

double InsideSinusoid::operator()(double seconds_since_new_year) const {
  const double day = seconds_since_new_year / 86400.0;
  return mean + amplitude * std::cos(2.0 * std::numbers::pi * (day - peak_day) / period_days);
}

std::chrono::sys_days parse_date(const std::string& text) {
  int y = 0;
  unsigned m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3)
    throw ConfigError("date must be YYYY-MM-DD: '" + text + "'");
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) throw ConfigError("invalid date '" + text + "'");
  return std::chrono::sys_days{ymd};
}

namespace {

template <class T>
T get(const pt::ptree& tree, const std::string& key, T fallback) {
  const auto node = tree.get_child_optional(key);
  if (!node) return fallback;
  try {
    return node->get_value<T>();
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError("bad value for '" + key + "': '" + node->data() + "'");
  }
}

std::string get_string(const pt::ptree& tree, const std::string& key, const std::string& fallback) {
  auto s = tree.get<std::string>(key, fallback);
  boost::algorithm::trim(s);
  return boost::algorithm::to_lower_copy(s);
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, text, boost::algorithm::is_any_of(", "),
                          boost::algorithm::token_compress_on);
  std::vector<double> out;
  for (auto& p : parts) {
    if (p.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(p, &used));
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + p + "' in '" + key + "'");
    }
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& raw) {
  std::filesystem::path p(raw);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

WallAssembly read_wall(const pt::ptree& tree) {
  const auto count = get<std::size_t>(tree, "wall.layers", 0);
  if (count == 0) {
    const WallAssembly base = default_wall();
    const double height = get(tree, "wall.height", base.height());
    return WallAssembly(base.layers(), height, get(tree, "wall.width", base.width()));
  }
  std::vector<MaterialLayer> layers;
  for (std::size_t n = 1; n <= count; ++n) {
    const std::string s = "layer" + std::to_string(n);
    if (!tree.get_child_optional(s)) throw ConfigError("missing section [" + s + "]");
    MaterialLayer layer;
    layer.name = tree.get<std::string>(s + ".name", s);
    layer.thickness = get(tree, s + ".thickness", 0.0);
    layer.conductivity = get(tree, s + ".conductivity", 0.0);
    layer.capacity = get(tree, s + ".capacity", 0.0);
    layers.push_back(layer);
  }
  std::optional<double> declared;
  if (tree.get_child_optional("wall.length")) declared = get(tree, "wall.length", 0.0);
  return WallAssembly(std::move(layers), get(tree, "wall.height", 3.0),
                      get(tree, "wall.width", 1.0), declared);
}

ConvectionMode parse_convection(const std::string& s) {
  if (s == "varying") return ConvectionMode::Varying;
  if (s == "constant") return ConvectionMode::Constant;
  if (s == "at_height") return ConvectionMode::AtHeight;
  throw ConfigError("convection mode must be varying, constant or at_height: '" + s + "'");
}

RadiationMode parse_radiation(const std::string& s) {
  if (s == "shaded") return RadiationMode::Shaded;
  if (s == "sunlit_ratio") return RadiationMode::SunlitRatio;
  if (s == "full_sun") return RadiationMode::FullSun;
  throw ConfigError("radiation mode must be shaded, sunlit_ratio or full_sun: '" + s + "'");
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }

  RunConfig c;
  auto& m = c.model;
  auto& s = c.settings;

  m.wall = read_wall(tree);

  const std::string scheme = get_string(tree, "run.scheme", "df");
  const auto parsed = parse_scheme(scheme);
  if (!parsed) throw ConfigError("unknown scheme '" + scheme + "'");
  s.scheme = *parsed;
  s.dt_seconds = get(tree, "run.dt", s.dt_seconds);
  if (tree.get_child_optional("run.horizon_days"))
    s.horizon_seconds = 86400.0 * get(tree, "run.horizon_days", 1.0);
  s.horizon_seconds = get(tree, "run.horizon_seconds", s.horizon_seconds);
  s.initial_temperature = get(tree, "run.initial_temperature", s.initial_temperature);
  s.start_date = parse_date(tree.get<std::string>("run.start_date", "2023-01-01"));
  s.output_every_seconds = get(tree, "outputs.every_seconds", s.output_every_seconds);
  s.nx = get(tree, "grid.nx", s.nx);
  s.ny = get(tree, "grid.ny", s.ny);

  m.scales.temperature = get(tree, "scales.temperature", m.scales.temperature);
  m.scales.delta_t = get(tree, "scales.delta_t", m.scales.delta_t);
  m.scales.time = get(tree, "scales.time", m.scales.time);

  if (auto f = tree.get_optional<std::string>("environment.file"))
    c.environment_file = resolve(base_dir, boost::algorithm::trim_copy(*f));
  const std::string interp = get_string(tree, "environment.interpolation", "hold");
  if (interp == "hold") c.interpolation = Interpolation::Hold;
  else if (interp == "linear") c.interpolation = Interpolation::Linear;
  else throw ConfigError("interpolation must be hold or linear");
  const std::string inside = get_string(tree, "environment.inside", "file");
  if (inside == "sinusoid") {
    InsideSinusoid sin;
    sin.mean = get(tree, "environment.inside_mean", sin.mean);
    sin.amplitude = get(tree, "environment.inside_amplitude", sin.amplitude);
    sin.peak_day = get(tree, "environment.inside_peak_day", sin.peak_day);
    sin.period_days = get(tree, "environment.inside_period_days", sin.period_days);
    if (!(sin.period_days > 0.0)) throw ConfigError("inside_period_days must be positive");
    c.inside = sin;
  } else if (inside != "file") {
    throw ConfigError("environment.inside must be file or sinusoid");
  }

  m.convection.h10 = get(tree, "convection.h10", m.convection.h10);
  m.convection.h11 = get(tree, "convection.h11", m.convection.h11);
  m.convection.beta = get(tree, "convection.beta", m.convection.beta);
  m.convection.v0 = get(tree, "convection.v0", m.convection.v0);
  m.convection.y0 = get(tree, "convection.y0", m.convection.y0);
  m.convection_mode = parse_convection(get_string(tree, "convection.mode", "varying"));
  if (tree.get_child_optional("convection.constant_h"))
    m.constant_coefficient = get(tree, "convection.constant_h", 0.0);
  m.reference_height = get(tree, "convection.reference_height", m.reference_height);

  m.radiation = parse_radiation(get_string(tree, "shading.radiation", "shaded"));
  m.shading.front_height = get(tree, "shading.front_height", m.shading.front_height);
  m.shading.front_distance = get(tree, "shading.front_distance", m.shading.front_distance);
  m.shading.facade_height = m.wall.height();
  m.front_height_shift = get(tree, "shading.height_shift", m.front_height_shift);
  m.front_distance_shift = get(tree, "shading.distance_shift", m.front_distance_shift);

  m.inside_coefficient = get(tree, "inside.h", m.inside_coefficient);
  m.absorptivity = get(tree, "surface.absorptivity", m.absorptivity);
  const std::string dim = get_string(tree, "model.dimension", "2d");
  if (dim == "1d") m.one_dimensional = true;
  else if (dim != "2d") throw ConfigError("model.dimension must be 1d or 2d");

  if (auto d = tree.get_optional<std::string>("outputs.dir"))
    c.output_dir = resolve(base_dir, boost::algorithm::trim_copy(*d));

  const double relative = get(tree, "sensitivity.relative", 0.05);
  c.perturbation = PerturbationVector::reducing_inflow(m.convection, m.wall.height(), relative);
  c.perturbation.h11 = get(tree, "sensitivity.delta_h11", c.perturbation.h11);
  c.perturbation.beta = get(tree, "sensitivity.delta_beta", c.perturbation.beta);
  c.perturbation.front_height = get(tree, "sensitivity.delta_front_height",
                                    c.perturbation.front_height);
  c.perturbation.front_distance = get(tree, "sensitivity.delta_front_distance",
                                      c.perturbation.front_distance);
  c.sensitivity.band_front_height = get(tree, "sensitivity.band_front_height", 0.0);
  c.sensitivity.band_front_distance = get(tree, "sensitivity.band_front_distance", 0.0);

  auto& v = c.validation;
  v.nx = get(tree, "validation.nx", v.nx);
  v.ny = get(tree, "validation.ny", v.ny);
  v.final_time = get(tree, "validation.final_time", v.final_time);
  v.n_terms = get(tree, "validation.n_terms", v.n_terms);
  v.dt_df = get(tree, "validation.dt_df", v.dt_df);
  v.dt_explicit = get(tree, "validation.dt_explicit", v.dt_explicit);
  v.dt_implicit = get(tree, "validation.dt_implicit", v.dt_implicit);
  v.dt_adi = get(tree, "validation.dt_adi", v.dt_adi);
  v.timing_repeats = get(tree, "validation.timing_repeats", v.timing_repeats);
  if (auto sw = tree.get_optional<std::string>("validation.sweep"))
    v.sweep = parse_list(*sw, "validation.sweep");

  for (const auto& [section, body] : tree) {
    if (section.rfind("probe", 0) != 0) continue;
    Probe p;
    p.name = body.get<std::string>("name", section);
    p.x = get(body, "x", 0.0);
    p.y = get(body, "y", 0.0);
    c.probes.push_back(p);
  }

  m.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  return parse_config(in, path.parent_path());
}

void RunConfig::validate() const {
  model.validate();
  if (!(settings.dt_seconds > 0.0)) throw ConfigError("dt must be positive");
  (void)settings.steps();
  (void)settings.output_stride();
  if (settings.nx < 3 || settings.ny < 3) throw ConfigError("grid needs at least 3 nodes per axis");
  for (const auto& p : probes) {
    if (p.x < 0.0 || p.x > model.wall.length() || p.y < 0.0 || p.y > model.wall.height())
      throw ConfigError("probe '" + p.name + "' lies outside the wall");
  }
  if (environment_file.empty()) throw ConfigError("environment.file is required");
  if (!std::filesystem::exists(environment_file))
    throw IoError("environment file not found: '" + environment_file.string() + "'");
}

std::vector<Probe> RunConfig::probe_list() const {
  return probes.empty() ? default_probes(model.wall) : probes;
}

EnvironmentSeries apply_inside_sinusoid(const EnvironmentSeries& env, const InsideSinusoid& inside,
                                        std::chrono::sys_days start_date) {
  using namespace std::chrono;
  const sys_days new_year{year_month_day{start_date}.year() / January / 1};
  const double offset = static_cast<double>(duration_cast<seconds>(start_date - new_year).count());
  auto cols = env.columns();
  for (std::size_t k = 0; k < cols.time.size(); ++k) cols.t_in[k] = inside(offset + cols.time[k]);
  return env.with_columns(std::move(cols));
}

std::shared_ptr<const EnvironmentSeries> load_run_environment(const RunConfig& config) {
  auto env = load_environment(config.environment_file, config.interpolation);
  if (config.inside)
    return std::make_shared<const EnvironmentSeries>(
        apply_inside_sinusoid(env, *config.inside, config.settings.start_date));
  return std::make_shared<const EnvironmentSeries>(std::move(env));
}

void BatchManifest::validate() const {
  if (sites.empty()) throw ConfigError("batch manifest lists no sites");
  std::set<std::string> seen;
  for (const auto& s : sites) {
    if (s.label.empty()) throw ConfigError("batch site with empty label");
    if (!seen.insert(s.label).second) throw ConfigError("duplicate batch label '" + s.label + "'");
  }
}

BatchManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  BatchManifest manifest;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    boost::algorithm::trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> parts;
    boost::algorithm::split(parts, line, boost::algorithm::is_any_of(","));
    for (auto& p : parts) boost::algorithm::trim(p);
    if (header) {
      header = false;
      if (parts.size() < 2 || parts[0] != "label" || parts[1] != "environment_file")
        throw ConfigError("manifest header must be 'label,environment_file'");
      continue;
    }
    if (parts.size() != 2) throw ConfigError("manifest row needs two fields: '" + line + "'");
    manifest.sites.push_back({parts[0], resolve(path.parent_path(), parts[1])});
  }
  manifest.validate();
  return manifest;
}

}  // namespace facade
