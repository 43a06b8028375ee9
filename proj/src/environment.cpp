#include "facade/environment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "facade/errors.hpp"

namespace facade {

namespace {

void require_size(const std::vector<double>& column, std::size_t n, const char* name) {
  if (column.size() != n)
    throw ConfigError(std::string("environment column '") + name + "' has wrong length");
}

}  // namespace

EnvironmentSeries::EnvironmentSeries(Columns columns, Interpolation interpolation)
    : c_(std::move(columns)), interpolation_(interpolation) {
  const std::size_t n = c_.time.size();
  if (n == 0) throw ConfigError("environment series is empty");
  require_size(c_.t_out, n, "T_out");
  require_size(c_.t_in, n, "T_in");
  require_size(c_.wind, n, "wind");
  require_size(c_.q_direct, n, "q_dir");
  require_size(c_.q_diffuse, n, "q_diff");
  require_size(c_.q_reflected, n, "q_refl");
  require_size(c_.sunlit, n, "sunlit_ratio");
  if (!c_.tan_theta.empty()) require_size(c_.tan_theta, n, "tan_theta");

  for (std::size_t k = 0; k < n; ++k) {
    const auto where = " at sample " + std::to_string(k);
    for (const auto* col : {&c_.time, &c_.t_out, &c_.t_in, &c_.wind, &c_.q_direct,
                            &c_.q_diffuse, &c_.q_reflected, &c_.sunlit})
      if (!std::isfinite((*col)[k])) throw ConfigError("non-finite environment value" + where);
    if (c_.wind[k] < 0.0) throw ConfigError("negative wind speed" + where);
    if (c_.q_direct[k] < 0.0 || c_.q_diffuse[k] < 0.0 || c_.q_reflected[k] < 0.0)
      throw ConfigError("negative radiation flux" + where);
    if (c_.sunlit[k] < 0.0 || c_.sunlit[k] > 1.0)
      throw ConfigError("sunlit ratio outside [0, 1]" + where);
    if (!c_.tan_theta.empty() && !(c_.tan_theta[k] >= 0.0))
      throw ConfigError("tan_theta must be non-negative" + where);
  }

  if (n > 1) {
    step_ = (c_.time.back() - c_.time.front()) / static_cast<double>(n - 1);
    if (!(step_ > 0.0)) throw ConfigError("environment timestamps must increase");
    for (std::size_t k = 1; k < n; ++k) {
      const double dt = c_.time[k] - c_.time[k - 1];
      if (!(dt > 0.0))
        throw ConfigError("timestamps not strictly increasing at sample " + std::to_string(k));
      if (std::abs(dt - step_) > 1e-9 * step_)
        throw ConfigError("non-uniform time step at sample " + std::to_string(k));
    }
  }
}

bool EnvironmentSeries::contains(double t) const noexcept {
  const double slack = 1e-9 * std::max(step_, 1.0);
  return t >= start() - slack && t <= end() + slack;
}

double EnvironmentSeries::sample(const std::vector<double>& column, double t) const {
  if (!contains(t))
    throw ConfigError("time " + std::to_string(t) + " s outside environment span [" +
                      std::to_string(start()) + ", " + std::to_string(end()) + "]");
  const std::size_t n = column.size();
  if (n == 1) return column.front();
  const double s = (t - start()) / step_;
  // Snap to a sample when t sits on it up to rounding of t* t0.
  const double nearest = std::round(s);
  const double pos = std::abs(s - nearest) < 1e-9 ? nearest : s;
  if (pos <= 0.0) return column.front();
  if (pos >= static_cast<double>(n - 1)) return column.back();
  const auto k = static_cast<std::size_t>(std::floor(pos));
  if (interpolation_ == Interpolation::Hold) return column[k];
  const double w = pos - static_cast<double>(k);
  return (1.0 - w) * column[k] + w * column[k + 1];
}

double EnvironmentSeries::tan_theta(double t) const {
  if (!has_tan_theta()) throw ConfigError("environment series carries no solar angle");
  return sample(c_.tan_theta, t);
}

void ConvectionModel::validate() const {
  if (h10 < 0.0 || h11 < 0.0) throw ConfigError("convection coefficients must be non-negative");
  if (beta < 0.0 || beta > 1.0) throw ConfigError("convection exponent beta must lie in [0, 1]");
  if (!(v0 > 0.0) || !(y0 > 0.0)) throw ConfigError("convection reference scales must be positive");
}

void ShadingGeometry::validate() const {
  if (front_height < 0.0) throw ConfigError("front building height must be non-negative");
  if (!(front_distance > 0.0)) throw ConfigError("front building distance must be positive");
  if (!(facade_height > 0.0)) throw ConfigError("facade height must be positive");
}

double surface_coefficient(const ConvectionModel& model, double y, double wind, double y_floor) {
  const double yy = std::max(y, y_floor);
  return model.h10 + model.h11 * (wind / model.v0) * std::pow(yy / model.y0, model.beta);
}

double surface_coefficient(const ConvectionModel& model, double y, double t,
                           const EnvironmentSeries& env, double y_floor) {
  return surface_coefficient(model, y, env.wind_speed(t), y_floor);
}

double mean_surface_coefficient(const ConvectionModel& model, const EnvironmentSeries& env,
                                double height, double duration, double y_floor,
                                std::size_t height_points) {
  if (env.size() == 0) throw ConfigError("empty environment series");
  if (!(height > 0.0)) throw ConfigError("facade height must be positive");
  if (height_points < 2) height_points = 2;

  // Height profile of (y / y0)^beta, trapezoid over [0, H].
  const double dy = height / static_cast<double>(height_points - 1);
  double profile = 0.0;
  for (std::size_t i = 0; i < height_points; ++i) {
    const double w = (i == 0 || i + 1 == height_points) ? 0.5 : 1.0;
    const double y = std::max(static_cast<double>(i) * dy, y_floor);
    profile += w * std::pow(y / model.y0, model.beta);
  }
  profile *= dy / height;

  // Wind, trapezoid over the samples covering the horizon.
  const auto& time = env.columns().time;
  const auto& wind = env.columns().wind;
  const double t_end = env.start() + duration;
  double wind_integral = 0.0;
  double span = 0.0;
  std::size_t last = 0;
  for (std::size_t k = 1; k < time.size() && time[k] <= t_end + 1e-9 * env.step(); ++k) {
    const double dt = time[k] - time[k - 1];
    wind_integral += 0.5 * dt * (wind[k] + wind[k - 1]);
    span += dt;
    last = k;
  }
  const double mean_wind = last == 0 ? wind.front() : wind_integral / span;
  return model.h10 + model.h11 * (mean_wind / model.v0) * profile;
}

double shadow_height(double sunlit_ratio, double height) {
  if (!(sunlit_ratio >= 0.0 && sunlit_ratio <= 1.0))
    throw ConfigError("sunlit ratio outside [0, 1]");
  return height * (1.0 - sunlit_ratio);
}

double sunlit_fraction(double lo, double hi, double shadow) noexcept {
  if (hi <= lo) return sunlit_indicator(lo, shadow);
  const double lit = std::clamp(hi - std::max(lo, shadow), 0.0, hi - lo);
  return lit / (hi - lo);
}

double incident_flux(double y, double t, const EnvironmentSeries& env,
                     const ShadingGeometry& geometry, double absorptivity) {
  if (absorptivity < 0.0 || absorptivity > 1.0)
    throw ConfigError("absorptivity must lie in [0, 1]");
  const double shadow = shadow_height(env.sunlit_ratio(t), geometry.facade_height);
  return absorptivity * (env.direct_flux(t) * sunlit_indicator(y, shadow) +
                         env.diffuse_flux(t) + env.reflected_flux(t));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double parse_number(std::string_view token, std::size_t line_no, std::string_view column) {
  double value = 0.0;
  const auto* begin = token.data();
  const auto* end = token.data() + token.size();
  if (!token.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (token.empty() || ec != std::errc() || ptr != end)
    throw IoError("line " + std::to_string(line_no) + ": bad value '" + std::string(token) +
                  "' in column " + std::string(column));
  return value;
}

}  // namespace

EnvironmentSeries load_environment(const std::filesystem::path& path,
                                   Interpolation interpolation) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open environment file " + path.string());

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    for (auto tok : split(line)) header.emplace_back(tok);
    break;
  }
  if (header.empty()) throw IoError(path.string() + ": empty environment file");

  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t k = 0; k < header.size(); ++k) index[header[k]] = k;
  auto has = [&](std::string_view name) { return index.find(name) != index.end(); };
  for (const char* name : {"t_seconds", "T_out_K", "T_in_K", "wind_ms", "q_diff_Wm2",
                           "q_refl_Wm2", "sunlit_ratio"})
    if (!has(name)) throw IoError(path.string() + ": missing column " + name);
  const bool direct_given = has("q_dir_Wm2");
  const bool angle_given = has("I_Wm2") && has("cos_theta");
  if (!direct_given && !angle_given)
    throw IoError(path.string() + ": need q_dir_Wm2 or the I_Wm2, cos_theta pair");
  const bool tan_given = has("tan_theta");

  EnvironmentSeries::Columns cols;
  std::vector<double> row(header.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto tokens = split(line);
    if (tokens.size() != header.size())
      throw IoError(path.string() + ": line " + std::to_string(line_no) + " has " +
                    std::to_string(tokens.size()) + " fields, expected " +
                    std::to_string(header.size()));
    for (std::size_t k = 0; k < tokens.size(); ++k)
      row[k] = parse_number(tokens[k], line_no, header[k]);
    auto at = [&](std::string_view name) { return row[index.find(name)->second]; };

    cols.time.push_back(at("t_seconds"));
    cols.t_out.push_back(at("T_out_K"));
    cols.t_in.push_back(at("T_in_K"));
    cols.wind.push_back(at("wind_ms"));
    cols.q_diffuse.push_back(at("q_diff_Wm2"));
    cols.q_reflected.push_back(at("q_refl_Wm2"));
    cols.sunlit.push_back(at("sunlit_ratio"));

    double cos_theta = 0.0;
    if (angle_given) cos_theta = at("cos_theta");
    // Sun behind the facade contributes no direct flux.
    cols.q_direct.push_back(direct_given ? at("q_dir_Wm2")
                                         : at("I_Wm2") * std::max(cos_theta, 0.0));
    if (tan_given) {
      cols.tan_theta.push_back(at("tan_theta"));
    } else if (angle_given) {
      cols.tan_theta.push_back(cos_theta > 0.0
                                   ? std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta)) /
                                         cos_theta
                                   : 0.0);
    }
  }
  if (cols.time.empty()) throw IoError(path.string() + ": no data rows");

  try {
    return EnvironmentSeries(std::move(cols), interpolation);
  } catch (const ConfigError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_environment(const std::filesystem::path& path, const EnvironmentSeries& env) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  const auto& c = env.columns();
  out << "t_seconds,T_out_K,T_in_K,wind_ms,q_dir_Wm2,q_diff_Wm2,q_refl_Wm2,sunlit_ratio";
  if (env.has_tan_theta()) out << ",tan_theta";
  out << '\n' << std::setprecision(10);
  for (std::size_t k = 0; k < env.size(); ++k) {
    out << c.time[k] << ',' << c.t_out[k] << ',' << c.t_in[k] << ',' << c.wind[k] << ','
        << c.q_direct[k] << ',' << c.q_diffuse[k] << ',' << c.q_reflected[k] << ','
        << c.sunlit[k];
    if (env.has_tan_theta()) out << ',' << c.tan_theta[k];
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace facade
