#include "facade/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "facade/errors.hpp"

namespace facade {

std::vector<double> inside_flux_profile(const Field2D& u, const Grid2D& grid,
                                        const ReferenceScales& scales) {
  const std::size_t n = grid.nx - 1;
  // A stencil straddling a material interface would fit a parabola across the kink.
  const bool same_layer = grid.layer.empty() || grid.layer[n - 2] == grid.layer[n];
  const double k = (same_layer ? grid.k[n] : grid.k_face[n - 1]) * scales.conductivity;
  std::vector<double> j(grid.ny);
  for (std::size_t i = 0; i < grid.ny; ++i) {
    const double du = same_layer
                          ? (3.0 * u(n, i) - 4.0 * u(n - 1, i) + u(n - 2, i)) / (2.0 * grid.dx)
                          : (u(n, i) - u(n - 1, i)) / grid.dx;
    j[i] = -k * scales.delta_t * du / scales.length_x;
  }
  return j;
}

double inside_flux(const Field2D& u, const Grid2D& grid, const ReferenceScales& scales) {
  const auto profile = inside_flux_profile(u, grid, scales);
  const auto w = trapezoid_weights(grid.y);
  double sum = 0.0, total = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    sum += w[i] * profile[i];
    total += w[i];
  }
  return sum / total;
}

namespace {

double interpolate(const FluxSeries& s, double t) {
  const auto it = std::lower_bound(s.time.begin(), s.time.end(), t);
  if (it == s.time.begin()) return s.flux.front();
  if (it == s.time.end()) return s.flux.back();
  const auto k = static_cast<std::size_t>(it - s.time.begin());
  if (*it == t) return s.flux[k];
  const double w = (t - s.time[k - 1]) / (s.time[k] - s.time[k - 1]);
  return (1.0 - w) * s.flux[k - 1] + w * s.flux[k];
}

}  // namespace

double thermal_load(const FluxSeries& series, double begin, double end) {
  if (series.size() < 2) throw ConfigError("flux series needs at least two samples");
  if (!(end > begin)) throw ConfigError("empty load interval");
  const double slack = 1e-9 * std::max(1.0, std::abs(series.time.back()));
  if (begin < series.time.front() - slack || end > series.time.back() + slack)
    throw ConfigError("load interval outside the flux series");
  begin = std::max(begin, series.time.front());
  end = std::min(end, series.time.back());

  double prev_t = begin;
  double prev_j = interpolate(series, begin);
  double sum = 0.0;
  auto k = static_cast<std::size_t>(
      std::upper_bound(series.time.begin(), series.time.end(), begin) - series.time.begin());
  for (; k < series.size() && series.time[k] < end; ++k) {
    sum += 0.5 * (series.time[k] - prev_t) * (series.flux[k] + prev_j);
    prev_t = series.time[k];
    prev_j = series.flux[k];
  }
  sum += 0.5 * (end - prev_t) * (interpolate(series, end) + prev_j);
  return sum * 1e-6;
}

std::vector<double> cumulative_load(const FluxSeries& series) {
  std::vector<double> out(series.size(), 0.0);
  for (std::size_t k = 1; k < series.size(); ++k)
    out[k] = out[k - 1] + 0.5e-6 * (series.time[k] - series.time[k - 1]) *
                              (series.flux[k] + series.flux[k - 1]);
  return out;
}

std::vector<MonthlyLoad> monthly_loads(const FluxSeries& series, std::chrono::sys_days start) {
  using namespace std::chrono;
  if (series.size() < 2) throw ConfigError("flux series needs at least two samples");
  const double t_begin = series.time.front();
  const double t_end = series.time.back();
  auto to_seconds = [&](sys_days d) {
    return static_cast<double>(duration_cast<seconds>(d - start).count());
  };
  const auto first_day = start + days(static_cast<long>(std::floor(t_begin / 86400.0)));
  year_month ym = year_month_day(first_day).year() / year_month_day(first_day).month();

  std::vector<MonthlyLoad> out;
  while (true) {
    const double m_begin = std::max(to_seconds(sys_days(ym / 1)), t_begin);
    const double m_end = std::min(to_seconds(sys_days((ym + months(1)) / 1)), t_end);
    if (m_begin >= t_end) break;
    if (m_end > m_begin) {
      char label[16];
      std::snprintf(label, sizeof label, "%04d-%02u", static_cast<int>(ym.year()),
                    static_cast<unsigned>(ym.month()));
      out.push_back({label, m_begin, m_end, thermal_load(series, m_begin, m_end)});
    }
    ym += months(1);
  }
  return out;
}

std::vector<double> trapezoid_weights(std::span<const double> x) {
  std::vector<double> w(x.size(), 0.0);
  if (x.size() == 1) {
    w[0] = 1.0;
    return w;
  }
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const double h = 0.5 * (x[k + 1] - x[k]);
    w[k] += h;
    w[k + 1] += h;
  }
  return w;
}

double error_metric(ErrorKind kind, std::span<const double> value,
                    std::span<const double> reference, std::span<const double> weights,
                    double floor) {
  const std::size_t n = value.size();
  if (reference.size() != n || weights.size() != n)
    throw ConfigError("error metric: inconsistent sizes");
  if (n == 0) throw ConfigError("error metric: empty data");
  double scale = 1.0;
  if (kind == ErrorKind::Normalized) {
    const auto [lo, hi] = std::minmax_element(reference.begin(), reference.end());
    scale = *hi - *lo;
    if (!(scale > 0.0)) throw ConfigError("normalized error: reference has zero range");
  }
  double sum = 0.0, total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double d = value[k] - reference[k];
    if (kind == ErrorKind::Relative) {
      if (!(std::abs(reference[k]) >= floor))
        throw ConfigError("relative error: reference magnitude below floor at node " +
                          std::to_string(k));
      d /= reference[k];
    } else {
      d /= scale;
    }
    sum += weights[k] * d * d;
    total += weights[k];
  }
  return std::sqrt(sum / total);
}

double error_metric(ErrorKind kind, const Field2D& value, const Field2D& reference,
                    double floor) {
  if (!value.same_shape(reference)) throw ConfigError("error metric: field shapes differ");
  const std::size_t nx = value.nx(), ny = value.ny();
  std::vector<double> w(value.size());
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t j = 0; j < nx; ++j)
      w[i * nx + j] = (i == 0 || i + 1 == ny ? 0.5 : 1.0) * (j == 0 || j + 1 == nx ? 0.5 : 1.0);
  return error_metric(kind, value.values(), reference.values(), w, floor);
}

double series_error(ErrorKind kind, std::span<const double> time, std::span<const double> value,
                    std::span<const double> reference, double floor) {
  if (time.size() != value.size()) throw ConfigError("error metric: inconsistent sizes");
  const auto w = trapezoid_weights(time);
  return error_metric(kind, value, reference, w, floor);
}

double cpu_ratio(double measured, double reference) {
  if (!(reference > 0.0)) throw ConfigError("cpu ratio: reference time must be positive");
  if (measured < 0.0) throw ConfigError("cpu ratio: negative measured time");
  return measured / reference;
}

double relative_difference_percent(double value, double reference) {
  if (reference == 0.0) throw ConfigError("relative difference: zero reference");
  return 100.0 * (value - reference) / std::abs(reference);
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << std::setprecision(12);
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void write_flux_csv(const std::filesystem::path& path, const FluxSeries& series) {
  auto out = open_csv(path);
  out << "t_seconds,J_Wm2\n";
  for (std::size_t k = 0; k < series.size(); ++k)
    out << series.time[k] << ',' << series.flux[k] << '\n';
  finish(out, path);
}

void write_loads_csv(const std::filesystem::path& path, const std::vector<MonthlyLoad>& loads) {
  auto out = open_csv(path);
  out << "month,E_MJ\n";
  for (const auto& m : loads) out << m.month << ',' << m.energy << '\n';
  finish(out, path);
}

void write_error_table(const std::filesystem::path& path, const std::vector<ErrorRow>& rows) {
  auto out = open_csv(path);
  out << "dt_star,eps2,Rcpu,scheme\n";
  for (const auto& r : rows) out << r.dt << ',' << r.eps2 << ',' << r.rcpu << ',' << r.scheme << '\n';
  finish(out, path);
}

}  // namespace facade
