#include "facade/domain_model.hpp"

#include <algorithm>
#include <cmath>

#include "facade/errors.hpp"

namespace facade {

namespace {

constexpr double kInterfaceTolerance = 1e-12;

}  // namespace

WallAssembly::WallAssembly(std::vector<MaterialLayer> layers, double height, double width,
                           std::optional<double> declared_length)
    : layers_(std::move(layers)), height_(height), width_(width) {
  if (layers_.empty()) throw ConfigError("wall assembly needs at least one layer");
  if (!(height_ > 0.0)) throw ConfigError("wall height must be positive");
  if (!(width_ > 0.0)) throw ConfigError("wall width must be positive");

  bounds_.reserve(layers_.size() + 1);
  bounds_.push_back(0.0);
  for (const auto& layer : layers_) {
    if (!(layer.thickness > 0.0))
      throw ConfigError("layer '" + layer.name + "': thickness must be positive");
    if (!(layer.conductivity > 0.0))
      throw ConfigError("layer '" + layer.name + "': conductivity must be positive");
    if (!(layer.capacity > 0.0))
      throw ConfigError("layer '" + layer.name + "': volumetric capacity must be positive");
    bounds_.push_back(bounds_.back() + layer.thickness);
  }
  length_ = bounds_.back();

  if (declared_length) {
    if (std::abs(*declared_length - length_) > 1e-12 * std::max(*declared_length, length_))
      throw ConfigError("layer thicknesses sum to " + std::to_string(length_) +
                        " m but the wall length is " + std::to_string(*declared_length) + " m");
    length_ = *declared_length;
    bounds_.back() = length_;
  }
}

std::size_t WallAssembly::layer_at(double x) const {
  const double tol = kInterfaceTolerance * length_;
  std::size_t index = 0;
  for (std::size_t m = 1; m + 1 < bounds_.size(); ++m)
    if (bounds_[m] <= x + tol) index = m;
  return index;
}

double WallAssembly::max_conductivity() const {
  double k = 0.0;
  for (const auto& l : layers_) k = std::max(k, l.conductivity);
  return k;
}

double WallAssembly::max_capacity() const {
  double c = 0.0;
  for (const auto& l : layers_) c = std::max(c, l.capacity);
  return c;
}

double WallAssembly::series_resistance() const {
  double r = 0.0;
  for (const auto& l : layers_) r += l.thickness / l.conductivity;
  return r;
}

double WallAssembly::harmonic_conductivity(double a, double b) const {
  if (!(b > a)) throw ConfigError("harmonic_conductivity: empty interval");
  double resistance = 0.0;
  for (std::size_t m = 0; m < layers_.size(); ++m) {
    const double lo = std::max(a, bounds_[m]);
    const double hi = std::min(b, bounds_[m + 1]);
    if (hi > lo) resistance += (hi - lo) / layers_[m].conductivity;
  }
  return (b - a) / resistance;
}

ReferenceScales ReferenceScales::for_wall(const WallAssembly& wall) {
  ReferenceScales s;
  s.length_x = wall.length();
  s.length_y = wall.height();
  s.conductivity = wall.max_conductivity();
  s.capacity = wall.max_capacity();
  return s;
}

void ReferenceScales::validate() const {
  if (!(delta_t > 0.0)) throw ConfigError("reference temperature scale δT must be positive");
  if (!(time > 0.0)) throw ConfigError("reference time must be positive");
  if (!(length_x > 0.0) || !(length_y > 0.0))
    throw ConfigError("reference lengths must be positive");
  if (!(conductivity > 0.0)) throw ConfigError("reference conductivity must be positive");
  if (!(capacity > 0.0)) throw ConfigError("reference capacity must be positive");
}

namespace {

void fill_axes(Grid2D& g, std::size_t nx, std::size_t ny) {
  if (nx < 3 || ny < 3) throw ConfigError("grid needs at least 3 nodes per direction");
  g.nx = nx;
  g.ny = ny;
  g.dx = 1.0 / static_cast<double>(nx - 1);
  g.dy = 1.0 / static_cast<double>(ny - 1);
  g.x.resize(nx);
  g.y.resize(ny);
  for (std::size_t j = 0; j < nx; ++j) g.x[j] = static_cast<double>(j) * g.dx;
  for (std::size_t i = 0; i < ny; ++i) g.y[i] = static_cast<double>(i) * g.dy;
  g.x.back() = 1.0;
  g.y.back() = 1.0;
}

}  // namespace

Grid2D build_grid(const WallAssembly& wall, std::size_t nx, std::size_t ny,
                  const ReferenceScales& scales) {
  scales.validate();
  Grid2D g;
  fill_axes(g, nx, ny);

  const double length = wall.length();
  g.k.resize(nx);
  g.c.resize(nx);
  g.layer.resize(nx);
  for (std::size_t j = 0; j < nx; ++j) {
    const std::size_t m = wall.layer_at(g.x[j] * length);
    const auto& layer = wall.layers()[m];
    g.layer[j] = m;
    g.k[j] = layer.conductivity / scales.conductivity;
    g.c[j] = layer.capacity / scales.capacity;
  }

  g.k_face.resize(nx - 1);
  for (std::size_t j = 0; j + 1 < nx; ++j)
    g.k_face[j] =
        wall.harmonic_conductivity(g.x[j] * length, g.x[j + 1] * length) / scales.conductivity;
  return g;
}

Grid2D uniform_grid(std::size_t nx, std::size_t ny, double k_star, double c_star) {
  if (!(k_star > 0.0) || !(c_star > 0.0))
    throw ConfigError("distortion coefficients must be positive");
  Grid2D g;
  fill_axes(g, nx, ny);
  g.k.assign(nx, k_star);
  g.c.assign(nx, c_star);
  g.k_face.assign(nx - 1, k_star);
  g.layer.assign(nx, 0);
  return g;
}

Field2D nondimensionalize(const Field2D& temperature, const ReferenceScales& scales) {
  if (scales.delta_t == 0.0) throw ConfigError("δT = 0: cannot nondimensionalize");
  Field2D u(temperature.nx(), temperature.ny());
  auto src = temperature.values();
  auto dst = u.values();
  for (std::size_t n = 0; n < src.size(); ++n) dst[n] = to_dimensionless(src[n], scales);
  return u;
}

Field2D dimensionalize(const Field2D& u, const ReferenceScales& scales) {
  Field2D t(u.nx(), u.ny());
  auto src = u.values();
  auto dst = t.values();
  for (std::size_t n = 0; n < src.size(); ++n) dst[n] = to_kelvin(src[n], scales);
  return t;
}

double biot_number(double h, const ReferenceScales& scales, Edge edge) {
  if (h < 0.0) throw ConfigError("surface coefficient must be non-negative");
  const double length = is_x_edge(edge) ? scales.length_x : scales.length_y;
  return h * length / scales.conductivity;
}

double dimensionless_flux(double q, const ReferenceScales& scales, Edge edge) {
  const double length = is_x_edge(edge) ? scales.length_x : scales.length_y;
  return q * length / (scales.conductivity * scales.delta_t);
}

}  // namespace facade
