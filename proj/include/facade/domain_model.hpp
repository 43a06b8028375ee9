#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "facade/field.hpp"

namespace facade {

// Boundaries of the rectangle, in the order Γ1..Γ4 (x = 0, y = H, x = L, y = 0).
enum class Edge : int { XMin = 0, YMax = 1, XMax = 2, YMin = 3 };

inline constexpr Edge kAllEdges[] = {Edge::XMin, Edge::YMax, Edge::XMax, Edge::YMin};

inline bool is_x_edge(Edge e) noexcept { return e == Edge::XMin || e == Edge::XMax; }

struct MaterialLayer {
  std::string name;
  double thickness = 0.0;     // m
  double conductivity = 0.0;  // W/(m K)
  double capacity = 0.0;      // volumetric, J/(m^3 K)
};

// Layers stacked along x, from the exterior surface (x = 0) to the interior one (x = L).
class WallAssembly {
 public:
  // `declared_length`, when given, must match the summed thickness to 1e-12 relative.
  WallAssembly(std::vector<MaterialLayer> layers, double height, double width = 1.0,
               std::optional<double> declared_length = std::nullopt);

  const std::vector<MaterialLayer>& layers() const noexcept { return layers_; }
  double length() const noexcept { return length_; }
  double height() const noexcept { return height_; }
  double width() const noexcept { return width_; }

  // Index of the layer owning physical abscissa x. A point on an interface belongs to
  // the layer on its +x side.
  std::size_t layer_at(double x) const;

  // Right end of layer `index` (cumulative thickness).
  double interface_position(std::size_t index) const { return bounds_.at(index + 1); }

  double max_conductivity() const;
  double max_capacity() const;

  // Sum of thickness/conductivity over the layers, m^2 K / W.
  double series_resistance() const;

  // Exact conductance-weighted mean of k over [a, b]: (b - a) / ∫ dx / k.
  double harmonic_conductivity(double a, double b) const;

 private:
  std::vector<MaterialLayer> layers_;
  std::vector<double> bounds_;
  double length_ = 0.0;
  double height_ = 0.0;
  double width_ = 0.0;
};

// Reference quantities of the dimensionless formulation.
struct ReferenceScales {
  double temperature = 293.15;  // T0, K
  double delta_t = 20.0;        // δT, K
  double time = 3600.0;         // t0, s
  double length_x = 1.0;        // L, m
  double length_y = 1.0;        // H, m
  double conductivity = 1.0;    // k0
  double capacity = 1.0;        // c0

  // T0 = 293.15 K, δT = 20 K, t0 = 1 h, k0 / c0 the largest layer values.
  static ReferenceScales for_wall(const WallAssembly& wall);

  void validate() const;

  double fourier_x() const { return conductivity * time / (capacity * length_x * length_x); }
  double fourier_y() const { return conductivity * time / (capacity * length_y * length_y); }
};

// Uniform node-centred grid on [0,1]^2 including the boundary nodes. Material
// properties vary along x only, so they are stored per column.
struct Grid2D {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  std::vector<double> x;            // nx dimensionless abscissae
  std::vector<double> y;            // ny dimensionless ordinates
  std::vector<double> k;            // k* per column
  std::vector<double> c;            // c* per column
  std::vector<double> k_face;       // k* on the nx-1 faces between columns j and j+1
  std::vector<std::size_t> layer;   // owning layer per column

  std::size_t node_count() const noexcept { return nx * ny; }
  Field2D make_field(double value = 0.0) const { return Field2D(nx, ny, value); }
};

Grid2D build_grid(const WallAssembly& wall, std::size_t nx, std::size_t ny,
                  const ReferenceScales& scales);

// Single homogeneous material with the given distortion coefficients.
Grid2D uniform_grid(std::size_t nx, std::size_t ny, double k_star = 1.0, double c_star = 1.0);

// u = (T - T0) / δT, nodewise.
Field2D nondimensionalize(const Field2D& temperature, const ReferenceScales& scales);
Field2D dimensionalize(const Field2D& u, const ReferenceScales& scales);

inline double to_dimensionless(double temperature, const ReferenceScales& s) {
  return (temperature - s.temperature) / s.delta_t;
}
inline double to_kelvin(double u, const ReferenceScales& s) {
  return s.temperature + s.delta_t * u;
}

// Bi = h L_ref / k0 with L_ref = L on x-edges and H on y-edges.
double biot_number(double h, const ReferenceScales& scales, Edge edge);

// q* = q L_ref / (k0 δT).
double dimensionless_flux(double q, const ReferenceScales& scales, Edge edge);

}  // namespace facade
