#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "facade/domain_model.hpp"

namespace facade {

// Robin data along one edge, one entry per boundary node: k du/dn + biot u = load.
struct EdgeValues {
  std::vector<double> biot;
  std::vector<double> load;  // Bi u_inf + q*
};

struct BoundaryValues {
  std::array<EdgeValues, 4> edges;

  EdgeValues& operator[](Edge e) noexcept { return edges[static_cast<int>(e)]; }
  const EdgeValues& operator[](Edge e) const noexcept { return edges[static_cast<int>(e)]; }

  // Sizes the x-edges to ny nodes and the y-edges to nx nodes, all zero.
  void resize(std::size_t nx, std::size_t ny);
};

// Time-dependent Robin data per edge. An edge without a sampler is adiabatic.
class BoundaryConditions {
 public:
  // Fills `biot` and `load` for the nodes at dimensionless positions `coords` along the
  // edge (y* on x-edges, x* on y-edges) at dimensionless time t*.
  using Sampler = std::function<void(double t, std::span<const double> coords,
                                     std::span<double> biot, std::span<double> load)>;

  BoundaryConditions() = default;

  BoundaryConditions& set(Edge edge, Sampler sampler);
  bool is_adiabatic(Edge edge) const { return !samplers_[static_cast<int>(edge)]; }

  void evaluate(double t, const Grid2D& grid, BoundaryValues& out) const;

  static BoundaryConditions adiabatic() { return {}; }

  // Constant Bi, u_inf and q* on the given edges.
  static Sampler constant(double biot, double u_inf, double flux = 0.0);

 private:
  std::array<Sampler, 4> samplers_;
};

}  // namespace facade
