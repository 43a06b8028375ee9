#include "facade/boundary.hpp"

#include <algorithm>

#include "facade/errors.hpp"

namespace facade {

void BoundaryValues::resize(std::size_t nx, std::size_t ny) {
  for (Edge e : kAllEdges) {
    const std::size_t n = is_x_edge(e) ? ny : nx;
    auto& ev = (*this)[e];
    ev.biot.assign(n, 0.0);
    ev.load.assign(n, 0.0);
  }
}

BoundaryConditions& BoundaryConditions::set(Edge edge, Sampler sampler) {
  samplers_[static_cast<int>(edge)] = std::move(sampler);
  return *this;
}

void BoundaryConditions::evaluate(double t, const Grid2D& grid, BoundaryValues& out) const {
  if (out[Edge::XMin].biot.size() != grid.ny || out[Edge::YMin].biot.size() != grid.nx)
    out.resize(grid.nx, grid.ny);
  for (Edge e : kAllEdges) {
    auto& ev = out[e];
    const auto& sampler = samplers_[static_cast<int>(e)];
    if (!sampler) {
      std::fill(ev.biot.begin(), ev.biot.end(), 0.0);
      std::fill(ev.load.begin(), ev.load.end(), 0.0);
      continue;
    }
    sampler(t, is_x_edge(e) ? std::span<const double>(grid.y) : std::span<const double>(grid.x),
            ev.biot, ev.load);
    for (double b : ev.biot)
      if (b < 0.0) throw ConfigError("negative Biot number on a boundary");
  }
}

BoundaryConditions::Sampler BoundaryConditions::constant(double biot, double u_inf, double flux) {
  if (biot < 0.0) throw ConfigError("Biot number must be non-negative");
  return [biot, load = biot * u_inf + flux](double, std::span<const double>,
                                            std::span<double> b, std::span<double> g) {
    std::fill(b.begin(), b.end(), biot);
    std::fill(g.begin(), g.end(), load);
  };
}

}  // namespace facade
