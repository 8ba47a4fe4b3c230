#pragma once

#include "mesh/grid.hpp"

#include <Eigen/Core>

#include <array>

namespace chb {

/// Bilinear shape functions of one cell evaluated at a Gauss point.
/// Local node order: (i,j), (i+1,j), (i,j+1), (i+1,j+1).
struct Q1Point {
  std::array<double, 4> N, dx, dy;
};

using CellNodes = std::array<Eigen::Index, 4>;

/// The four 2x2 Gauss points of a cell with spacings hx, hy.
const std::array<Q1Point, 4>& q1_points(double hx, double hy);

/// Calls visit(cell_nodes, point, weight, gauss_index) for every Gauss point of every cell,
/// cells in row-major order. Each point carries weight hx*hy/4.
template <class Visit>
void for_each_gauss_point(const Grid& g, Visit&& visit) {
  const auto& pts = q1_points(g.hx(), g.hy());
  const double w = 0.25 * g.hx() * g.hy();
  std::size_t q = 0;
  for (int j = 0; j + 1 < g.ny(); ++j) {
    for (int i = 0; i + 1 < g.nx(); ++i) {
      const CellNodes nodes = {static_cast<Eigen::Index>(g.index(i, j)), static_cast<Eigen::Index>(g.index(i + 1, j)),
                               static_cast<Eigen::Index>(g.index(i, j + 1)),
                               static_cast<Eigen::Index>(g.index(i + 1, j + 1))};
      for (int k = 0; k < 4; ++k, ++q) visit(nodes, pts[k], w, q);
    }
  }
}

template <class V>
double interpolate(const Q1Point& p, const CellNodes& nodes, const V& f) {
  double s = 0.0;
  for (int a = 0; a < 4; ++a) s += p.N[a] * f[nodes[a]];
  return s;
}

} // namespace chb
