#include "mesh/grid.hpp"

#include "common/error.hpp"

#include <cmath>

namespace chb {

const char* to_string(Edge e) {
  switch (e) {
  case Edge::Left: return "left";
  case Edge::Right: return "right";
  case Edge::Bottom: return "bottom";
  case Edge::Top: return "top";
  }
  return "?";
}

const char* to_string(EdgeTag t) {
  return t == EdgeTag::DirichletDisplacement ? "dirichlet" : "neumann";
}

Grid::Grid(int nx, int ny, double lx, double ly, EdgeTags tags)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly), tags_(tags) {
  require(nx >= 4 && ny >= 4, ErrorCode::InvalidArgument,
          "grid needs at least 4 nodes per axis, got " + std::to_string(nx) + "x" + std::to_string(ny));
  require(std::isfinite(lx) && std::isfinite(ly) && lx > 0.0 && ly > 0.0, ErrorCode::InvalidArgument,
          "grid extents must be positive");
  hx_ = lx_ / (nx_ - 1);
  hy_ = ly_ / (ny_ - 1);

  weights_.resize(size());
  dirichlet_.assign(size(), 0);
  const auto dir = [&](Edge e) { return tag(e) == EdgeTag::DirichletDisplacement; };
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const double cx = (i == 0 || i == nx_ - 1) ? 0.5 : 1.0;
      const double cy = (j == 0 || j == ny_ - 1) ? 0.5 : 1.0;
      weights_[index(i, j)] = hx_ * hy_ * cx * cy;
      const bool d = (i == 0 && dir(Edge::Left)) || (i == nx_ - 1 && dir(Edge::Right)) ||
                     (j == 0 && dir(Edge::Bottom)) || (j == ny_ - 1 && dir(Edge::Top));
      dirichlet_[index(i, j)] = d ? 1 : 0;
    }
  }
}

bool Grid::has_dirichlet_edge() const noexcept {
  for (auto t : tags_)
    if (t == EdgeTag::DirichletDisplacement) return true;
  return false;
}

bool Grid::same_shape(const Grid& o) const noexcept {
  return nx_ == o.nx_ && ny_ == o.ny_ && lx_ == o.lx_ && ly_ == o.ly_ && tags_ == o.tags_;
}

GridPtr make_grid(int nx, int ny, double lx, double ly, EdgeTags tags) {
  return std::make_shared<const Grid>(nx, ny, lx, ly, tags);
}

} // namespace chb
