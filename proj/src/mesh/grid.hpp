#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace chb {

enum class Edge { Left = 0, Right = 1, Bottom = 2, Top = 3 };
enum class EdgeTag { DirichletDisplacement, NeumannTraction };

const char* to_string(Edge e);
const char* to_string(EdgeTag t);

using EdgeTags = std::array<EdgeTag, 4>;

inline constexpr EdgeTags kClamped = {EdgeTag::DirichletDisplacement, EdgeTag::DirichletDisplacement,
                                      EdgeTag::DirichletDisplacement, EdgeTag::DirichletDisplacement};

/// Vertex-centred structured grid on [0,lx] x [0,ly]. Node (i,j) sits at (i*hx, j*hy),
/// values are stored row-major with i running fastest.
class Grid {
public:
  Grid(int nx, int ny, double lx, double ly, EdgeTags tags = kClamped);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double lx() const noexcept { return lx_; }
  double ly() const noexcept { return ly_; }
  double hx() const noexcept { return hx_; }
  double hy() const noexcept { return hy_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }

  std::size_t index(int i, int j) const noexcept { return static_cast<std::size_t>(j) * nx_ + i; }
  double x(int i) const noexcept { return i * hx_; }
  double y(int j) const noexcept { return j * hy_; }

  EdgeTag tag(Edge e) const noexcept { return tags_[static_cast<int>(e)]; }
  const EdgeTags& tags() const noexcept { return tags_; }
  bool has_dirichlet_edge() const noexcept;

  /// Displacement constraint at a node; corners are Dirichlet when either adjacent edge is.
  bool is_dirichlet(int i, int j) const noexcept { return dirichlet_[index(i, j)] != 0; }
  bool is_dirichlet(std::size_t n) const noexcept { return dirichlet_[n] != 0; }
  bool on_boundary(int i, int j) const noexcept {
    return i == 0 || j == 0 || i == nx_ - 1 || j == ny_ - 1;
  }

  /// Trapezoidal quadrature weight of a node (hx*hy, halved per boundary direction).
  double weight(std::size_t n) const noexcept { return weights_[n]; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double area() const noexcept { return lx_ * ly_; }

  bool same_shape(const Grid& other) const noexcept;

private:
  int nx_, ny_;
  double lx_, ly_, hx_, hy_;
  EdgeTags tags_;
  std::vector<double> weights_;
  std::vector<char> dirichlet_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int nx, int ny, double lx = 1.0, double ly = 1.0, EdgeTags tags = kClamped);

} // namespace chb
