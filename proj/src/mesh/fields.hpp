#pragma once

#include "common/error.hpp"
#include "mesh/grid.hpp"

#include <Eigen/Core>

namespace chb {

using Vec = Eigen::VectorXd;

struct ScalarField {
  GridPtr grid;
  Vec values;

  ScalarField() = default;
  explicit ScalarField(GridPtr g, double fill = 0.0)
      : grid(std::move(g)), values(Vec::Constant(static_cast<Eigen::Index>(grid->size()), fill)) {}
  ScalarField(GridPtr g, Vec v) : grid(std::move(g)), values(std::move(v)) {
    require(values.size() == static_cast<Eigen::Index>(grid->size()), ErrorCode::Size,
            "scalar field length does not match grid");
  }

  double& operator[](std::size_t n) { return values[static_cast<Eigen::Index>(n)]; }
  double operator[](std::size_t n) const { return values[static_cast<Eigen::Index>(n)]; }
  double& at(int i, int j) { return (*this)[grid->index(i, j)]; }
  double at(int i, int j) const { return (*this)[grid->index(i, j)]; }
  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
  bool all_finite() const { return values.allFinite(); }
};

/// Displacement-like field. Packed layout is [x-components; y-components].
struct VectorField2 {
  GridPtr grid;
  Vec x, y;

  VectorField2() = default;
  explicit VectorField2(GridPtr g)
      : grid(std::move(g)), x(Vec::Zero(static_cast<Eigen::Index>(grid->size()))), y(x) {}
  VectorField2(GridPtr g, Vec vx, Vec vy) : grid(std::move(g)), x(std::move(vx)), y(std::move(vy)) {
    require(x.size() == static_cast<Eigen::Index>(grid->size()) && y.size() == x.size(), ErrorCode::Size,
            "vector field length does not match grid");
  }

  Vec packed() const {
    Vec out(2 * x.size());
    out << x, y;
    return out;
  }
  static VectorField2 unpack(GridPtr g, const Vec& v) {
    const Eigen::Index n = static_cast<Eigen::Index>(g->size());
    require(v.size() == 2 * n, ErrorCode::Size, "packed vector length does not match grid");
    return VectorField2(g, v.head(n), v.tail(n));
  }
  bool all_finite() const { return x.allFinite() && y.allFinite(); }
};

struct SymTensorField {
  GridPtr grid;
  Vec xx, yy, xy;

  SymTensorField() = default;
  explicit SymTensorField(GridPtr g)
      : grid(std::move(g)), xx(Vec::Zero(static_cast<Eigen::Index>(grid->size()))), yy(xx), xy(xx) {}
  Vec trace() const { return xx + yy; }
};

/// Pointwise symmetric 2x2 tensor used by the material laws.
struct Sym2 {
  double xx = 0.0, yy = 0.0, xy = 0.0;

  double trace() const { return xx + yy; }
  double dot(const Sym2& o) const { return xx * o.xx + yy * o.yy + 2.0 * xy * o.xy; }
  double norm2() const { return dot(*this); }
  Sym2 operator+(const Sym2& o) const { return {xx + o.xx, yy + o.yy, xy + o.xy}; }
  Sym2 operator-(const Sym2& o) const { return {xx - o.xx, yy - o.yy, xy - o.xy}; }
  Sym2 operator*(double s) const { return {xx * s, yy * s, xy * s}; }
  static Sym2 iso(double s) { return {s, s, 0.0}; }
};

inline Sym2 at(const SymTensorField& t, std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return {t.xx[k], t.yy[k], t.xy[k]};
}

inline void check_same_grid(const GridPtr& a, const GridPtr& b) {
  require(a && b && (a == b || a->same_shape(*b)), ErrorCode::InvalidArgument, "fields live on different grids");
}

} // namespace chb
