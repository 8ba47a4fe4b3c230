#include "mesh/operators.hpp"

#include <cmath>
#include <string>

namespace chb {

namespace {

template <class Coeff>
Vec face_form(const Grid& g, const Vec& f, Coeff c) {
  const int nx = g.nx(), ny = g.ny();
  Vec out = Vec::Zero(f.size());
  for (int j = 0; j < ny; ++j) {
    const double cy = (j == 0 || j == ny - 1) ? 0.5 : 1.0;
    const double w = g.hy() * cy / g.hx();
    for (int i = 0; i + 1 < nx; ++i) {
      const auto a = static_cast<Eigen::Index>(g.index(i, j)), b = a + 1;
      const double flux = w * 0.5 * (c(a) + c(b)) * (f[b] - f[a]);
      out[a] += flux;
      out[b] -= flux;
    }
  }
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double cx = (i == 0 || i == nx - 1) ? 0.5 : 1.0;
      const double w = g.hx() * cx / g.hy();
      const auto a = static_cast<Eigen::Index>(g.index(i, j)), b = a + nx;
      const double flux = w * 0.5 * (c(a) + c(b)) * (f[b] - f[a]);
      out[a] += flux;
      out[b] -= flux;
    }
  }
  return out;
}

void check_len(const Grid& g, const Vec& f) {
  require(f.size() == static_cast<Eigen::Index>(g.size()), ErrorCode::Size, "field length does not match grid");
}

// 1D summation-by-parts derivative along a line of n points with stride s starting at base.
template <bool Transpose>
void diff_line(const Vec& f, Vec& out, Eigen::Index base, Eigen::Index s, int n, double h) {
  auto at = [&](int k) { return base + k * s; };
  if (!Transpose) {
    out[at(0)] = (f[at(1)] - f[at(0)]) / h;
    for (int k = 1; k + 1 < n; ++k) out[at(k)] = (f[at(k + 1)] - f[at(k - 1)]) / (2.0 * h);
    out[at(n - 1)] = (f[at(n - 1)] - f[at(n - 2)]) / h;
  } else {
    for (int k = 0; k < n; ++k) out[at(k)] = 0.0;
    out[at(0)] -= f[at(0)] / h;
    out[at(1)] += f[at(0)] / h;
    for (int k = 1; k + 1 < n; ++k) {
      out[at(k - 1)] -= f[at(k)] / (2.0 * h);
      out[at(k + 1)] += f[at(k)] / (2.0 * h);
    }
    out[at(n - 2)] -= f[at(n - 1)] / h;
    out[at(n - 1)] += f[at(n - 1)] / h;
  }
}

template <bool Transpose>
Vec diff_x_impl(const Grid& g, const Vec& f) {
  check_len(g, f);
  Vec out(f.size());
  for (int j = 0; j < g.ny(); ++j)
    diff_line<Transpose>(f, out, static_cast<Eigen::Index>(g.index(0, j)), 1, g.nx(), g.hx());
  return out;
}

template <bool Transpose>
Vec diff_y_impl(const Grid& g, const Vec& f) {
  check_len(g, f);
  Vec out(f.size());
  for (int i = 0; i < g.nx(); ++i) diff_line<Transpose>(f, out, i, g.nx(), g.ny(), g.hy());
  return out;
}

} // namespace

void require_positive(const Vec& c, const char* what) {
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    if (!(std::isfinite(c[k]) && c[k] > 0.0))
      fail(ErrorCode::Coefficient, std::string(what) + " must be strictly positive, found " +
                                       std::to_string(c[k]) + " at node " + std::to_string(k));
  }
}

Vec laplacian_form(const Grid& g, const Vec& f, const Vec& coeff) {
  check_len(g, f);
  check_len(g, coeff);
  return face_form(g, f, [&](Eigen::Index k) { return coeff[k]; });
}

Vec laplacian_form(const Grid& g, const Vec& f, double coeff) {
  check_len(g, f);
  return face_form(g, f, [coeff](Eigen::Index) { return coeff; });
}

Vec neumann_laplacian(const Grid& g, const Vec& f, const Vec& coeff) {
  require_positive(coeff, "Laplacian coefficient");
  return laplacian_form(g, f, coeff).cwiseQuotient(weights(g));
}

Vec neumann_laplacian(const Grid& g, const Vec& f, double coeff) {
  require_positive(Vec::Constant(1, coeff), "Laplacian coefficient");
  return laplacian_form(g, f, coeff).cwiseQuotient(weights(g));
}

ScalarField neumann_laplacian(const ScalarField& field, const ScalarField& coeff) {
  check_same_grid(field.grid, coeff.grid);
  return ScalarField(field.grid, neumann_laplacian(*field.grid, field.values, coeff.values));
}

Vec diff_x(const Grid& g, const Vec& f) { return diff_x_impl<false>(g, f); }
Vec diff_y(const Grid& g, const Vec& f) { return diff_y_impl<false>(g, f); }
Vec diff_x_t(const Grid& g, const Vec& f) { return diff_x_impl<true>(g, f); }
Vec diff_y_t(const Grid& g, const Vec& f) { return diff_y_impl<true>(g, f); }

SymTensorField symmetric_gradient(const VectorField2& u) {
  const Grid& g = *u.grid;
  SymTensorField e(u.grid);
  e.xx = diff_x(g, u.x);
  e.yy = diff_y(g, u.y);
  e.xy = 0.5 * (diff_y(g, u.x) + diff_x(g, u.y));
  return e;
}

ScalarField divergence(const VectorField2& u) {
  const auto e = symmetric_gradient(u);
  return ScalarField(u.grid, e.xx + e.yy);
}

Vec divergence_packed(const Grid& g, const Vec& u) {
  const auto n = static_cast<Eigen::Index>(g.size());
  require(u.size() == 2 * n, ErrorCode::Size, "packed vector length does not match grid");
  return diff_x(g, u.head(n)) + diff_y(g, u.tail(n));
}

Vec weak_gradient(const Grid& g, const Vec& s) {
  const Vec ws = s.cwiseProduct(weights(g));
  Vec out(2 * s.size());
  out << diff_x_t(g, ws), diff_y_t(g, ws);
  return out;
}

Vec weights(const Grid& g) {
  return Eigen::Map<const Vec>(g.weights().data(), static_cast<Eigen::Index>(g.size()));
}

double inner_h(const Grid& g, const Vec& a, const Vec& b) {
  check_len(g, a);
  check_len(g, b);
  double s = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) s += g.weight(static_cast<std::size_t>(k)) * a[k] * b[k];
  return s;
}

double norm_h(const Grid& g, const Vec& a) { return std::sqrt(inner_h(g, a, a)); }

double mean(const Grid& g, const Vec& a) {
  check_len(g, a);
  double s = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) s += g.weight(static_cast<std::size_t>(k)) * a[k];
  return s / g.area();
}

} // namespace chb
