#pragma once

// Helpers shared by the unit tests. The dense builders here are written from the stencil and
// element definitions directly and do not call the operators they are compared against.

#include "materials/material.hpp"
#include "mesh/fields.hpp"
#include "model/initial.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <random>

namespace chb::testing {

using Dense = Eigen::MatrixXd;

/// Material with every coefficient constant, zero eigenstrain and zero potential.
inline MaterialParams constant_params(double M = 1.0, double alpha = 0.0, double kappa = 1.0) {
  MaterialParams p;
  p.m1 = p.kappa1 = p.biot_m1 = p.alpha1 = 0.0;
  p.lambda1 = p.mu1 = p.visco_lambda1 = p.visco_mu1 = 0.0;
  p.tau0 = p.tau1 = 0.0;
  p.psi_scale = 0.0;
  p.biot_m0 = M;
  p.alpha0 = alpha;
  p.kappa0 = kappa;
  return p;
}

inline Vec random_vec(Eigen::Index n, std::uint64_t seed, double amp = 1.0) {
  Rng r(seed);
  Vec v(n);
  for (Eigen::Index k = 0; k < n; ++k) v[k] = r.uniform(-amp, amp);
  return v;
}

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// 1D first-derivative matrix: centred inside, (f1 - f0)/h and (f_{n-1} - f_{n-2})/h at the ends.
inline Dense derivative_1d(int n, double h) {
  Dense d = Dense::Zero(n, n);
  d(0, 0) = -1.0 / h;
  d(0, 1) = 1.0 / h;
  d(n - 1, n - 2) = -1.0 / h;
  d(n - 1, n - 1) = 1.0 / h;
  for (int i = 1; i < n - 1; ++i) {
    d(i, i - 1) = -0.5 / h;
    d(i, i + 1) = 0.5 / h;
  }
  return d;
}

/// Dense d/dx and d/dy on the grid (node index j*nx + i).
inline Dense dense_dx(const Grid& g) {
  return Eigen::kroneckerProduct(Dense::Identity(g.ny(), g.ny()), derivative_1d(g.nx(), g.hx()));
}
inline Dense dense_dy(const Grid& g) {
  return Eigen::kroneckerProduct(derivative_1d(g.ny(), g.hy()), Dense::Identity(g.nx(), g.nx()));
}

/// div(c grad) by the 5-point stencil with ghost reflection f_{-1} = f_1 and face-averaged c.
inline Dense dense_neumann_laplacian(const Grid& g, const Vec& c) {
  const int nx = g.nx(), ny = g.ny();
  const auto N = static_cast<Eigen::Index>(g.size());
  Dense L = Dense::Zero(N, N);
  auto add_dir = [&](int i, int j, int di, int dj, double h) {
    const auto row = static_cast<Eigen::Index>(g.index(i, j));
    for (int s : {-1, 1}) {
      int ii = i + s * di, jj = j + s * dj;
      if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) {
        ii = i - s * di; // reflected ghost
        jj = j - s * dj;
      }
      const auto col = static_cast<Eigen::Index>(g.index(ii, jj));
      const double face = 0.5 * (c[row] + c[col]);
      L(row, col) += face / (h * h);
      L(row, row) -= face / (h * h);
    }
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      add_dir(i, j, 1, 0, g.hx());
      add_dir(i, j, 0, 1, g.hy());
    }
  return L;
}

inline Dense dense_weights(const Grid& g) {
  Dense W = Dense::Zero(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(g.size()));
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      double w = g.hx() * g.hy();
      if (i == 0 || i == g.nx() - 1) w *= 0.5;
      if (j == 0 || j == g.ny() - 1) w *= 0.5;
      W(static_cast<Eigen::Index>(g.index(i, j)), static_cast<Eigen::Index>(g.index(i, j))) = w;
    }
  return W;
}

/// Q1 stiffness sum_g w_g (2 mu e(u):e(v) + lambda div u div v) with Lame values at the
/// interpolated phase, assembled cell by cell from bilinear shape functions written out here.
/// No Dirichlet elimination; packed layout [x; y].
inline Dense dense_q1_stiffness(const Grid& g, const MaterialModel& mat, const Vec& phi, bool visco = false,
                                double scale = 1.0) {
  const auto N = static_cast<Eigen::Index>(g.size());
  Dense K = Dense::Zero(2 * N, 2 * N);
  const double hx = g.hx(), hy = g.hy();
  const double gp[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
  for (int cj = 0; cj + 1 < g.ny(); ++cj)
    for (int ci = 0; ci + 1 < g.nx(); ++ci) {
      const int corner[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
      Eigen::Index node[4];
      for (int a = 0; a < 4; ++a) node[a] = static_cast<Eigen::Index>(g.index(ci + corner[a][0], cj + corner[a][1]));
      for (double sx : gp)
        for (double sy : gp) {
          double Nv[4], Dx[4], Dy[4];
          for (int a = 0; a < 4; ++a) {
            const double fx = corner[a][0] ? sx : 1.0 - sx, fy = corner[a][1] ? sy : 1.0 - sy;
            const double dfx = (corner[a][0] ? 1.0 : -1.0) / hx, dfy = (corner[a][1] ? 1.0 : -1.0) / hy;
            Nv[a] = fx * fy;
            Dx[a] = dfx * fy;
            Dy[a] = fx * dfy;
          }
          double z = 0.0;
          for (int a = 0; a < 4; ++a) z += Nv[a] * phi[node[a]];
          const double lam = mat.eval(visco ? Coefficient::ViscoLambda : Coefficient::LameLambda, z);
          const double mu = mat.eval(visco ? Coefficient::ViscoMu : Coefficient::LameMu, z);
          const double w = scale * hx * hy / 4.0;
          // B maps the 8 element dofs to (exx, eyy, 2exy).
          Eigen::Matrix<double, 3, 8> B = Eigen::Matrix<double, 3, 8>::Zero();
          for (int a = 0; a < 4; ++a) {
            B(0, a) = Dx[a];
            B(1, 4 + a) = Dy[a];
            B(2, a) = Dy[a];
            B(2, 4 + a) = Dx[a];
          }
          Eigen::Matrix3d D;
          D << lam + 2 * mu, lam, 0, lam, lam + 2 * mu, 0, 0, 0, mu;
          const Eigen::Matrix<double, 8, 8> ke = w * B.transpose() * D * B;
          for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b) {
              const Eigen::Index r = (a < 4 ? 0 : N) + node[a % 4], c = (b < 4 ? 0 : N) + node[b % 4];
              K(r, c) += ke(a, b);
            }
        }
    }
  return K;
}

/// Replaces Dirichlet rows and columns by the identity.
inline Dense constrain_dense(const Grid& g, Dense K) {
  const auto N = static_cast<Eigen::Index>(g.size());
  for (Eigen::Index k = 0; k < N; ++k) {
    if (!g.is_dirichlet(static_cast<std::size_t>(k))) continue;
    for (Eigen::Index d : {k, N + k}) {
      K.row(d).setZero();
      K.col(d).setZero();
      K(d, d) = 1.0;
    }
  }
  return K;
}

inline Vec constrain_vec(const Grid& g, Vec v) {
  const auto N = static_cast<Eigen::Index>(g.size());
  for (Eigen::Index k = 0; k < N; ++k)
    if (g.is_dirichlet(static_cast<std::size_t>(k))) v[k] = v[N + k] = 0.0;
  return v;
}

} // namespace chb::testing

namespace chb::testing {

/// Calls visit(node[4], N[4], dNdx[4], dNdy[4], weight) at the 2x2 Gauss points of every cell.
template <class Visit>
void gauss_loop(const Grid& g, Visit&& visit) {
  const double gp[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
  const int corner[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  for (int cj = 0; cj + 1 < g.ny(); ++cj)
    for (int ci = 0; ci + 1 < g.nx(); ++ci) {
      Eigen::Index node[4];
      for (int a = 0; a < 4; ++a) node[a] = static_cast<Eigen::Index>(g.index(ci + corner[a][0], cj + corner[a][1]));
      for (double sx : gp)
        for (double sy : gp) {
          double N[4], dx[4], dy[4];
          for (int a = 0; a < 4; ++a) {
            const double fx = corner[a][0] ? sx : 1.0 - sx, fy = corner[a][1] ? sy : 1.0 - sy;
            N[a] = fx * fy;
            dx[a] = (corner[a][0] ? 1.0 : -1.0) / g.hx() * fy;
            dy[a] = fx * (corner[a][1] ? 1.0 : -1.0) / g.hy();
          }
          visit(node, N, dx, dy, g.hx() * g.hy() / 4.0);
        }
    }
}

} // namespace chb::testing
