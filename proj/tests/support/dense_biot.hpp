#pragma once

#include "biot/biot_operators.hpp"
#include "support/testing.hpp"

namespace chb::testing {

struct DenseBiot {
  Dense B, A, fluid;
};

// B~ = 1/M + a D K^{-1} P D^T W a and A~ = M - M a D K~^{-1} P D^T W a M from the independent
// dense stencil, element and weight matrices.
inline DenseBiot dense_biot(const Grid& g, const MaterialModel& mat, const Vec& phi) {
  const auto N = static_cast<Eigen::Index>(g.size());
  const Vec M = mat.eval(Coefficient::Compressibility, phi), a = mat.eval(Coefficient::BiotWillis, phi);
  const Vec kappa = mat.eval(Coefficient::Permeability, phi);
  Dense D(N, 2 * N);
  D << dense_dx(g), dense_dy(g);
  const Dense W = dense_weights(g);
  Dense P = Dense::Identity(2 * N, 2 * N);
  for (Eigen::Index k = 0; k < N; ++k)
    if (g.is_dirichlet(static_cast<std::size_t>(k))) P(k, k) = P(N + k, N + k) = 0.0;
  const Dense K = dense_q1_stiffness(g, mat, phi, false, kMomentumScale);
  const Dense aug = D.transpose() * W * a.cwiseProduct(a).cwiseProduct(M).asDiagonal() * D;
  const Dense G = P * D.transpose() * W;
  DenseBiot out;
  out.B = Dense(M.cwiseInverse().asDiagonal()) +
          a.asDiagonal() * D * constrain_dense(g, K).partialPivLu().solve(G * a.asDiagonal());
  const Vec aM = a.cwiseProduct(M);
  out.A = Dense(M.asDiagonal()) -
          aM.asDiagonal() * D * constrain_dense(g, K + aug).partialPivLu().solve(G * aM.asDiagonal());
  out.fluid = -dense_neumann_laplacian(g, kappa) * out.A;
  return out;
}

} // namespace chb::testing
