#pragma once

#include "mesh/fields.hpp"

#include <functional>
#include <vector>

namespace chb {

using LinearMap = std::function<Vec(const Vec&)>;

/// Converged when |r| <= tol_rel |b| + tol_abs (Euclidean norms).
struct LinearSettings {
  double tol_rel = 1e-10;
  double tol_abs = 1e-14;
  int max_iter = 20000;
};

struct CgReport {
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> history;
};

/// Jacobi-preconditioned conjugate gradients. When `kernel` is given (a unit vector spanning
/// the null space of a semidefinite operator) the right-hand side and every residual are
/// projected orthogonal to it and the returned solution has no component along it.
Vec pcg(const LinearMap& A, const Vec& b, const Vec& diag, const LinearSettings& s, CgReport* report = nullptr,
        const Vec* x0 = nullptr, const Vec* kernel = nullptr);

} // namespace chb
