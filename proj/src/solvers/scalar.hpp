#pragma once

#include "solvers/elasticity.hpp"

namespace chb {

/// Sparse matrix of the face form S_c (see laplacian_form).
SparseMatrix laplacian_matrix(const Grid& g, const Vec& coeff);
/// W - shift * S_c: the weighted form of I - shift * div(c grad).
SparseMatrix helmholtz_matrix(const Grid& g, const Vec& coeff, double shift);

/// Matrix-free SPD solve. With `semidefinite` the operator may have the constants as kernel;
/// the rhs is then projected and the solution with zero (Euclidean) mean is returned.
Vec solve_scalar_spd(const LinearMap& op, const Vec& rhs, const LinearSettings& s, bool semidefinite = false,
                     const Vec* diag = nullptr, CgReport* report = nullptr, const Vec* x0 = nullptr);

/// Assembled SPD system, factorized once and solved for many right-hand sides.
class SparseSpdSolver {
public:
  SparseSpdSolver(SparseMatrix A, SolverSettings settings);
  Vec solve(const Vec& rhs, CgReport* report = nullptr) const;
  const SparseMatrix& matrix() const noexcept { return A_; }

private:
  SparseMatrix A_;
  SolverSettings settings_;
  std::shared_ptr<Eigen::SimplicialLDLT<SparseMatrix>> chol_;
};

} // namespace chb
