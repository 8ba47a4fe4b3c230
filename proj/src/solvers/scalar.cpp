#include "solvers/scalar.hpp"

#include "mesh/operators.hpp"

#include <cmath>

namespace chb {

SparseMatrix laplacian_matrix(const Grid& g, const Vec& coeff) {
  require(coeff.size() == static_cast<Eigen::Index>(g.size()), ErrorCode::Size, "coefficient length mismatch");
  std::vector<Eigen::Triplet<double>> t;
  auto face = [&](Eigen::Index a, Eigen::Index b, double w) {
    const double v = w * 0.5 * (coeff[a] + coeff[b]);
    t.emplace_back(static_cast<int>(a), static_cast<int>(a), -v);
    t.emplace_back(static_cast<int>(b), static_cast<int>(b), -v);
    t.emplace_back(static_cast<int>(a), static_cast<int>(b), v);
    t.emplace_back(static_cast<int>(b), static_cast<int>(a), v);
  };
  for (int j = 0; j < g.ny(); ++j) {
    const double cy = (j == 0 || j == g.ny() - 1) ? 0.5 : 1.0;
    for (int i = 0; i + 1 < g.nx(); ++i) {
      const auto a = static_cast<Eigen::Index>(g.index(i, j));
      face(a, a + 1, g.hy() * cy / g.hx());
    }
  }
  for (int j = 0; j + 1 < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double cx = (i == 0 || i == g.nx() - 1) ? 0.5 : 1.0;
      const auto a = static_cast<Eigen::Index>(g.index(i, j));
      face(a, a + g.nx(), g.hx() * cx / g.hy());
    }
  }
  const auto n = static_cast<Eigen::Index>(g.size());
  SparseMatrix S(n, n);
  S.setFromTriplets(t.begin(), t.end());
  return S;
}

SparseMatrix helmholtz_matrix(const Grid& g, const Vec& coeff, double shift) {
  require(shift >= 0.0, ErrorCode::InvalidArgument, "Helmholtz shift must be nonnegative");
  require_positive(coeff, "Helmholtz coefficient");
  SparseMatrix A = -shift * laplacian_matrix(g, coeff);
  SparseMatrix W(A.rows(), A.cols());
  W.setIdentity();
  W = weights(g).asDiagonal() * W;
  return A + W;
}

Vec solve_scalar_spd(const LinearMap& op, const Vec& rhs, const LinearSettings& s, bool semidefinite,
                     const Vec* diag, CgReport* report, const Vec* x0) {
  const Vec d = diag ? *diag : Vec::Ones(rhs.size());
  if (!semidefinite) return pcg(op, rhs, d, s, report, x0);
  const Vec kernel = Vec::Ones(rhs.size()) / std::sqrt(static_cast<double>(rhs.size()));
  return pcg(op, rhs, d, s, report, x0, &kernel);
}

SparseSpdSolver::SparseSpdSolver(SparseMatrix A, SolverSettings settings) : A_(std::move(A)), settings_(settings) {
  if (settings_.backend == LinearBackend::Cholesky) {
    chol_ = std::make_shared<Eigen::SimplicialLDLT<SparseMatrix>>(A_);
    require(chol_->info() == Eigen::Success, ErrorCode::Solver, "sparse Cholesky factorization failed");
  }
}

Vec SparseSpdSolver::solve(const Vec& rhs, CgReport* report) const {
  if (chol_) {
    Vec x = chol_->solve(rhs);
    if (report) {
      report->iterations = 1;
      report->residual = (A_ * x - rhs).norm();
      report->history = {rhs.norm(), report->residual};
    }
    return x;
  }
  const Vec d = A_.diagonal();
  return pcg([this](const Vec& v) -> Vec { return A_ * v; }, rhs, d, settings_.lin, report);
}

} // namespace chb
