#pragma once

#include "solvers/elasticity.hpp"

#include <mutex>

namespace chb {

/// Stiffness scale of the momentum operator: W = C(e - T):(e - T) differentiates to 2 C(e - T).
inline constexpr double kMomentumScale = 2.0;

/// Conjugate fluid-content/pressure operators at a fixed phase field:
///   B~ q = q/M + alpha div K^{-1} G(alpha q)
///   A~ t = M t - M alpha div K~^{-1} G(alpha M t)
/// with K the momentum stiffness, K~ = K + D^T W alpha^2 M D, and G the weighted adjoint of div.
/// Both are self-adjoint in the weighted inner product and inverse to each other.
class BiotOperators {
public:
  BiotOperators(GridPtr grid, const MaterialModel& material, Vec phi, SolverSettings settings,
                double stiffness_scale = kMomentumScale);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const Vec& phi() const noexcept { return phi_; }
  const Vec& M() const noexcept { return M_; }
  const Vec& alpha() const noexcept { return alpha_; }
  const Vec& kappa() const noexcept { return kappa_; }

  Vec B_tilde(const Vec& q) const;
  Vec A_tilde(const Vec& theta) const;
  /// -div(kappa grad(A~ theta)).
  Vec fluid_operator(const Vec& theta) const;

  const ElasticitySolver& plain_solver() const;
  const ElasticitySolver& augmented_solver() const;

private:
  GridPtr grid_;
  const MaterialModel* material_;
  Vec phi_, M_, alpha_, kappa_;
  SolverSettings settings_;
  double scale_;
  mutable std::once_flag plain_once_, aug_once_;
  mutable std::unique_ptr<ElasticitySolver> plain_, aug_;
};

/// The space H with (u,v)_H = <u, A~(phi0) v>_h.
class WeightedSpaceH {
public:
  explicit WeightedSpaceH(std::shared_ptr<const BiotOperators> frozen) : ops_(std::move(frozen)) {}
  double inner(const Vec& u, const Vec& v) const;
  const BiotOperators& operators() const noexcept { return *ops_; }

private:
  std::shared_ptr<const BiotOperators> ops_;
};

ScalarField apply_B_tilde(const BiotOperators& ops, const ScalarField& q);
ScalarField apply_A_tilde(const BiotOperators& ops, const ScalarField& theta);
ScalarField apply_fluid_operator(const BiotOperators& ops, const ScalarField& theta);
double inner_H(const WeightedSpaceH& space, const ScalarField& u, const ScalarField& v);

} // namespace chb
