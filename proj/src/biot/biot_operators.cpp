#include "biot/biot_operators.hpp"

#include "mesh/operators.hpp"

namespace chb {

BiotOperators::BiotOperators(GridPtr grid, const MaterialModel& material, Vec phi, SolverSettings settings,
                             double stiffness_scale)
    : grid_(std::move(grid)), material_(&material), phi_(std::move(phi)), settings_(settings),
      scale_(stiffness_scale) {
  require(phi_.size() == static_cast<Eigen::Index>(grid_->size()), ErrorCode::Size,
          "phase field length does not match grid");
  M_ = material.eval(Coefficient::Compressibility, phi_);
  alpha_ = material.eval(Coefficient::BiotWillis, phi_);
  kappa_ = material.eval(Coefficient::Permeability, phi_);
  require_positive(M_, "compressibility M");
  require_positive(kappa_, "permeability kappa");
}

const ElasticitySolver& BiotOperators::plain_solver() const {
  std::call_once(plain_once_, [this] {
    plain_ = std::make_unique<ElasticitySolver>(
        ElasticityOperator(grid_, *material_, phi_, EllipticVariant::PlainC, scale_), settings_);
  });
  return *plain_;
}

const ElasticitySolver& BiotOperators::augmented_solver() const {
  std::call_once(aug_once_, [this] {
    aug_ = std::make_unique<ElasticitySolver>(
        ElasticityOperator(grid_, *material_, phi_, EllipticVariant::AugmentedC, scale_), settings_);
  });
  return *aug_;
}

Vec BiotOperators::B_tilde(const Vec& q) const {
  require(q.size() == phi_.size(), ErrorCode::Size, "field length does not match grid");
  Vec out = q.cwiseQuotient(M_);
  if (alpha_.cwiseAbs().maxCoeff() == 0.0) return out;
  const Vec v = plain_solver().solve(weak_gradient(*grid_, alpha_.cwiseProduct(q)));
  return out + alpha_.cwiseProduct(divergence_packed(*grid_, v));
}

Vec BiotOperators::A_tilde(const Vec& theta) const {
  require(theta.size() == phi_.size(), ErrorCode::Size, "field length does not match grid");
  const Vec mt = M_.cwiseProduct(theta);
  if (alpha_.cwiseAbs().maxCoeff() == 0.0) return mt;
  const Vec v = augmented_solver().solve(weak_gradient(*grid_, alpha_.cwiseProduct(mt)));
  return mt - M_.cwiseProduct(alpha_).cwiseProduct(divergence_packed(*grid_, v));
}

Vec BiotOperators::fluid_operator(const Vec& theta) const {
  return -neumann_laplacian(*grid_, A_tilde(theta), kappa_);
}

double WeightedSpaceH::inner(const Vec& u, const Vec& v) const {
  return inner_h(ops_->grid(), u, ops_->A_tilde(v));
}

ScalarField apply_B_tilde(const BiotOperators& ops, const ScalarField& q) {
  return ScalarField(q.grid, ops.B_tilde(q.values));
}

ScalarField apply_A_tilde(const BiotOperators& ops, const ScalarField& theta) {
  return ScalarField(theta.grid, ops.A_tilde(theta.values));
}

ScalarField apply_fluid_operator(const BiotOperators& ops, const ScalarField& theta) {
  return ScalarField(theta.grid, ops.fluid_operator(theta.values));
}

double inner_H(const WeightedSpaceH& space, const ScalarField& u, const ScalarField& v) {
  check_same_grid(u.grid, v.grid);
  return space.inner(u.values, v.values);
}

} // namespace chb
