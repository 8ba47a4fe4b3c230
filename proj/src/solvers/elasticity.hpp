#pragma once

#include "materials/material.hpp"
#include "solvers/cg.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <memory>

namespace chb {

enum class EllipticVariant { PlainC, AugmentedC, ViscoB, ScalarHelmholtz };
enum class LinearBackend { Cholesky, CG };

const char* to_string(EllipticVariant v);
const char* to_string(LinearBackend b);

struct SolverSettings {
  LinearSettings lin;
  LinearBackend backend = LinearBackend::Cholesky;
};

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Bilinear Q1 finite-element form K(u,w) = scale * sum_g w_g C_g e(u):e(w) on the nodal grid,
/// 2x2 Gauss points per cell, Lame values evaluated at the interpolated phase. AugmentedC adds
/// D^T W diag(alpha^2 M) D with the nodal divergence D. Vectors are packed [x; y]; Dirichlet
/// dofs are eliminated by acting as the identity on them.
class ElasticityOperator {
public:
  ElasticityOperator(GridPtr grid, const MaterialModel& material, Vec phi, EllipticVariant variant,
                     double scale = 1.0);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  EllipticVariant variant() const noexcept { return variant_; }
  const Vec& phi() const noexcept { return phi_; }
  Eigen::Index dofs() const noexcept { return 2 * static_cast<Eigen::Index>(grid_->size()); }

  /// Unconstrained form applied to u (no Dirichlet elimination).
  Vec apply_form(const Vec& u) const;
  /// Constrained operator: P K P + (I - P).
  Vec apply(const Vec& u) const;
  Vec diagonal() const;
  SparseMatrix assemble() const;
  /// Zeroes the Dirichlet entries.
  Vec constrain(Vec v) const;

private:
  struct GaussData {
    double lambda, mu;
  };
  GridPtr grid_;
  Vec phi_;
  EllipticVariant variant_;
  double scale_;
  std::vector<GaussData> gauss_; // 4 per cell
  Vec aug_;                       // W alpha^2 M per node, empty unless augmented

  template <class Visit>
  void for_each_cell(Visit&& visit) const;
};

class ElasticitySolver {
public:
  ElasticitySolver(ElasticityOperator op, SolverSettings settings);

  const ElasticityOperator& op() const noexcept { return op_; }
  const SolverSettings& settings() const noexcept { return settings_; }
  /// Solves K u = rhs on the free dofs; rhs entries on Dirichlet dofs are ignored.
  Vec solve(const Vec& rhs, CgReport* report = nullptr) const;

private:
  ElasticityOperator op_;
  SolverSettings settings_;
  std::shared_ptr<Eigen::SimplicialLDLT<SparseMatrix>> chol_;
  Vec diag_;
};

/// Nodal load of a body force with trapezoidal (lumped) quadrature.
Vec body_load(const VectorField2& f);
/// Boundary load of a traction field; only nodes on traction edges that are not Dirichlet
/// receive a contribution, integrated with the trapezoidal rule along each traction edge.
Vec traction_load(const VectorField2& g);

struct EllipticProblem {
  GridPtr grid;
  const MaterialModel* material = nullptr;
  EllipticVariant variant = EllipticVariant::PlainC;
  Vec phi;
  double scale = 1.0;
  SolverSettings settings;
};

VectorField2 solve_elasticity(const EllipticProblem& problem, const VectorField2& body_force,
                              const VectorField2& traction);

} // namespace chb
