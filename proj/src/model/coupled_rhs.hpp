#pragma once

#include "biot/biot_operators.hpp"
#include "model/sources.hpp"
#include "model/state.hpp"

#include <memory>

namespace chb {

struct EnergyParts {
  double interface = 0.0, elastic = 0.0, fluid = 0.0;
  double total() const { return interface + elastic + fluid; }
};

/// Discrete Cahn-Hilliard-Biot model: derived fields, loads, energy, and the nonlinear parts
/// of the fixed-point map. Displacements are packed [x; y] vectors.
class CoupledModel {
public:
  CoupledModel(GridPtr grid, MaterialModel material, SourceSpec sources, SolverSettings settings);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const MaterialModel& material() const noexcept { return material_; }
  const SourceSpec& sources() const noexcept { return sources_; }
  const SolverSettings& settings() const noexcept { return settings_; }
  /// Settings for solves nested inside an outer Krylov iteration.
  SolverSettings nested_settings() const;

  Vec pressure(const Vec& phi, const Vec& theta, const Vec& u) const;
  /// Lumped projection of the phase derivative of the elastic energy.
  Vec elastic_potential(const Vec& phi, const Vec& u) const;
  Vec chemical_potential(const Vec& phi, const Vec& u, const Vec& theta) const;
  SymTensorField stress(const Vec& phi, const Vec& u, const Vec& theta, const Vec* u_dot) const;

  /// Load of the eigenstrain: sum_g w_g B_g^T (2 C T) (unconstrained).
  Vec eigen_load(const Vec& phi) const;
  /// Body force plus traction at time t (unconstrained).
  Vec external_load(double t) const;
  /// Equilibrium displacement for given (phi, theta): K~(phi)^{-1}(G(alpha M theta) + l_T + f + g).
  Vec reconstruct_displacement(const Vec& phi, const Vec& theta, double t) const;
  /// Weak momentum residual K u - l_T - G(alpha p) - f - g (+ B (u - u_prev)/dt), constrained.
  Vec momentum_residual(const Vec& phi, const Vec& u, const Vec& theta, double t, const Vec* u_prev = nullptr,
                        double dt = 0.0) const;

  EnergyParts energy(const Vec& phi, const Vec& u, const Vec& theta) const;
  EnergyParts energy(const SimState& s) const { return energy(s.phi.values, s.u.packed(), s.theta.values); }

  /// Fills mu, p, sigma. u_prev/dt are used for the visco stress only.
  void refresh_derived(SimState& s, const VectorField2* u_prev = nullptr, double dt = 0.0) const;

private:
  GridPtr grid_;
  MaterialModel material_;
  SourceSpec sources_;
  SolverSettings settings_;
};

/// Operators frozen at the linearization point phi0.
struct FrozenLinearization {
  Vec phi0;
  Vec m0;       // m(phi0)
  Vec kappa_m0; // kappa(phi0) M(phi0)
  std::shared_ptr<const BiotOperators> biot0;       // elastic regime
  std::shared_ptr<const ElasticitySolver> visco_b0; // visco regime: B(phi0)
  std::shared_ptr<const ElasticityOperator> c0;     // visco regime: C(phi0)

  static FrozenLinearization build(const CoupledModel& model, const Vec& phi0);
};

struct ElasticRhs {
  Vec F1, F2;
  Vec u, p, mu; // derived from the iterate
};

struct ViscoRhs {
  Vec F1, F2, F3;
  Vec p, mu;
};

/// F1 = eps L(m0 L phi) + L_m(phi) mu + S_s and F2 = A(phi0) theta + L_kappa(phi) p + S_f, where
/// u solves the augmented equilibrium problem at (phi, theta).
ElasticRhs rhs_elastic(const CoupledModel& model, const Vec& phi, const Vec& theta,
                       const FrozenLinearization& lin, double t);

/// F1 as above, F2 = B0^{-1} C0 u - B(phi)^{-1}(C(phi) u - l_T - G(alpha p) - f - g),
/// F3 = -L_{kappa0 M0} theta + L_kappa(phi) p + S_f.
ViscoRhs rhs_visco(const CoupledModel& model, const Vec& phi, const Vec& u, const Vec& theta,
                   const FrozenLinearization& lin, double t);

} // namespace chb
