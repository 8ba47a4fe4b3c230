// Fixed-point window for the pressure formulation: the unknowns are (phi, p), the displacement
// solves K(phi) u = l_T + G(alpha p) + f + g and the fluid content is recovered as
// theta = p/M + alpha div u. The pressure update is a preconditioned correction of the
// fluid-content balance theta - theta_n = dt (L_kappa p + S_f).
#include "mesh/operators.hpp"
#include "stepper/stepper.hpp"

#include <algorithm>
#include <cmath>

namespace chb {

SimState Stepper::attempt_pressure(const SimState& s, const LinearSteps& steps, double dt, PicardReport& r) const {
  const CoupledModel& m = *model_;
  const MaterialModel& mat = m.material();
  const Grid& g = m.grid();
  const Vec w = weights(g);
  const double t1 = s.t + dt;

  Vec phi = s.phi.values;
  Vec p = s.derived_valid ? s.p.values : m.pressure(phi, s.theta.values, s.u.packed());
  const double floor = 1e-14 * (1.0 + norm_h(g, phi) + norm_h(g, p));

  auto displacement = [&](const Vec& ph, const Vec& pr) {
    const Vec a = mat.eval(Coefficient::BiotWillis, ph);
    const Vec rhs = m.eigen_load(ph) + weak_gradient(g, a.cwiseProduct(pr)) + m.external_load(t1);
    const ElasticitySolver K(ElasticityOperator(m.grid_ptr(), mat, ph, EllipticVariant::PlainC, kMomentumScale),
                             m.settings());
    return K.solve(rhs);
  };
  auto fluid_content = [&](const Vec& ph, const Vec& pr, const Vec& u) {
    const Vec a = mat.eval(Coefficient::BiotWillis, ph);
    const Vec M = mat.eval(Coefficient::Compressibility, ph);
    return Vec(pr.cwiseQuotient(M) + a.cwiseProduct(divergence_packed(g, u)));
  };

  Vec u;
  for (int k = 0; k < cfg_.max_picard_iters; ++k) {
    u = displacement(phi, p);
    const Vec theta = fluid_content(phi, p, u);
    const Vec mu = m.chemical_potential(phi, u, theta);
    Vec F1 = m.material().eps() * neumann_laplacian(g, steps.lin().m0.cwiseProduct(neumann_laplacian(g, phi, 1.0)), 1.0) +
             neumann_laplacian(g, mu, mat.eval(Coefficient::Mobility, phi));
    if (m.sources().s_phase) F1 += sample(m.sources().s_phase, g, t1, phi, theta);
    Vec flux = neumann_laplacian(g, p, mat.eval(Coefficient::Permeability, phi));
    if (m.sources().s_fluid) flux += sample(m.sources().s_fluid, g, t1, phi, theta);
    const Vec R = theta - s.theta.values - dt * flux;

    const Vec phi1 = steps.phi(s.phi.values, F1);
    const Vec p1 = p + steps.fluid_solve(-w.cwiseProduct(R));
    const double inc = std::sqrt(std::pow(norm_h(g, phi1 - phi), 2) + std::pow(norm_h(g, p1 - p), 2));
    r.increments.push_back(inc);
    phi = phi1;
    p = p1;
    if (!std::isfinite(inc)) {
      r.events.push_back("non-finite iterate");
      break;
    }
    if (inc <= cfg_.tol_picard) {
      r.converged = true;
      break;
    }
    if (k >= 2 && inc > 1e8 * std::max(r.increments.front(), cfg_.tol_picard)) {
      r.events.push_back("iteration diverging");
      break;
    }
  }
  r.rho = contraction_factor(r.increments, floor);
  r.iterations = std::max<int>(1, static_cast<int>(r.increments.size()) - 1);
  if (!r.converged) return s;

  SimState next(m.grid_ptr());
  next.t = t1;
  next.phi = ScalarField(m.grid_ptr(), phi);
  u = displacement(phi, p);
  next.u = VectorField2::unpack(m.grid_ptr(), u);
  next.theta = ScalarField(m.grid_ptr(), fluid_content(phi, p, u));
  finish(next, s, dt);
  return next;
}

} // namespace chb
