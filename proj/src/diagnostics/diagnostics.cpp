#include "diagnostics/diagnostics.hpp"

#include "mesh/operators.hpp"

#include <algorithm>
#include <cstdio>

namespace chb {

const char* const kDiagnosticsHeader =
    "t,E_total,E_interface,E_elastic,E_fluid,mass_phi,mass_theta,picard_iters,rho,residual,dt";

std::string format_row(const DiagnosticsRow& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%d,%.16e,%.16e,%.16e", r.t, r.E_total,
                r.E_interface, r.E_elastic, r.E_fluid, r.mass_phi, r.mass_theta, r.picard_iters, r.rho, r.residual,
                r.dt);
  return buf;
}

EnergyParts total_energy(const CoupledModel& model, const SimState& s) { return model.energy(s); }

double PdeResiduals::max() const { return std::max({phase, chemical, momentum, fluid, pressure}); }

PdeResiduals pde_residual(const CoupledModel& model, const SimState& s, const SimState& prev, double dt) {
  const Grid& g = model.grid();
  const MaterialModel& mat = model.material();
  const Vec& phi = s.phi.values;
  const Vec& theta = s.theta.values;
  const Vec u = s.u.packed();
  PdeResiduals r;

  const Vec mu = model.chemical_potential(phi, u, theta);
  const Vec p = model.pressure(phi, theta, u);
  Vec phase = neumann_laplacian(g, mu, mat.eval(Coefficient::Mobility, phi));
  if (model.sources().s_phase) phase += sample(model.sources().s_phase, g, s.t, phi, theta);
  r.phase = (phi - prev.phi.values - dt * phase).cwiseAbs().maxCoeff();

  Vec fluid = neumann_laplacian(g, p, mat.eval(Coefficient::Permeability, phi));
  if (model.sources().s_fluid) fluid += sample(model.sources().s_fluid, g, s.t, phi, theta);
  r.fluid = (theta - prev.theta.values - dt * fluid).cwiseAbs().maxCoeff();

  const Vec u_prev = prev.u.packed();
  const Vec mom = model.momentum_residual(phi, u, theta, s.t, &u_prev, dt);
  const Vec w = weights(g);
  const auto n = phi.size();
  r.momentum = std::max(mom.head(n).cwiseQuotient(w).cwiseAbs().maxCoeff(),
                        mom.tail(n).cwiseQuotient(w).cwiseAbs().maxCoeff());

  if (s.derived_valid) {
    r.chemical = (s.mu.values - mu).cwiseAbs().maxCoeff();
    r.pressure = (s.p.values - p).cwiseAbs().maxCoeff();
  }
  return r;
}

DiagnosticsRow make_row(const CoupledModel& model, const SimState& s, const SimState* prev,
                        const PicardReport* report) {
  const Grid& g = model.grid();
  DiagnosticsRow row;
  row.t = s.t;
  const EnergyParts e = model.energy(s);
  row.E_interface = e.interface;
  row.E_elastic = e.elastic;
  row.E_fluid = e.fluid;
  row.E_total = e.total();
  row.mass_phi = mean(g, s.phi.values);
  row.mass_theta = mean(g, s.theta.values);
  if (prev && report) {
    row.picard_iters = report->iterations;
    row.rho = report->rho;
    row.dt = report->dt_used;
    row.residual = pde_residual(model, s, *prev, report->dt_used).max();
  }
  return row;
}

} // namespace chb
