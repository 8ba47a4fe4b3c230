#include "stepper/stepper.hpp"

#include "mesh/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chb {

namespace {

void fix_mass(const Grid& g, Vec& v, double target) {
  const Vec w = weights(g);
  v.array() += (target - w.dot(v)) / w.sum();
}

std::string fmt_double(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

} // namespace

void StepperConfig::validate() const {
  require(std::isfinite(dt) && dt > 0.0, ErrorCode::Config, "stepper.dt must be positive");
  require(std::isfinite(tol_picard) && tol_picard > 0.0, ErrorCode::Config, "stepper.tol_picard must be positive");
  require(max_picard_iters >= 1, ErrorCode::Config, "stepper.max_picard must be at least 1");
  require(shrink_factor > 0.0 && shrink_factor < 1.0, ErrorCode::Config, "stepper.shrink must lie in (0,1)");
  require(max_shrinks >= 0, ErrorCode::Config, "stepper.max_shrinks must be nonnegative");
}

double contraction_factor(const std::vector<double>& inc, double floor) {
  std::vector<double> ratios;
  for (std::size_t k = 1; k < inc.size(); ++k)
    if (inc[k - 1] > floor && inc[k] > floor) ratios.push_back(inc[k] / inc[k - 1]);
  if (ratios.empty()) return 0.0;
  std::sort(ratios.begin(), ratios.end());
  const std::size_t m = ratios.size() / 2;
  return ratios.size() % 2 ? ratios[m] : 0.5 * (ratios[m - 1] + ratios[m]);
}

LinearSteps::LinearSteps(const CoupledModel& model, const Vec& phi0, double dt)
    : model_(&model), lin_(FrozenLinearization::build(model, phi0)), dt_(dt) {
  require(dt > 0.0, ErrorCode::InvalidArgument, "window length must be positive");
  const Grid& g = model.grid();
  const Vec w = weights(g);
  const auto n = static_cast<Eigen::Index>(g.size());
  require_positive(lin_.m0, "mobility m");

  SparseMatrix Wd(n, n);
  Wd.setIdentity();
  Wd = w.asDiagonal() * Wd;
  const SparseMatrix S = laplacian_matrix(g, Vec::Ones(n));
  const Vec scale = lin_.m0.cwiseQuotient(w);
  const SparseMatrix SDS = S * scale.asDiagonal() * S;
  phi_solver_ = std::make_unique<SparseSpdSolver>(SparseMatrix(Wd + (dt * model.material().eps()) * SDS),
                                                  model.settings());

  if (model.material().visco()) {
    theta_solver_ = std::make_unique<SparseSpdSolver>(helmholtz_matrix(g, lin_.kappa_m0, dt), model.settings());
    const SparseMatrix A = lin_.visco_b0->op().assemble() + dt * lin_.c0->assemble();
    u_solver_ = std::make_unique<SparseSpdSolver>(A, model.settings());
  } else {
    s_kappa0_ = laplacian_matrix(g, lin_.biot0->kappa());
    fluid_diag_ = w.cwiseQuotient(lin_.biot0->M()) - dt * Vec(s_kappa0_.diagonal());
  }
}

Vec LinearSteps::phi(const Vec& phi_prev, const Vec& F1) const {
  const Grid& g = model_->grid();
  const Vec w = weights(g);
  const Vec rhs = phi_prev + dt_ * F1;
  Vec out = phi_solver_->solve(w.cwiseProduct(rhs));
  fix_mass(g, out, w.dot(rhs));
  return out;
}

Vec LinearSteps::fluid_solve(const Vec& weighted_rhs) const {
  require(lin_.biot0 != nullptr, ErrorCode::InvalidArgument, "fluid correction needs the elastic regime");
  const Grid& g = model_->grid();
  const Vec w = weights(g);
  const BiotOperators& b0 = *lin_.biot0;
  auto op = [&](const Vec& q) -> Vec { return w.cwiseProduct(b0.B_tilde(q)) - dt_ * (s_kappa0_ * q); };
  return pcg(op, weighted_rhs, fluid_diag_, model_->settings().lin);
}

Vec LinearSteps::theta_elastic(const Vec& theta_prev, const Vec& F2) const {
  const Grid& g = model_->grid();
  const Vec w = weights(g);
  const Vec rhs = theta_prev + dt_ * F2;
  Vec out = lin_.biot0->B_tilde(fluid_solve(w.cwiseProduct(rhs)));
  fix_mass(g, out, w.dot(rhs));
  return out;
}

Vec LinearSteps::theta_visco(const Vec& theta_prev, const Vec& F3) const {
  require(theta_solver_ != nullptr, ErrorCode::InvalidArgument, "visco substep needs rho = 1");
  const Grid& g = model_->grid();
  const Vec w = weights(g);
  const Vec rhs = theta_prev + dt_ * F3;
  Vec out = theta_solver_->solve(w.cwiseProduct(rhs));
  fix_mass(g, out, w.dot(rhs));
  return out;
}

Vec LinearSteps::u_visco(const Vec& u_prev, const Vec& F2) const {
  require(u_solver_ != nullptr, ErrorCode::InvalidArgument, "visco substep needs rho = 1");
  const ElasticityOperator& B0 = lin_.visco_b0->op();
  return B0.constrain(u_solver_->solve(B0.constrain(B0.apply_form(u_prev + dt_ * F2))));
}

ScalarField linear_substep_phi(const LinearSteps& s, const ScalarField& phi_prev, const ScalarField& F1) {
  return ScalarField(phi_prev.grid, s.phi(phi_prev.values, F1.values));
}

ScalarField linear_substep_theta_elastic(const LinearSteps& s, const ScalarField& theta_prev, const ScalarField& F2) {
  return ScalarField(theta_prev.grid, s.theta_elastic(theta_prev.values, F2.values));
}

ScalarField linear_substep_theta_visco(const LinearSteps& s, const ScalarField& theta_prev, const ScalarField& F3) {
  return ScalarField(theta_prev.grid, s.theta_visco(theta_prev.values, F3.values));
}

VectorField2 linear_substep_u_visco(const LinearSteps& s, const VectorField2& u_prev, const VectorField2& F2) {
  return VectorField2::unpack(u_prev.grid, s.u_visco(u_prev.packed(), F2.packed()));
}

Stepper::Stepper(const CoupledModel& model, StepperConfig cfg) : model_(&model), cfg_(cfg) {
  cfg_.validate();
  require(cfg_.formulation == Formulation::FluidContent || !model.material().visco(), ErrorCode::Config,
          "the pressure formulation is only available for rho = 0");
}

SimState Stepper::make_initial(const ScalarField& phi, const ScalarField& theta, double t) const {
  check_same_grid(phi.grid, model_->grid_ptr());
  check_same_grid(theta.grid, model_->grid_ptr());
  SimState s(model_->grid_ptr());
  s.t = t;
  s.phi = phi;
  s.theta = theta;
  s.u = VectorField2::unpack(model_->grid_ptr(), model_->reconstruct_displacement(phi.values, theta.values, t));
  model_->refresh_derived(s);
  return s;
}

void Stepper::reset_frozen() const {
  frozen_phi_ = Vec();
  frozen_.clear();
}

const LinearSteps& Stepper::steps_for(const Vec& phi, double dt) const {
  if (!cfg_.refresh_linearization) {
    if (frozen_phi_.size() == 0) frozen_phi_ = phi;
    auto& slot = frozen_[dt];
    if (!slot) slot = std::make_unique<LinearSteps>(*model_, frozen_phi_, dt);
    return *slot;
  }
  if (!refreshed_ || refreshed_->dt() != dt || refreshed_->lin().phi0 != phi)
    refreshed_ = std::make_unique<LinearSteps>(*model_, phi, dt);
  return *refreshed_;
}

void Stepper::finish(SimState& next, const SimState& prev, double dt) const {
  model_->refresh_derived(next, &prev.u, dt);
}

SimState Stepper::attempt_fluid_content(const SimState& s, const LinearSteps& steps, double dt,
                                        PicardReport& r) const {
  const CoupledModel& m = *model_;
  const Grid& g = m.grid();
  const bool visco = m.material().visco();
  const double t1 = s.t + dt;
  Vec phi = s.phi.values, theta = s.theta.values, u = s.u.packed();
  const Eigen::Index n = phi.size();
  const double floor = 1e-14 * (1.0 + norm_h(g, phi) + norm_h(g, theta));

  for (int k = 0; k < cfg_.max_picard_iters; ++k) {
    Vec phi1, theta1, u1 = u;
    if (visco) {
      const ViscoRhs R = rhs_visco(m, phi, u, theta, steps.lin(), t1);
      phi1 = steps.phi(s.phi.values, R.F1);
      u1 = steps.u_visco(s.u.packed(), R.F2);
      theta1 = steps.theta_visco(s.theta.values, R.F3);
    } else {
      const ElasticRhs R = rhs_elastic(m, phi, theta, steps.lin(), t1);
      phi1 = steps.phi(s.phi.values, R.F1);
      theta1 = steps.theta_elastic(s.theta.values, R.F2);
    }
    const Vec du = u1 - u;
    const double d2 = std::pow(norm_h(g, phi1 - phi), 2) + std::pow(norm_h(g, theta1 - theta), 2) +
                      std::pow(norm_h(g, du.head(n)), 2) + std::pow(norm_h(g, du.tail(n)), 2);
    const double inc = std::sqrt(d2);
    r.increments.push_back(inc);
    phi = std::move(phi1);
    theta = std::move(theta1);
    u = std::move(u1);
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
  next.theta = ScalarField(m.grid_ptr(), theta);
  next.u = VectorField2::unpack(m.grid_ptr(), visco ? u : m.reconstruct_displacement(phi, theta, t1));
  finish(next, s, dt);
  return next;
}

SimState Stepper::attempt(const SimState& s, double dt, PicardReport& r) const {
  r.t_start = s.t;
  r.dt_used = dt;
  r.converged = false;
  r.increments.clear();
  try {
    const LinearSteps& steps = steps_for(s.phi.values, dt);
    return cfg_.formulation == Formulation::Pressure ? attempt_pressure(s, steps, dt, r)
                                                     : attempt_fluid_content(s, steps, dt, r);
  } catch (const SolverFailure& e) {
    r.events.push_back(std::string("linear solver failure: ") + e.what());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Coefficient && e.code() != ErrorCode::Solver) throw;
    r.events.push_back(std::string("solver setup failure: ") + e.what());
  }
  r.converged = false;
  return s;
}

std::pair<SimState, PicardReport> Stepper::picard_window(const SimState& s, double dt) const {
  require(dt > 0.0, ErrorCode::InvalidArgument, "window length must be positive");
  PicardReport r;
  for (int shrink = 0;; ++shrink) {
    SimState next = attempt(s, dt, r);
    r.shrinks = shrink;
    if (r.converged) return {std::move(next), r};
    if (r.increments.size() >= static_cast<std::size_t>(cfg_.max_picard_iters))
      r.events.push_back("no convergence in " + std::to_string(cfg_.max_picard_iters) + " iterations at dt " +
                         fmt_double(dt));
    if (shrink >= cfg_.max_shrinks) break;
    dt *= cfg_.shrink_factor;
    r.events.push_back("shrinking window to dt " + fmt_double(dt));
  }
  std::string msg = "fixed-point iteration failed at t = " + fmt_double(s.t) + " after " +
                    std::to_string(cfg_.max_shrinks) + " window reductions";
  if (!r.events.empty()) msg += " (" + r.events.back() + ")";
  throw PicardFailure(msg, r);
}

Trajectory run_simulation(const Stepper& stepper, const SimState& initial, double t_end, const WindowObserver& obs,
                          bool keep_states) {
  Trajectory tr;
  tr.states.push_back(initial);
  if (obs) obs(initial, nullptr, nullptr);
  SimState cur = initial;
  const double eps_t = 1e-12 * std::max(1.0, std::abs(t_end));
  while (cur.t < t_end - eps_t) {
    const double dt = std::min(stepper.config().dt, t_end - cur.t);
    try {
      auto [next, rep] = stepper.picard_window(cur, dt);
      if (t_end - next.t <= eps_t) next.t = t_end;
      if (obs) obs(next, &cur, &rep);
      tr.reports.push_back(std::move(rep));
      if (keep_states) tr.states.push_back(next);
      cur = std::move(next);
    } catch (const PicardFailure& e) {
      tr.complete = false;
      tr.failure = e.what();
      tr.reports.push_back(e.report());
      break;
    }
  }
  if (!keep_states) tr.states.back() = cur;
  return tr;
}

} // namespace chb
