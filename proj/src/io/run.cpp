#include "io/run.hpp"

#include "model/initial.hpp"

#include <cmath>
#include <numbers>

namespace chb {

SimState initial_state(const RunConfig& cfg, const Stepper& stepper) {
  const GridPtr& g = stepper.model().grid_ptr();
  ScalarField phi(g);
  switch (cfg.init.phi) {
  case PhiInit::Constant: phi = ScalarField(g, cfg.init.phi_value); break;
  case PhiInit::Interface: phi = interface_field(g, cfg.material.eps); break;
  case PhiInit::Spinodal: phi = noise_field(g, cfg.init.seed, cfg.init.noise, cfg.init.phi_value); break;
  }
  ScalarField theta(g, cfg.init.theta_value);
  const double pi = std::numbers::pi;
  for (int j = 0; j < g->ny(); ++j)
    for (int i = 0; i < g->nx(); ++i) {
      const double x = g->x(i) / g->lx(), y = g->y(j) / g->ly();
      if (cfg.init.theta == ThetaInit::Gaussian)
        theta.at(i, j) += cfg.init.theta_amplitude * std::exp(-((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)) / 0.02);
      else if (cfg.init.theta == ThetaInit::Cosine)
        theta.at(i, j) += cfg.init.theta_amplitude * std::cos(pi * x) * std::cos(pi * y);
    }
  return stepper.make_initial(phi, theta, 0.0);
}

Simulation::Simulation(RunConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  grid_ = make_grid(cfg_.nx, cfg_.ny, cfg_.lx, cfg_.ly, cfg_.edges);
  model_ = std::make_unique<CoupledModel>(grid_, MaterialModel(cfg_.material), cfg_.sources(), cfg_.solver);
  stepper_ = std::make_unique<Stepper>(*model_, cfg_.stepper);
  state_ = initial_state(cfg_, *stepper_);
  rows_.push_back(make_row(*model_, state_, nullptr, nullptr));
}

const PicardReport& Simulation::step() {
  const double remaining = cfg_.t_end - state_.t;
  const double dt = remaining > 1e-12 ? std::min(cfg_.stepper.dt, remaining) : cfg_.stepper.dt;
  auto [next, rep] = stepper_->picard_window(state_, dt);
  if (std::abs(cfg_.t_end - next.t) <= 1e-12 * std::max(1.0, std::abs(cfg_.t_end))) next.t = cfg_.t_end;
  rows_.push_back(make_row(*model_, next, &state_, &rep));
  state_ = std::move(next);
  last_ = std::move(rep);
  ++windows_;
  return last_;
}

RunResult Simulation::run(const std::string& out_dir) {
  std::unique_ptr<OutputWriter> out;
  if (!out_dir.empty()) {
    out = std::make_unique<OutputWriter>(out_dir, serialize_config(cfg_));
    out->append_row(rows_.back());
    if (windows_ % cfg_.output_stride == 0) out->snapshot(state_, windows_);
  }
  RunResult res;
  const double eps_t = 1e-12 * std::max(1.0, std::abs(cfg_.t_end));
  while (state_.t < cfg_.t_end - eps_t) {
    try {
      step();
    } catch (const PicardFailure& e) {
      res.complete = false;
      res.failure = e.what();
      break;
    }
    ++res.windows;
    if (out) {
      out->append_row(rows_.back());
      if (windows_ % cfg_.output_stride == 0) out->snapshot(state_, windows_);
    }
  }
  return res;
}

std::vector<std::pair<std::string, IdentityReport>> oracle_suite(const RunConfig& cfg) {
  std::vector<std::pair<std::string, IdentityReport>> out;
  const GridPtr g = make_grid(8, 8, cfg.lx, cfg.ly, cfg.edges);
  const MaterialModel mat(cfg.material);
  for (std::uint64_t seed = 1; seed <= 3; ++seed)
    out.emplace_back("random_phi_" + std::to_string(seed),
                     verify_operator_identities(mat, smooth_random_field(g, seed), cfg.solver));
  MaterialParams reduced = cfg.material;
  reduced.alpha0 = reduced.alpha1 = 0.0;
  reduced.biot_m0 = 1.0;
  reduced.biot_m1 = 0.0;
  reduced.kappa0 = 1.0;
  reduced.kappa1 = 0.0;
  out.emplace_back("decoupled", verify_operator_identities(MaterialModel(reduced), smooth_random_field(g, 7), cfg.solver));
  return out;
}

} // namespace chb
