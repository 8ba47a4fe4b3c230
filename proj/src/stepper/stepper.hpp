#pragma once

#include "model/coupled_rhs.hpp"
#include "solvers/scalar.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace chb {

enum class Formulation { FluidContent, Pressure };

struct StepperConfig {
  double dt = 1e-3;
  double tol_picard = 1e-9;
  int max_picard_iters = 60;
  double shrink_factor = 0.5;
  int max_shrinks = 4;
  bool refresh_linearization = true;
  /// Pressure evolves (phi, p) instead of (phi, theta); elastic regime only.
  Formulation formulation = Formulation::FluidContent;

  void validate() const;
};

/// Outcome of one window. `increments` holds |x_{k+1} - x_k| for every application of the
/// fixed-point map in the accepted attempt; `iterations` counts applications after the first.
struct PicardReport {
  double t_start = 0.0;
  double dt_used = 0.0;
  int iterations = 0;
  std::vector<double> increments;
  double rho = 0.0;
  int shrinks = 0;
  bool converged = false;
  std::vector<std::string> events;
};

/// Median of successive increment ratios, ignoring increments at round-off level.
double contraction_factor(const std::vector<double>& increments, double floor);

/// Operators and factorizations of the linear substeps for one (phi0, dt).
class LinearSteps {
public:
  LinearSteps(const CoupledModel& model, const Vec& phi0, double dt);

  const FrozenLinearization& lin() const noexcept { return lin_; }
  double dt() const noexcept { return dt_; }

  /// (I + dt eps L(m0 L)) phi = phi_prev + dt F1.
  Vec phi(const Vec& phi_prev, const Vec& F1) const;
  /// Implicit Euler for d/dt theta + A(phi0) theta = F2, solved in q = A~(phi0) theta.
  Vec theta_elastic(const Vec& theta_prev, const Vec& F2) const;
  /// Solves (W B~0 - dt S_kappa0) q = weighted_rhs.
  Vec fluid_solve(const Vec& weighted_rhs) const;
  /// (I - dt div(kappa0 M0 grad)) theta = theta_prev + dt F3.
  Vec theta_visco(const Vec& theta_prev, const Vec& F3) const;
  /// (B0 + dt C0) u = B0 (u_prev + dt F2).
  Vec u_visco(const Vec& u_prev, const Vec& F2) const;

private:
  const CoupledModel* model_;
  FrozenLinearization lin_;
  double dt_;
  std::unique_ptr<SparseSpdSolver> phi_solver_, theta_solver_, u_solver_;
  SparseMatrix s_kappa0_;
  Vec fluid_diag_;
};

ScalarField linear_substep_phi(const LinearSteps& steps, const ScalarField& phi_prev, const ScalarField& F1);
ScalarField linear_substep_theta_elastic(const LinearSteps& steps, const ScalarField& theta_prev,
                                         const ScalarField& F2);
ScalarField linear_substep_theta_visco(const LinearSteps& steps, const ScalarField& theta_prev,
                                       const ScalarField& F3);
VectorField2 linear_substep_u_visco(const LinearSteps& steps, const VectorField2& u_prev, const VectorField2& F2);

class PicardFailure : public Error {
public:
  PicardFailure(const std::string& what, PicardReport report)
      : Error(ErrorCode::Picard, what), report_(std::move(report)) {}
  const PicardReport& report() const noexcept { return report_; }

private:
  PicardReport report_;
};

class Stepper {
public:
  Stepper(const CoupledModel& model, StepperConfig cfg);

  const CoupledModel& model() const noexcept { return *model_; }
  const StepperConfig& config() const noexcept { return cfg_; }

  /// Completes a state from (phi, theta): equilibrium displacement and derived fields.
  SimState make_initial(const ScalarField& phi, const ScalarField& theta, double t = 0.0) const;

  /// One window of nominal length dt (shrunk on failure). Throws PicardFailure after
  /// max_shrinks unsuccessful attempts.
  std::pair<SimState, PicardReport> picard_window(const SimState& s, double dt) const;
  std::pair<SimState, PicardReport> picard_window(const SimState& s) const { return picard_window(s, cfg_.dt); }

  /// One attempt without shrinking; sets report.converged.
  SimState attempt(const SimState& s, double dt, PicardReport& report) const;

  /// Forgets the linearization point of frozen mode (it is taken from the next window).
  void reset_frozen() const;

private:
  const LinearSteps& steps_for(const Vec& phi0, double dt) const;
  SimState attempt_fluid_content(const SimState& s, const LinearSteps& steps, double dt, PicardReport& r) const;
  SimState attempt_pressure(const SimState& s, const LinearSteps& steps, double dt, PicardReport& r) const;
  void finish(SimState& next, const SimState& prev, double dt) const;

  const CoupledModel* model_;
  StepperConfig cfg_;
  mutable std::unique_ptr<LinearSteps> refreshed_;
  mutable Vec frozen_phi_;
  mutable std::map<double, std::unique_ptr<LinearSteps>> frozen_;
};

struct Trajectory {
  std::vector<SimState> states;
  std::vector<PicardReport> reports;
  bool complete = true;
  std::string failure;
};

/// Observer called once with the initial state (report null) and after every accepted window.
using WindowObserver = std::function<void(const SimState& state, const SimState* prev, const PicardReport* report)>;

/// Advances windows until t_end (the last window is clipped). A hard failure ends the run
/// with `complete = false`. Set keep_states = false to retain only the final state.
Trajectory run_simulation(const Stepper& stepper, const SimState& initial, double t_end,
                          const WindowObserver& observer = {}, bool keep_states = true);

} // namespace chb
