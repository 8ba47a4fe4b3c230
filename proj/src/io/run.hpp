#pragma once

#include "diagnostics/diagnostics.hpp"
#include "io/config.hpp"
#include "io/output.hpp"

#include <memory>

namespace chb {

SimState initial_state(const RunConfig& cfg, const Stepper& stepper);

struct RunResult {
  bool complete = true;
  int windows = 0;
  std::string failure;
};

/// One configured simulation: grid, model, stepper and the current state.
class Simulation {
public:
  explicit Simulation(RunConfig cfg);

  const RunConfig& config() const noexcept { return cfg_; }
  const CoupledModel& model() const noexcept { return *model_; }
  const Stepper& stepper() const noexcept { return *stepper_; }
  const SimState& state() const noexcept { return state_; }
  const GridPtr& grid() const noexcept { return grid_; }
  const std::vector<DiagnosticsRow>& rows() const noexcept { return rows_; }

  /// Advances one window of length min(dt, remaining) or dt when already at t_end.
  const PicardReport& step();
  /// Runs to t_end. With a non-empty out_dir the diagnostics, snapshots and config echo are written.
  RunResult run(const std::string& out_dir = "");

private:
  RunConfig cfg_;
  GridPtr grid_;
  std::unique_ptr<CoupledModel> model_;
  std::unique_ptr<Stepper> stepper_;
  SimState state_;
  std::vector<DiagnosticsRow> rows_;
  PicardReport last_;
  int windows_ = 0;
};

/// Operator-identity reports on an 8x8 grid for a few smooth random phase fields under the
/// configured material, and for the decoupled reduction (alpha = 0, M = 1, kappa = 1).
std::vector<std::pair<std::string, IdentityReport>> oracle_suite(const RunConfig& cfg);

} // namespace chb
