#pragma once

#include "model/coupled_rhs.hpp"
#include "stepper/stepper.hpp"

#include <string>

namespace chb {

struct DiagnosticsRow {
  double t = 0.0;
  double E_total = 0.0, E_interface = 0.0, E_elastic = 0.0, E_fluid = 0.0;
  double mass_phi = 0.0, mass_theta = 0.0; // weighted means
  int picard_iters = 0;
  double rho = 0.0;
  double residual = 0.0;
  double dt = 0.0;
};

/// Header of the diagnostics CSV.
extern const char* const kDiagnosticsHeader;
std::string format_row(const DiagnosticsRow& r);

EnergyParts total_energy(const CoupledModel& model, const SimState& s);

/// Max-norm residuals of the discrete equations at `s`, with backward differences to `prev`.
/// The two evolution residuals are in time-step-multiplied form; the momentum residual is the
/// weak residual divided by the nodal weights.
struct PdeResiduals {
  double phase = 0.0, chemical = 0.0, momentum = 0.0, fluid = 0.0, pressure = 0.0;
  double max() const;
};

PdeResiduals pde_residual(const CoupledModel& model, const SimState& s, const SimState& prev, double dt);

/// Row for the initial state (prev = report = null) or for an accepted window.
DiagnosticsRow make_row(const CoupledModel& model, const SimState& s, const SimState* prev,
                        const PicardReport* report);

} // namespace chb
