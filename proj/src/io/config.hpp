#pragma once

#include "materials/material.hpp"
#include "mesh/grid.hpp"
#include "model/sources.hpp"
#include "stepper/stepper.hpp"

#include <string>
#include <vector>

namespace chb {

enum class PhiInit { Constant, Interface, Spinodal };
enum class ThetaInit { Constant, Gaussian, Cosine };

struct InitParams {
  PhiInit phi = PhiInit::Spinodal;
  double phi_value = 0.0; // constant value, or mean of the spinodal noise
  double noise = 0.01;    // spinodal noise amplitude
  std::uint64_t seed = 1;
  ThetaInit theta = ThetaInit::Constant;
  double theta_value = 0.0;
  double theta_amplitude = 0.0;
};

struct RunConfig {
  int nx = 32, ny = 32;
  double lx = 1.0, ly = 1.0;
  EdgeTags edges = kClamped;

  MaterialParams material;
  StepperConfig stepper;
  double t_end = 0.2;
  SolverSettings solver;

  PresetParams s_phase, s_fluid, force_x, force_y, traction_x, traction_y;
  InitParams init;

  std::string output_dir = "out";
  int output_stride = 10;

  /// Throws a Config error naming the violated requirement.
  void validate() const;
  SourceSpec sources() const;
};

/// Parses `key = value` lines; '#' starts a comment. Unknown keys and malformed values are errors.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// Applies one assignment to an existing configuration (same grammar as a config line).
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);
/// Every key with its resolved value; parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const RunConfig& cfg);
std::vector<std::string> config_keys();

} // namespace chb
