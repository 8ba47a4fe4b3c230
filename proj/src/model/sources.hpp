#pragma once

#include "mesh/fields.hpp"

#include <array>
#include <functional>
#include <string>

namespace chb {

/// s(x, y, t, phi, theta)
using ScalarSource = std::function<double(double, double, double, double, double)>;
/// v(x, y, t)
using VectorSource = std::function<std::array<double, 2>(double, double, double)>;

enum class SourcePreset { Zero, Constant, Gaussian, Ramp };

const char* to_string(SourcePreset p);
SourcePreset source_preset_from_string(const std::string& name);

/// Parameters of a preset: Constant is `amplitude`; Gaussian is a bump of width `width`
/// centred at (x0, y0); Ramp is amplitude * min(t / ramp_time, 1).
struct PresetParams {
  SourcePreset kind = SourcePreset::Zero;
  double amplitude = 0.0;
  double x0 = 0.5, y0 = 0.5, width = 0.1;
  double ramp_time = 1.0;
};

double preset_value(const PresetParams& p, double x, double y, double t);

/// Source terms of the phase and fluid equations, the body force f and the traction g.
/// Empty functions mean zero.
struct SourceSpec {
  ScalarSource s_phase, s_fluid;
  VectorSource body_force, traction;

  bool is_zero() const { return !s_phase && !s_fluid && !body_force && !traction; }
};

SourceSpec make_sources(const PresetParams& s_phase, const PresetParams& s_fluid, const PresetParams& force_x,
                        const PresetParams& force_y, const PresetParams& traction_x, const PresetParams& traction_y);

Vec sample(const ScalarSource& s, const Grid& g, double t, const Vec& phi, const Vec& theta);
VectorField2 sample(const VectorSource& v, const GridPtr& g, double t);

} // namespace chb
