#include "model/sources.hpp"

#include <algorithm>
#include <cmath>

namespace chb {

const char* to_string(SourcePreset p) {
  switch (p) {
  case SourcePreset::Zero: return "zero";
  case SourcePreset::Constant: return "constant";
  case SourcePreset::Gaussian: return "gaussian";
  case SourcePreset::Ramp: return "ramp";
  }
  return "?";
}

SourcePreset source_preset_from_string(const std::string& name) {
  for (auto p : {SourcePreset::Zero, SourcePreset::Constant, SourcePreset::Gaussian, SourcePreset::Ramp})
    if (name == to_string(p)) return p;
  fail(ErrorCode::Config, "unknown source preset '" + name + "' (expected zero, constant, gaussian or ramp)");
}

double preset_value(const PresetParams& p, double x, double y, double t) {
  switch (p.kind) {
  case SourcePreset::Zero: return 0.0;
  case SourcePreset::Constant: return p.amplitude;
  case SourcePreset::Gaussian: {
    const double r2 = (x - p.x0) * (x - p.x0) + (y - p.y0) * (y - p.y0);
    return p.amplitude * std::exp(-0.5 * r2 / (p.width * p.width));
  }
  case SourcePreset::Ramp: return p.amplitude * std::min(t / p.ramp_time, 1.0);
  }
  return 0.0;
}

SourceSpec make_sources(const PresetParams& s_phase, const PresetParams& s_fluid, const PresetParams& fx,
                        const PresetParams& fy, const PresetParams& gx, const PresetParams& gy) {
  SourceSpec s;
  auto scalar = [](const PresetParams& p) -> ScalarSource {
    if (p.kind == SourcePreset::Zero) return {};
    return [p](double x, double y, double t, double, double) { return preset_value(p, x, y, t); };
  };
  auto vector = [](const PresetParams& a, const PresetParams& b) -> VectorSource {
    if (a.kind == SourcePreset::Zero && b.kind == SourcePreset::Zero) return {};
    return [a, b](double x, double y, double t) {
      return std::array<double, 2>{preset_value(a, x, y, t), preset_value(b, x, y, t)};
    };
  };
  s.s_phase = scalar(s_phase);
  s.s_fluid = scalar(s_fluid);
  s.body_force = vector(fx, fy);
  s.traction = vector(gx, gy);
  return s;
}

Vec sample(const ScalarSource& s, const Grid& g, double t, const Vec& phi, const Vec& theta) {
  Vec out = Vec::Zero(static_cast<Eigen::Index>(g.size()));
  if (!s) return out;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const auto n = static_cast<Eigen::Index>(g.index(i, j));
      out[n] = s(g.x(i), g.y(j), t, phi[n], theta[n]);
    }
  return out;
}

VectorField2 sample(const VectorSource& v, const GridPtr& g, double t) {
  VectorField2 out(g);
  if (!v) return out;
  for (int j = 0; j < g->ny(); ++j)
    for (int i = 0; i < g->nx(); ++i) {
      const auto n = static_cast<Eigen::Index>(g->index(i, j));
      const auto val = v(g->x(i), g->y(j), t);
      out.x[n] = val[0];
      out.y[n] = val[1];
    }
  return out;
}

} // namespace chb
