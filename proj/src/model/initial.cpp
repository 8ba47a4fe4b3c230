#include "model/initial.hpp"

#include <cmath>
#include <numbers>

namespace chb {

ScalarField noise_field(const GridPtr& g, std::uint64_t seed, double amplitude, double mean) {
  Rng rng(seed);
  ScalarField f(g);
  for (std::size_t n = 0; n < f.size(); ++n) f[n] = mean + amplitude * rng.uniform(-1.0, 1.0);
  return f;
}

ScalarField smooth_random_field(const GridPtr& g, std::uint64_t seed, double sup_norm, int modes) {
  Rng rng(seed);
  const double pi = std::numbers::pi;
  ScalarField f(g);
  for (int ky = 0; ky < modes; ++ky) {
    for (int kx = 0; kx < modes; ++kx) {
      const double c = rng.uniform(-1.0, 1.0) / (1.0 + kx * kx + ky * ky);
      const double sx = rng.uniform(0.0, 2.0 * pi), sy = rng.uniform(0.0, 2.0 * pi);
      for (int j = 0; j < g->ny(); ++j)
        for (int i = 0; i < g->nx(); ++i)
          f.at(i, j) += c * std::cos(kx * pi * g->x(i) / g->lx() + sx) * std::cos(ky * pi * g->y(j) / g->ly() + sy);
    }
  }
  const double m = f.values.cwiseAbs().maxCoeff();
  if (m > 0.0) f.values *= sup_norm / m;
  return f;
}

ScalarField interface_field(const GridPtr& g, double eps) {
  ScalarField f(g);
  for (int j = 0; j < g->ny(); ++j)
    for (int i = 0; i < g->nx(); ++i)
      f.at(i, j) = std::tanh((g->x(i) - 0.5 * g->lx()) / (std::sqrt(2.0) * eps));
  return f;
}

} // namespace chb
