#include "mesh/q1.hpp"

#include <cmath>

namespace chb {

const std::array<Q1Point, 4>& q1_points(double hx, double hy) {
  thread_local double chx = -1.0, chy = -1.0;
  thread_local std::array<Q1Point, 4> cache;
  if (chx != hx || chy != hy) {
    const double g[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
    for (int b = 0; b < 2; ++b) {
      for (int a = 0; a < 2; ++a) {
        const double xi = g[a], eta = g[b];
        Q1Point& p = cache[2 * b + a];
        p.N = {(1 - xi) * (1 - eta), xi * (1 - eta), (1 - xi) * eta, xi * eta};
        p.dx = {-(1 - eta) / hx, (1 - eta) / hx, -eta / hx, eta / hx};
        p.dy = {-(1 - xi) / hy, -xi / hy, (1 - xi) / hy, xi / hy};
      }
    }
    chx = hx;
    chy = hy;
  }
  return cache;
}

} // namespace chb
