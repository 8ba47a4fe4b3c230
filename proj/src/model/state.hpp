#pragma once

#include "mesh/fields.hpp"

namespace chb {

struct SimState {
  double t = 0.0;
  ScalarField phi;
  VectorField2 u;
  ScalarField theta;

  // Derived fields, valid when `derived_valid` is set.
  ScalarField mu, p;
  SymTensorField sigma;
  bool derived_valid = false;

  SimState() = default;
  explicit SimState(const GridPtr& g) : phi(g), u(g), theta(g), mu(g), p(g), sigma(g) {}
  const GridPtr& grid() const { return phi.grid; }
};

} // namespace chb
