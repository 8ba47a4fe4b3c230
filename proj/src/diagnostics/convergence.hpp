#pragma once

#include "materials/material.hpp"

#include <string>
#include <vector>

namespace chb {

struct OrderTable {
  std::string name;
  std::string variable; // "h" or "dt"
  std::vector<double> step, error;
  std::vector<double> difference; // |error_k - error_{k-1}|, first entry 0
  double order = 0.0;             // least-squares slope of log(error) against log(step)

  std::string format() const;
};

/// Slope of the least-squares line through (log step, log error).
double least_squares_order(const std::vector<double>& step, const std::vector<double>& error);

OrderTable make_table(std::string name, std::string variable, std::vector<double> step, std::vector<double> error);

/// Material of the heat-equation reduction: alpha = 0, M = 1, constant kappa, no eigenstrain.
MaterialParams heat_reduction_params();

/// Space order of the heat reduction against the time-discrete exact solution
/// (1 + dt 2 pi^2)^{-n} cos(pi x) cos(pi y) on unit squares with the given node counts.
OrderTable heat_space_study(const std::vector<int>& nodes, double t_end = 0.1, double dt = 0.01);
/// Time order of the heat reduction against the space-discrete exact solution exp(-lambda_h t).
OrderTable heat_time_study(const std::vector<double>& dts, int nodes = 17, double t_end = 0.1);
/// Elasticity with constant Lame parameters, full Dirichlet, v = (sin pi x sin pi y, sin pi x sin pi y).
OrderTable elasticity_mms_study(const std::vector<int>& nodes, double lambda = 1.0, double mu = 1.0);
/// Discrete PDE residual of a manufactured smooth solution (phase and fluid equations).
OrderTable residual_mms_study(const std::vector<int>& nodes, double dt = 1e-6);

std::vector<OrderTable> default_convergence_suite();

} // namespace chb
