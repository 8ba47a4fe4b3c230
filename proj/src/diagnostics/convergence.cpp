#include "diagnostics/convergence.hpp"

#include "diagnostics/diagnostics.hpp"
#include "mesh/operators.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace chb {

namespace {

constexpr double kPi = std::numbers::pi;

Vec cos_mode(const Grid& g, double scale) {
  Vec v(static_cast<Eigen::Index>(g.size()));
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      v[static_cast<Eigen::Index>(g.index(i, j))] = scale * std::cos(kPi * g.x(i)) * std::cos(kPi * g.y(j));
  return v;
}

SolverSettings tight_settings() {
  SolverSettings s;
  s.lin.tol_rel = 1e-12;
  return s;
}

// Runs the heat reduction and returns the final fluid content.
Vec run_heat(int nodes, double t_end, double dt) {
  const GridPtr g = make_grid(nodes, nodes);
  CoupledModel model(g, MaterialModel(heat_reduction_params()), SourceSpec{}, tight_settings());
  StepperConfig cfg;
  cfg.dt = dt;
  cfg.tol_picard = 1e-12;
  const Stepper stepper(model, cfg);
  const SimState s0 = stepper.make_initial(ScalarField(g), ScalarField(g, cos_mode(*g, 1.0)));
  const Trajectory tr = run_simulation(stepper, s0, t_end, {}, false);
  require(tr.complete, ErrorCode::Picard, "heat reduction run failed: " + tr.failure);
  return tr.states.back().theta.values;
}

} // namespace

std::string OrderTable::format() const {
  std::string out = name + "\n";
  char line[160];
  std::snprintf(line, sizeof line, "  %12s %14s %14s\n", variable.c_str(), "error", "difference");
  out += line;
  for (std::size_t k = 0; k < step.size(); ++k) {
    std::snprintf(line, sizeof line, "  %12.5e %14.6e %14.6e\n", step[k], error[k], difference[k]);
    out += line;
  }
  std::snprintf(line, sizeof line, "  observed order %.4f\n", order);
  return out + line;
}

double least_squares_order(const std::vector<double>& step, const std::vector<double>& error) {
  require(step.size() == error.size() && step.size() >= 2, ErrorCode::InvalidArgument,
          "order fit needs at least two (step, error) pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(step.size());
  for (std::size_t k = 0; k < step.size(); ++k) {
    const double x = std::log(step[k]), y = std::log(error[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

OrderTable make_table(std::string name, std::string variable, std::vector<double> step, std::vector<double> error) {
  OrderTable t;
  t.name = std::move(name);
  t.variable = std::move(variable);
  t.difference.assign(error.size(), 0.0);
  for (std::size_t k = 1; k < error.size(); ++k) t.difference[k] = std::abs(error[k] - error[k - 1]);
  bool distinct = false;
  for (std::size_t k = 1; k < step.size(); ++k) distinct = distinct || step[k] != step[0];
  t.order = distinct ? least_squares_order(step, error) : 0.0;
  t.step = std::move(step);
  t.error = std::move(error);
  return t;
}

MaterialParams heat_reduction_params() {
  MaterialParams p;
  p.alpha0 = p.alpha1 = 0.0;
  p.biot_m0 = 1.0;
  p.biot_m1 = 0.0;
  p.kappa0 = 1.0;
  p.kappa1 = 0.0;
  p.tau0 = p.tau1 = 0.0;
  return p;
}

OrderTable heat_space_study(const std::vector<int>& nodes, double t_end, double dt) {
  std::vector<double> h, err;
  for (int n : nodes) {
    const GridPtr g = make_grid(n, n);
    const Vec theta = run_heat(n, t_end, dt);
    const int steps = static_cast<int>(std::lround(t_end / dt));
    const double amp = std::pow(1.0 + dt * 2.0 * kPi * kPi, -steps);
    h.push_back(g->hx());
    err.push_back(norm_h(*g, theta - cos_mode(*g, amp)));
  }
  return make_table("heat reduction, space", "h", h, err);
}

OrderTable heat_time_study(const std::vector<double>& dts, int nodes, double t_end) {
  const GridPtr g = make_grid(nodes, nodes);
  const double hx = g->hx(), hy = g->hy();
  const double lam = 2.0 / (hx * hx) * (1.0 - std::cos(kPi * hx)) + 2.0 / (hy * hy) * (1.0 - std::cos(kPi * hy));
  std::vector<double> err;
  for (double dt : dts) {
    const Vec theta = run_heat(nodes, t_end, dt);
    err.push_back(norm_h(*g, theta - cos_mode(*g, std::exp(-lam * t_end))));
  }
  return make_table("heat reduction, time", "dt", dts, err);
}

OrderTable elasticity_mms_study(const std::vector<int>& nodes, double lambda, double mu) {
  MaterialParams p;
  p.lambda0 = lambda;
  p.lambda1 = 0.0;
  p.mu0 = mu;
  p.mu1 = 0.0;
  const MaterialModel mat(p);
  std::vector<double> h, err;
  for (int n : nodes) {
    const GridPtr g = make_grid(n, n);
    VectorField2 f(g), exact(g);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double sx = std::sin(kPi * g->x(i)), sy = std::sin(kPi * g->y(j));
        const double cx = std::cos(kPi * g->x(i)), cy = std::cos(kPi * g->y(j));
        const auto k = static_cast<Eigen::Index>(g->index(i, j));
        const double fx = kPi * kPi * ((3.0 * mu + lambda) * sx * sy - (lambda + mu) * cx * cy);
        f.x[k] = f.y[k] = fx;
        exact.x[k] = exact.y[k] = sx * sy;
      }
    EllipticProblem prob{g, &mat, EllipticVariant::PlainC, Vec::Zero(static_cast<Eigen::Index>(g->size())), 1.0,
                         tight_settings()};
    const VectorField2 v = solve_elasticity(prob, f, VectorField2(g));
    const double ex = norm_h(*g, v.x - exact.x), ey = norm_h(*g, v.y - exact.y);
    h.push_back(g->hx());
    err.push_back(std::sqrt(ex * ex + ey * ey));
  }
  return make_table("elasticity manufactured solution", "h", h, err);
}

OrderTable residual_mms_study(const std::vector<int>& nodes, double dt) {
  MaterialParams p = heat_reduction_params();
  p.m1 = 0.0;
  p.lambda1 = p.mu1 = 0.0;
  p.psi_scale = 0.25;
  const MaterialModel mat(p);
  const double a = 0.4, b = 0.3, t1 = 0.1, eps = p.eps, m0 = p.m0, km = p.kappa0 * p.biot_m0;

  SourceSpec src;
  src.s_phase = [=, &mat](double x, double y, double t, double, double) {
    const double e = std::exp(-t);
    const double phi = a * std::cos(kPi * x) * std::cos(kPi * y) * e;
    const double gx = -a * kPi * std::sin(kPi * x) * std::cos(kPi * y) * e;
    const double gy = -a * kPi * std::cos(kPi * x) * std::sin(kPi * y) * e;
    const double lap = -2.0 * kPi * kPi * phi;
    const double bilap = 4.0 * std::pow(kPi, 4) * phi;
    const double lap_dpsi = mat.eval(Coefficient::Potential, phi, 2) * lap +
                            mat.eval(Coefficient::Potential, phi, 3) * (gx * gx + gy * gy);
    return -phi - m0 * (-eps * bilap + lap_dpsi / eps);
  };
  src.s_fluid = [=](double x, double y, double t, double, double) {
    const double theta = b * std::cos(kPi * x) * std::cos(kPi * y) * std::exp(-t);
    return -theta + 2.0 * kPi * kPi * km * theta;
  };

  std::vector<double> h, err;
  for (int n : nodes) {
    const GridPtr g = make_grid(n, n);
    CoupledModel model(g, mat, src, tight_settings());
    SimState prev(g), s(g);
    prev.t = t1 - dt;
    s.t = t1;
    prev.phi.values = cos_mode(*g, a * std::exp(-prev.t));
    prev.theta.values = cos_mode(*g, b * std::exp(-prev.t));
    s.phi.values = cos_mode(*g, a * std::exp(-t1));
    s.theta.values = cos_mode(*g, b * std::exp(-t1));
    h.push_back(g->hx());
    err.push_back(pde_residual(model, s, prev, dt).max() / dt);
  }
  return make_table("manufactured residual (per unit time)", "h", h, err);
}

std::vector<OrderTable> default_convergence_suite() {
  return {heat_space_study({9, 17, 33}), heat_time_study({0.02, 0.01, 0.005, 0.0025}),
          elasticity_mms_study({17, 33, 65}), residual_mms_study({17, 33, 65})};
}

} // namespace chb
