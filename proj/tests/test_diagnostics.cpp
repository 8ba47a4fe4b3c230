#include "diagnostics/convergence.hpp"
#include "diagnostics/diagnostics.hpp"
#include "mesh/operators.hpp"
#include "stepper/stepper.hpp"
#include "support/testing.hpp"

#include <doctest.h>

using namespace chb;
using namespace chb::testing;

namespace {

SolverSettings tight() {
  SolverSettings s;
  s.lin.tol_rel = 1e-13;
  return s;
}

} // namespace

TEST_CASE("pure phase at rest has zero energy") {
  const GridPtr g = make_grid(8, 8);
  const CoupledModel m(g, MaterialModel(MaterialParams{}), {}, tight());
  SimState s(g);
  s.phi = ScalarField(g, 1.0);
  const EnergyParts e = total_energy(m, s);
  CHECK(e.total() == 0.0);
}

TEST_CASE("an interface carries only interfacial energy") {
  const GridPtr g = make_grid(16, 16);
  MaterialParams p;
  p.tau0 = p.tau1 = 0.0;
  const CoupledModel m(g, MaterialModel(p), {}, tight());
  SimState s(g);
  s.phi = interface_field(g, p.eps);
  const EnergyParts e = total_energy(m, s);
  CHECK(e.interface > 0.0);
  CHECK(e.elastic == 0.0);
  CHECK(e.fluid == 0.0);
}

TEST_CASE("energy against a per-node quadrature evaluation") {
  const GridPtr g = make_grid(8, 8);
  const CoupledModel m(g, MaterialModel(MaterialParams{}), {}, tight());
  const MaterialModel& mat = m.material();
  SimState s(g);
  s.phi = smooth_random_field(g, 3);
  s.theta = ScalarField(g, random_vec(64, 4));
  s.u = VectorField2::unpack(g, random_vec(128, 5, 0.05));
  const Vec u = s.u.packed(), phi = s.phi.values, th = s.theta.values;
  const Vec W = dense_weights(*g).diagonal();
  const Vec Lphi = dense_neumann_laplacian(*g, Vec::Ones(64)) * phi;
  const Vec div = dense_dx(*g) * u.head(64) + dense_dy(*g) * u.tail(64);
  double interface = 0.0, fluid = 0.0, elastic = 0.0;
  for (Eigen::Index k = 0; k < 64; ++k) {
    interface += W[k] * (-0.5 * mat.eps() * phi[k] * Lphi[k] + mat.eval(Coefficient::Potential, phi[k]) / mat.eps());
    const double r = th[k] - mat.eval(Coefficient::BiotWillis, phi[k]) * div[k];
    fluid += W[k] * 0.5 * mat.eval(Coefficient::Compressibility, phi[k]) * r * r;
  }
  gauss_loop(*g, [&](const Eigen::Index* node, const double* N, const double* dx, const double* dy, double w) {
    double z = 0.0;
    Sym2 e;
    for (int a = 0; a < 4; ++a) {
      z += N[a] * phi[node[a]];
      e.xx += dx[a] * u[node[a]];
      e.yy += dy[a] * u[64 + node[a]];
      e.xy += 0.5 * (dy[a] * u[node[a]] + dx[a] * u[64 + node[a]]);
    }
    elastic += w * mat.W(z, e);
  });
  const EnergyParts e = total_energy(m, s);
  CHECK(e.interface == doctest::Approx(interface).epsilon(1e-10));
  CHECK(e.fluid == doctest::Approx(fluid).epsilon(1e-10));
  CHECK(e.elastic == doctest::Approx(elastic).epsilon(1e-10));
  CHECK(e.fluid >= 0.0);
  CHECK(e.interface >= 0.0);
}

TEST_CASE("residual detector: stationary window and a corrupted node") {
  const GridPtr g = make_grid(12, 12);
  const CoupledModel m(g, MaterialModel(MaterialParams{}), {}, tight());
  StepperConfig c;
  const Stepper st(m, c);
  const SimState s0 = st.make_initial(smooth_random_field(g, 4, 0.5), smooth_random_field(g, 5, 0.2));
  const auto [s1, rep] = st.picard_window(s0);
  const PdeResiduals r = pde_residual(m, s1, s0, rep.dt_used);
  CHECK(r.max() <= 10 * c.tol_picard);

  SimState bad = s1;
  bad.phi.at(5, 6) += 1.0;
  CHECK(pde_residual(m, bad, s0, rep.dt_used).max() > 0.1);

  const SimState eq = st.make_initial(ScalarField(g, 1.0), ScalarField(g, 0.25));
  const auto [eq1, rep1] = st.picard_window(eq);
  CHECK(pde_residual(m, eq1, eq, rep1.dt_used).max() <= 10 * c.tol_picard);
}

TEST_CASE("manufactured residual decays at second order") {
  const OrderTable t = residual_mms_study({17, 33, 65});
  INFO(t.format());
  CHECK(t.order >= 1.8);
}

TEST_CASE("heat reduction orders") {
  const OrderTable space = heat_space_study({9, 17, 33});
  INFO(space.format());
  CHECK(space.order >= 1.8);
  CHECK(space.order <= 2.2);
  const OrderTable time = heat_time_study({0.02, 0.01, 0.005, 0.0025});
  INFO(time.format());
  CHECK(time.order >= 0.85);
  CHECK(time.order <= 1.15);
}

TEST_CASE("order tables") {
  CHECK(least_squares_order({0.1, 0.05, 0.025}, {3e-2, 7.5e-3, 1.875e-3}) == doctest::Approx(2.0));
  const OrderTable same = make_table("repeat", "h", {0.1, 0.1}, {0.5, 0.5});
  CHECK(same.difference[1] == 0.0);
  CHECK(same.format().find("observed order") != std::string::npos);
  CHECK_THROWS_AS(least_squares_order({0.1}, {0.2}), Error);
}

TEST_CASE("diagnostics rows") {
  const GridPtr g = make_grid(8, 8);
  const CoupledModel m(g, MaterialModel(MaterialParams{}), {}, tight());
  const Stepper st(m, StepperConfig{});
  const SimState s0 = st.make_initial(noise_field(g, 3, 0.01), ScalarField(g, 0.1));
  const DiagnosticsRow r0 = make_row(m, s0, nullptr, nullptr);
  CHECK(r0.picard_iters == 0);
  CHECK(r0.mass_theta == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(r0.E_total == doctest::Approx(r0.E_interface + r0.E_elastic + r0.E_fluid));
  const auto [s1, rep] = st.picard_window(s0);
  const DiagnosticsRow r1 = make_row(m, s1, &s0, &rep);
  CHECK(r1.picard_iters == rep.iterations);
  CHECK(r1.dt == rep.dt_used);
  CHECK(r1.rho == rep.rho);
  const std::string line = format_row(r1);
  CHECK(std::count(line.begin(), line.end(), ',') == 10);
  const std::string header = kDiagnosticsHeader;
  CHECK(std::count(header.begin(), header.end(), ',') == 10);
}
