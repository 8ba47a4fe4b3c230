#include "model/coupled_rhs.hpp"

#include "mesh/operators.hpp"
#include "mesh/q1.hpp"

namespace chb {

namespace {

Sym2 q1_strain(const Q1Point& p, const CellNodes& nodes, const Vec& u, Eigen::Index n) {
  Sym2 e;
  for (int a = 0; a < 4; ++a) {
    const double ux = u[nodes[a]], uy = u[n + nodes[a]];
    e.xx += p.dx[a] * ux;
    e.yy += p.dy[a] * uy;
    e.xy += 0.5 * (p.dy[a] * ux + p.dx[a] * uy);
  }
  return e;
}

} // namespace

CoupledModel::CoupledModel(GridPtr grid, MaterialModel material, SourceSpec sources, SolverSettings settings)
    : grid_(std::move(grid)), material_(std::move(material)), sources_(std::move(sources)), settings_(settings) {}

SolverSettings CoupledModel::nested_settings() const {
  SolverSettings s = settings_;
  if (s.backend == LinearBackend::CG) {
    s.lin.tol_rel *= 1e-2;
    s.lin.tol_abs *= 1e-2;
  }
  return s;
}

Vec CoupledModel::pressure(const Vec& phi, const Vec& theta, const Vec& u) const {
  const Vec M = material_.eval(Coefficient::Compressibility, phi);
  const Vec a = material_.eval(Coefficient::BiotWillis, phi);
  return M.cwiseProduct(theta - a.cwiseProduct(divergence_packed(*grid_, u)));
}

Vec CoupledModel::elastic_potential(const Vec& phi, const Vec& u) const {
  const Eigen::Index n = phi.size();
  Vec acc = Vec::Zero(n);
  for_each_gauss_point(*grid_, [&](const CellNodes& nodes, const Q1Point& p, double w, std::size_t) {
    const double z = interpolate(p, nodes, phi);
    const double v = w * material_.W_phi(z, q1_strain(p, nodes, u, n));
    for (int a = 0; a < 4; ++a) acc[nodes[a]] += v * p.N[a];
  });
  return acc.cwiseQuotient(weights(*grid_));
}

Vec CoupledModel::chemical_potential(const Vec& phi, const Vec& u, const Vec& theta) const {
  const double eps = material_.eps();
  const Vec M = material_.eval(Coefficient::Compressibility, phi);
  const Vec dM = material_.eval(Coefficient::Compressibility, phi, 1);
  const Vec a = material_.eval(Coefficient::BiotWillis, phi);
  const Vec da = material_.eval(Coefficient::BiotWillis, phi, 1);
  const Vec div = divergence_packed(*grid_, u);
  const Vec r = theta - a.cwiseProduct(div);
  Vec mu = -eps * neumann_laplacian(*grid_, phi, 1.0) + material_.eval(Coefficient::Potential, phi, 1) / eps +
           elastic_potential(phi, u);
  mu += -M.cwiseProduct(r).cwiseProduct(da).cwiseProduct(div) + 0.5 * dM.cwiseProduct(r).cwiseProduct(r);
  return mu;
}

SymTensorField CoupledModel::stress(const Vec& phi, const Vec& u, const Vec& theta, const Vec* u_dot) const {
  require(!material_.visco() || u_dot != nullptr, ErrorCode::InvalidArgument,
          "the visco-elastic stress needs the displacement rate");
  const auto e = symmetric_gradient(VectorField2::unpack(grid_, u));
  SymTensorField ev;
  if (material_.visco()) ev = symmetric_gradient(VectorField2::unpack(grid_, *u_dot));
  const Vec a = material_.eval(Coefficient::BiotWillis, phi);
  const Vec p = pressure(phi, theta, u);
  SymTensorField s(grid_);
  for (Eigen::Index k = 0; k < phi.size(); ++k) {
    const auto n = static_cast<std::size_t>(k);
    Sym2 v = material_.W_strain(phi[k], at(e, n)) - Sym2::iso(a[k] * p[k]);
    if (material_.visco()) v = v + material_.visco_lame(phi[k]).apply(at(ev, n));
    s.xx[k] = v.xx;
    s.yy[k] = v.yy;
    s.xy[k] = v.xy;
  }
  return s;
}

Vec CoupledModel::eigen_load(const Vec& phi) const {
  const Eigen::Index n = phi.size();
  Vec out = Vec::Zero(2 * n);
  for_each_gauss_point(*grid_, [&](const CellNodes& nodes, const Q1Point& p, double w, std::size_t) {
    const double z = interpolate(p, nodes, phi);
    const double tau = material_.eval(Coefficient::Eigenstrain, z);
    if (tau == 0.0) return;
    const Lame l = material_.lame(z);
    // kMomentumScale * C(tau I) = 2 (2 mu + 2 lambda) tau I
    const double s = w * kMomentumScale * (2.0 * l.mu + 2.0 * l.lambda) * tau;
    for (int a = 0; a < 4; ++a) {
      out[nodes[a]] += s * p.dx[a];
      out[n + nodes[a]] += s * p.dy[a];
    }
  });
  return out;
}

Vec CoupledModel::external_load(double t) const {
  const Eigen::Index n = static_cast<Eigen::Index>(grid_->size());
  Vec out = Vec::Zero(2 * n);
  if (sources_.body_force) out += body_load(sample(sources_.body_force, grid_, t));
  if (sources_.traction) out += traction_load(sample(sources_.traction, grid_, t));
  return out;
}

Vec CoupledModel::reconstruct_displacement(const Vec& phi, const Vec& theta, double t) const {
  const Vec M = material_.eval(Coefficient::Compressibility, phi);
  const Vec a = material_.eval(Coefficient::BiotWillis, phi);
  const Vec rhs = weak_gradient(*grid_, a.cwiseProduct(M).cwiseProduct(theta)) + eigen_load(phi) + external_load(t);
  ElasticitySolver solver(
      ElasticityOperator(grid_, material_, phi, EllipticVariant::AugmentedC, kMomentumScale), settings_);
  return solver.solve(rhs);
}

Vec CoupledModel::momentum_residual(const Vec& phi, const Vec& u, const Vec& theta, double t, const Vec* u_prev,
                                    double dt) const {
  const ElasticityOperator K(grid_, material_, phi, EllipticVariant::PlainC, kMomentumScale);
  const Vec a = material_.eval(Coefficient::BiotWillis, phi);
  Vec r = K.apply_form(u) - eigen_load(phi) - weak_gradient(*grid_, a.cwiseProduct(pressure(phi, theta, u))) -
          external_load(t);
  if (material_.visco() && u_prev && dt > 0.0) {
    const ElasticityOperator B(grid_, material_, phi, EllipticVariant::ViscoB, 1.0);
    r += B.apply_form(u - *u_prev) / dt;
  }
  return K.constrain(r);
}

EnergyParts CoupledModel::energy(const Vec& phi, const Vec& u, const Vec& theta) const {
  EnergyParts e;
  const double eps = material_.eps();
  const Vec w = weights(*grid_);
  e.interface = -0.5 * eps * phi.dot(laplacian_form(*grid_, phi, 1.0)) +
                w.dot(material_.eval(Coefficient::Potential, phi)) / eps;
  const Eigen::Index n = phi.size();
  for_each_gauss_point(*grid_, [&](const CellNodes& nodes, const Q1Point& p, double wq, std::size_t) {
    e.elastic += wq * material_.W(interpolate(p, nodes, phi), q1_strain(p, nodes, u, n));
  });
  const Vec M = material_.eval(Coefficient::Compressibility, phi);
  const Vec a = material_.eval(Coefficient::BiotWillis, phi);
  const Vec r = theta - a.cwiseProduct(divergence_packed(*grid_, u));
  e.fluid = 0.5 * w.dot(M.cwiseProduct(r).cwiseProduct(r));
  return e;
}

void CoupledModel::refresh_derived(SimState& s, const VectorField2* u_prev, double dt) const {
  const Vec u = s.u.packed();
  s.mu = ScalarField(grid_, chemical_potential(s.phi.values, u, s.theta.values));
  s.p = ScalarField(grid_, pressure(s.phi.values, s.theta.values, u));
  Vec rate = Vec::Zero(u.size());
  if (u_prev && dt > 0.0) rate = (u - u_prev->packed()) / dt;
  s.sigma = stress(s.phi.values, u, s.theta.values, &rate);
  s.derived_valid = true;
}

FrozenLinearization FrozenLinearization::build(const CoupledModel& model, const Vec& phi0) {
  FrozenLinearization lin;
  const MaterialModel& mat = model.material();
  lin.phi0 = phi0;
  lin.m0 = mat.eval(Coefficient::Mobility, phi0);
  lin.kappa_m0 = mat.eval(Coefficient::Permeability, phi0).cwiseProduct(mat.eval(Coefficient::Compressibility, phi0));
  if (mat.visco()) {
    lin.visco_b0 = std::make_shared<const ElasticitySolver>(
        ElasticityOperator(model.grid_ptr(), mat, phi0, EllipticVariant::ViscoB, 1.0), model.settings());
    lin.c0 = std::make_shared<const ElasticityOperator>(model.grid_ptr(), mat, phi0, EllipticVariant::PlainC,
                                                        kMomentumScale);
  } else {
    lin.biot0 = std::make_shared<const BiotOperators>(model.grid_ptr(), mat, phi0, model.nested_settings());
  }
  return lin;
}

namespace {

Vec phase_rhs(const CoupledModel& model, const Vec& phi, const Vec& mu, const Vec& theta,
              const FrozenLinearization& lin, double t) {
  const Grid& g = model.grid();
  const double eps = model.material().eps();
  const Vec m = model.material().eval(Coefficient::Mobility, phi);
  Vec F1 = eps * neumann_laplacian(g, lin.m0.cwiseProduct(neumann_laplacian(g, phi, 1.0)), 1.0) +
           neumann_laplacian(g, mu, m);
  if (model.sources().s_phase) F1 += sample(model.sources().s_phase, g, t, phi, theta);
  return F1;
}

} // namespace

ElasticRhs rhs_elastic(const CoupledModel& model, const Vec& phi, const Vec& theta, const FrozenLinearization& lin,
                       double t) {
  require(!model.material().visco(), ErrorCode::InvalidArgument, "rhs_elastic needs rho = 0");
  require(lin.biot0 != nullptr, ErrorCode::InvalidArgument, "linearization was built for the visco regime");
  const Grid& g = model.grid();
  ElasticRhs r;
  r.u = model.reconstruct_displacement(phi, theta, t);
  r.p = model.pressure(phi, theta, r.u);
  r.mu = model.chemical_potential(phi, r.u, theta);
  r.F1 = phase_rhs(model, phi, r.mu, theta, lin, t);
  const Vec kappa = model.material().eval(Coefficient::Permeability, phi);
  r.F2 = lin.biot0->fluid_operator(theta) + neumann_laplacian(g, r.p, kappa);
  if (model.sources().s_fluid) r.F2 += sample(model.sources().s_fluid, g, t, phi, theta);
  return r;
}

ViscoRhs rhs_visco(const CoupledModel& model, const Vec& phi, const Vec& u, const Vec& theta,
                   const FrozenLinearization& lin, double t) {
  require(model.material().visco(), ErrorCode::InvalidArgument, "rhs_visco needs rho = 1");
  require(lin.visco_b0 && lin.c0, ErrorCode::InvalidArgument, "linearization was built for the elastic regime");
  const Grid& g = model.grid();
  const MaterialModel& mat = model.material();
  ViscoRhs r;
  r.p = model.pressure(phi, theta, u);
  r.mu = model.chemical_potential(phi, u, theta);
  r.F1 = phase_rhs(model, phi, r.mu, theta, lin, t);

  const ElasticityOperator C(model.grid_ptr(), mat, phi, EllipticVariant::PlainC, kMomentumScale);
  const ElasticitySolver B(ElasticityOperator(model.grid_ptr(), mat, phi, EllipticVariant::ViscoB, 1.0),
                           model.settings());
  const Vec a = mat.eval(Coefficient::BiotWillis, phi);
  const Vec unbalanced = C.apply_form(u) - model.eigen_load(phi) - weak_gradient(g, a.cwiseProduct(r.p)) -
                         model.external_load(t);
  r.F2 = lin.visco_b0->solve(lin.c0->apply_form(u)) - B.solve(unbalanced);

  const Vec kappa = mat.eval(Coefficient::Permeability, phi);
  r.F3 = -neumann_laplacian(g, theta, lin.kappa_m0) + neumann_laplacian(g, r.p, kappa);
  if (model.sources().s_fluid) r.F3 += sample(model.sources().s_fluid, g, t, phi, theta);
  return r;
}

} // namespace chb
