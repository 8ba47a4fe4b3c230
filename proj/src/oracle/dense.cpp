#include "oracle/dense.hpp"

#include "mesh/operators.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <limits>

namespace chb {

namespace {

double max_abs(const DenseMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Vec free_mask(const Grid& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Vec p(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) p[k] = p[n + k] = g.is_dirichlet(static_cast<std::size_t>(k)) ? 0.0 : 1.0;
  return p;
}

struct DenseParts {
  DenseMatrix K, D, G; // stiffness (constrained, identity on Dirichlet dofs), divergence, P D^T W
  Vec w, M, alpha, P;
};

DenseParts dense_parts(const MaterialModel& mat, const ScalarField& phi) {
  const Grid& g = *phi.grid;
  DenseParts d;
  const ElasticityOperator K(phi.grid, mat, phi.values, EllipticVariant::PlainC, kMomentumScale);
  d.K = densify([&](const Vec& u) { return K.apply(u); }, g, 2, 2, "K").matrix;
  d.D = densify([&](const Vec& u) { return divergence_packed(g, u); }, g, 2, 1, "D").matrix;
  d.w = weights(g);
  d.P = free_mask(g);
  d.G = d.P.asDiagonal() * d.D.transpose() * d.w.asDiagonal();
  d.M = mat.eval(Coefficient::Compressibility, phi.values);
  d.alpha = mat.eval(Coefficient::BiotWillis, phi.values);
  return d;
}

} // namespace

const char* to_string(OperatorId id) {
  switch (id) {
  case OperatorId::Identity: return "identity";
  case OperatorId::NeumannLaplacian: return "neumann_laplacian";
  case OperatorId::Divergence: return "divergence";
  case OperatorId::WeakGradient: return "weak_gradient";
  case OperatorId::ElasticityPlain: return "elasticity_plain";
  case OperatorId::ElasticityAugmented: return "elasticity_augmented";
  case OperatorId::ElasticityVisco: return "elasticity_visco";
  case OperatorId::BTilde: return "B_tilde";
  case OperatorId::ATilde: return "A_tilde";
  case OperatorId::FluidOperator: return "fluid_operator";
  }
  return "?";
}

DenseOperator densify(const LinearMap& op, const Grid& g, int col_components, int row_components, std::string label) {
  if (g.nx() > kMaxDenseNodes || g.ny() > kMaxDenseNodes)
    fail(ErrorCode::Size, "dense oracle is limited to 12x12 grids, got " + std::to_string(g.nx()) + "x" +
                              std::to_string(g.ny()));
  const auto n = static_cast<Eigen::Index>(g.size());
  DenseOperator d;
  d.label = std::move(label);
  d.col_components = col_components;
  d.row_components = row_components;
  d.matrix.resize(row_components * n, col_components * n);
  Vec e = Vec::Zero(col_components * n);
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    e[k] = 1.0;
    const Vec col = op(e);
    require(col.size() == d.matrix.rows(), ErrorCode::Size, "operator output has unexpected length");
    d.matrix.col(k) = col;
    e[k] = 0.0;
  }
  return d;
}

DenseOperator densify(OperatorId id, const MaterialModel& mat, const ScalarField& phi, const SolverSettings& settings) {
  const Grid& g = *phi.grid;
  const GridPtr& gp = phi.grid;
  switch (id) {
  case OperatorId::Identity: return densify([](const Vec& x) { return x; }, g, 1, 1, to_string(id));
  case OperatorId::NeumannLaplacian: {
    const Vec kappa = mat.eval(Coefficient::Permeability, phi.values);
    return densify([&](const Vec& x) { return neumann_laplacian(g, x, kappa); }, g, 1, 1, to_string(id));
  }
  case OperatorId::Divergence:
    return densify([&](const Vec& x) { return divergence_packed(g, x); }, g, 2, 1, to_string(id));
  case OperatorId::WeakGradient:
    return densify([&](const Vec& x) { return weak_gradient(g, x); }, g, 1, 2, to_string(id));
  case OperatorId::ElasticityPlain:
  case OperatorId::ElasticityAugmented:
  case OperatorId::ElasticityVisco: {
    const auto v = id == OperatorId::ElasticityPlain       ? EllipticVariant::PlainC
                   : id == OperatorId::ElasticityAugmented ? EllipticVariant::AugmentedC
                                                           : EllipticVariant::ViscoB;
    const ElasticityOperator K(gp, mat, phi.values, v, v == EllipticVariant::ViscoB ? 1.0 : kMomentumScale);
    return densify([&](const Vec& x) { return K.apply(x); }, g, 2, 2, to_string(id));
  }
  case OperatorId::BTilde:
  case OperatorId::ATilde:
  case OperatorId::FluidOperator: {
    const BiotOperators ops(gp, mat, phi.values, settings);
    return densify(
        [&](const Vec& x) {
          return id == OperatorId::BTilde   ? ops.B_tilde(x)
                 : id == OperatorId::ATilde ? ops.A_tilde(x)
                                            : ops.fluid_operator(x);
        },
        g, 1, 1, to_string(id));
  }
  }
  fail(ErrorCode::InvalidArgument, "unknown operator id");
}

DenseMatrix weighted_similarity(const Grid& g, const DenseMatrix& A) {
  const Vec s = weights(g).cwiseSqrt();
  return s.asDiagonal() * A * s.cwiseInverse().asDiagonal();
}

DenseMatrix dense_B_tilde(const MaterialModel& mat, const ScalarField& phi) {
  const DenseParts d = dense_parts(mat, phi);
  const DenseMatrix inner = d.K.partialPivLu().solve(DenseMatrix(d.G * d.alpha.asDiagonal()));
  return DenseMatrix(d.M.cwiseInverse().asDiagonal()) + d.alpha.asDiagonal() * d.D * inner;
}

DenseMatrix dense_A_tilde(const MaterialModel& mat, const ScalarField& phi) {
  const DenseParts d = dense_parts(mat, phi);
  const Vec a2m = d.alpha.cwiseProduct(d.alpha).cwiseProduct(d.M);
  const DenseMatrix Kt = d.K + d.G * a2m.asDiagonal() * d.D * d.P.asDiagonal();
  const Vec am = d.alpha.cwiseProduct(d.M);
  const DenseMatrix inner = Kt.partialPivLu().solve(DenseMatrix(d.G * am.asDiagonal()));
  return DenseMatrix(d.M.asDiagonal()) - am.asDiagonal() * d.D * inner;
}

DenseMatrix dense_fluid_operator(const MaterialModel& mat, const ScalarField& phi) {
  const Grid& g = *phi.grid;
  const Vec kappa = mat.eval(Coefficient::Permeability, phi.values);
  const DenseMatrix S = densify([&](const Vec& x) { return laplacian_form(g, x, kappa); }, g, 1, 1, "S").matrix;
  return -(weights(g).cwiseInverse().asDiagonal() * S * dense_A_tilde(mat, phi));
}

EigenReport spectral_check(const DenseMatrix& A, const DenseMatrix* weight) {
  require(A.rows() == A.cols(), ErrorCode::InvalidArgument, "spectral check needs a square matrix");
  EigenReport r;
  DenseMatrix T = A;
  if (weight) {
    require(weight->rows() == A.rows() && weight->cols() == A.cols(), ErrorCode::Size, "weight size mismatch");
    const double scale = std::max(max_abs(*weight), std::numeric_limits<double>::min());
    if (max_abs(*weight - weight->transpose()) > 1e-10 * scale)
      fail(ErrorCode::InvalidArgument, "spectral weight is not symmetric");
    const DenseMatrix H = 0.5 * (*weight + weight->transpose());
    Eigen::LLT<DenseMatrix> llt(H);
    if (llt.info() != Eigen::Success) fail(ErrorCode::InvalidArgument, "spectral weight is not positive definite");
    const DenseMatrix L = llt.matrixL();
    // T = L^T A L^{-T}
    const DenseMatrix LinvT = L.transpose().triangularView<Eigen::Upper>().solve(
        DenseMatrix::Identity(A.rows(), A.cols()));
    T = L.transpose() * A * LinvT;
    r.weighted = true;
  }
  r.symmetry_defect = max_abs(T - T.transpose());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (T + T.transpose()), Eigen::EigenvaluesOnly);
  r.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  Eigen::EigenSolver<DenseMatrix> gen(T, false);
  r.max_imag = gen.eigenvalues().size() ? gen.eigenvalues().imag().cwiseAbs().maxCoeff() : 0.0;
  return r;
}

bool IdentityReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

std::string IdentityReport::table() const {
  std::string out = "quantity                      value          threshold   result\n";
  char line[160];
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-28s %14.6e %s %10.3e  %s\n", c.quantity.c_str(), c.value, c.upper ? "<=" : ">=",
                  c.threshold, c.pass() ? "PASS" : "FAIL");
    out += line;
  }
  return out;
}

IdentityReport verify_operator_identities(const MaterialModel& mat, const ScalarField& phi,
                                          const SolverSettings& settings) {
  const Grid& g = *phi.grid;
  IdentityReport r;
  const DenseMatrix B = densify(OperatorId::BTilde, mat, phi, settings).matrix;
  const DenseMatrix A = densify(OperatorId::ATilde, mat, phi, settings).matrix;
  const DenseMatrix I = DenseMatrix::Identity(B.rows(), B.cols());
  r.ab_defect = max_abs(A * B - I);
  r.ba_defect = max_abs(B * A - I);

  const DenseMatrix SB = weighted_similarity(g, B), SA = weighted_similarity(g, A);
  r.sym_b = max_abs(SB - SB.transpose());
  r.sym_a = max_abs(SA - SA.transpose());
  const EigenReport eb = spectral_check(0.5 * (SB + SB.transpose()));
  const EigenReport ea = spectral_check(0.5 * (SA + SA.transpose()));
  r.min_eig_b = eb.eigenvalues.front();
  r.min_eig_a = ea.eigenvalues.front();
  r.c = ea.eigenvalues.front();
  r.C = ea.eigenvalues.back();

  const DenseMatrix F = densify(OperatorId::FluidOperator, mat, phi, settings).matrix;
  const DenseMatrix H = weights(g).asDiagonal() * A;
  const DenseMatrix Hs = 0.5 * (H + H.transpose());
  const EigenReport ef = spectral_check(F, &Hs);
  r.beta = std::max(0.0, -ef.eigenvalues.front());
  r.imag_residue = ef.max_imag;

  const double tiny = std::numeric_limits<double>::min();
  r.checks = {
      {"|A~B~ - I|_max", r.ab_defect, 1e-7, true},
      {"|B~A~ - I|_max", r.ba_defect, 1e-7, true},
      {"B~ symmetry defect", r.sym_b, 1e-9, true},
      {"A~ symmetry defect", r.sym_a, 1e-9, true},
      {"B~ min eigenvalue", r.min_eig_b, tiny, false},
      {"A~ min eigenvalue", r.min_eig_a, tiny, false},
      {"norm equivalence c", r.c, tiny, false},
      {"norm equivalence C - c", r.C - r.c, 0.0, false},
      {"fluid imaginary residue", r.imag_residue, 1e-8, true},
      {"fluid shift beta", r.beta, std::numeric_limits<double>::max(), true},
  };
  return r;
}

} // namespace chb
