#include "diagnostics/convergence.hpp"
#include "mesh/operators.hpp"
#include "solvers/elasticity.hpp"
#include "solvers/scalar.hpp"
#include "support/testing.hpp"

#include <doctest.h>

using namespace chb;
using namespace chb::testing;

namespace {

const EdgeTags kMixed{EdgeTag::DirichletDisplacement, EdgeTag::NeumannTraction, EdgeTag::DirichletDisplacement,
                      EdgeTag::NeumannTraction};

Dense dense_D(const Grid& g) {
  Dense D(static_cast<Eigen::Index>(g.size()), 2 * static_cast<Eigen::Index>(g.size()));
  D << dense_dx(g), dense_dy(g);
  return D;
}

} // namespace

TEST_CASE("zero loads give zero displacement") {
  const GridPtr g = make_grid(9, 9);
  const MaterialModel mat{MaterialParams{}};
  EllipticProblem prob{g, &mat, EllipticVariant::PlainC, smooth_random_field(g, 1).values, 2.0, {}};
  const VectorField2 u = solve_elasticity(prob, VectorField2(g), VectorField2(g));
  CHECK(max_abs(u.packed()) == 0.0);
}

TEST_CASE("elasticity manufactured solution converges at second order") {
  const OrderTable t = elasticity_mms_study({17, 33, 65});
  INFO(t.format());
  CHECK(t.order >= 1.8);
  const OrderTable t2 = elasticity_mms_study({17, 33, 65}, 3.0, 0.5);
  INFO(t2.format());
  CHECK(t2.order >= 1.8);
}

TEST_CASE("stiffness matches an independent Q1 assembly and dense direct solves") {
  const MaterialModel mat{MaterialParams{}};
  for (const EdgeTags& tags : {kClamped, kMixed}) {
    const GridPtr g = make_grid(8, 8, 1.0, 1.2, tags);
    const auto N = static_cast<Eigen::Index>(g->size());
    const Vec phi = smooth_random_field(g, 4).values;
    const Dense K = dense_q1_stiffness(*g, mat, phi, false, 2.0);
    const ElasticityOperator op(g, mat, phi, EllipticVariant::PlainC, 2.0);
    const Vec u = random_vec(2 * N, 7);
    CHECK(max_abs(op.apply_form(u) - K * u) <= 1e-12 * max_abs(K));
    const Dense Kc = constrain_dense(*g, K);
    CHECK(max_abs(op.apply(u) - Kc * u) <= 1e-12 * max_abs(K));
    CHECK(max_abs(Dense(op.assemble()) - Kc) <= 1e-12 * max_abs(K));
    CHECK(max_abs(op.diagonal() - Kc.diagonal()) <= 1e-12 * max_abs(K));

    const Vec rhs = constrain_vec(*g, random_vec(2 * N, 8));
    const Vec expect = Kc.partialPivLu().solve(rhs);
    for (LinearBackend b : {LinearBackend::Cholesky, LinearBackend::CG}) {
      SolverSettings s;
      s.backend = b;
      s.lin.tol_rel = 1e-13;
      const ElasticitySolver solver(op, s);
      CHECK(max_abs(solver.solve(rhs) - expect) <= 1e-8 * max_abs(expect));
    }
  }
}

TEST_CASE("augmented and visco variants against dense compositions") {
  const MaterialModel mat{MaterialParams{}};
  const GridPtr g = make_grid(8, 8);
  const auto N = static_cast<Eigen::Index>(g->size());
  const Vec phi = smooth_random_field(g, 6).values;
  const Vec a = mat.eval(Coefficient::BiotWillis, phi), M = mat.eval(Coefficient::Compressibility, phi);
  const Dense D = dense_D(*g);
  const Dense aug = D.transpose() * dense_weights(*g) * a.cwiseProduct(a).cwiseProduct(M).asDiagonal() * D;
  const Dense Kt = dense_q1_stiffness(*g, mat, phi, false, 2.0) + aug;
  const Vec u = random_vec(2 * N, 5);
  const ElasticityOperator augmented(g, mat, phi, EllipticVariant::AugmentedC, 2.0);
  CHECK(max_abs(augmented.apply_form(u) - Kt * u) <= 1e-12 * max_abs(Kt));
  CHECK(max_abs(Dense(augmented.assemble()) - constrain_dense(*g, Kt)) <= 1e-12 * max_abs(Kt));

  const Dense B = dense_q1_stiffness(*g, mat, phi, true, 1.0);
  const ElasticityOperator visco(g, mat, phi, EllipticVariant::ViscoB, 1.0);
  CHECK(max_abs(visco.apply_form(u) - B * u) <= 1e-12 * max_abs(B));
}

TEST_CASE("elasticity without a Dirichlet edge is a setup error") {
  EdgeTags free{EdgeTag::NeumannTraction, EdgeTag::NeumannTraction, EdgeTag::NeumannTraction,
                EdgeTag::NeumannTraction};
  const GridPtr g = make_grid(5, 5, 1.0, 1.0, free);
  const MaterialModel mat{MaterialParams{}};
  try {
    ElasticityOperator op(g, mat, Vec::Zero(25), EllipticVariant::PlainC);
    FAIL("expected a setup error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Setup);
  }
}

TEST_CASE("traction load acts on traction edges only") {
  const GridPtr g = make_grid(5, 5, 1.0, 1.0, kMixed);
  const Vec ones = Vec::Ones(25);
  const Vec l = traction_load(VectorField2(g, ones, 2.0 * ones));
  // right and top edges carry unit length each; the shared corner is counted on both
  double total_x = 0.0;
  for (Eigen::Index k = 0; k < 25; ++k) {
    if (g->is_dirichlet(static_cast<std::size_t>(k))) CHECK(l[k] == 0.0);
    total_x += l[k];
  }
  CHECK(total_x == doctest::Approx(1.0 - 0.125 + 1.0 - 0.125));
  CHECK(l.tail(25).sum() == doctest::Approx(2.0 * total_x));
}

TEST_CASE("scalar solves: identity, constants and dense SPD compositions") {
  const GridPtr g = make_grid(8, 8);
  const auto N = static_cast<Eigen::Index>(g->size());
  const Vec rhs = random_vec(N, 2);
  LinearSettings s;
  s.tol_rel = 1e-14;
  const Vec same = solve_scalar_spd([](const Vec& v) { return v; }, rhs, s);
  CHECK(max_abs(same - rhs) <= 1e-14);

  const double dt = 0.3;
  const Vec c = Vec::Constant(N, 2.5);
  const LinearMap helm = [&](const Vec& v) { return Vec(v - dt * neumann_laplacian(*g, v)); };
  CHECK(max_abs(solve_scalar_spd(helm, c, s) - c) <= 1e-12);

  const Vec coeff = random_vec(N, 3).array() * 0.3 + 1.0;
  const Dense A = dense_weights(*g) - dt * dense_weights(*g) * dense_neumann_laplacian(*g, coeff);
  const Vec expect = A.partialPivLu().solve(rhs);
  SolverSettings ss;
  ss.lin.tol_rel = 1e-13;
  CHECK(max_abs(SparseSpdSolver(helmholtz_matrix(*g, coeff, dt), ss).solve(rhs) - expect) <= 1e-8 * max_abs(expect));
  ss.backend = LinearBackend::CG;
  CHECK(max_abs(SparseSpdSolver(helmholtz_matrix(*g, coeff, dt), ss).solve(rhs) - expect) <= 1e-8 * max_abs(expect));
  CHECK(max_abs(Dense(laplacian_matrix(*g, coeff)) - dense_weights(*g) * dense_neumann_laplacian(*g, coeff)) <=
        1e-12 * max_abs(A));
}

TEST_CASE("semidefinite solve returns the mean-free solution") {
  const GridPtr g = make_grid(7, 7);
  const auto N = static_cast<Eigen::Index>(g->size());
  Vec rhs = random_vec(N, 4);
  rhs.array() -= rhs.mean();
  LinearSettings s;
  s.tol_rel = 1e-12;
  const LinearMap negS = [&](const Vec& v) { return Vec(-laplacian_form(*g, v)); };
  const Vec x = solve_scalar_spd(negS, rhs, s, true);
  CHECK(std::abs(x.mean()) <= 1e-12);
  CHECK(max_abs(negS(x) - rhs) <= 1e-9);
}

TEST_CASE("stalled CG raises a solver failure carrying the residual history") {
  const GridPtr g = make_grid(10, 10);
  const auto N = static_cast<Eigen::Index>(g->size());
  LinearSettings s;
  s.max_iter = 3;
  s.tol_rel = 1e-14;
  const LinearMap A = [&](const Vec& v) { return Vec(v - 50.0 * neumann_laplacian(*g, v)); };
  try {
    solve_scalar_spd(A, random_vec(N, 1), s);
    FAIL("expected a solver failure");
  } catch (const SolverFailure& e) {
    CHECK(e.code() == ErrorCode::Solver);
    CHECK(e.history().size() >= 3);
  }
}
