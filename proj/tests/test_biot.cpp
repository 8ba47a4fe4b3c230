#include "biot/biot_operators.hpp"
#include "mesh/operators.hpp"
#include "oracle/dense.hpp"
#include "support/dense_biot.hpp"
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

// Largest |W A - (W A)^T| relative to |W A|.
double weighted_asymmetry(const Grid& g, const Dense& A) {
  const Dense WA = dense_weights(g) * A;
  return max_abs(Dense(WA - WA.transpose())) / max_abs(WA);
}

} // namespace

TEST_CASE("without coupling the conjugate operators are pointwise") {
  const GridPtr g = make_grid(8, 8);
  MaterialParams p;
  p.alpha0 = p.alpha1 = 0.0;
  const MaterialModel mat(p);
  const Vec phi = smooth_random_field(g, 2).values;
  const BiotOperators ops(g, mat, phi, tight());
  const Vec q = random_vec(64, 1);
  CHECK(max_abs(ops.B_tilde(q) - q.cwiseQuotient(ops.M())) == 0.0);
  CHECK(max_abs(ops.A_tilde(q) - q.cwiseProduct(ops.M())) == 0.0);
}

TEST_CASE("constant data with constant coefficients against the dense composition") {
  const GridPtr g = make_grid(8, 8);
  const MaterialModel mat(constant_params(1.7, 0.6, 1.0));
  const Vec phi = Vec::Zero(64);
  const BiotOperators ops(g, mat, phi, tight());
  const DenseBiot d = dense_biot(*g, mat, phi);
  const Vec c = Vec::Constant(64, 0.8);
  CHECK(max_abs(ops.B_tilde(c) - d.B * c) <= 1e-8);
  CHECK(max_abs(ops.A_tilde(c) - d.A * c) <= 1e-8);
  // a uniform pressure is balanced by the clamped boundary
  CHECK(max_abs(ops.B_tilde(c) - c / 1.7) <= 1e-12);
}

TEST_CASE("random phase: dense agreement, symmetry, positivity and mutual inverses") {
  const MaterialModel mat{MaterialParams{}};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const GridPtr g = make_grid(8, 8);
    const Vec phi = smooth_random_field(g, seed).values;
    const BiotOperators ops(g, mat, phi, tight());
    const DenseBiot d = dense_biot(*g, mat, phi);
    const Vec v = random_vec(64, 10 + seed);
    CHECK(max_abs(ops.B_tilde(v) - d.B * v) <= 1e-8 * max_abs(Vec(d.B * v)));
    CHECK(max_abs(ops.A_tilde(v) - d.A * v) <= 1e-8 * max_abs(Vec(d.A * v)));
    CHECK(max_abs(ops.fluid_operator(v) - d.fluid * v) <= 1e-8 * max_abs(Vec(d.fluid * v)));

    CHECK(weighted_asymmetry(*g, d.B) <= 1e-9);
    CHECK(weighted_asymmetry(*g, d.A) <= 1e-9);
    const Dense sb = weighted_similarity(*g, d.B);
    const double min_b = Eigen::SelfAdjointEigenSolver<Dense>(0.5 * (sb + sb.transpose())).eigenvalues().minCoeff();
    CHECK(min_b >= 1.0 / mat.compressibility_max() - 1e-9);

    CHECK(max_abs(ops.B_tilde(ops.A_tilde(v)) - v) <= 1e-7);
    CHECK(max_abs(ops.A_tilde(ops.B_tilde(v)) - v) <= 1e-7);
  }
}

TEST_CASE("CG backend reproduces the factorized operators") {
  const GridPtr g = make_grid(8, 8);
  const MaterialModel mat{MaterialParams{}};
  const Vec phi = smooth_random_field(g, 7).values;
  SolverSettings cg = tight();
  cg.backend = LinearBackend::CG;
  const BiotOperators a(g, mat, phi, tight()), b(g, mat, phi, cg);
  const Vec v = random_vec(64, 3);
  CHECK(max_abs(a.A_tilde(v) - b.A_tilde(v)) <= 1e-9);
  CHECK(max_abs(a.B_tilde(v) - b.B_tilde(v)) <= 1e-9);
}

TEST_CASE("the H inner product") {
  const GridPtr g = make_grid(8, 8);
  const Vec u = random_vec(64, 1), v = random_vec(64, 2);
  {
    const MaterialModel mat(constant_params(1.0, 0.0));
    const WeightedSpaceH H(std::make_shared<const BiotOperators>(g, mat, Vec::Zero(64), tight()));
    CHECK(H.inner(u, v) == doctest::Approx(inner_h(*g, u, v)).epsilon(1e-14));
  }
  const MaterialModel mat{MaterialParams{}};
  const ScalarField phi = smooth_random_field(g, 5);
  auto ops = std::make_shared<const BiotOperators>(g, mat, phi.values, tight());
  const WeightedSpaceH H(ops);
  const double uv = inner_H(H, ScalarField(g, u), ScalarField(g, v)), vu = H.inner(v, u);
  CHECK(std::abs(uv - vu) <= 1e-9 * norm_h(*g, u) * norm_h(*g, v));
  const Dense sa = weighted_similarity(*g, dense_biot(*g, mat, phi.values).A);
  const double c = Eigen::SelfAdjointEigenSolver<Dense>(0.5 * (sa + sa.transpose())).eigenvalues().minCoeff();
  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    const Vec w = random_vec(64, seed);
    CHECK(H.inner(w, w) >= c * inner_h(*g, w, w) * (1.0 - 1e-12));
  }
}

TEST_CASE("fluid operator reductions") {
  const GridPtr g = make_grid(8, 8);
  const Vec c = Vec::Constant(64, 3.0);
  {
    MaterialParams p;
    p.alpha0 = p.alpha1 = 0.0;
    const MaterialModel mat(p);
    const Vec phi = smooth_random_field(g, 1).values;
    const BiotOperators ops(g, mat, phi, tight());
    const Vec expect = -neumann_laplacian(*g, Vec(ops.M() * 3.0), ops.kappa());
    CHECK(max_abs(ops.fluid_operator(c) - expect) <= 1e-12);
  }
  const MaterialModel mat(constant_params(1.0, 0.0, 1.0));
  const BiotOperators ops(g, mat, Vec::Zero(64), tight());
  CHECK(max_abs(ops.fluid_operator(c)) <= 1e-12);
  const Vec th = random_vec(64, 4);
  CHECK(max_abs(apply_fluid_operator(ops, ScalarField(g, th)).values + neumann_laplacian(*g, th)) <= 1e-12);
  CHECK(max_abs(apply_A_tilde(ops, ScalarField(g, th)).values - th) == 0.0);
  CHECK(max_abs(apply_B_tilde(ops, ScalarField(g, th)).values - th) == 0.0);
}

TEST_CASE("fluid operator is H-symmetric and bounded below") {
  const GridPtr g = make_grid(8, 8);
  const MaterialModel mat{MaterialParams{}};
  const Vec phi = smooth_random_field(g, 9).values;
  const DenseBiot d = dense_biot(*g, mat, phi);
  const Dense gram = dense_weights(*g) * d.A;
  const Dense form = gram * d.fluid;
  CHECK(max_abs(Dense(form - form.transpose())) <= 1e-8 * max_abs(form));
  const EigenReport r = spectral_check(d.fluid, &gram);
  CHECK(r.max_imag <= 1e-8);
  const double beta = std::max(0.0, -r.eigenvalues.front());
  CHECK(std::isfinite(beta));
  CHECK(beta <= 1e-8 * r.eigenvalues.back());
}
