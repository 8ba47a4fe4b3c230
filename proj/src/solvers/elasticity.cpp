#include "solvers/elasticity.hpp"

#include "mesh/operators.hpp"
#include "mesh/q1.hpp"

#include <array>
#include <cmath>

namespace chb {

namespace {

SparseMatrix derivative_matrix(const Grid& g, bool along_x) {
  std::vector<Eigen::Triplet<double>> t;
  const int n = along_x ? g.nx() : g.ny();
  const int lines = along_x ? g.ny() : g.nx();
  const double h = along_x ? g.hx() : g.hy();
  for (int l = 0; l < lines; ++l) {
    auto idx = [&](int k) {
      return static_cast<int>(along_x ? g.index(k, l) : g.index(l, k));
    };
    t.emplace_back(idx(0), idx(0), -1.0 / h);
    t.emplace_back(idx(0), idx(1), 1.0 / h);
    for (int k = 1; k + 1 < n; ++k) {
      t.emplace_back(idx(k), idx(k - 1), -0.5 / h);
      t.emplace_back(idx(k), idx(k + 1), 0.5 / h);
    }
    t.emplace_back(idx(n - 1), idx(n - 2), -1.0 / h);
    t.emplace_back(idx(n - 1), idx(n - 1), 1.0 / h);
  }
  const auto N = static_cast<int>(g.size());
  SparseMatrix m(N, N);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

} // namespace

const char* to_string(EllipticVariant v) {
  switch (v) {
  case EllipticVariant::PlainC: return "plain";
  case EllipticVariant::AugmentedC: return "augmented";
  case EllipticVariant::ViscoB: return "visco";
  case EllipticVariant::ScalarHelmholtz: return "scalar_helmholtz";
  }
  return "?";
}

const char* to_string(LinearBackend b) { return b == LinearBackend::Cholesky ? "cholesky" : "cg"; }

ElasticityOperator::ElasticityOperator(GridPtr grid, const MaterialModel& mat, Vec phi, EllipticVariant variant,
                                       double scale)
    : grid_(std::move(grid)), phi_(std::move(phi)), variant_(variant), scale_(scale) {
  require(variant != EllipticVariant::ScalarHelmholtz, ErrorCode::InvalidArgument,
          "the scalar Helmholtz variant is not a vector elasticity operator");
  require(phi_.size() == static_cast<Eigen::Index>(grid_->size()), ErrorCode::Size,
          "phase field length does not match grid");
  require(grid_->has_dirichlet_edge(), ErrorCode::Setup,
          "elasticity needs at least one Dirichlet edge; rigid motions are otherwise unconstrained");
  require(scale > 0.0, ErrorCode::InvalidArgument, "stiffness scale must be positive");

  const Grid& g = *grid_;
  gauss_.reserve(4 * static_cast<std::size_t>(g.nx() - 1) * (g.ny() - 1));
  for_each_gauss_point(g, [&](const CellNodes& nodes, const Q1Point& p, double, std::size_t) {
    const double z = interpolate(p, nodes, phi_);
    const Lame l = variant == EllipticVariant::ViscoB ? mat.visco_lame(z) : mat.lame(z);
    gauss_.push_back({l.lambda, l.mu});
  });
  if (variant == EllipticVariant::AugmentedC) {
    const Vec a = mat.eval(Coefficient::BiotWillis, phi_);
    const Vec m = mat.eval(Coefficient::Compressibility, phi_);
    aug_ = weights(g).cwiseProduct(a.cwiseProduct(a)).cwiseProduct(m);
  }
}

template <class Visit>
void ElasticityOperator::for_each_cell(Visit&& visit) const {
  for_each_gauss_point(*grid_, [&](const CellNodes& nodes, const Q1Point& p, double w, std::size_t q) {
    visit(nodes, p, w * scale_, gauss_[q]);
  });
}

Vec ElasticityOperator::apply_form(const Vec& u) const {
  require(u.size() == dofs(), ErrorCode::Size, "displacement length does not match grid");
  const Eigen::Index n = static_cast<Eigen::Index>(grid_->size());
  Vec out = Vec::Zero(dofs());
  for_each_cell([&](const CellNodes& nodes, const Q1Point& s, double w, const GaussData& c) {
    double exx = 0, eyy = 0, exy = 0;
    for (int a = 0; a < 4; ++a) {
      const double ux = u[nodes[a]], uy = u[n + nodes[a]];
      exx += s.dx[a] * ux;
      eyy += s.dy[a] * uy;
      exy += 0.5 * (s.dy[a] * ux + s.dx[a] * uy);
    }
    const double tr = c.lambda * (exx + eyy);
    const double sxx = w * (2 * c.mu * exx + tr), syy = w * (2 * c.mu * eyy + tr), sxy = w * 2 * c.mu * exy;
    for (int a = 0; a < 4; ++a) {
      out[nodes[a]] += sxx * s.dx[a] + sxy * s.dy[a];
      out[n + nodes[a]] += sxy * s.dx[a] + syy * s.dy[a];
    }
  });
  if (aug_.size() > 0) {
    const Vec d = aug_.cwiseProduct(divergence_packed(*grid_, u));
    out.head(n) += diff_x_t(*grid_, d);
    out.tail(n) += diff_y_t(*grid_, d);
  }
  return out;
}

Vec ElasticityOperator::constrain(Vec v) const {
  const Eigen::Index n = static_cast<Eigen::Index>(grid_->size());
  for (Eigen::Index k = 0; k < n; ++k) {
    if (grid_->is_dirichlet(static_cast<std::size_t>(k))) {
      v[k] = 0.0;
      v[n + k] = 0.0;
    }
  }
  return v;
}

Vec ElasticityOperator::apply(const Vec& u) const {
  Vec out = constrain(apply_form(constrain(u)));
  const Eigen::Index n = static_cast<Eigen::Index>(grid_->size());
  for (Eigen::Index k = 0; k < n; ++k) {
    if (grid_->is_dirichlet(static_cast<std::size_t>(k))) {
      out[k] = u[k];
      out[n + k] = u[n + k];
    }
  }
  return out;
}

Vec ElasticityOperator::diagonal() const {
  const Eigen::Index n = static_cast<Eigen::Index>(grid_->size());
  Vec d = Vec::Zero(dofs());
  for_each_cell([&](const CellNodes& nodes, const Q1Point& s, double w, const GaussData& c) {
    for (int a = 0; a < 4; ++a) {
      const double dx2 = s.dx[a] * s.dx[a], dy2 = s.dy[a] * s.dy[a];
      d[nodes[a]] += w * ((2 * c.mu + c.lambda) * dx2 + c.mu * dy2);
      d[n + nodes[a]] += w * ((2 * c.mu + c.lambda) * dy2 + c.mu * dx2);
    }
  });
  if (aug_.size() > 0) {
    const SparseMatrix dx = derivative_matrix(*grid_, true), dy = derivative_matrix(*grid_, false);
    for (int pass = 0; pass < 2; ++pass) {
      const SparseMatrix& D = pass == 0 ? dx : dy;
      for (int col = 0; col < D.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(D, col); it; ++it)
          d[pass * n + it.col()] += aug_[it.row()] * it.value() * it.value();
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    if (grid_->is_dirichlet(static_cast<std::size_t>(k))) d[k] = d[n + k] = 1.0;
  }
  return d;
}

SparseMatrix ElasticityOperator::assemble() const {
  const Eigen::Index n = static_cast<Eigen::Index>(grid_->size());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(gauss_.size() * 64);
  for_each_cell([&](const CellNodes& nodes, const Q1Point& s, double w, const GaussData& c) {
    // Columns of the strain map for each local dof: (exx, eyy, 2exy).
    std::array<Eigen::Index, 8> dof;
    std::array<std::array<double, 3>, 8> B;
    for (int a = 0; a < 4; ++a) {
      dof[a] = nodes[a];
      dof[4 + a] = n + nodes[a];
      B[a] = {s.dx[a], 0.0, s.dy[a]};
      B[4 + a] = {0.0, s.dy[a], s.dx[a]};
    }
    for (int r = 0; r < 8; ++r) {
      const double sxx = (2 * c.mu + c.lambda) * B[r][0] + c.lambda * B[r][1];
      const double syy = c.lambda * B[r][0] + (2 * c.mu + c.lambda) * B[r][1];
      const double sxy = c.mu * B[r][2];
      for (int q = 0; q < 8; ++q) {
        const double v = w * (sxx * B[q][0] + syy * B[q][1] + sxy * B[q][2]);
        if (v != 0.0) t.emplace_back(static_cast<int>(dof[r]), static_cast<int>(dof[q]), v);
      }
    }
  });
  SparseMatrix K(dofs(), dofs());
  K.setFromTriplets(t.begin(), t.end());
  if (aug_.size() > 0) {
    const SparseMatrix dx = derivative_matrix(*grid_, true), dy = derivative_matrix(*grid_, false);
    std::vector<Eigen::Triplet<double>> td;
    for (int pass = 0; pass < 2; ++pass) {
      const SparseMatrix& D = pass == 0 ? dx : dy;
      for (int col = 0; col < D.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(D, col); it; ++it)
          td.emplace_back(static_cast<int>(it.row()), static_cast<int>(pass * n + it.col()), it.value());
    }
    SparseMatrix D(n, dofs());
    D.setFromTriplets(td.begin(), td.end());
    const SparseMatrix AD = aug_.asDiagonal() * D;
    K += SparseMatrix(D.transpose() * AD);
  }
  std::vector<Eigen::Triplet<double>> out;
  out.reserve(static_cast<std::size_t>(K.nonZeros()));
  auto fixed = [&](Eigen::Index k) { return grid_->is_dirichlet(static_cast<std::size_t>(k % n)); };
  for (int col = 0; col < K.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(K, col); it; ++it)
      if (!fixed(it.row()) && !fixed(it.col()))
        out.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  for (Eigen::Index k = 0; k < dofs(); ++k)
    if (fixed(k)) out.emplace_back(static_cast<int>(k), static_cast<int>(k), 1.0);
  SparseMatrix Kc(dofs(), dofs());
  Kc.setFromTriplets(out.begin(), out.end());
  return Kc;
}

ElasticitySolver::ElasticitySolver(ElasticityOperator op, SolverSettings settings)
    : op_(std::move(op)), settings_(settings) {
  if (settings_.backend == LinearBackend::Cholesky) {
    chol_ = std::make_shared<Eigen::SimplicialLDLT<SparseMatrix>>(op_.assemble());
    require(chol_->info() == Eigen::Success, ErrorCode::Solver,
            "sparse Cholesky factorization of the elasticity operator failed");
  } else {
    diag_ = op_.diagonal();
  }
}

Vec ElasticitySolver::solve(const Vec& rhs, CgReport* report) const {
  const Vec b = op_.constrain(rhs);
  if (chol_) {
    Vec x = chol_->solve(b);
    if (report) {
      report->iterations = 1;
      report->residual = (op_.apply(x) - b).norm();
      report->history = {b.norm(), report->residual};
    }
    return op_.constrain(std::move(x));
  }
  return op_.constrain(pcg([this](const Vec& v) { return op_.apply(v); }, b, diag_, settings_.lin, report));
}

Vec body_load(const VectorField2& f) {
  const Vec w = weights(*f.grid);
  Vec out(2 * w.size());
  out << w.cwiseProduct(f.x), w.cwiseProduct(f.y);
  return out;
}

Vec traction_load(const VectorField2& gfield) {
  const Grid& g = *gfield.grid;
  const Eigen::Index n = static_cast<Eigen::Index>(g.size());
  Vec out = Vec::Zero(2 * n);
  auto edge = [&](Edge e, int count, double h, auto node) {
    if (g.tag(e) != EdgeTag::NeumannTraction) return;
    for (int k = 0; k < count; ++k) {
      const auto [i, j] = node(k);
      if (g.is_dirichlet(i, j)) continue;
      const double wq = (k == 0 || k == count - 1) ? 0.5 * h : h;
      const auto m = static_cast<Eigen::Index>(g.index(i, j));
      out[m] += wq * gfield.x[m];
      out[n + m] += wq * gfield.y[m];
    }
  };
  edge(Edge::Left, g.ny(), g.hy(), [](int k) { return std::pair{0, k}; });
  edge(Edge::Right, g.ny(), g.hy(), [&](int k) { return std::pair{g.nx() - 1, k}; });
  edge(Edge::Bottom, g.nx(), g.hx(), [](int k) { return std::pair{k, 0}; });
  edge(Edge::Top, g.nx(), g.hx(), [&](int k) { return std::pair{k, g.ny() - 1}; });
  return out;
}

VectorField2 solve_elasticity(const EllipticProblem& p, const VectorField2& body_force, const VectorField2& traction) {
  require(p.material != nullptr, ErrorCode::InvalidArgument, "elliptic problem has no material");
  require(p.variant != EllipticVariant::ScalarHelmholtz, ErrorCode::InvalidArgument,
          "solve_elasticity needs a vector-valued variant");
  check_same_grid(p.grid, body_force.grid);
  check_same_grid(p.grid, traction.grid);
  ElasticitySolver solver(ElasticityOperator(p.grid, *p.material, p.phi, p.variant, p.scale), p.settings);
  return VectorField2::unpack(p.grid, solver.solve(body_load(body_force) + traction_load(traction)));
}

} // namespace chb
