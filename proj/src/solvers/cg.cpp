#include "solvers/cg.hpp"

#include <cmath>
#include <sstream>

namespace chb {

Vec pcg(const LinearMap& A, const Vec& b_in, const Vec& diag, const LinearSettings& s, CgReport* report,
        const Vec* x0, const Vec* kernel) {
  require(diag.size() == b_in.size(), ErrorCode::Size, "preconditioner size mismatch");
  auto project = [kernel](Vec& v) {
    if (kernel) v -= kernel->dot(v) * *kernel;
  };
  Vec b = b_in;
  project(b);
  Vec inv = diag;
  for (Eigen::Index k = 0; k < inv.size(); ++k) inv[k] = (diag[k] > 0.0 && std::isfinite(diag[k])) ? 1.0 / diag[k] : 1.0;

  Vec x = x0 ? *x0 : Vec::Zero(b.size());
  project(x);
  Vec r = b - A(x);
  project(r);
  const double target = s.tol_rel * b.norm() + s.tol_abs;
  std::vector<double> history{r.norm()};
  int it = 0;
  if (history.back() > target) {
    Vec z = inv.cwiseProduct(r);
    project(z);
    Vec p = z;
    double rz = r.dot(z);
    for (it = 1; it <= s.max_iter; ++it) {
      const Vec Ap = A(p);
      const double pAp = p.dot(Ap);
      if (!(pAp > 0.0) || !std::isfinite(pAp)) {
        history.push_back(r.norm());
        break;
      }
      const double a = rz / pAp;
      x += a * p;
      r -= a * Ap;
      project(r);
      history.push_back(r.norm());
      if (!std::isfinite(history.back())) break;
      if (history.back() <= target) break;
      z = inv.cwiseProduct(r);
      project(z);
      const double rz_new = r.dot(z);
      p = z + (rz_new / rz) * p;
      rz = rz_new;
    }
  }
  if (report) {
    report->iterations = it;
    report->residual = history.back();
    report->history = history;
  }
  if (!(history.back() <= target)) {
    std::ostringstream msg;
    msg << "conjugate gradients stalled after " << it << " iterations: residual " << history.back()
        << " > target " << target;
    throw SolverFailure(msg.str(), std::move(history));
  }
  project(x);
  return x;
}

} // namespace chb
