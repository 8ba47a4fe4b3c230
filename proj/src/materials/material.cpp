#include "materials/material.hpp"

#include <algorithm>
#include <cmath>

namespace chb {

namespace {

const double kT1 = std::tanh(1.0);

double s_fn(double z, int order) {
  const double t = std::tanh(z);
  const double sech2 = 1.0 - t * t;
  switch (order) {
  case 0: return t / kT1;
  case 1: return sech2 / kT1;
  case 2: return -2.0 * t * sech2 / kT1;
  default: return (-2.0 * sech2 * sech2 + 4.0 * t * t * sech2) / kT1;
  }
}

double quadratic(double c0, double c1, double z, int order) {
  switch (order) {
  case 0: return c0 + c1 * z * z;
  case 1: return 2.0 * c1 * z;
  case 2: return 2.0 * c1;
  default: return 0.0;
  }
}

double bounded(double c0, double c1, double z, int order) {
  return order == 0 ? c0 + c1 * s_fn(z, 0) : c1 * s_fn(z, order);
}

// sup over the real line of |s| and |s'|.
constexpr double kSupS = 1.3130352854993312;  // 1/tanh(1)
constexpr double kSupDs = 1.3130352854993312; // s'(0)

void check(bool ok, const std::string& msg) { require(ok, ErrorCode::Config, msg); }

} // namespace

const char* to_string(Coefficient c) {
  switch (c) {
  case Coefficient::Mobility: return "mobility";
  case Coefficient::Permeability: return "permeability";
  case Coefficient::Compressibility: return "compressibility";
  case Coefficient::BiotWillis: return "biot_willis";
  case Coefficient::Potential: return "potential";
  case Coefficient::LameLambda: return "lame_lambda";
  case Coefficient::LameMu: return "lame_mu";
  case Coefficient::ViscoLambda: return "visco_lambda";
  case Coefficient::ViscoMu: return "visco_mu";
  case Coefficient::Eigenstrain: return "eigenstrain";
  }
  return "?";
}

Coefficient coefficient_from_string(const std::string& name) {
  for (int k = 0; k <= static_cast<int>(Coefficient::Eigenstrain); ++k) {
    const auto c = static_cast<Coefficient>(k);
    if (name == to_string(c)) return c;
  }
  fail(ErrorCode::InvalidArgument, "unknown coefficient '" + name + "'");
}

int max_derivative_order(Coefficient c) { return c == Coefficient::Potential ? 3 : 2; }

MaterialModel::MaterialModel(const MaterialParams& p) : p_(p) {
  check(std::isfinite(p.eps) && p.eps > 0.0, "eps must be positive");
  check(p.rho == 0 || p.rho == 1, "rho must be 0 (elastic) or 1 (visco-elastic)");
  check(p.m0 > 0.0, "m0 = " + std::to_string(p.m0) + " violates mobility positivity m(z) >= m0 > 0");
  check(p.m1 >= 0.0, "m1 must be nonnegative so that m(z) >= m0 > 0");
  check(p.kappa0 > 0.0, "kappa0 = " + std::to_string(p.kappa0) +
                            " violates permeability positivity kappa(z) >= kappa0 > 0");
  check(p.kappa1 >= 0.0, "kappa1 must be nonnegative so that kappa(z) >= kappa0 > 0");
  check(compressibility_min() > 0.0,
        "compressibility must be uniformly positive: need biot_m0 > |biot_m1|/tanh(1)");
  check(p.psi_scale >= 0.0, "psi_scale must be nonnegative");
  check(mu_min() > 0.0 && lambda_min() + mu_min() > 0.0,
        "Lame parameters must keep C positive definite: need min mu > 0 and min (lambda + mu) > 0");
  const double vl = p.visco_lambda0 - std::abs(p.visco_lambda1) * kSupS;
  const double vm = p.visco_mu0 - std::abs(p.visco_mu1) * kSupS;
  check(vm > 0.0 && vl + vm > 0.0, "visco Lame parameters must keep C_nu positive definite");
  for (double v : {p.m0, p.m1, p.kappa0, p.kappa1, p.biot_m0, p.biot_m1, p.alpha0, p.alpha1, p.psi_scale,
                   p.lambda0, p.lambda1, p.mu0, p.mu1, p.visco_lambda0, p.visco_lambda1, p.visco_mu0,
                   p.visco_mu1, p.tau0, p.tau1})
    check(std::isfinite(v), "material parameters must be finite");
}

double MaterialModel::eval(Coefficient c, double z, int order) const {
  if (order < 0 || order > max_derivative_order(c))
    fail(ErrorCode::InvalidArgument,
         "derivative order " + std::to_string(order) + " not supported for " + to_string(c));
  switch (c) {
  case Coefficient::Mobility: return quadratic(p_.m0, p_.m1, z, order);
  case Coefficient::Permeability: return quadratic(p_.kappa0, p_.kappa1, z, order);
  case Coefficient::Compressibility: return bounded(p_.biot_m0, p_.biot_m1, z, order);
  case Coefficient::BiotWillis: return bounded(p_.alpha0, p_.alpha1, z, order);
  case Coefficient::LameLambda: return bounded(p_.lambda0, p_.lambda1, z, order);
  case Coefficient::LameMu: return bounded(p_.mu0, p_.mu1, z, order);
  case Coefficient::ViscoLambda: return bounded(p_.visco_lambda0, p_.visco_lambda1, z, order);
  case Coefficient::ViscoMu: return bounded(p_.visco_mu0, p_.visco_mu1, z, order);
  case Coefficient::Eigenstrain: return bounded(p_.tau0, p_.tau1, z, order);
  case Coefficient::Potential: {
    const double a = p_.psi_scale, q = 1.0 - z * z;
    switch (order) {
    case 0: return a * q * q;
    case 1: return -4.0 * a * z * q;
    case 2: return a * (12.0 * z * z - 4.0);
    default: return 24.0 * a * z;
    }
  }
  }
  return 0.0;
}

Vec MaterialModel::eval(Coefficient c, const Vec& phi, int order) const {
  Vec out(phi.size());
  for (Eigen::Index k = 0; k < phi.size(); ++k) out[k] = eval(c, phi[k], order);
  return out;
}

ScalarField MaterialModel::eval(Coefficient c, const ScalarField& phi, int order) const {
  return ScalarField(phi.grid, eval(c, phi.values, order));
}

double MaterialModel::W(double z, const Sym2& e) const {
  const Sym2 d = e - Sym2::iso(eval(Coefficient::Eigenstrain, z));
  return lame(z).apply(d).dot(d);
}

Sym2 MaterialModel::W_strain(double z, const Sym2& e) const {
  const Sym2 d = e - Sym2::iso(eval(Coefficient::Eigenstrain, z));
  return lame(z).apply(d) * 2.0;
}

double MaterialModel::W_phi(double z, const Sym2& e) const {
  const Sym2 d = e - Sym2::iso(eval(Coefficient::Eigenstrain, z));
  const double dtau = eval(Coefficient::Eigenstrain, z, 1);
  // C'(d):d - 2 C(tau' I):d
  return lame_prime(z).apply(d).dot(d) - 2.0 * lame(z).apply(Sym2::iso(dtau)).dot(d);
}

ScalarField MaterialModel::elastic_density_W(const ScalarField& phi, const SymTensorField& strain) const {
  check_same_grid(phi.grid, strain.grid);
  ScalarField out(phi.grid);
  for (std::size_t n = 0; n < phi.size(); ++n) out[n] = W(phi[n], at(strain, n));
  return out;
}

std::pair<ScalarField, SymTensorField>
MaterialModel::elastic_density_derivatives(const ScalarField& phi, const SymTensorField& strain) const {
  check_same_grid(phi.grid, strain.grid);
  ScalarField wp(phi.grid);
  SymTensorField we(phi.grid);
  for (std::size_t n = 0; n < phi.size(); ++n) {
    const Sym2 e = at(strain, n);
    wp[n] = W_phi(phi[n], e);
    const Sym2 s = W_strain(phi[n], e);
    const auto k = static_cast<Eigen::Index>(n);
    we.xx[k] = s.xx;
    we.yy[k] = s.yy;
    we.xy[k] = s.xy;
  }
  return {wp, we};
}

double MaterialModel::compressibility_min() const { return p_.biot_m0 - std::abs(p_.biot_m1) * kSupS; }
double MaterialModel::compressibility_max() const { return p_.biot_m0 + std::abs(p_.biot_m1) * kSupS; }
double MaterialModel::lambda_min() const { return p_.lambda0 - std::abs(p_.lambda1) * kSupS; }
double MaterialModel::lambda_max() const { return p_.lambda0 + std::abs(p_.lambda1) * kSupS; }
double MaterialModel::mu_min() const { return p_.mu0 - std::abs(p_.mu1) * kSupS; }
double MaterialModel::mu_max() const { return p_.mu0 + std::abs(p_.mu1) * kSupS; }

double MaterialModel::growth_constant() const {
  // |C'(d):d| <= A |d|^2 and |2 C(tau' I):d| <= B |d| with d = e - tau I, |d| <= |e| + sqrt(2)|tau|.
  const double A = 2.0 * std::abs(p_.mu1) * kSupDs + 2.0 * std::abs(p_.lambda1) * kSupDs;
  const double lam_abs = std::max(std::abs(lambda_min()), std::abs(lambda_max()));
  const double B = 2.0 * (2.0 * mu_max() + 2.0 * lam_abs) * std::abs(p_.tau1) * kSupDs * std::sqrt(2.0);
  const double tau_max = std::abs(p_.tau0) + std::abs(p_.tau1) * kSupS;
  // A|d|^2 + B|d| <= (A + B/2)|d|^2 + B/2, and |d|^2 <= 2|e|^2 + 4 tau_max^2.
  const double k = A + 0.5 * B;
  return std::max(2.0 * k, 4.0 * k * tau_max * tau_max + 0.5 * B);
}

} // namespace chb
