#pragma once

#include "mesh/fields.hpp"

#include <string>

namespace chb {

enum class Coefficient {
  Mobility,        // m
  Permeability,    // kappa
  Compressibility, // M
  BiotWillis,      // alpha
  Potential,       // psi
  LameLambda,
  LameMu,
  ViscoLambda,
  ViscoMu,
  Eigenstrain, // tau, with T(phi) = tau(phi) I
};

const char* to_string(Coefficient c);
/// Accepts the names used by to_string(); throws InvalidArgument otherwise.
Coefficient coefficient_from_string(const std::string& name);
int max_derivative_order(Coefficient c);

struct MaterialParams {
  double eps = 0.1;
  int rho = 0;

  double m0 = 0.1, m1 = 0.05;
  double kappa0 = 1.0, kappa1 = 0.5;
  double biot_m0 = 1.0, biot_m1 = 0.2;
  double alpha0 = 0.5, alpha1 = 0.1;
  double psi_scale = 0.25;
  double lambda0 = 1.0, lambda1 = 0.2;
  double mu0 = 1.0, mu1 = 0.2;
  double visco_lambda0 = 0.5, visco_lambda1 = 0.1;
  double visco_mu0 = 0.5, visco_mu1 = 0.1;
  double tau0 = 0.005, tau1 = -0.005;
};

struct Lame {
  double lambda, mu;
  Sym2 apply(const Sym2& e) const { return e * (2.0 * mu) + Sym2::iso(lambda * e.trace()); }
};

/// Phase-dependent coefficients. Bounded coefficients are interpolated through
/// s(z) = tanh(z)/tanh(1), so s(+-1) = +-1 and |s| stays below 1/tanh(1) on the whole line.
class MaterialModel {
public:
  explicit MaterialModel(const MaterialParams& p);

  const MaterialParams& params() const noexcept { return p_; }
  double eps() const noexcept { return p_.eps; }
  bool visco() const noexcept { return p_.rho == 1; }

  double eval(Coefficient c, double z, int order = 0) const;
  ScalarField eval(Coefficient c, const ScalarField& phi, int order = 0) const;
  Vec eval(Coefficient c, const Vec& phi, int order = 0) const;

  Lame lame(double z) const { return {eval(Coefficient::LameLambda, z), eval(Coefficient::LameMu, z)}; }
  Lame lame_prime(double z) const {
    return {eval(Coefficient::LameLambda, z, 1), eval(Coefficient::LameMu, z, 1)};
  }
  Lame visco_lame(double z) const {
    return {eval(Coefficient::ViscoLambda, z), eval(Coefficient::ViscoMu, z)};
  }

  /// W(z,e) = C(z)(e - T(z)):(e - T(z)).
  double W(double z, const Sym2& e) const;
  double W_phi(double z, const Sym2& e) const;
  Sym2 W_strain(double z, const Sym2& e) const;

  ScalarField elastic_density_W(const ScalarField& phi, const SymTensorField& strain) const;
  std::pair<ScalarField, SymTensorField> elastic_density_derivatives(const ScalarField& phi,
                                                                     const SymTensorField& strain) const;

  /// Constant C2 with |W_phi(z,e)| <= C2 (|e|^2 + z^2 + 1) for every z and symmetric e.
  double growth_constant() const;

  /// Uniform bounds over the whole real line.
  double compressibility_min() const;
  double compressibility_max() const;
  double lambda_min() const;
  double lambda_max() const;
  double mu_min() const;
  double mu_max() const;

private:
  MaterialParams p_;
};

} // namespace chb
