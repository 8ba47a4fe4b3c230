#pragma once

#include "biot/biot_operators.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace chb {

using DenseMatrix = Eigen::MatrixXd;

/// Explicit matrix of a linear operator. `components` is the number of scalar unknowns per
/// node of the column space (1 for scalar fields, 2 for packed displacements).
struct DenseOperator {
  DenseMatrix matrix;
  std::string label;
  int row_components = 1, col_components = 1;
};

inline constexpr int kMaxDenseNodes = 12;

/// Applies `op` to every unit vector. Grids above 12x12 are rejected with a Size error.
DenseOperator densify(const LinearMap& op, const Grid& g, int col_components, int row_components, std::string label);

enum class OperatorId {
  Identity,
  NeumannLaplacian, // coefficient kappa(phi)
  Divergence,       // packed displacement -> scalar
  WeakGradient,
  ElasticityPlain,
  ElasticityAugmented,
  ElasticityVisco,
  BTilde,
  ATilde,
  FluidOperator,
};

const char* to_string(OperatorId id);

DenseOperator densify(OperatorId id, const MaterialModel& material, const ScalarField& phi,
                      const SolverSettings& settings = {});

/// Weighted-Euclidean similarity W^{1/2} A W^{-1/2} of a scalar operator: the Euclidean
/// representation of A in the inner product <u,v>_h.
DenseMatrix weighted_similarity(const Grid& g, const DenseMatrix& A);

/// Compositions from dense factors only (pivoted LU, no Krylov or Cholesky).
DenseMatrix dense_B_tilde(const MaterialModel& material, const ScalarField& phi);
DenseMatrix dense_A_tilde(const MaterialModel& material, const ScalarField& phi);
DenseMatrix dense_fluid_operator(const MaterialModel& material, const ScalarField& phi);

struct EigenReport {
  std::vector<double> eigenvalues; // ascending, of the symmetrized matrix
  double max_imag = 0.0;           // largest |Im| among the eigenvalues of the unsymmetrized matrix
  double symmetry_defect = 0.0;
  bool weighted = false;
};

/// Eigenvalues of `matrix` in the geometry of the SPD `weight` (a Gram matrix): with
/// weight = L L^T the spectrum of L^T A L^{-T} is analysed. An indefinite weight is an error.
EigenReport spectral_check(const DenseMatrix& matrix, const DenseMatrix* weight = nullptr);

struct OracleCheck {
  std::string quantity;
  double value;
  double threshold;
  bool upper; // value must be <= threshold, otherwise >= threshold
  bool pass() const { return upper ? value <= threshold : value >= threshold; }
};

struct IdentityReport {
  double ab_defect = 0, ba_defect = 0;   // |A~ B~ - I|_max, |B~ A~ - I|_max
  double sym_b = 0, sym_a = 0;           // weighted symmetry defects
  double min_eig_b = 0, min_eig_a = 0;
  double c = 0, C = 0;                   // extreme eigenvalues of A~
  double beta = 0;                       // -min spectrum of the H-symmetrized fluid operator (>= 0)
  double imag_residue = 0;
  std::vector<OracleCheck> checks;

  bool pass() const;
  std::string table() const;
};

IdentityReport verify_operator_identities(const MaterialModel& material, const ScalarField& phi,
                                          const SolverSettings& settings = {});

} // namespace chb
