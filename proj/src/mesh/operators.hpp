#pragma once

#include "mesh/fields.hpp"

namespace chb {

// All operators below are built on the trapezoidal weights W of the grid. The Laplacian
// L_c = W^{-1} S_c, where S_c is the symmetric face form; L_c is self-adjoint in the
// weighted inner product <u,v>_h = sum W u v.

/// Face form S_c f (weak Laplacian, negative semidefinite). Does not check the coefficient.
Vec laplacian_form(const Grid& g, const Vec& f, const Vec& coeff);
Vec laplacian_form(const Grid& g, const Vec& f, double coeff = 1.0);

/// div(c grad f) with zero flux through every edge.
ScalarField neumann_laplacian(const ScalarField& field, const ScalarField& coeff);
Vec neumann_laplacian(const Grid& g, const Vec& f, const Vec& coeff);
Vec neumann_laplacian(const Grid& g, const Vec& f, double coeff = 1.0);

/// Throws a Coefficient error unless every value is finite and strictly positive.
void require_positive(const Vec& c, const char* what);

/// Nodal first derivatives: centred inside, one-sided at the first and last node of each line.
Vec diff_x(const Grid& g, const Vec& f);
Vec diff_y(const Grid& g, const Vec& f);
/// Transposes of diff_x / diff_y.
Vec diff_x_t(const Grid& g, const Vec& f);
Vec diff_y_t(const Grid& g, const Vec& f);

SymTensorField symmetric_gradient(const VectorField2& u);
ScalarField divergence(const VectorField2& u);
Vec divergence_packed(const Grid& g, const Vec& u);

/// Weighted adjoint of the divergence: returns D^T W s in packed layout, so that
/// u . G(s) = <div u, s>_h for all u.
Vec weak_gradient(const Grid& g, const Vec& s);

Vec weights(const Grid& g);
double inner_h(const Grid& g, const Vec& a, const Vec& b);
double norm_h(const Grid& g, const Vec& a);
double mean(const Grid& g, const Vec& a);

} // namespace chb
