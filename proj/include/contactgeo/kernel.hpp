#pragma once

#include <Eigen/Dense>

#include "contactgeo/check.hpp"
#include "contactgeo/fields.hpp"

namespace contactgeo {

// ─── Pointwise jet operations ───
//
// Vector fields, tensors and functions below are jets at a single point. The
// frame derivations E_a act on a jet through Jet::derivative(a); on chart
// models these are the coordinate partials.

/// X(f) = X^a E_a(f).
Jet directional(const JetVec& x, const Jet& f);
/// Componentwise X(Y^k).
JetVec directional(const JetVec& x, const JetVec& y);
JetMat directional(const JetVec& x, const JetMat& t);

/// [X, Y]^k = X(Y^k) - Y(X^k) + c^k_ab X^a Y^b.
JetVec bracket(const Model& m, const JetVec& x, const JetVec& y);

/// (L_X T)Y = [X, TY] - T[X, Y], as a matrix acting on components.
JetMat lie_derivative(const Model& m, const JetVec& x, const JetMat& t);
/// (L_X omega)(Y) = X(omega(Y)) - omega([X, Y]), as a covector.
JetVec lie_derivative_form(const Model& m, const JetVec& x, const JetVec& omega);

/// [T,T](X,Y) = T^2[X,Y] + [TX,TY] - T[TX,Y] - T[X,TY].
JetVec nijenhuis(const Model& m, const JetMat& t, const JetVec& x, const JetVec& y);

// ─── Field-level operations ───

Eigen::VectorXd lie_bracket(const VectorField& x, const VectorField& y, const Point& p);
/// The bracket as a lazily evaluated field. Each nesting costs one jet order
/// on fields that are not complete.
VectorField lie_bracket(const VectorField& x, const VectorField& y);
VectorField tensor_apply(const Tensor11Field& t, const VectorField& x);
double metric_eval(const MetricField& g, const VectorField& x, const VectorField& y,
                   const Point& p);
double oneform_eval(const OneForm& eta, const VectorField& x, const Point& p);

/// Jacobi identity on every triple of frame fields. Exact zero on charts.
Check jacobi_check(const Model& m, double tol = 1e-12);

// ─── Small dense helpers ───

/// Numerical rank with a relative singular-value cutoff.
int rank(const Eigen::MatrixXd& m, double rel_tol = 1e-9);
/// Columns spanning the column space of m, chosen by pivoted QR.
Eigen::MatrixXd column_basis(const Eigen::MatrixXd& m, double rel_tol = 1e-9);
/// (positive, negative, zero) eigenvalue counts of a symmetric matrix.
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};
Signature signature(const Eigen::MatrixXd& sym, double rel_tol = 1e-9);

}  // namespace contactgeo
