#pragma once

#include <array>
#include <vector>

namespace contactgeo {

inline constexpr int kMaxDim = 9;

/// Second-order Taylor jet of a scalar function at a point: value, gradient
/// and symmetric Hessian with respect to the model's frame derivations.
///
/// `order()` is the highest derivative order the jet carries reliably.
/// `degree()` is an upper bound on the polynomial degree of the underlying
/// function. A jet with degree <= 2 and order 2 is its own Taylor expansion,
/// so differentiating it loses nothing.
class Jet {
 public:
  static constexpr int kUnbounded = 1 << 20;

  Jet() = default;
  Jet(double value) : v_(value) {}  // NOLINT: constants convert implicitly

  static Jet constant(double value) { return Jet(value); }
  /// The coordinate function x_a evaluated at `x`.
  static Jet coordinate(int a, double x);

  double value() const { return v_; }
  double d(int a) const;
  double dd(int a, int b) const;
  int order() const { return order_; }
  int degree() const { return degree_; }
  bool complete() const { return order_ == 2 && degree_ <= 2; }

  /// Derivative along the a-th frame derivation. Costs one order unless the
  /// jet is complete.
  Jet derivative(int a) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet operator-() const;

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }

  /// Sets the raw derivative data; used by polynomial evaluation.
  void set(double value, const std::array<double, kMaxDim>& grad,
           const std::array<double, kMaxDim * kMaxDim>& hess, int order,
           int degree, int span);

 private:
  static int idx(int a, int b) { return a * kMaxDim + b; }

  double v_ = 0.0;
  std::array<double, kMaxDim> g_{};
  std::array<double, kMaxDim * kMaxDim> h_{};
  int order_ = 2;
  int degree_ = 0;
  // Highest frame index touched so far; loops stop there.
  int span_ = 0;
};

using JetVec = std::vector<Jet>;

/// Dense row-major matrix of jets. Entry (k, j) of a (1,1)-tensor is the k-th
/// component of T(E_j).
class JetMat {
 public:
  JetMat() = default;
  JetMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static JetMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Jet& operator()(int r, int c) { return a_[r * cols_ + c]; }
  const Jet& operator()(int r, int c) const { return a_[r * cols_ + c]; }
  JetVec column(int c) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Jet> a_;
};

JetVec operator+(const JetVec& a, const JetVec& b);
JetVec operator-(const JetVec& a, const JetVec& b);
JetVec operator*(const Jet& s, const JetVec& v);
JetVec operator*(const JetMat& m, const JetVec& v);
JetMat operator*(const JetMat& a, const JetMat& b);
JetMat operator+(const JetMat& a, const JetMat& b);
JetMat operator-(const JetMat& a, const JetMat& b);
JetMat operator*(const Jet& s, const JetMat& m);

Jet dot(const JetVec& a, const JetVec& b);
JetMat outer(const JetVec& a, const JetVec& b);
JetVec zeros(int n);
JetVec unit(int n, int k);

/// Inverse by Gauss-Jordan elimination with partial pivoting on values.
/// Throws NondegeneracyError when a pivot falls below `singular_tol`.
JetMat inverse(const JetMat& m, double singular_tol = 1e-13);

}  // namespace contactgeo
