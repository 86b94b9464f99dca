#include "contactgeo/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contactgeo/errors.hpp"

namespace contactgeo {

namespace {

int add_degree(int a, int b) {
  return std::min(a + b, Jet::kUnbounded);
}

void check_index(int a) {
  if (a < 0 || a >= kMaxDim) {
    throw DimensionError("jet index " + std::to_string(a) + " out of range");
  }
}

}  // namespace

Jet Jet::coordinate(int a, double x) {
  check_index(a);
  Jet j(x);
  j.g_[a] = 1.0;
  j.degree_ = 1;
  j.span_ = a + 1;
  return j;
}

double Jet::d(int a) const {
  check_index(a);
  if (order_ < 1) throw JetOrderError("first derivative of an order-0 jet");
  return g_[a];
}

double Jet::dd(int a, int b) const {
  check_index(a);
  check_index(b);
  if (order_ < 2) throw JetOrderError("second derivative of a jet below order 2");
  return h_[idx(a, b)];
}

Jet Jet::derivative(int a) const {
  check_index(a);
  Jet r;
  r.span_ = span_;
  if (a >= span_) {
    // The jet does not depend on this direction at all.
    r.order_ = order_;
    r.degree_ = 0;
    return r;
  }
  if (complete()) {
    r.order_ = 2;
    r.degree_ = std::max(degree_ - 1, 0);
  } else {
    if (order_ < 1) throw JetOrderError("derivative of an order-0 jet");
    r.order_ = order_ - 1;
    r.degree_ = degree_ >= kUnbounded ? kUnbounded : std::max(degree_ - 1, 0);
  }
  r.v_ = g_[a];
  if (r.order_ >= 1) {
    for (int b = 0; b < span_; ++b) r.g_[b] = h_[idx(a, b)];
  }
  // Third derivatives are never stored, so the new Hessian is zero: exact for
  // complete jets and flagged by the lowered order otherwise.
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  const int n = std::max(span_, o.span_);
  v_ += o.v_;
  for (int a = 0; a < n; ++a) g_[a] += o.g_[a];
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) h_[idx(a, b)] += o.h_[idx(a, b)];
  span_ = n;
  order_ = std::min(order_, o.order_);
  degree_ = std::max(degree_, o.degree_);
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  const int n = std::max(span_, o.span_);
  v_ -= o.v_;
  for (int a = 0; a < n; ++a) g_[a] -= o.g_[a];
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) h_[idx(a, b)] -= o.h_[idx(a, b)];
  span_ = n;
  order_ = std::min(order_, o.order_);
  degree_ = std::max(degree_, o.degree_);
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  const int n = std::max(span_, o.span_);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      h_[idx(a, b)] = h_[idx(a, b)] * o.v_ + o.h_[idx(a, b)] * v_ +
                      g_[a] * o.g_[b] + g_[b] * o.g_[a];
    }
  }
  for (int a = 0; a < n; ++a) g_[a] = g_[a] * o.v_ + o.g_[a] * v_;
  v_ *= o.v_;
  span_ = n;
  order_ = std::min(order_, o.order_);
  degree_ = add_degree(degree_, o.degree_);
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  if (o.v_ == 0.0) throw NondegeneracyError("jet division by zero");
  const int n = std::max(span_, o.span_);
  // q = 1/o: q' = -o'/o^2, q'' = 2 o' o'^T / o^3 - o''/o^2.
  Jet q(1.0 / o.v_);
  const double inv2 = 1.0 / (o.v_ * o.v_);
  const double inv3 = inv2 / o.v_;
  for (int a = 0; a < n; ++a) q.g_[a] = -o.g_[a] * inv2;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      q.h_[idx(a, b)] = 2.0 * o.g_[a] * o.g_[b] * inv3 - o.h_[idx(a, b)] * inv2;
  q.span_ = n;
  q.order_ = o.order_;
  q.degree_ = o.degree_ == 0 ? 0 : kUnbounded;
  return *this *= q;
}

Jet Jet::operator-() const {
  Jet r = *this;
  r.v_ = -v_;
  for (int a = 0; a < span_; ++a) r.g_[a] = -g_[a];
  for (int a = 0; a < span_; ++a)
    for (int b = 0; b < span_; ++b) r.h_[idx(a, b)] = -h_[idx(a, b)];
  return r;
}

void Jet::set(double value, const std::array<double, kMaxDim>& grad,
              const std::array<double, kMaxDim * kMaxDim>& hess, int order,
              int degree, int span) {
  v_ = value;
  g_ = grad;
  h_ = hess;
  order_ = order;
  degree_ = degree;
  span_ = span;
}

// ─── Jet vectors and matrices ───

JetMat JetMat::identity(int n) {
  JetMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Jet(1.0);
  return m;
}

JetVec JetMat::column(int c) const {
  JetVec v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

static void check_same(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionError("jet vector size mismatch");
}

JetVec operator+(const JetVec& a, const JetVec& b) {
  check_same(a.size(), b.size());
  JetVec r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

JetVec operator-(const JetVec& a, const JetVec& b) {
  check_same(a.size(), b.size());
  JetVec r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

JetVec operator*(const Jet& s, const JetVec& v) {
  JetVec r = v;
  for (auto& x : r) x *= s;
  return r;
}

JetVec operator*(const JetMat& m, const JetVec& v) {
  check_same(static_cast<std::size_t>(m.cols()), v.size());
  JetVec r(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

JetMat operator*(const JetMat& a, const JetMat& b) {
  check_same(a.cols(), b.rows());
  JetMat r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k)
      for (int j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
  return r;
}

JetMat operator+(const JetMat& a, const JetMat& b) {
  check_same(a.rows(), b.rows());
  check_same(a.cols(), b.cols());
  JetMat r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) += b(i, j);
  return r;
}

JetMat operator-(const JetMat& a, const JetMat& b) {
  check_same(a.rows(), b.rows());
  check_same(a.cols(), b.cols());
  JetMat r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) -= b(i, j);
  return r;
}

JetMat operator*(const Jet& s, const JetMat& m) {
  JetMat r = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) *= s;
  return r;
}

Jet dot(const JetVec& a, const JetVec& b) {
  check_same(a.size(), b.size());
  Jet r;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

JetMat outer(const JetVec& a, const JetVec& b) {
  JetMat r(static_cast<int>(a.size()), static_cast<int>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r(i, j) = a[i] * b[j];
  return r;
}

JetVec zeros(int n) { return JetVec(n); }

JetVec unit(int n, int k) {
  JetVec v(n);
  v[k] = Jet(1.0);
  return v;
}

JetMat inverse(const JetMat& m, double singular_tol) {
  const int n = m.rows();
  if (m.cols() != n) throw DimensionError("inverse of a non-square jet matrix");
  JetMat a = m;
  JetMat inv = JetMat::identity(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(m(i, j).value()));
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col).value()) > std::abs(a(piv, col).value())) piv = r;
    if (std::abs(a(piv, col).value()) <= singular_tol * std::max(scale, 1.0)) {
      throw NondegeneracyError("singular jet matrix");
    }
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const Jet p = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Jet f = a(r, col);
      if (f.value() == 0.0 && f.degree() == 0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace contactgeo
