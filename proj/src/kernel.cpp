#include "contactgeo/kernel.hpp"

#include <cmath>

#include "contactgeo/errors.hpp"

namespace contactgeo {

Jet directional(const JetVec& x, const Jet& f) {
  Jet r;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a].value() == 0.0 && x[a].degree() == 0) continue;
    r += x[a] * f.derivative(static_cast<int>(a));
  }
  return r;
}

JetVec directional(const JetVec& x, const JetVec& y) {
  JetVec r(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) r[k] = directional(x, y[k]);
  return r;
}

JetMat directional(const JetVec& x, const JetMat& t) {
  JetMat r(t.rows(), t.cols());
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) r(i, j) = directional(x, t(i, j));
  return r;
}

JetVec bracket(const Model& m, const JetVec& x, const JetVec& y) {
  const int n = m.dim();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw DimensionError("bracket operands have the wrong dimension");
  JetVec r = directional(x, y) - directional(y, x);
  if (m.kind() == ModelKind::Frame) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        const Jet xy = x[a] * y[b];
        for (int k = 0; k < n; ++k) {
          const double c = m.c(a, b, k);
          if (c != 0.0) r[k] += Jet(c) * xy;
        }
      }
    }
  }
  return r;
}

JetMat lie_derivative(const Model& m, const JetVec& x, const JetMat& t) {
  const int n = m.dim();
  JetMat r(n, n);
  for (int j = 0; j < n; ++j) {
    const JetVec e = unit(n, j);
    const JetVec col = bracket(m, x, t * e) - t * bracket(m, x, e);
    for (int k = 0; k < n; ++k) r(k, j) = col[k];
  }
  return r;
}

JetVec lie_derivative_form(const Model& m, const JetVec& x, const JetVec& omega) {
  const int n = m.dim();
  JetVec r(n);
  for (int j = 0; j < n; ++j) {
    const JetVec e = unit(n, j);
    r[j] = directional(x, omega[j]) - dot(omega, bracket(m, x, e));
  }
  return r;
}

JetVec nijenhuis(const Model& m, const JetMat& t, const JetVec& x, const JetVec& y) {
  const JetVec tx = t * x;
  const JetVec ty = t * y;
  return t * (t * bracket(m, x, y)) + bracket(m, tx, ty) - t * bracket(m, tx, y) -
         t * bracket(m, x, ty);
}

Eigen::VectorXd lie_bracket(const VectorField& x, const VectorField& y, const Point& p) {
  require_same_model(x.model(), y.model());
  return values(bracket(*x.model(), x.jets(p), y.jets(p)));
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_model(x.model(), y.model());
  return VectorField(
      x.model(), [x, y](const Point& p) { return bracket(*x.model(), x.jets(p), y.jets(p)); },
      "[" + x.label() + "," + y.label() + "]");
}

VectorField tensor_apply(const Tensor11Field& t, const VectorField& x) { return t * x; }

double metric_eval(const MetricField& g, const VectorField& x, const VectorField& y,
                   const Point& p) {
  require_same_model(g.model(), x.model());
  require_same_model(g.model(), y.model());
  return values(x.jets(p)).dot(values(g.jets(p)) * values(y.jets(p)));
}

double oneform_eval(const OneForm& eta, const VectorField& x, const Point& p) {
  require_same_model(eta.model(), x.model());
  return eta.at(p).dot(x.at(p));
}

Check jacobi_check(const Model& m, double tol) {
  if (m.kind() != ModelKind::Frame) throw UnsupportedError("jacobi_check needs a frame model, got chart " + m.name());
  const int n = m.dim();
  Residual res;
  const Point p{};
  auto br = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int k = 0; k < n; ++k) r[k] += m.c(a, b, k) * u[a] * v[b];
    return r;
  };
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd e_i = id.col(i), e_j = id.col(j), e_k = id.col(k);
        const Eigen::VectorXd s = br(br(e_i, e_j), e_k) + br(br(e_j, e_k), e_i) +
                                  br(br(e_k, e_i), e_j);
        res.observe(s, p);
      }
    }
  }
  return res.finish("jacobi", "[[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] = 0", tol);
}

int rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * std::max(1.0, s[0])) ++r;
  return r;
}

Eigen::MatrixXd column_basis(const Eigen::MatrixXd& m, double rel_tol) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(rel_tol);
  const int r = static_cast<int>(qr.rank());
  Eigen::MatrixXd b(m.rows(), r);
  for (int i = 0; i < r; ++i) b.col(i) = m.col(qr.colsPermutation().indices()[i]);
  return b;
}

Signature signature(const Eigen::MatrixXd& sym, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()));
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  Signature s;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] > rel_tol * scale) ++s.positive;
    else if (ev[i] < -rel_tol * scale) ++s.negative;
    else ++s.zero;
  }
  return s;
}

}  // namespace contactgeo
