#include "contactgeo/affine.hpp"

#include "contactgeo/errors.hpp"
#include "contactgeo/kernel.hpp"

namespace contactgeo {

JetMat Christoffel::slice(int i) const {
  JetMat m(n_, n_);
  for (int k = 0; k < n_; ++k)
    for (int j = 0; j < n_; ++j) m(k, j) = (*this)(k, i, j);
  return m;
}

JetVec Christoffel::apply(const JetVec& x, const JetVec& y) const {
  JetVec r(n_);
  for (int i = 0; i < n_; ++i) {
    if (x[i].value() == 0.0 && x[i].degree() == 0) continue;
    for (int j = 0; j < n_; ++j) {
      if (y[j].value() == 0.0 && y[j].degree() == 0) continue;
      const Jet xy = x[i] * y[j];
      for (int k = 0; k < n_; ++k) r[k] += xy * (*this)(k, i, j);
    }
  }
  return r;
}

void Christoffel::set(int i, int j, const JetVec& v) {
  for (int k = 0; k < n_; ++k) (*this)(k, i, j) = v[k];
}

Eigen::VectorXd contract(const PairTable& t, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (x[i] != 0.0 && y[j] != 0.0) r += x[i] * y[j] * t[i * n + j];
  return r;
}

Eigen::MatrixXd contract(const EndTable& t, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (x[i] != 0.0 && y[j] != 0.0) r += x[i] * y[j] * t[i * n + j];
  return r;
}

// ─── Connection ───

Connection::Connection(ModelPtr model, Fn fn, std::string name)
    : model_(std::move(model)), fn_(std::move(fn)), name_(std::move(name)) {}

Christoffel Connection::christoffel(const Point& p) const {
  model_->require(p);
  const auto key = std::make_pair(p.sample, p.x);
  {
    std::lock_guard<std::mutex> guard(cache_->lock);
    auto it = cache_->tables.find(key);
    if (it != cache_->tables.end()) return it->second;
  }
  Christoffel g = fn_(p);
  if (g.dim() != model_->dim()) throw DimensionError("Christoffel table has the wrong dimension");
  std::lock_guard<std::mutex> guard(cache_->lock);
  cache_->tables.emplace(key, g);
  return g;
}

JetVec Connection::covariant(const Christoffel& g, const JetVec& x, const JetVec& y) {
  return directional(x, y) + g.apply(x, y);
}

Eigen::VectorXd Connection::nabla(const VectorField& x, const VectorField& y,
                                  const Point& p) const {
  require_same_model(model_, x.model());
  require_same_model(model_, y.model());
  return values(covariant(christoffel(p), x.jets(p), y.jets(p)));
}

PairTable Connection::torsion(const Point& p) const {
  const int n = model_->dim();
  const Christoffel g = christoffel(p);
  PairTable t(n * n, Eigen::VectorXd::Zero(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        t[i * n + j][k] = g(k, i, j).value() - g(k, j, i).value() - model_->c(i, j, k);
  return t;
}

EndTable Connection::curvature(const Point& p) const {
  const int n = model_->dim();
  const Christoffel g = christoffel(p);
  EndTable r(n * n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Eigen::MatrixXd& m = r[i * n + j];
      for (int k = 0; k < n; ++k) {
        for (int mm = 0; mm < n; ++mm) {
          double v = g(mm, j, k).derivative(i).value() - g(mm, i, k).derivative(j).value();
          for (int l = 0; l < n; ++l) {
            v += g(l, j, k).value() * g(mm, i, l).value() - g(l, i, k).value() * g(mm, j, l).value() -
                 model_->c(i, j, l) * g(mm, l, k).value();
          }
          m(mm, k) = v;
        }
      }
    }
  }
  return r;
}

Eigen::MatrixXd Connection::ricci(const Point& p) const {
  const int n = model_->dim();
  const EndTable r = curvature(p);
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) ric(i, j) += r[m * n + i](m, j);
  return ric;
}

Eigen::VectorXd Connection::torsion(const VectorField& x, const VectorField& y,
                                    const Point& p) const {
  return contract(torsion(p), x.at(p), y.at(p));
}

Eigen::VectorXd Connection::curvature(const VectorField& x, const VectorField& y,
                                      const VectorField& z, const Point& p) const {
  return contract(curvature(p), x.at(p), y.at(p)) * z.at(p);
}

Connection Connection::perturbed(int k, int i, int j, double delta) const {
  const Connection base = *this;
  return Connection(
      model_,
      [base, k, i, j, delta](const Point& p) {
        Christoffel g = base.christoffel(p);
        g(k, i, j) += Jet(delta);
        return g;
      },
      name_ + "+perturbation");
}

Connection Connection::average(const std::vector<Connection>& cs, std::string name) {
  if (cs.empty()) throw DomainError("average of no connections");
  for (const auto& c : cs) require_same_model(cs.front().model(), c.model());
  const double w = 1.0 / static_cast<double>(cs.size());
  return Connection(
      cs.front().model(),
      [cs, w](const Point& p) {
        const int n = cs.front().model()->dim();
        Christoffel r(n);
        for (const auto& c : cs) {
          const Christoffel g = c.christoffel(p);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              for (int k = 0; k < n; ++k) r(k, i, j) += Jet(w) * g(k, i, j);
        }
        return r;
      },
      std::move(name));
}

// ─── Covariant derivatives of tensors ───

Eigen::VectorXd nabla_vector(const Christoffel& g, int i, const JetVec& y) {
  const int n = g.dim();
  Eigen::VectorXd r(n);
  for (int k = 0; k < n; ++k) {
    double v = y[k].derivative(i).value();
    for (int l = 0; l < n; ++l) v += g(k, i, l).value() * y[l].value();
    r[k] = v;
  }
  return r;
}

Eigen::MatrixXd nabla_tensor(const Christoffel& g, int i, const JetMat& t) {
  const int n = g.dim();
  const Eigen::MatrixXd gi = values(g.slice(i));
  const Eigen::MatrixXd tv = values(t);
  Eigen::MatrixXd d(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) d(k, j) = t(k, j).derivative(i).value();
  return d + gi * tv - tv * gi;
}

Eigen::VectorXd nabla_form(const Christoffel& g, int i, const JetVec& omega) {
  const int n = g.dim();
  Eigen::VectorXd r(n);
  for (int j = 0; j < n; ++j) {
    double v = omega[j].derivative(i).value();
    for (int l = 0; l < n; ++l) v -= g(l, i, j).value() * omega[l].value();
    r[j] = v;
  }
  return r;
}

Eigen::MatrixXd nabla_bilinear(const Christoffel& g, int i, const JetMat& b) {
  const int n = g.dim();
  const Eigen::MatrixXd gi = values(g.slice(i));
  const Eigen::MatrixXd bv = values(b);
  Eigen::MatrixXd d(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) d(j, k) = b(j, k).derivative(i).value();
  // (nabla_i b)_jk = D_i b_jk - Gamma^l_ij b_lk - Gamma^l_ik b_jl.
  return d - gi.transpose() * bv - bv * gi;
}

// ─── Levi-Civita ───

Connection levi_civita(const MetricField& metric) {
  return Connection(
      metric.model(),
      [metric](const Point& p) {
        const Model& m = *metric.model();
        const int n = m.dim();
        const JetMat g = metric.jets(p);
        const JetMat ginv = inverse(g);
        const bool frame = m.kind() == ModelKind::Frame;
        Christoffel gam(n);
        std::vector<Jet> kz(n);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            // Koszul: 2 g(nabla_i E_j, E_l) = E_i g_jl + E_j g_il - E_l g_ij
            //         + g([E_i,E_j],E_l) - g([E_i,E_l],E_j) - g([E_j,E_l],E_i).
            for (int l = 0; l < n; ++l) {
              Jet v = g(j, l).derivative(i) + g(i, l).derivative(j) - g(i, j).derivative(l);
              if (frame) {
                for (int q = 0; q < n; ++q) {
                  if (m.c(i, j, q) != 0.0) v += Jet(m.c(i, j, q)) * g(q, l);
                  if (m.c(i, l, q) != 0.0) v -= Jet(m.c(i, l, q)) * g(q, j);
                  if (m.c(j, l, q) != 0.0) v -= Jet(m.c(j, l, q)) * g(q, i);
                }
              }
              kz[l] = Jet(0.5) * v;
            }
            for (int k = 0; k < n; ++k) {
              Jet s;
              for (int l = 0; l < n; ++l) s += ginv(k, l) * kz[l];
              gam(k, i, j) = s;
            }
          }
        }
        return gam;
      },
      "levi-civita(" + metric.label() + ")");
}

Connection shifted(const Connection& base, std::function<Christoffel(const Point&)> s,
                   std::string name) {
  return Connection(
      base.model(),
      [base, s](const Point& p) {
        Christoffel g = base.christoffel(p);
        const Christoffel d = s(p);
        const int n = g.dim();
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) g(k, i, j) += d(k, i, j);
        return g;
      },
      std::move(name));
}

}  // namespace contactgeo
