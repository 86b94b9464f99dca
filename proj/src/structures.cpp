#include "contactgeo/structures.hpp"

#include <cmath>

#include "contactgeo/errors.hpp"

namespace contactgeo {

std::string to_string(StructureKind k) {
  return k == StructureKind::Contact ? "contact" : "paracontact";
}

namespace {

void require_pass(const Check& c) {
  if (!c.pass) {
    throw AxiomError(c.identity + " fails: residual " + std::to_string(c.residual) + " at " +
                     (c.worst ? describe(*c.worst) : std::string("?")));
  }
}

Eigen::MatrixXd eta_xi(const Eigen::VectorXd& eta, const Eigen::VectorXd& xi) {
  return xi * eta.transpose();
}

}  // namespace

// ─── AlmostContact ───

AlmostContact::AlmostContact(Tensor11Field phi, VectorField xi, OneForm eta, StructureKind kind,
                             const std::vector<Point>& samples, double tol)
    : phi_(std::move(phi)), xi_(std::move(xi)), eta_(std::move(eta)), kind_(kind) {
  require_same_model(phi_.model(), xi_.model());
  require_same_model(phi_.model(), eta_.model());
  const int n = model()->dim();
  Residual sq, norm, kill, ann, ranks;
  for (const auto& p : samples) {
    const Eigen::MatrixXd f = phi_.at(p);
    const Eigen::VectorXd x = xi_.at(p);
    const Eigen::VectorXd e = eta_.at(p);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    sq.observe(Eigen::MatrixXd(f * f - eps() * (id - eta_xi(e, x))), p);
    norm.observe(std::abs(e.dot(x) - 1.0), p);
    kill.observe(Eigen::VectorXd(f * x), p);
    ann.observe(Eigen::VectorXd(f.transpose() * e), p);
    if (kind_ == StructureKind::Paracontact) {
      const Eigen::MatrixXd pp = 0.5 * (id + f - eta_xi(e, x));
      const Eigen::MatrixXd pm = 0.5 * (id - f - eta_xi(e, x));
      ranks.observe(std::abs(rank(pp) - rank(pm)) + std::abs(rank(pp) + rank(pm) - (n - 1)), p);
    }
  }
  const std::string sgn = kind_ == StructureKind::Contact ? "-" : "";
  axioms_.push_back(sq.finish("phi^2", "phi^2 = " + sgn + "(I - eta (x) xi)", tol));
  axioms_.push_back(norm.finish("eta(xi)", "eta(xi) = 1", tol));
  axioms_.push_back(kill.finish("phi xi", "phi xi = 0", tol));
  axioms_.push_back(ann.finish("eta phi", "eta o phi = 0", tol));
  if (kind_ == StructureKind::Paracontact)
    axioms_.push_back(ranks.finish("eigenranks", "rank D+ = rank D- = n", 0.5));
  for (const auto& c : axioms_) require_pass(c);
}

// ─── MetricStructure ───

MetricStructure::MetricStructure(AlmostContact s, MetricField g, const std::vector<Point>& samples,
                                 double tol)
    : s_(std::move(s)), g_(std::move(g)) {
  require_same_model(s_.model(), g_.model());
  Residual sym, compat, dual;
  for (const auto& p : samples) {
    const Eigen::MatrixXd gm = g_.at(p);
    const Eigen::MatrixXd f = s_.phi().at(p);
    const Eigen::VectorXd e = s_.eta().at(p);
    const Eigen::VectorXd x = s_.xi().at(p);
    sym.observe(Eigen::MatrixXd(gm - gm.transpose()), p);
    compat.observe(Eigen::MatrixXd(f.transpose() * gm * f + eps() * (gm - e * e.transpose())), p);
    dual.observe(Eigen::VectorXd(gm * x - e), p);
    if (std::abs(gm.determinant()) < 1e-12 * std::max(1.0, gm.cwiseAbs().maxCoeff())) {
      throw NondegeneracyError("metric " + g_.label() + " is degenerate at " + describe(p));
    }
  }
  axioms_.push_back(sym.finish("g symmetric", "g(X,Y) = g(Y,X)", tol));
  axioms_.push_back(compat.finish(
      "compatible",
      std::string("g(phi X, phi Y) = ") + (eps() < 0 ? "" : "-") + "(g(X,Y) - eta(X) eta(Y))", tol));
  axioms_.push_back(dual.finish("eta = g(xi,.)", "g(X, xi) = eta(X)", tol));
  for (const auto& c : axioms_) require_pass(c);
  if (!samples.empty()) sig_ = contactgeo::signature(g_.at(samples.front()));
}

Check MetricStructure::associated(const std::vector<Point>& samples, double tol) const {
  Residual r;
  const Model& m = *model();
  for (const auto& p : samples) {
    const Eigen::MatrixXd om = values(d_eta_matrix(m, eta().jets(p)));
    r.observe(Eigen::MatrixXd(om - g_.at(p) * phi().at(p)), p);
  }
  return r.finish("associated", "deta(X,Y) = g(X, phi Y)", tol);
}

// ─── Normality tensors ───

PairTable n1_table(const AlmostContact& s, const Point& p) {
  const Model& m = *s.model();
  const int n = m.dim();
  const JetMat f = s.phi().jets(p);
  const JetVec eta = s.eta().jets(p);
  const Eigen::VectorXd xi = s.xi().at(p);
  const Eigen::MatrixXd om = values(d_eta_matrix(m, eta));
  PairTable t(n * n, Eigen::VectorXd::Zero(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd v =
          values(nijenhuis(m, f, unit(n, i), unit(n, j))) - 2.0 * s.eps() * om(i, j) * xi;
      t[i * n + j] = v;
      t[j * n + i] = -v;
    }
  }
  return t;
}

Eigen::MatrixXd n2_table(const AlmostContact& s, const Point& p) {
  const Model& m = *s.model();
  const int n = m.dim();
  const JetMat f = s.phi().jets(p);
  const JetVec eta = s.eta().jets(p);
  Eigen::MatrixXd lf(n, n);  // row i: L_{phi E_i} eta
  for (int i = 0; i < n; ++i) lf.row(i) = values(lie_derivative_form(m, f.column(i), eta)).transpose();
  return lf - lf.transpose();
}

Eigen::MatrixXd n3_matrix(const AlmostContact& s, const Point& p) {
  return values(lie_derivative(*s.model(), s.xi().jets(p), s.phi().jets(p)));
}

Eigen::VectorXd n4_covector(const AlmostContact& s, const Point& p) {
  return values(lie_derivative_form(*s.model(), s.xi().jets(p), s.eta().jets(p)));
}

Eigen::VectorXd n1(const AlmostContact& s, const VectorField& x, const VectorField& y,
                   const Point& p) {
  return contract(n1_table(s, p), x.at(p), y.at(p));
}

double n2(const AlmostContact& s, const VectorField& x, const VectorField& y, const Point& p) {
  return x.at(p).dot(n2_table(s, p) * y.at(p));
}

Eigen::VectorXd n3(const AlmostContact& s, const VectorField& x, const Point& p) {
  return n3_matrix(s, p) * x.at(p);
}

double n4(const AlmostContact& s, const VectorField& x, const Point& p) {
  return n4_covector(s, p).dot(x.at(p));
}

Check lemma2_residual(const AlmostContact& s, const std::vector<Point>& samples, double tol) {
  if (s.kind() != StructureKind::Contact) {
    throw UnsupportedError("the N1/N2/N3 relation is stated for almost contact structures only");
  }
  const int n = s.model()->dim();
  Residual r;
  for (const auto& p : samples) {
    const PairTable t = n1_table(s, p);
    const Eigen::MatrixXd n2m = n2_table(s, p);
    const Eigen::MatrixXd n3m = n3_matrix(s, p);
    const Eigen::MatrixXd f = s.phi().at(p);
    const Eigen::VectorXd xi = s.xi().at(p);
    const Eigen::VectorXd eta = s.eta().at(p);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Eigen::VectorXd v = f * t[i * n + j];
        for (int a = 0; a < n; ++a) v += f(a, i) * t[a * n + j];
        v -= n2m(i, j) * xi + eta[i] * n3m.col(j);
        worst = std::max(worst, Residual::max_abs(v));
      }
    }
    r.observe(worst, p);
  }
  return r.finish("lemma-n1-n2-n3", "phi N1(X,Y) + N1(phi X,Y) = N2(X,Y) xi + eta(X) N3(Y)", tol);
}

Verdict is_normal(const AlmostContact& s, const std::vector<Point>& samples, double tol) {
  Residual r;
  for (const auto& p : samples) {
    double worst = 0.0;
    for (const auto& v : n1_table(s, p)) worst = std::max(worst, Residual::max_abs(v));
    r.observe(worst, p);
  }
  Verdict v;
  v.check = r.finish("normal:" + s.phi().label(), "N1 = 0", tol);
  v.value = v.check.pass;
  return v;
}

Tensor11Field h_operator(const AlmostContact& s) {
  const AlmostContact self = s;
  return Tensor11Field(
      s.model(),
      [self](const Point& p) {
        return Jet(0.5) * lie_derivative(*self.model(), self.xi().jets(p), self.phi().jets(p));
      },
      "h(" + s.phi().label() + ")");
}

std::vector<Check> h_properties(const AlmostContact& s, const MetricField* g,
                                const std::vector<Point>& samples, double tol) {
  const Tensor11Field h = h_operator(s);
  Residual kill, ann, anti, tr, sym;
  for (const auto& p : samples) {
    const Eigen::MatrixXd hm = h.at(p);
    const Eigen::MatrixXd f = s.phi().at(p);
    kill.observe(Eigen::VectorXd(hm * s.xi().at(p)), p);
    ann.observe(Eigen::VectorXd(hm.transpose() * s.eta().at(p)), p);
    anti.observe(Eigen::MatrixXd(hm * f + f * hm), p);
    tr.observe(std::abs(hm.trace()), p);
    if (g) {
      const Eigen::MatrixXd gm = g->at(p);
      sym.observe(Eigen::MatrixXd(gm * hm - hm.transpose() * gm), p);
    }
  }
  std::vector<Check> out;
  out.push_back(kill.finish("h xi", "h xi = 0", tol));
  out.push_back(ann.finish("eta h", "eta o h = 0", tol));
  out.push_back(anti.finish("h phi", "h phi = -phi h", tol));
  out.push_back(tr.finish("trace h", "trace h = 0", tol));
  if (g) out.push_back(sym.finish("h symmetric", "g(hX,Y) = g(X,hY)", tol));
  return out;
}

// ─── Levi-Civita checks ───

namespace {

void require_metric_structure(const MetricStructure& s, const std::vector<Point>& samples,
                              double tol) {
  const Check a = s.associated(samples, tol);
  if (!a.pass) {
    throw PreconditionError("not a " + to_string(s.kind()) + " metric structure: " + a.identity +
                            " fails by " + std::to_string(a.residual));
  }
}

}  // namespace

std::vector<Check> check_integrability_condition(const MetricStructure& s, const Connection& lc,
                                                 const std::vector<Point>& samples, double tol) {
  require_metric_structure(s, samples, tol);
  const int n = s.model()->dim();
  const double eps = s.eps();
  const Tensor11Field h = h_operator(s.base());
  Residual cond, cons;
  for (const auto& p : samples) {
    const Christoffel gam = lc.christoffel(p);
    const JetMat fj = s.phi().jets(p);
    const Eigen::MatrixXd f = values(fj);
    const Eigen::MatrixXd hm = h.at(p);
    const Eigen::MatrixXd gm = s.g().at(p);
    const Eigen::VectorXd xi = s.xi().at(p);
    const Eigen::VectorXd eta = s.eta().at(p);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd u = (id - eps * hm).col(i);
      const Eigen::MatrixXd expect = -eps * (xi * (gm * u).transpose() - u * eta.transpose());
      worst = std::max(worst, (nabla_tensor(gam, i, fj) - expect).cwiseAbs().maxCoeff());
    }
    cond.observe(worst, p);
    const PairTable t = n1_table(s.base(), p);
    const Eigen::MatrixXd fh = f * hm;
    double w2 = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Eigen::VectorXd e = 2.0 * (eta[j] * fh.col(i) - eta[i] * fh.col(j));
        w2 = std::max(w2, Residual::max_abs(t[i * n + j] - e));
      }
    cons.observe(w2, p);
  }
  std::vector<Check> out;
  out.push_back(cond.finish(
      "integrability",
      eps < 0 ? "(nabla_X phi)Y = g(X+hX,Y) xi - eta(Y)(X+hX)"
              : "(nabla_X phi)Y = eta(Y)(X-hX) - g(X-hX,Y) xi",
      tol));
  out.push_back(cons.finish("N1 from h", "N1(X,Y) = 2(eta(Y) phi h X - eta(X) phi h Y)", tol));
  return out;
}

Check check_reeb_gradient(const MetricStructure& s, const Connection& lc,
                          const std::vector<Point>& samples, double tol) {
  require_metric_structure(s, samples, tol);
  const int n = s.model()->dim();
  const Tensor11Field h = h_operator(s.base());
  Residual r;
  for (const auto& p : samples) {
    const Christoffel gam = lc.christoffel(p);
    const JetVec xi = s.xi().jets(p);
    const Eigen::MatrixXd f = s.phi().at(p);
    const Eigen::MatrixXd expect = -f + s.eps() * f * h.at(p);
    Eigen::MatrixXd got(n, n);
    for (int i = 0; i < n; ++i) got.col(i) = nabla_vector(gam, i, xi);
    r.observe(Eigen::MatrixXd(got - expect), p);
  }
  return r.finish("reeb gradient",
                  s.eps() < 0 ? "nabla xi = -phi - phi h" : "nabla xi = -phi + phi h", tol);
}

Verdict is_sasakian(const MetricStructure& s, const Connection& lc,
                    const std::vector<Point>& samples, double tol) {
  const int n = s.model()->dim();
  Residual r;
  for (const auto& p : samples) {
    const Christoffel gam = lc.christoffel(p);
    const JetMat fj = s.phi().jets(p);
    const Eigen::MatrixXd gm = s.g().at(p);
    const Eigen::VectorXd xi = s.xi().at(p);
    const Eigen::VectorXd eta = s.eta().at(p);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::MatrixXd expect =
          s.eps() * (-xi * (gm * id.col(i)).transpose() + id.col(i) * eta.transpose());
      worst = std::max(worst, (nabla_tensor(gam, i, fj) - expect).cwiseAbs().maxCoeff());
    }
    r.observe(worst, p);
  }
  Verdict v;
  v.check = r.finish(s.eps() < 0 ? "sasakian" : "para-sasakian",
                     s.eps() < 0 ? "(nabla_X phi)Y = g(X,Y) xi - eta(Y) X"
                                 : "(nabla_X phi)Y = -g(X,Y) xi + eta(Y) X",
                     tol);
  v.value = v.check.pass;
  return v;
}

Tensor11Field para_projector(const AlmostContact& s, int sign) {
  const Tensor11Field id = Tensor11Field::identity(s.model());
  const Tensor11Field ex = Tensor11Field::outer(s.xi(), s.eta());
  const double sg = sign >= 0 ? 1.0 : -1.0;
  return (0.5 * (id + sg * s.phi() - ex)).relabel(std::string(sign >= 0 ? "D+" : "D-") + "(" +
                                                   s.phi().label() + ")");
}

}  // namespace contactgeo
