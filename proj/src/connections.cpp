#include "contactgeo/connections.hpp"

#include "contactgeo/errors.hpp"

namespace contactgeo {

namespace {

void require_paracontact_metric(const MetricStructure& s, const std::vector<Point>& samples,
                                double tol) {
  if (s.kind() != StructureKind::Paracontact) {
    throw PreconditionError("the canonical connection needs a paracontact structure");
  }
  const Check a = s.associated(samples, tol);
  if (!a.pass) {
    throw PreconditionError("not a paracontact metric structure: " + a.identity + " fails by " +
                            std::to_string(a.residual));
  }
}

}  // namespace

Connection paracontact_canonical(const MetricStructure& s, const Connection& lc,
                                 const std::vector<Point>& samples, double tol) {
  require_paracontact_metric(s, samples, tol);
  require_same_model(s.model(), lc.model());
  const MetricStructure ms = s;
  auto shift = [ms](const Point& p) {
    const Model& m = *ms.model();
    const int n = m.dim();
    const JetMat f = ms.phi().jets(p);
    const JetVec xi = ms.xi().jets(p);
    const JetVec eta = ms.eta().jets(p);
    const JetMat g = ms.g().jets(p);
    const JetMat h = Jet(0.5) * lie_derivative(m, xi, f);
    const JetMat fh = f * h;
    const JetMat ih = JetMat::identity(n) - h;
    // w(i, j) = g((I - h) E_i, phi E_j).
    const JetMat gf = g * f;
    JetMat w(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a) w(i, j) += ih(a, i) * gf(a, j);
    Christoffel sh(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        JetVec v = eta[i] * f.column(j) + eta[j] * (f.column(i) - fh.column(i)) + w(i, j) * xi;
        sh.set(i, j, v);
      }
    }
    return sh;
  };
  return shifted(lc, shift, "paracontact-canonical(" + s.g().label() + ")");
}

Connection paracontact_canonical(const MetricStructure& s, const std::vector<Point>& samples,
                                 double tol) {
  return paracontact_canonical(s, levi_civita(s.g()), samples, tol);
}

std::vector<Check> check_paracontact_canonical(const MetricStructure& s, const Connection& lc,
                                               const Connection& pc,
                                               const std::vector<Point>& samples, double tol) {
  const Model& m = *s.model();
  const int n = m.dim();
  const Tensor11Field h = h_operator(s.base());
  Residual r_eta, r_xi, r_g, r_phi, r_t3, r_t4, r_tf;
  for (const auto& p : samples) {
    const Christoffel gpc = pc.christoffel(p);
    const Christoffel glc = lc.christoffel(p);
    const JetMat fj = s.phi().jets(p);
    const JetVec xij = s.xi().jets(p);
    const JetVec etaj = s.eta().jets(p);
    const JetMat gj = s.g().jets(p);
    const Eigen::MatrixXd f = values(fj), hm = h.at(p), gm = values(gj);
    const Eigen::VectorXd xi = values(xij), eta = values(etaj);
    const Eigen::MatrixXd om = values(d_eta_matrix(m, etaj));
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    double w_eta = 0, w_xi = 0, w_g = 0, w_phi = 0;
    for (int i = 0; i < n; ++i) {
      w_eta = std::max(w_eta, Residual::max_abs(nabla_form(gpc, i, etaj)));
      w_xi = std::max(w_xi, Residual::max_abs(nabla_vector(gpc, i, xij)));
      w_g = std::max(w_g, nabla_bilinear(gpc, i, gj).cwiseAbs().maxCoeff());
      const Eigen::VectorXd u = (id - hm).col(i);
      const Eigen::MatrixXd expect =
          nabla_tensor(glc, i, fj) - u * eta.transpose() + xi * (gm * u).transpose();
      w_phi = std::max(w_phi, (nabla_tensor(gpc, i, fj) - expect).cwiseAbs().maxCoeff());
    }
    r_eta.observe(w_eta, p);
    r_xi.observe(w_xi, p);
    r_g.observe(w_g, p);
    r_phi.observe(w_phi, p);
    const PairTable t = pc.torsion(p);
    const Eigen::MatrixXd fh = f * hm;
    const Eigen::MatrixXd proj = id - xi * eta.transpose();
    double w3 = 0, w4 = 0, wf = 0;
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd ej = id.col(j);
      w3 = std::max(w3, Residual::max_abs(contract(t, xi, f * ej) + f * contract(t, xi, ej)));
      for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd x = proj.col(i), y = proj.col(j);
        w4 = std::max(w4, Residual::max_abs(contract(t, x, y) - 2.0 * x.dot(om * y) * xi));
        const Eigen::VectorXd tf =
            eta[i] * fh.col(j) - eta[j] * fh.col(i) + 2.0 * (gm * f)(i, j) * xi;
        wf = std::max(wf, Residual::max_abs(t[i * n + j] - tf));
      }
    }
    r_t3.observe(w3, p);
    r_t4.observe(w4, p);
    r_tf.observe(wf, p);
  }
  return {
      r_eta.finish("pc eta", "nabla eta = 0", tol),
      r_xi.finish("pc xi", "nabla xi = 0", tol),
      r_g.finish("pc g", "nabla g = 0", tol),
      r_phi.finish("pc phi",
                   "(nabla_X phi)Y = (nabla^g_X phi)Y - eta(Y)(X - hX) + g(X - hX, Y) xi", tol),
      r_t3.finish("pc torsion xi", "T(xi, phi Y) = -phi T(xi, Y)", tol),
      r_t4.finish("pc torsion D", "T(X,Y) = 2 deta(X,Y) xi on ker eta", tol),
      r_tf.finish("pc torsion", "T(X,Y) = eta(X) phi h Y - eta(Y) phi h X + 2 g(X, phi Y) xi",
                  tol),
  };
}

// ─── LegendrePair ───

LegendrePair::LegendrePair(const ContactForm& eta, VectorField xi, Distribution l1,
                           Distribution l2, const std::vector<Point>& samples)
    : eta_(eta), xi_(std::move(xi)), l1_(std::move(l1)), l2_(std::move(l2)) {
  const int n = eta_.n();
  if (static_cast<int>(l1_.sections().size()) != n || static_cast<int>(l2_.sections().size()) != n) {
    throw PreconditionError("Legendre pair needs exactly n spanning sections on each side");
  }
  for (const auto& p : samples) {
    if (rank(values(frame_jets(p))) < eta_.model()->dim()) {
      throw PreconditionError(l1_.label() + " and " + l2_.label() + " are not transversal at " +
                              describe(p));
    }
  }
}

JetMat LegendrePair::frame_jets(const Point& p) const {
  const int d = model()->dim();
  const int n = eta_.n();
  JetMat b(d, d);
  for (int a = 0; a < n; ++a) {
    const JetVec u = l1_.sections()[a].jets(p);
    const JetVec v = l2_.sections()[a].jets(p);
    for (int k = 0; k < d; ++k) {
      b(k, a) = u[k];
      b(k, n + a) = v[k];
    }
  }
  const JetVec x = xi_.jets(p);
  for (int k = 0; k < d; ++k) b(k, d - 1) = x[k];
  return b;
}

Eigen::MatrixXd LegendrePair::projector(int which, const Point& p) const {
  const int d = model()->dim();
  const int n = eta_.n();
  const Eigen::MatrixXd b = values(frame_jets(p));
  Eigen::VectorXd sel = Eigen::VectorXd::Zero(d);
  sel.segment(which == 1 ? 0 : n, n).setOnes();
  return b * sel.asDiagonal() * b.inverse();
}

Tensor11Field LegendrePair::psi() const {
  const LegendrePair self = *this;
  return Tensor11Field(
      model(),
      [self](const Point& p) {
        const int d = self.model()->dim();
        const int n = self.eta_.n();
        const JetMat b = self.frame_jets(p);
        JetMat diag(d, d);
        for (int a = 0; a < n; ++a) {
          diag(a, a) = Jet(1.0);
          diag(n + a, n + a) = Jet(-1.0);
        }
        return b * diag * inverse(b);
      },
      "psi(" + l1_.label() + "," + l2_.label() + ")");
}

MetricField LegendrePair::psi_metric() const {
  const Tensor11Field f = psi();
  const OneForm eta = eta_.eta();
  return MetricField(
      model(),
      [f, eta](const Point& p) {
        const JetVec e = eta.jets(p);
        JetMat g = d_eta_matrix(*eta.model(), e) * f.jets(p) + outer(e, e);
        // Symmetric by the Legendre conditions; average away rounding.
        for (int i = 0; i < g.rows(); ++i)
          for (int j = i + 1; j < g.cols(); ++j) {
            const Jet s = Jet(0.5) * (g(i, j) + g(j, i));
            g(i, j) = s;
            g(j, i) = s;
          }
        return g;
      },
      "g~(" + l1_.label() + "," + l2_.label() + ")");
}

MetricStructure LegendrePair::psi_structure(const std::vector<Point>& samples, double tol) const {
  AlmostContact s(psi(), xi_, eta_.eta(), StructureKind::Paracontact, samples, tol);
  return MetricStructure(std::move(s), psi_metric(), samples, tol);
}

std::vector<Check> check_bilegendrian_axioms(const Connection& c, const LegendrePair& pair,
                                             const std::vector<Point>& samples, double tol) {
  require_same_model(c.model(), pair.model());
  const Model& m = *c.model();
  const int d = m.dim();
  const int n = pair.form().n();
  Residual r_l1, r_l2, r_xi, r_deta, r_t12, r_txi;
  for (const auto& p : samples) {
    const Christoffel gam = c.christoffel(p);
    const Eigen::MatrixXd p1 = pair.projector(1, p);
    const Eigen::MatrixXd p2 = pair.projector(2, p);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    const JetVec xij = pair.xi().jets(p);
    const Eigen::VectorXd xi = values(xij);
    const JetVec etaj = pair.form().eta().jets(p);
    const JetMat omj = d_eta_matrix(m, etaj);
    const Eigen::MatrixXd om = values(omj);
    const PairTable t = c.torsion(p);
    std::vector<JetVec> us, vs;
    for (int a = 0; a < n; ++a) {
      us.push_back(pair.l1().sections()[a].jets(p));
      vs.push_back(pair.l2().sections()[a].jets(p));
    }
    double w1 = 0, w2 = 0, wx = 0, wd = 0, w12 = 0, wt = 0;
    for (int i = 0; i < d; ++i) {
      const JetVec ei = unit(d, i);
      for (int a = 0; a < n; ++a) {
        w1 = std::max(w1, Residual::max_abs((id - p1) * values(Connection::covariant(gam, ei, us[a]))));
        w2 = std::max(w2, Residual::max_abs((id - p2) * values(Connection::covariant(gam, ei, vs[a]))));
      }
      wx = std::max(wx, Residual::max_abs(nabla_vector(gam, i, xij)));
      wd = std::max(wd, nabla_bilinear(gam, i, omj).cwiseAbs().maxCoeff());
    }
    for (int a = 0; a < n; ++a) {
      const Eigen::VectorXd u = values(us[a]);
      const Eigen::VectorXd v = values(vs[a]);
      for (int b = 0; b < n; ++b) {
        const Eigen::VectorXd vb = values(vs[b]);
        w12 = std::max(w12, Residual::max_abs(contract(t, u, vb) - 2.0 * u.dot(om * vb) * xi));
      }
      const Eigen::VectorXd bu = values(bracket(m, xij, us[a]));
      const Eigen::VectorXd bv = values(bracket(m, xij, vs[a]));
      wt = std::max(wt, Residual::max_abs(contract(t, u, xi) - p2 * bu));
      wt = std::max(wt, Residual::max_abs(contract(t, v, xi) - p1 * bv));
    }
    r_l1.observe(w1, p);
    r_l2.observe(w2, p);
    r_xi.observe(wx, p);
    r_deta.observe(wd, p);
    r_t12.observe(w12, p);
    r_txi.observe(wt, p);
  }
  const std::string l1 = pair.l1().label(), l2 = pair.l2().label();
  return {
      r_l1.finish("bl preserves L1", "nabla " + l1 + " in " + l1, tol),
      r_l2.finish("bl preserves L2", "nabla " + l2 + " in " + l2, tol),
      r_xi.finish("bl xi", "nabla xi = 0", tol),
      r_deta.finish("bl deta", "nabla deta = 0", tol),
      r_t12.finish("bl torsion L1 L2", "T(X,Y) = 2 deta(X,Y) xi, X in L1, Y in L2", tol),
      r_txi.finish("bl torsion xi", "T(X,xi) = [xi,X_L1]_L2 + [xi,X_L2]_L1", tol),
  };
}

}  // namespace contactgeo
