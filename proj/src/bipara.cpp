#include "contactgeo/bipara.hpp"

#include <cmath>
#include <limits>

#include "contactgeo/errors.hpp"

namespace contactgeo {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void require_index(int a, int hi) {
  if (a < 1 || a > hi) throw DomainError("structure index must be in 1.." + std::to_string(hi));
}

std::string sign_label(int sign) { return sign > 0 ? "+" : "-"; }

std::string dist_label(int a, int sign) { return "D" + std::to_string(a) + sign_label(sign); }

MatrixXd projector_value(const MatrixXd& f, const VectorXd& xi, const VectorXd& eta, int sign) {
  const int n = static_cast<int>(f.rows());
  return 0.5 * (MatrixXd::Identity(n, n) + sign * f - xi * eta.transpose());
}

/// Values of the structure tensors at one point.
struct BiValues {
  std::array<MatrixXd, 3> f;
  std::array<MatrixXd, 3> h;
  VectorXd xi;
  VectorXd eta;
  MatrixXd omega;

  explicit BiValues(const BiJets& j) : xi(values(j.xi)), eta(values(j.eta)), omega(values(j.omega)) {
    for (int a = 0; a < 3; ++a) {
      f[a] = values(j.phi[a]);
      h[a] = values(j.h[a]);
    }
  }
  MatrixXd proj(int a, int sign) const { return projector_value(f[a], xi, eta, sign); }
  /// deta(phi_a X, phi_a Y) as a matrix.
  MatrixXd omega_phi(int a) const { return f[a].transpose() * omega * f[a]; }
};

/// Bracket arithmetic on frame pairs at one point.
struct Ctx {
  const Model& m;
  const BiJets& j;
  JetVec b(const JetVec& x, const JetVec& y) const { return bracket(m, x, y); }
  JetVec f(int a, const JetVec& v) const { return j.phi[a] * v; }
  JetVec h(int a, const JetVec& v) const { return j.h[a] * v; }
  Jet eta(const JetVec& v) const { return dot(j.eta, v); }
  /// X(eta(Y)) xi, the xi-part every rule carries outside its bracket sum.
  JetVec vertical(const JetVec& x, const JetVec& y) const { return directional(x, eta(y)) * j.xi; }
};

using Rule = JetVec (*)(const Ctx&, const JetVec&, const JetVec&);

JetVec rule1(const Ctx& c, const JetVec& x, const JetVec& y) {
  const JetVec f1x = c.f(0, x), f1y = c.f(0, y), f2y = c.f(1, y), f3y = c.f(2, y);
  const Jet e = c.eta(x), ey = c.eta(y);
  JetVec v = c.b(x, y) - c.b(f1x, f1y) + c.f(0, c.b(x, f1y)) - c.f(0, c.b(f1x, y)) +
             c.f(1, c.b(x, f2y)) - c.f(2, c.b(x, f3y)) + c.f(2, c.b(f1x, f2y)) -
             c.f(1, c.b(f1x, f3y));
  v = v + Jet(2.0) * e * (c.h(1, f2y) - c.h(0, f1y) - c.h(2, f3y)) +
      Jet(2.0) * ey * c.h(0, f1x) + (c.eta(c.b(f1x, f1y)) - c.eta(c.b(x, y))) * c.j.xi;
  return Jet(0.25) * v + c.vertical(x, y);
}

JetVec rule2(const Ctx& c, const JetVec& x, const JetVec& y) {
  const JetVec f2x = c.f(1, x), f1y = c.f(0, y), f2y = c.f(1, y), f3y = c.f(2, y);
  const Jet e = c.eta(x), ey = c.eta(y);
  JetVec v = c.b(x, y) - c.b(f2x, f2y) + c.f(1, c.b(x, f2y)) - c.f(1, c.b(f2x, y)) +
             c.f(0, c.b(x, f1y)) - c.f(2, c.b(x, f3y)) - c.f(2, c.b(f2x, f1y)) +
             c.f(0, c.b(f2x, f3y));
  v = v + Jet(2.0) * e * (c.h(0, f1y) - c.h(1, f2y) - c.h(2, f3y)) +
      Jet(2.0) * ey * c.h(1, f2x) + (c.eta(c.b(f2x, f2y)) - c.eta(c.b(x, y))) * c.j.xi;
  return Jet(0.25) * v + c.vertical(x, y);
}

JetVec rule3(const Ctx& c, const JetVec& x, const JetVec& y) {
  const JetVec f3x = c.f(2, x), f1y = c.f(0, y), f2y = c.f(1, y), f3y = c.f(2, y);
  const Jet e = c.eta(x), ey = c.eta(y);
  JetVec v = c.b(x, y) + c.b(f3x, f3y) + c.f(0, c.b(x, f1y)) + c.f(1, c.b(x, f2y)) -
             c.f(2, c.b(x, f3y)) + c.f(2, c.b(f3x, y)) + c.f(1, c.b(f3x, f1y)) -
             c.f(0, c.b(f3x, f2y));
  v = v + Jet(2.0) * e * (c.h(0, f1y) + c.h(1, f2y) + c.h(2, f3y)) -
      Jet(2.0) * ey * c.h(2, f3x) - (c.eta(c.b(x, y)) + c.eta(c.b(f3x, f3y))) * c.j.xi;
  return Jet(0.25) * v + c.vertical(x, y);
}

JetVec rule_c(const Ctx& c, const JetVec& x, const JetVec& y) {
  const JetVec f1x = c.f(0, x), f2x = c.f(1, x), f3x = c.f(2, x);
  const JetVec f1y = c.f(0, y), f2y = c.f(1, y), f3y = c.f(2, y);
  const Jet e = c.eta(x), ey = c.eta(y);
  const JetVec bxy = c.b(x, y), b11 = c.b(f1x, f1y), b22 = c.b(f2x, f2y), b33 = c.b(f3x, f3y);
  JetVec v = Jet(3.0) * bxy - b11 - b22 + b33 +
             Jet(3.0) * (c.f(0, c.b(x, f1y)) + c.f(1, c.b(x, f2y)) - c.f(2, c.b(x, f3y))) -
             c.f(0, c.b(f1x, y)) - c.f(1, c.b(f2x, y)) + c.f(2, c.b(f3x, y)) +
             c.f(0, c.b(f2x, f3y)) - c.f(0, c.b(f3x, f2y)) - c.f(1, c.b(f1x, f3y)) +
             c.f(1, c.b(f3x, f1y)) + c.f(2, c.b(f1x, f2y)) - c.f(2, c.b(f2x, f1y));
  v = v + Jet(2.0) * e * (c.h(0, f1y) + c.h(1, f2y) - c.h(2, f3y)) +
      Jet(2.0) * ey * (c.h(0, f1x) + c.h(1, f2x) - c.h(2, f3x)) +
      (c.eta(b11) + c.eta(b22) - c.eta(b33) - Jet(3.0) * c.eta(bxy)) * c.j.xi;
  return Jet(1.0 / 12.0) * v + c.vertical(x, y);
}

Connection from_rule(const BiParacontact& b, Rule rule, std::string name) {
  const BiParacontact self = b;
  return Connection(
      b.model(),
      [self, rule](const Point& p) {
        const Model& m = *self.model();
        const int n = m.dim();
        const BiJets j = self.jets(p);
        const Ctx c{m, j};
        Christoffel g(n);
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k) g.set(i, k, rule(c, unit(n, i), unit(n, k)));
        return g;
      },
      std::move(name));
}

/// Expected nabla^a phi_b = eta (x) M, with a, b zero-based.
MatrixXd expected_phi_derivative(const BiValues& v, int a, int b) {
  const auto& f = v.f;
  const auto& h = v.h;
  if (a == b) return MatrixXd::Zero(f[0].rows(), f[0].cols());
  if (a == 0 && b == 1) return 2 * h[1] - h[0] * f[2] + f[2] * h[0];
  if (a == 0 && b == 2) return 2 * h[2] - h[0] * f[1] + f[1] * h[0];
  if (a == 1 && b == 0) return 2 * h[0] + h[1] * f[2] - f[2] * h[1];
  if (a == 1 && b == 2) return 2 * h[2] + h[1] * f[0] - f[0] * h[1];
  if (a == 2 && b == 0) return 2 * h[0] - h[2] * f[1] + f[1] * h[2];
  return 2 * h[1] + h[2] * f[0] - f[0] * h[2];
}

const char* kPhiDerivativeText[3][3] = {
    {"nabla^1 phi_1 = 0", "nabla^1 phi_2 = eta (x) (2h_2 - h_1 phi_3 + phi_3 h_1)",
     "nabla^1 phi_3 = eta (x) (2h_3 - h_1 phi_2 + phi_2 h_1)"},
    {"nabla^2 phi_1 = eta (x) (2h_1 + h_2 phi_3 - phi_3 h_2)", "nabla^2 phi_2 = 0",
     "nabla^2 phi_3 = eta (x) (2h_3 + h_2 phi_1 - phi_1 h_2)"},
    {"nabla^3 phi_1 = eta (x) (2h_1 - h_3 phi_2 + phi_2 h_3)",
     "nabla^3 phi_2 = eta (x) (2h_2 + h_3 phi_1 - phi_1 h_3)", "nabla^3 phi_3 = 0"},
};

/// N1 tables of phi_1, phi_2, phi_3 at p.
std::array<PairTable, 3> n1_tables(const BiParacontact& b, const Point& p) {
  return {n1_table(b.structure(1), p), n1_table(b.structure(2), p), n1_table(b.structure(3), p)};
}

/// Closed torsion formula of nabla^a (zero-based a) on (E_i, E_j).
VectorXd torsion_formula(const BiValues& v, const std::array<PairTable, 3>& nt, int a, int i,
                         int j) {
  const int n = static_cast<int>(v.xi.size());
  const VectorXd x = VectorXd::Unit(n, i), y = VectorXd::Unit(n, j);
  const auto& f = v.f;
  const auto& h = v.h;
  const auto pair = [&](int s, const VectorXd& u, const VectorXd& w) { return contract(nt[s], u, w); };
  VectorXd t;
  MatrixXd m;
  if (a == 0) {
    t = 0.25 * (pair(2, x, y) - pair(1, x, y) + pair(2, f[0] * x, f[0] * y) -
                pair(1, f[0] * x, f[0] * y)) +
        (v.omega(i, j) - v.omega_phi(0)(i, j)) * v.xi;
    m = -2 * h[0] * f[0] + h[1] * f[1] - h[2] * f[2];
  } else if (a == 1) {
    t = 0.25 * (pair(2, x, y) - pair(0, x, y) + pair(2, f[1] * x, f[1] * y) -
                pair(0, f[1] * x, f[1] * y)) +
        (v.omega(i, j) - v.omega_phi(1)(i, j)) * v.xi;
    m = h[0] * f[0] - 2 * h[1] * f[1] - h[2] * f[2];
  } else {
    t = -0.25 * (pair(0, x, y) + pair(1, x, y) - pair(0, f[2] * x, f[2] * y) -
                 pair(1, f[2] * x, f[2] * y)) +
        (v.omega(i, j) + v.omega_phi(2)(i, j)) * v.xi;
    m = h[0] * f[0] + h[1] * f[1] + 2 * h[2] * f[2];
  }
  return t + 0.5 * (v.eta[i] * m.col(j) - v.eta[j] * m.col(i));
}

VectorXd torsion_c_formula(const BiValues& v, const std::array<PairTable, 3>& nt, int i, int j) {
  const int n = static_cast<int>(v.xi.size());
  const double s = v.omega(i, j) + (-v.omega_phi(0)(i, j) - v.omega_phi(1)(i, j) +
                                    v.omega_phi(2)(i, j)) / 3.0;
  return s * v.xi + (-nt[0][i * n + j] - nt[1][i * n + j] + nt[2][i * n + j]) / 6.0;
}

}  // namespace

// ─── BiParacontact ───

BiParacontact::BiParacontact(Tensor11Field phi1, Tensor11Field phi2, VectorField xi,
                             const ContactForm& eta, const std::vector<Point>& samples,
                             double tol)
    : phi_{phi1, phi2, (phi1 * phi2).relabel("phi3")}, xi_(std::move(xi)), eta_(eta) {
  require_same_model(phi1.model(), phi2.model());
  require_same_model(phi1.model(), eta_.model());
  Residual anti;
  for (const auto& p : samples) {
    const MatrixXd a = phi_[0].at(p), b = phi_[1].at(p);
    anti.observe(MatrixXd(a * b + b * a), p);
  }
  const Check c = anti.finish("anticommute", "phi_1 phi_2 = -phi_2 phi_1", tol);
  if (!c.pass) {
    throw AxiomError(c.identity + " fails: residual " + std::to_string(c.residual) + " at " +
                     describe(*c.worst));
  }
  s_.emplace_back(phi_[0], xi_, eta_.eta(), StructureKind::Paracontact, samples, tol);
  s_.emplace_back(phi_[1], xi_, eta_.eta(), StructureKind::Paracontact, samples, tol);
  try {
    s_.emplace_back(phi_[2], xi_, eta_.eta(), StructureKind::Contact, samples, tol);
  } catch (const AxiomError& e) {
    throw AxiomError(std::string("phi_3 = phi_1 phi_2 is not almost contact: ") + e.what());
  }
  derive(samples, tol);
}

BiParacontact::BiParacontact(Tensor11Field phi1, Tensor11Field phi2, const ContactForm& eta,
                             const std::vector<Point>& samples, double tol)
    : BiParacontact(std::move(phi1), std::move(phi2), eta.reeb(), eta, samples, tol) {}

void BiParacontact::derive(const std::vector<Point>& samples, double tol) {
  const int d = model()->dim();
  const int n = (d - 1) / 2;
  Residual r13, r32, sw21, sw12, sw31, sw32, ranks, d1d2, hanti, hrel;
  for (const auto& p : samples) {
    const BiValues v(jets(p));
    const auto& f = v.f;
    const auto& h = v.h;
    r13.observe(std::max((f[0] * f[2] - f[1]).cwiseAbs().maxCoeff(),
                         (f[2] * f[0] + f[1]).cwiseAbs().maxCoeff()),
                p);
    r32.observe(std::max((f[2] * f[1] - f[0]).cwiseAbs().maxCoeff(),
                         (f[1] * f[2] + f[0]).cwiseAbs().maxCoeff()),
                p);
    double w21 = 0, w12 = 0, w31 = 0, w32 = 0, wr = 0, wd = 0;
    for (int s : {1, -1}) {
      const MatrixXd p1 = v.proj(0, s), p1o = v.proj(0, -s);
      const MatrixXd p2 = v.proj(1, s), p2o = v.proj(1, -s);
      w21 = std::max(w21, (f[0] * p2 - p2o * f[0]).cwiseAbs().maxCoeff());
      w12 = std::max(w12, (f[1] * p1 - p1o * f[1]).cwiseAbs().maxCoeff());
      w31 = std::max(w31, (f[2] * p1 - p1o * f[2]).cwiseAbs().maxCoeff());
      w32 = std::max(w32, (f[2] * p2 - p2o * f[2]).cwiseAbs().maxCoeff());
      wr = std::max({wr, double(std::abs(rank(p1) - n)), double(std::abs(rank(p2) - n))});
      const MatrixXd img = (MatrixXd::Identity(d, d) + f[2]) * p2;
      wd = std::max({wd, (p1o * img).cwiseAbs().maxCoeff(),
                     Residual::max_abs(img.transpose() * v.eta), double(std::abs(rank(img) - n))});
    }
    sw21.observe(w21, p);
    sw12.observe(w12, p);
    sw31.observe(w31, p);
    sw32.observe(w32, p);
    ranks.observe(wr, p);
    d1d2.observe(wd, p);
    double wa = 0;
    for (int a = 0; a < 3; ++a)
      wa = std::max(wa, (h[a] * f[a] + f[a] * h[a]).cwiseAbs().maxCoeff());
    hanti.observe(wa, p);
    hrel.observe(MatrixXd(f[0] * h[1] + h[0] * f[1] - h[2]), p);
  }
  properties_ = {
      r13.finish("phi1 phi3", "phi_1 phi_3 = -phi_3 phi_1 = phi_2", tol),
      r32.finish("phi3 phi2", "phi_3 phi_2 = -phi_2 phi_3 = phi_1", tol),
      sw21.finish("phi1 swaps D2", "phi_1 maps D2+ onto D2- and D2- onto D2+", tol),
      sw12.finish("phi2 swaps D1", "phi_2 maps D1+ onto D1- and D1- onto D1+", tol),
      sw31.finish("phi3 swaps D1", "phi_3 maps D1+ onto D1- and D1- onto D1+", tol),
      sw32.finish("phi3 swaps D2", "phi_3 maps D2+ onto D2- and D2- onto D2+", tol),
      ranks.finish("eigenranks", "rank D1+ = rank D1- = rank D2+ = rank D2- = n", 0.5),
      d1d2.finish("D1 from D2", "D1+- = {X + phi_3 X : X in D2+-}", tol),
      hanti.finish("h phi", "h_a phi_a = -phi_a h_a", tol),
      hrel.finish("h relation", "phi_1 h_2 + h_1 phi_2 = h_3", tol),
  };
}

BiJets BiParacontact::jets(const Point& p) const {
  const Model& m = *model();
  BiJets j;
  j.xi = xi_.jets(p);
  j.eta = eta_.eta().jets(p);
  j.omega = d_eta_matrix(m, j.eta);
  for (int a = 0; a < 3; ++a) {
    j.phi[a] = phi_[a].jets(p);
    j.h[a] = Jet(0.5) * lie_derivative(m, j.xi, j.phi[a]);
  }
  return j;
}

const Tensor11Field& BiParacontact::phi(int a) const {
  require_index(a, 3);
  return phi_[a - 1];
}

Tensor11Field BiParacontact::h(int a) const {
  require_index(a, 3);
  return h_operator(s_[a - 1]).relabel("h" + std::to_string(a));
}

const AlmostContact& BiParacontact::structure(int a) const {
  require_index(a, 3);
  return s_[a - 1];
}

Tensor11Field BiParacontact::projector(int a, int sign) const {
  require_index(a, 2);
  return para_projector(s_[a - 1], sign);
}

Distribution BiParacontact::eigendistribution(int a, int sign, const Point& probe) const {
  return Distribution::image(projector(a, sign), probe, dist_label(a, sign));
}

BiParacontact BiParacontact::from_conjugate(const MetricStructure& contact, const Distribution& l,
                                            const std::vector<Point>& samples, double tol) {
  if (contact.kind() != StructureKind::Contact) {
    throw PreconditionError("the conjugate construction needs a contact metric structure");
  }
  const Check a = contact.associated(samples, tol);
  if (!a.pass) throw PreconditionError("not a contact metric structure: " + a.identity);
  const ContactForm eta(contact.eta(), samples, tol);
  std::vector<VectorField> image;
  for (const auto& s : l.sections()) image.push_back(contact.phi() * s);
  const Distribution phil(l.model(), std::move(image), "phi " + l.label());
  if (!is_legendre(eta, l, samples, tol).value) {
    throw PreconditionError(l.label() + " is not a Legendre distribution");
  }
  const LegendrePair pair(eta, contact.xi(), l, phil, samples);
  const Tensor11Field psi = pair.psi();
  return BiParacontact((contact.phi() * psi).relabel("phi psi"), psi, contact.xi(), eta, samples,
                       tol);
}

BiParacontact BiParacontact::from_bilegendrian_pairs(const LegendrePair& first,
                                                     const LegendrePair& second,
                                                     const std::vector<Point>& samples,
                                                     double tol) {
  require_same_model(first.model(), second.model());
  const int n = first.form().n();
  for (const auto& p : samples) {
    for (const Distribution* u : {&first.l1(), &first.l2()}) {
      for (const Distribution* w : {&second.l1(), &second.l2()}) {
        if (joint_rank({u, w}, p) < 2 * n) {
          throw PreconditionError(u->label() + " and " + w->label() + " are not transversal at " +
                                  describe(p));
        }
      }
    }
  }
  return BiParacontact(first.psi().relabel("phi1"), second.psi().relabel("phi2"), first.xi(),
                       first.form(), samples, tol);
}

// ─── Predicates ───

Assessment is_legendrian(const BiParacontact& b, const std::vector<Point>& samples, double tol) {
  Assessment out;
  out.value = true;
  const Point& probe = samples.front();
  for (int a = 1; a <= 2; ++a) {
    for (int s : {1, -1}) {
      const Distribution d = b.eigendistribution(a, s, probe);
      Verdict v = is_legendre(b.form(), d, samples, tol);
      if (!v.value && v.check.worst && v.check.note.empty()) {
        // Name the pair of sections that witnesses the failure.
        const MatrixXd bas = d.basis_at(*v.check.worst);
        const MatrixXd g = bas.transpose() * b.form().d_eta_matrix(*v.check.worst) * bas;
        Eigen::Index r = 0, c = 0;
        g.cwiseAbs().maxCoeff(&r, &c);
        v.check.note = "deta(" + d.label() + "[" + std::to_string(r) + "], " + d.label() + "[" +
                       std::to_string(c) + "]) = " + std::to_string(g(r, c));
      }
      out.value = out.value && v.value;
      out.checks.push_back(v.check);
    }
  }
  if (!out.value) return out;
  Residual n2, pattern;
  for (const auto& p : samples) {
    n2.observe(std::max(n2_table(b.structure(1), p).cwiseAbs().maxCoeff(),
                        n2_table(b.structure(2), p).cwiseAbs().maxCoeff()),
               p);
    const BiValues v(b.jets(p));
    pattern.observe(std::max({(v.omega_phi(0) - v.omega_phi(1)).cwiseAbs().maxCoeff(),
                              (v.omega_phi(1) + v.omega_phi(2)).cwiseAbs().maxCoeff(),
                              (v.omega_phi(2) - v.omega).cwiseAbs().maxCoeff()}),
                    p);
  }
  out.checks.push_back(n2.finish("N2 phi1 phi2", "N2 of phi_1 and phi_2 vanish", tol));
  out.checks.push_back(pattern.finish(
      "deta pattern",
      "deta(phi_1 X, phi_1 Y) = deta(phi_2 X, phi_2 Y) = -deta(phi_3 X, phi_3 Y) = -deta(X,Y)",
      tol));
  return out;
}

namespace {

/// Max over pairs from the contact distribution of |N1_a(PX, PY)|.
double n1_on_contact(const BiValues& v, const PairTable& t) {
  const int d = static_cast<int>(v.xi.size());
  const MatrixXd pr = MatrixXd::Identity(d, d) - v.xi * v.eta.transpose();
  double w = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) w = std::max(w, Residual::max_abs(contract(t, pr.col(i), pr.col(j))));
  return w;
}

double table_max(const PairTable& t) {
  double w = 0;
  for (const auto& v : t) w = std::max(w, Residual::max_abs(v));
  return w;
}

}  // namespace

Assessment is_integrable(const BiParacontact& b, const std::vector<Point>& samples, double tol) {
  Residual r1, r2, r3;
  for (const auto& p : samples) {
    const BiValues v(b.jets(p));
    const auto nt = n1_tables(b, p);
    r1.observe(n1_on_contact(v, nt[0]), p);
    r2.observe(n1_on_contact(v, nt[1]), p);
    r3.observe(n1_on_contact(v, nt[2]), p);
  }
  Assessment out;
  out.checks.push_back(r1.finish("N1 phi1 on D", "N1 of phi_1 = 0 on the contact distribution", tol));
  out.checks.push_back(r2.finish("N1 phi2 on D", "N1 of phi_2 = 0 on the contact distribution", tol));
  out.value = all_pass(out.checks);
  if (out.value) {
    out.checks.push_back(
        r3.finish("N1 phi3 on D", "N1 of phi_3 = 0 on the contact distribution", tol));
  }
  return out;
}

Assessment is_normal(const BiParacontact& b, const std::vector<Point>& samples, double tol) {
  Assessment out = is_integrable(b, samples, tol);
  Residual n3;
  for (const auto& p : samples) {
    n3.observe(std::max(n3_matrix(b.structure(1), p).cwiseAbs().maxCoeff(),
                        n3_matrix(b.structure(2), p).cwiseAbs().maxCoeff()),
               p);
  }
  const Check c3 = n3.finish("N3 phi1 phi2", "N3 of phi_1 and phi_2 vanish", tol);
  out.checks.push_back(c3);
  out.value = out.value && c3.pass;
  if (out.value) {
    Residual n1;
    for (const auto& p : samples) {
      const auto nt = n1_tables(b, p);
      n1.observe(std::max({table_max(nt[0]), table_max(nt[1]), table_max(nt[2])}), p);
    }
    out.checks.push_back(n1.finish("N1 all", "N1 of phi_1, phi_2, phi_3 vanish", tol));
  }
  if (is_legendrian(b, samples, tol).value) {
    bool flat = true;
    double worst = 0;
    for (int a = 1; a <= 2; ++a) {
      for (int s : {1, -1}) {
        const PangReport r =
            classify_pang(b.form(), b.xi(), b.eigendistribution(a, s, samples.front()), samples, tol);
        flat = flat && r.cls == PangClass::Flat;
        worst = std::max(worst, r.max_abs);
      }
    }
    Check c;
    c.id = "normal iff flat";
    c.identity = "normal exactly when the four Legendre foliations are flat";
    c.residual = worst;
    c.tolerance = tol;
    c.pass = flat == out.value;
    c.note = flat ? "all four foliations flat" : "some foliation not flat";
    out.checks.push_back(c);
  }
  return out;
}

std::vector<Check> check_legendrian_consequences(const BiParacontact& b,
                                                 const std::vector<Point>& samples, double tol) {
  std::vector<Check> out;
  for (int a = 1; a <= 2; ++a) {
    Residual r;
    for (const auto& p : samples) {
      const BiValues v(b.jets(p));
      const PairTable t = n1_table(b.structure(a), p);
      const int d = static_cast<int>(v.xi.size());
      double w = 0;
      for (int s : {1, -1}) {
        const MatrixXd pr = v.proj(a - 1, s);
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            const VectorXd nv = contract(t, pr.col(i), pr.col(j));
            w = std::max({w, Residual::max_abs(pr * nv), std::abs(v.eta.dot(nv))});
          }
        }
      }
      r.observe(w, p);
    }
    const std::string k = std::to_string(a);
    out.push_back(r.finish("N1 phi" + k + " swaps", "N1 of phi_" + k + " maps D" + k +
                                                        "+- pairs into D" + k + "-+",
                           tol));
  }
  return out;
}

// ─── Connections ───

Connection nabla_alpha(const BiParacontact& b, int a) {
  require_index(a, 3);
  static const Rule rules[3] = {rule1, rule2, rule3};
  return from_rule(b, rules[a - 1], "nabla^" + std::to_string(a));
}

Connection nabla_c_explicit(const BiParacontact& b) {
  return from_rule(b, rule_c, "nabla^c explicit");
}

Connection nabla_c(const BiParacontact& b) {
  return Connection::average({nabla_alpha(b, 1), nabla_alpha(b, 2), nabla_alpha(b, 3)}, "nabla^c");
}

namespace {

struct AlphaResiduals {
  Residual xi;
  std::array<Residual, 3> phi;
  Residual relation;
  Residual formula;
};

AlphaResiduals alpha_residuals(const BiParacontact& b, int a, const Connection& c,
                               const std::vector<Point>& samples, bool with_formula) {
  AlphaResiduals r;
  const int k = a - 1;
  for (const auto& p : samples) {
    const BiJets j = b.jets(p);
    const BiValues v(j);
    const Christoffel g = c.christoffel(p);
    const int d = static_cast<int>(v.xi.size());
    double wx = 0, wr = 0, wf = 0;
    std::array<double, 3> wp{0, 0, 0};
    for (int i = 0; i < d; ++i) {
      wx = std::max(wx, Residual::max_abs(nabla_vector(g, i, j.xi)));
      for (int bb = 0; bb < 3; ++bb) {
        const MatrixXd e = v.eta[i] * expected_phi_derivative(v, k, bb);
        wp[bb] = std::max(wp[bb], (nabla_tensor(g, i, j.phi[bb]) - e).cwiseAbs().maxCoeff());
      }
    }
    const PairTable t = c.torsion(p);
    const MatrixXd& f = v.f[k];
    const MatrixXd& h = v.h[k];
    const MatrixXd of = v.omega * f;  // deta(X, phi Y)
    std::array<PairTable, 3> nt;
    if (with_formula) nt = n1_tables(b, p);
    for (int i = 0; i < d; ++i) {
      for (int jj = 0; jj < d; ++jj) {
        const VectorXd x = VectorXd::Unit(d, i), y = VectorXd::Unit(d, jj);
        const VectorXd lhs = contract(t, f * x, y) - contract(t, x, f * y);
        const VectorXd rhs = 2 * (-of(jj, i) - of(i, jj)) * v.xi + v.eta[jj] * h.col(i) +
                             v.eta[i] * h.col(jj);
        wr = std::max(wr, Residual::max_abs(lhs - rhs));
        if (with_formula)
          wf = std::max(wf, Residual::max_abs(t[i * d + jj] - torsion_formula(v, nt, k, i, jj)));
      }
    }
    r.xi.observe(wx, p);
    for (int bb = 0; bb < 3; ++bb) r.phi[bb].observe(wp[bb], p);
    r.relation.observe(wr, p);
    r.formula.observe(wf, p);
  }
  return r;
}

}  // namespace

std::vector<Check> check_nabla_alpha(const BiParacontact& b, int a, const Connection& c,
                                     const std::vector<Point>& samples, double tol) {
  require_index(a, 3);
  const std::string k = std::to_string(a);
  AlphaResiduals r = alpha_residuals(b, a, c, samples, true);
  std::vector<Check> out;
  out.push_back(r.xi.finish("nabla" + k + " xi", "nabla^" + k + " xi = 0", tol));
  for (int bb = 0; bb < 3; ++bb) {
    out.push_back(r.phi[bb].finish("nabla" + k + " phi" + std::to_string(bb + 1),
                                   kPhiDerivativeText[a - 1][bb], tol));
  }
  out.push_back(r.relation.finish(
      "nabla" + k + " torsion relation",
      "T(phi_" + k + " X, Y) - T(X, phi_" + k + " Y) = 2(deta(phi_" + k + " X, Y) - deta(X, phi_" +
          k + " Y)) xi + eta(Y) h_" + k + " X + eta(X) h_" + k + " Y",
      tol));
  static const char* formulas[3] = {
      "T^1 = 1/4((N_3 - N_2)(X,Y) + (N_3 - N_2)(phi_1 X, phi_1 Y)) + ...",
      "T^2 = 1/4((N_3 - N_1)(X,Y) + (N_3 - N_1)(phi_2 X, phi_2 Y)) + ...",
      "T^3 = -1/4((N_1 + N_2)(X,Y) - (N_1 + N_2)(phi_3 X, phi_3 Y)) + ...",
  };
  Check tf = r.formula.finish("nabla" + k + " torsion formula", formulas[a - 1], tol);
  tf.note = "N_b is the Nijenhuis tensor N1 of phi_b";
  out.push_back(tf);
  return out;
}

double axiom_violation(const BiParacontact& b, int a, const Connection& c,
                       const std::vector<Point>& samples) {
  require_index(a, 3);
  const AlphaResiduals r = alpha_residuals(b, a, c, samples, false);
  double w = std::max(r.xi.value(), r.relation.value());
  for (const auto& x : r.phi) w = std::max(w, x.value());
  return w;
}

Check check_nabla_xi_projection(const BiParacontact& b, int a, const Connection& c,
                                const std::vector<Point>& samples, double tol) {
  require_index(a, 2);
  const Model& m = *b.model();
  Residual r;
  for (const auto& p : samples) {
    const BiJets j = b.jets(p);
    const Christoffel g = c.christoffel(p);
    const int d = m.dim();
    double w = 0;
    for (int s : {1, -1}) {
      const JetMat pr = Jet(0.5) * (JetMat::identity(d) + Jet(double(s)) * j.phi[a - 1] -
                                    outer(j.xi, j.eta));
      const MatrixXd prv = values(pr);
      for (int k = 0; k < d; ++k) {
        const JetVec x = pr.column(k);
        const VectorXd lhs = values(Connection::covariant(g, j.xi, x));
        const VectorXd rhs = prv * values(bracket(m, j.xi, x));
        w = std::max(w, Residual::max_abs(lhs - rhs));
      }
    }
    r.observe(w, p);
  }
  const std::string k = std::to_string(a);
  return r.finish("nabla" + k + " xi on D" + k,
                  "nabla^" + k + "_xi X = [xi, X] projected to D" + k + "+- for X in D" + k + "+-",
                  tol);
}

std::vector<Check> check_nabla_c(const BiParacontact& b, const Connection& c,
                                 const std::vector<Point>& samples, double tol) {
  Residual rx, rt;
  std::array<Residual, 3> rp;
  for (const auto& p : samples) {
    const BiJets j = b.jets(p);
    const BiValues v(j);
    const Christoffel g = c.christoffel(p);
    const int d = static_cast<int>(v.xi.size());
    double wx = 0, wt = 0;
    std::array<double, 3> wp{0, 0, 0};
    for (int i = 0; i < d; ++i) {
      wx = std::max(wx, Residual::max_abs(nabla_vector(g, i, j.xi)));
      for (int a = 0; a < 3; ++a) {
        const MatrixXd e = (2.0 / 3.0) * v.eta[i] * v.h[a];
        wp[a] = std::max(wp[a], (nabla_tensor(g, i, j.phi[a]) - e).cwiseAbs().maxCoeff());
      }
    }
    const PairTable t = c.torsion(p);
    const auto nt = n1_tables(b, p);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        wt = std::max(wt, Residual::max_abs(t[i * d + k] - torsion_c_formula(v, nt, i, k)));
    rx.observe(wx, p);
    for (int a = 0; a < 3; ++a) rp[a].observe(wp[a], p);
    rt.observe(wt, p);
  }
  std::vector<Check> out;
  out.push_back(rx.finish("nablac xi", "nabla^c xi = 0", tol));
  for (int a = 0; a < 3; ++a) {
    const std::string k = std::to_string(a + 1);
    out.push_back(rp[a].finish("nablac phi" + k, "nabla^c phi_" + k + " = 2/3 eta (x) h_" + k, tol));
  }
  out.push_back(rt.finish("nablac torsion",
                          "T^c = deta(X,Y) xi + 1/3(-deta(phi_1 X, phi_1 Y) - deta(phi_2 X, phi_2 "
                          "Y) + deta(phi_3 X, phi_3 Y)) xi + 1/6(-N_1 - N_2 + N_3)(X,Y)",
                          tol));
  return out;
}

Check compare_connections(const Connection& a, const Connection& c, const Tensor11Field& restrict,
                          const std::vector<Point>& samples, double tol, std::string id,
                          std::string identity) {
  require_same_model(a.model(), c.model());
  Residual r;
  for (const auto& p : samples) {
    const Christoffel ga = a.christoffel(p), gc = c.christoffel(p);
    const MatrixXd pr = restrict.at(p);
    const int d = static_cast<int>(pr.rows());
    double w = 0;
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) {
        JetVec x(d), y(d);
        for (int q = 0; q < d; ++q) {
          x[q] = Jet(pr(q, i));
          y[q] = Jet(pr(q, k));
        }
        w = std::max(w, Residual::max_abs(values(ga.apply(x, y)) - values(gc.apply(x, y))));
      }
    }
    r.observe(w, p);
  }
  return r.finish(std::move(id), std::move(identity), tol);
}

std::vector<Check> normal_case_checks(const BiParacontact& b, const Connection& c,
                                      const std::vector<Point>& samples, double tol) {
  const Assessment nrm = is_normal(b, samples, tol);
  if (!nrm.value) throw PreconditionError("the corollaries need a normal structure");
  Residual sym, rxi, skew, trace, leaves, lie;
  for (const auto& p : samples) {
    const BiValues v(b.jets(p));
    const EndTable r = c.curvature(p);
    const PairTable t = c.torsion(p);
    const MatrixXd ric = c.ricci(p);
    const int d = static_cast<int>(v.xi.size());
    double ws = 0, wx = 0, wt = 0, wl = 0;
    for (int i = 0; i < d; ++i) {
      const VectorXd x = VectorXd::Unit(d, i);
      wx = std::max(wx, contract(r, x, v.xi).cwiseAbs().maxCoeff());
      for (int k = 0; k < d; ++k) {
        const VectorXd y = VectorXd::Unit(d, k);
        const MatrixXd r0 = r[i * d + k];
        const MatrixXd r1 = contract(r, v.f[0] * x, v.f[0] * y);
        const MatrixXd r2 = contract(r, v.f[1] * x, v.f[1] * y);
        const MatrixXd r3 = contract(r, v.f[2] * x, v.f[2] * y);
        ws = std::max({ws, (r1 - r2).cwiseAbs().maxCoeff(), (r2 + r3).cwiseAbs().maxCoeff(),
                       (r3 - r0).cwiseAbs().maxCoeff()});
        wt = std::max(wt, std::abs(ric(i, k) + 0.5 * r0.trace()));
      }
    }
    for (int a = 0; a < 2; ++a) {
      for (int s : {1, -1}) {
        const MatrixXd pr = v.proj(a, s);
        for (int i = 0; i < d; ++i) {
          for (int k = 0; k < d; ++k) {
            wl = std::max({wl, Residual::max_abs(contract(t, pr.col(i), pr.col(k))),
                           contract(r, pr.col(i), pr.col(k)).cwiseAbs().maxCoeff()});
          }
        }
      }
    }
    sym.observe(ws, p);
    rxi.observe(wx, p);
    skew.observe(MatrixXd(ric + ric.transpose()), p);
    trace.observe(wt, p);
    leaves.observe(wl, p);
    double wh = 0;
    for (int a = 0; a < 3; ++a) wh = std::max(wh, v.h[a].cwiseAbs().maxCoeff());
    lie.observe(wh, p);
  }
  return {
      sym.finish("Rc symmetry",
                 "R(phi_1 X, phi_1 Y) = R(phi_2 X, phi_2 Y) = -R(phi_3 X, phi_3 Y) = -R(X,Y)",
                 tol),
      rxi.finish("Rc xi", "R(X, xi) = 0", tol),
      skew.finish("Ric skew", "Ric(X,Y) = -Ric(Y,X)", tol),
      trace.finish("Ric trace", "Ric(X,Y) = -1/2 trace R(X,Y)", tol),
      leaves.finish("leaves flat", "T and R vanish on pairs inside each of D1+-, D2+-", tol),
      lie.finish("projectable", "L_xi phi_a = 0 for a = 1, 2, 3", tol),
  };
}

}  // namespace contactgeo
