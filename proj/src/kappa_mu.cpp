#include "contactgeo/kappa_mu.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "contactgeo/errors.hpp"

namespace contactgeo {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// A check on a single scalar discrepancy.
std::string signature_text(const Signature& s) {
  return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + ")";
}

MatrixXd contact_projector(const VectorXd& xi, const VectorXd& eta) {
  const int d = static_cast<int>(xi.size());
  return MatrixXd::Identity(d, d) - xi * eta.transpose();
}

/// sum_i xi^i (nabla_{E_i} T).
MatrixXd along(const Christoffel& g, const VectorXd& xi, const JetMat& t) {
  MatrixXd out = MatrixXd::Zero(xi.size(), xi.size());
  for (int i = 0; i < xi.size(); ++i)
    if (xi[i] != 0.0) out += xi[i] * nabla_tensor(g, i, t);
  return out;
}

/// Largest |nabla^c_{E_i} phi_a - eta_i sum_b c(a,b) phi_b| and |nabla^c deta|.
double coefficient_pattern(const BiParacontact& b, const Connection& nc, const Eigen::Matrix3d& c,
                           const std::vector<Point>& samples, std::optional<Point>* worst) {
  double w = 0;
  for (const auto& p : samples) {
    const BiJets j = b.jets(p);
    const Christoffel g = nc.christoffel(p);
    const VectorXd eta = values(j.eta);
    double wp = 0;
    for (int i = 0; i < eta.size(); ++i) {
      for (int a = 0; a < 3; ++a) {
        MatrixXd e = MatrixXd::Zero(eta.size(), eta.size());
        for (int k = 0; k < 3; ++k) e += c(a, k) * values(j.phi[k]);
        wp = std::max(wp, (nabla_tensor(g, i, j.phi[a]) - eta[i] * e).cwiseAbs().maxCoeff());
      }
      wp = std::max(wp, nabla_bilinear(g, i, j.omega).cwiseAbs().maxCoeff());
    }
    if (wp > w || (worst && !*worst)) {
      w = std::max(w, wp);
      if (worst) *worst = p;
    }
  }
  return w;
}

}  // namespace

// ─── Nullity ───

Check verify_nullity(const MetricStructure& ms, const Connection& lc, double kappa, double mu,
                     const std::vector<Point>& samples, double tol) {
  const Tensor11Field h = h_operator(ms.base());
  Residual r;
  for (const auto& p : samples) {
    const EndTable rt = lc.curvature(p);
    const VectorXd xi = ms.xi().at(p), eta = ms.eta().at(p);
    const MatrixXd hm = h.at(p);
    const int d = static_cast<int>(xi.size());
    double w = 0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const VectorXd lhs = rt[i * d + j] * xi;
        const VectorXd x = VectorXd::Unit(d, i), y = VectorXd::Unit(d, j);
        const VectorXd rhs =
            kappa * (eta[j] * x - eta[i] * y) + mu * (eta[j] * hm * x - eta[i] * hm * y);
        w = std::max(w, Residual::max_abs(lhs - rhs));
      }
    }
    r.observe(w, p);
  }
  return r.finish("nullity", "R(X,Y)xi = " + num(kappa) + " (eta(Y)X - eta(X)Y) + " + num(mu) +
                                 " (eta(Y)hX - eta(X)hY)",
                  tol);
}

NullityFit fit_nullity(const MetricStructure& ms, const Connection& lc,
                       const std::vector<Point>& samples) {
  const Tensor11Field h = h_operator(ms.base());
  std::vector<double> ka, mu, rhs;
  for (const auto& p : samples) {
    const EndTable rt = lc.curvature(p);
    const VectorXd xi = ms.xi().at(p), eta = ms.eta().at(p);
    const MatrixXd hm = h.at(p);
    const int d = static_cast<int>(xi.size());
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const VectorXd x = VectorXd::Unit(d, i), y = VectorXd::Unit(d, j);
        const VectorXd l = rt[i * d + j] * xi;
        const VectorXd a = eta[j] * x - eta[i] * y;
        const VectorXd b = eta[j] * hm * x - eta[i] * hm * y;
        for (int k = 0; k < d; ++k) {
          ka.push_back(a[k]);
          mu.push_back(b[k]);
          rhs.push_back(l[k]);
        }
      }
    }
  }
  const Eigen::Index m = static_cast<Eigen::Index>(rhs.size());
  const VectorXd va = Eigen::Map<VectorXd>(ka.data(), m);
  const VectorXd vb = Eigen::Map<VectorXd>(mu.data(), m);
  const VectorXd vr = Eigen::Map<VectorXd>(rhs.data(), m);
  NullityFit fit;
  if (vb.norm() <= 1e-9 * std::max(1.0, va.norm())) {
    fit.kappa = va.dot(vr) / va.squaredNorm();
    fit.residual = Residual::max_abs(vr - fit.kappa * va);
    return fit;
  }
  MatrixXd a(m, 2);
  a.col(0) = va;
  a.col(1) = vb;
  const Eigen::Vector2d x = a.colPivHouseholderQr().solve(vr);
  fit.kappa = x[0];
  fit.mu = x[1];
  fit.residual = Residual::max_abs(vr - a * x);
  return fit;
}

MetricField associated_metric(const ContactForm& eta, const Tensor11Field& phi, double sign,
                              std::string label) {
  const OneForm e = eta.eta();
  return MetricField(
      eta.model(),
      [e, phi, sign](const Point& p) {
        const JetVec ej = e.jets(p);
        const JetMat g = Jet(sign) * (d_eta_matrix(*e.model(), ej) * phi.jets(p)) + outer(ej, ej);
        JetMat s(g.rows(), g.cols());
        for (int i = 0; i < g.rows(); ++i)
          for (int j = 0; j < g.cols(); ++j) s(i, j) = Jet(0.5) * (g(i, j) + g(j, i));
        return s;
      },
      std::move(label));
}

// ─── KappaMu ───

KappaMu::KappaMu(MetricStructure ms, double kappa, double mu, const std::vector<Point>& samples,
                 double tol)
    : ms_(std::move(ms)),
      eta_(ms_.eta(), samples, tol),
      lc_(contactgeo::levi_civita(ms_.g())),
      kappa_(kappa),
      mu_(mu) {
  if (kappa > 1.0) throw DomainError("a contact metric (kappa, mu)-space has kappa <= 1");
  if (ms_.kind() != StructureKind::Contact) {
    throw PreconditionError("(kappa, mu)-spaces need a contact metric structure");
  }
  const Check a = ms_.associated(samples, tol);
  if (!a.pass) throw PreconditionError("not a contact metric structure: " + a.identity);
  const Check nul = verify_nullity(ms_, lc_, kappa, mu, samples, tol);
  if (!nul.pass) {
    throw AxiomError(nul.identity + " fails: residual " + std::to_string(nul.residual) + " at " +
                     describe(*nul.worst));
  }
  checks_.push_back(nul);
  const Tensor11Field hf = h();
  Residual sq;
  for (const auto& p : samples) {
    const MatrixXd hm = hf.at(p), f = ms_.phi().at(p);
    sq.observe(MatrixXd(hm * hm - (kappa - 1.0) * f * f), p);
  }
  checks_.push_back(sq.finish("h squared", "h^2 = (kappa - 1) phi^2", tol));
}

double KappaMu::lambda() const {
  if (sasakian()) throw PreconditionError("Sasakian case (kappa = 1): lambda = 0");
  return std::sqrt(1.0 - kappa_);
}

double KappaMu::boeckx() const { return (1.0 - mu_ / 2.0) / lambda(); }

// ─── Eigendistributions ───

EigenSplit phi_h_eigendecomposition(const KappaMu& s, const std::vector<Point>& samples,
                                    double tol) {
  const double lam = s.lambda();
  const ModelPtr& m = s.model();
  const MetricStructure& ms = s.structure();
  const Tensor11Field h = s.h();
  const Tensor11Field id = Tensor11Field::identity(m);
  const Tensor11Field pp = (0.5 / (lam * lam)) * (h * h + lam * h);
  const Tensor11Field pm = (0.5 / (lam * lam)) * (h * h - lam * h);
  const Point& probe = samples.front();
  EigenSplit out{Distribution::image(pp, probe, "D_h(+lambda)"),
                 Distribution::image(pm, probe, "D_h(-lambda)"),
                 Distribution::image((id + ms.phi()) * pp, probe, "D_phih(+lambda)"),
                 Distribution::image((id + ms.phi()) * pm, probe, "D_phih(-lambda)"),
                 {}};
  const int d = m->dim();
  const int n = (d - 1) / 2;
  const Tensor11Field phih = ms.phi() * h;
  Residual spec, eig, orth, swap;
  int min_pair = d, min_cross = d;
  const Distribution xi_line(m, {ms.xi()}, "R xi");
  for (const auto& p : samples) {
    const MatrixXd ph = phih.at(p), hm = h.at(p), g = ms.g().at(p), f = ms.phi().at(p);
    Eigen::EigenSolver<MatrixXd> es(ph);
    std::vector<double> re;
    double im = 0;
    for (int i = 0; i < d; ++i) {
      re.push_back(es.eigenvalues()[i].real());
      im = std::max(im, std::abs(es.eigenvalues()[i].imag()));
    }
    std::sort(re.begin(), re.end());
    double w = im;
    for (int i = 0; i < d; ++i) {
      const double expect = i < n ? -lam : (i == n ? 0.0 : lam);
      w = std::max(w, std::abs(re[i] - expect));
    }
    spec.observe(w, p);
    const MatrixXd bhp = out.h_plus.basis_at(p), bhm = out.h_minus.basis_at(p);
    const MatrixXd bpp = out.phih_plus.basis_at(p), bpm = out.phih_minus.basis_at(p);
    eig.observe(std::max({(hm * bhp - lam * bhp).cwiseAbs().maxCoeff(),
                          (hm * bhm + lam * bhm).cwiseAbs().maxCoeff(),
                          (ph * bpp - lam * bpp).cwiseAbs().maxCoeff(),
                          (ph * bpm + lam * bpm).cwiseAbs().maxCoeff()}),
                p);
    orth.observe(std::max(MatrixXd(bhp.transpose() * g * bhm).cwiseAbs().maxCoeff(),
                          MatrixXd(bpp.transpose() * g * bpm).cwiseAbs().maxCoeff()),
                 p);
    double ws = 0;
    for (int k = 0; k < bhp.cols(); ++k) ws = std::max(ws, out.h_minus.distance(p, f * bhp.col(k)));
    swap.observe(ws, p);
    min_pair = std::min({min_pair, joint_rank({&out.h_plus, &out.h_minus, &xi_line}, p),
                         joint_rank({&out.phih_plus, &out.phih_minus, &xi_line}, p)});
    for (const Distribution* a : {&out.h_plus, &out.h_minus})
      for (const Distribution* b : {&out.phih_plus, &out.phih_minus})
        min_cross = std::min(min_cross, joint_rank({a, b}, p));
  }
  auto& c = out.checks;
  c.push_back(spec.finish("phi h spectrum",
                          "eigenvalues of phi h are 0 and +-" + num(lam) + ", each +- of multiplicity n",
                          tol));
  c.push_back(eig.finish("eigenvectors", "h = +-lambda on D_h(+-lambda), phi h = +-lambda on D_phih(+-lambda)", tol));
  c.push_back(orth.finish("orthogonal", "g(D_h(lambda), D_h(-lambda)) = 0 and g(D_phih(lambda), D_phih(-lambda)) = 0", tol));
  c.push_back(swap.finish("phi swaps", "phi D_h(lambda) = D_h(-lambda)", tol));
  for (const Distribution* dist : {&out.h_plus, &out.h_minus, &out.phih_plus, &out.phih_minus}) {
    c.push_back(is_legendre(s.form(), *dist, samples, tol).check);
    c.push_back(is_involutive(*dist, samples, tol).check);
  }
  c.push_back(boolean_check("bi-legendrian sums", "D(lambda) + D(-lambda) + R xi = TM for h and phi h",
                            min_pair == d, "minimal rank " + std::to_string(min_pair)));
  c.push_back(boolean_check("transversal", "each D_h(+-lambda) is transversal to each D_phih(+-lambda)",
                            min_cross == 2 * n, "minimal rank " + std::to_string(min_cross)));
  return out;
}

// ─── Standard structure ───

BiParacontact standard_bipara(const KappaMu& s, const std::vector<Point>& samples, double tol) {
  const double lam = s.lambda();
  const MetricStructure& ms = s.structure();
  const Tensor11Field h = s.h();
  return BiParacontact(((1.0 / lam) * (ms.phi() * h)).relabel("phi h / lambda"),
                       ((1.0 / lam) * h).relabel("h / lambda"), ms.xi(), s.form(), samples, tol);
}

std::vector<Check> check_standard_h(const KappaMu& s, const BiParacontact& b,
                                    const std::vector<Point>& samples, double tol) {
  const double lam = s.lambda(), im = s.boeckx();
  const Tensor11Field h = s.h();
  Residual r1, r2, r3;
  for (const auto& p : samples) {
    const BiJets j = b.jets(p);
    const MatrixXd hm = h.at(p), f = s.structure().phi().at(p);
    r1.observe(MatrixXd(values(j.h[0]) + im * hm), p);
    r2.observe(MatrixXd(values(j.h[1]) - im * f * hm - lam * f), p);
    r3.observe(MatrixXd(values(j.h[2]) - hm), p);
  }
  return {
      r1.finish("h1", "h_1 = -I_M h", tol),
      r2.finish("h2", "h_2 = I_M phi h + sqrt(1 - kappa) phi", tol),
      r3.finish("h3", "h_3 = h", tol),
  };
}

// ─── Induced metrics ───

Induced induced_metrics(const BiParacontact& b, const std::vector<Point>& samples, double tol) {
  MetricStructure g1(b.structure(1), associated_metric(b.form(), b.phi(1), 1.0, "g1"), samples,
                     tol);
  MetricStructure g2(b.structure(2), associated_metric(b.form(), b.phi(2), 1.0, "g2"), samples,
                     tol);
  Connection lc1 = levi_civita(g1.g());
  Connection lc2 = levi_civita(g2.g());
  return {std::move(g1), std::move(g2), std::move(lc1), std::move(lc2)};
}

IndotteReport verify_indotte(const KappaMu& s, const BiParacontact& b, const Induced& ind,
                             const std::vector<Point>& samples, double tol) {
  (void)b;
  IndotteReport rep;
  const double lam = s.lambda(), al = 1.0 - s.mu() / 2.0;
  rep.kappa1 = al * al - 1.0;
  rep.mu1 = 2.0 * (1.0 - lam);
  rep.kappa2 = s.kappa() - 2.0 + al * al;
  rep.mu2 = 2.0;
  const int d = s.model()->dim();
  const int n = (d - 1) / 2;
  auto& c = rep.checks;
  const Signature want{n + 1, n, 0};
  int idx = 1;
  for (const MetricStructure* g : {&ind.g1, &ind.g2}) {
    const std::string k = std::to_string(idx++);
    c.push_back(g->associated(samples, tol));
    c.back().id = "g" + k + " associated";
    c.push_back(boolean_check("g" + k + " signature", "g_" + k + " has signature (n+1, n)",
                              g->signature() == want, signature_text(g->signature())));
  }
  c.push_back(verify_nullity(ind.g1, ind.lc1, rep.kappa1, rep.mu1, samples, tol));
  c.back().id = "g1 nullity";
  c.push_back(verify_nullity(ind.g2, ind.lc2, rep.kappa2, rep.mu2, samples, tol));
  c.back().id = "g2 nullity";
  rep.fit1 = fit_nullity(ind.g1, ind.lc1, samples);
  rep.fit2 = fit_nullity(ind.g2, ind.lc2, samples);
  const double fit_tol = std::max(tol, 1e-7);
  auto fit_checks = [&](const std::string& k, const NullityFit& f, double kk, double mm) {
    c.push_back(scalar_check("kappa" + k + " fit", "fitted kappa_" + k + " = " + num(kk),
                             std::abs(f.kappa - kk), fit_tol, "fitted " + num(f.kappa)));
    // With h_a = 0 the nullity condition holds for every mu; nothing to compare.
    c.push_back(scalar_check("mu" + k + " fit", "fitted mu_" + k + " = " + num(mm),
                             f.mu ? std::abs(*f.mu - mm) : 0.0, fit_tol,
                             f.mu ? "fitted " + num(*f.mu) : "mu undetermined, h vanishes"));
    c.back().informational = !f.mu;
  };
  fit_checks("1", rep.fit1, rep.kappa1, rep.mu1);
  fit_checks("2", rep.fit2, rep.kappa2, rep.mu2);
  const Verdict ps = is_sasakian(ind.g1, ind.lc1, samples, tol);
  const bool zero = std::abs(s.boeckx()) <= tol;
  c.push_back(boolean_check("g1 para-sasakian iff I_M = 0",
                            "(phi_1, xi, eta, g_1) is para-Sasakian exactly when I_M = 0",
                            ps.value == zero,
                            std::string(ps.value ? "para-Sasakian" : "not para-Sasakian") +
                                ", I_M = " + num(s.boeckx())));
  const Connection pc1 = paracontact_canonical(ind.g1, ind.lc1, samples, tol);
  const Connection pc2 = paracontact_canonical(ind.g2, ind.lc2, samples, tol);
  const Tensor11Field h1 = h_operator(ind.g1.base()), h2 = h_operator(ind.g2.base());
  Residual t1, t2;
  for (const auto& p : samples) {
    const PairTable a = pc1.torsion(p), bb = pc2.torsion(p);
    const VectorXd xi = s.structure().xi().at(p);
    const MatrixXd f1h1 = ind.g1.phi().at(p) * h1.at(p), f2h2 = ind.g2.phi().at(p) * h2.at(p);
    double w1 = 0, w2 = 0;
    for (int i = 0; i < d; ++i) {
      const VectorXd x = VectorXd::Unit(d, i);
      w1 = std::max(w1, Residual::max_abs(contract(a, x, xi) + f1h1 * x));
      w2 = std::max(w2, Residual::max_abs(contract(bb, x, xi) + f2h2 * x));
    }
    t1.observe(w1, p);
    t2.observe(w2, p);
  }
  c.push_back(t1.finish("g1 torsion xi", "T(., xi) = -phi_1 h_1 for the canonical connection of g_1", tol));
  c.push_back(t2.finish("g2 torsion xi", "T(., xi) = -phi_2 h_2 for the canonical connection of g_2", tol));
  return rep;
}

// ─── Pang forms ───

std::vector<Check> pang_bridge(const KappaMu& s, const EigenSplit& split,
                               const std::vector<Point>& samples, double tol) {
  const double im = s.boeckx();
  const PangClass want = im > tol ? PangClass::PositiveDefinite
                                  : (im < -tol ? PangClass::NegativeDefinite : PangClass::Flat);
  std::vector<Check> out;
  for (const Distribution* dist : {&split.phih_plus, &split.phih_minus}) {
    Residual r, rv;
    const auto& sec = dist->sections();
    for (const auto& p : samples) {
      const MatrixXd bas = dist->basis_at(p);
      const MatrixXd gram = bas.transpose() * s.structure().g().at(p) * bas;
      MatrixXd got(sec.size(), sec.size());
      for (std::size_t i = 0; i < sec.size(); ++i)
        for (std::size_t j = 0; j < sec.size(); ++j)
          got(i, j) = pang_form(s.form(), s.structure().xi(), sec[i], sec[j], p);
      r.observe(MatrixXd(got - 2.0 * im * gram), p);
      rv.observe(MatrixXd(got - (2.0 - s.mu()) * gram), p);
    }
    out.push_back(r.finish("pang " + dist->label(), "Pang form on " + dist->label() + " = 2 I_M g",
                           tol));
    // The value the frame computation actually produces: 2 lambda I_M = 2 - mu.
    Check v = rv.finish("pang " + dist->label() + " observed",
                        "Pang form on " + dist->label() + " = (2 - mu) g", tol);
    v.informational = true;
    out.push_back(v);
    const PangReport rep = classify_pang(s.form(), s.structure().xi(), *dist, samples, tol);
    out.push_back(boolean_check("pang class " + dist->label(),
                                "Pang class of " + dist->label() + " follows the sign of I_M",
                                rep.cls == want,
                                to_string(rep.cls) + ", I_M = " + num(im)));
  }
  return out;
}

// ─── Connections ───

Eigen::Matrix3d canonical_coefficients(const BiParacontact& b, const Connection& nabla_c,
                                       const Point& p) {
  const BiJets j = b.jets(p);
  const VectorXd xi = values(j.xi);
  const Christoffel g = nabla_c.christoffel(p);
  const int d = static_cast<int>(xi.size());
  MatrixXd basis(d * d, 3);
  for (int k = 0; k < 3; ++k) {
    const MatrixXd f = values(j.phi[k]);
    basis.col(k) = Eigen::Map<const VectorXd>(f.data(), d * d);
  }
  Eigen::Matrix3d c;
  for (int a = 0; a < 3; ++a) {
    const MatrixXd t = along(g, xi, j.phi[a]);
    const VectorXd v = Eigen::Map<const VectorXd>(t.data(), d * d);
    c.row(a) = basis.colPivHouseholderQr().solve(v).transpose();
  }
  return c;
}

std::vector<Check> connection_identifications(const KappaMu& s, const BiParacontact& b,
                                              const EigenSplit& split, const Induced& ind,
                                              const std::vector<Point>& samples, double tol) {
  std::vector<Check> out;
  const ModelPtr& m = s.model();
  const MetricStructure& ms = s.structure();
  const Connection n1 = nabla_alpha(b, 1), n2 = nabla_alpha(b, 2), n3 = nabla_alpha(b, 3);
  const Connection nc = nabla_c(b);
  auto add = [&](std::vector<Check> cs, const std::string& prefix) {
    for (auto& c : cs) {
      c.id = prefix + c.id;
      out.push_back(std::move(c));
    }
  };
  const LegendrePair pair_h(s.form(), ms.xi(), split.h_plus, split.h_minus, samples);
  const LegendrePair pair_phih(s.form(), ms.xi(), split.phih_plus, split.phih_minus, samples);
  add(check_bilegendrian_axioms(n2, pair_h, samples, tol), "nabla2 bl(h): ");
  add(check_bilegendrian_axioms(n1, pair_phih, samples, tol), "nabla1 bl(phih): ");
  const Tensor11Field id = Tensor11Field::identity(m);
  out.push_back(compare_connections(n2, paracontact_canonical(ind.g2, ind.lc2, samples, tol), id,
                                    samples, tol, "nabla2 = pc(g2)",
                                    "nabla^2 is the canonical connection of g_2"));
  out.push_back(compare_connections(n1, paracontact_canonical(ind.g1, ind.lc1, samples, tol), id,
                                    samples, tol, "nabla1 = pc(g1)",
                                    "nabla^1 is the canonical connection of g_1"));
  const Tensor11Field h = s.h();
  Residual sx, xs, d1phi, cform;
  for (const auto& p : samples) {
    const Christoffel g1 = n1.christoffel(p), g2 = n2.christoffel(p), gc = nc.christoffel(p);
    const VectorXd xi = ms.xi().at(p);
    const MatrixXd ph = ms.phi().at(p) * h.at(p);
    const int d = static_cast<int>(xi.size());
    JetVec xj(d);
    for (int q = 0; q < d; ++q) xj[q] = Jet(xi[q]);
    double wa = 0, wb = 0, wc = 0;
    for (int i = 0; i < d; ++i) {
      const JetVec e = unit(d, i);
      wa = std::max(wa, Residual::max_abs(values(g2.apply(e, xj)) - values(g1.apply(e, xj))));
      wb = std::max(wb, Residual::max_abs(values(g2.apply(xj, e)) - values(g1.apply(xj, e)) +
                                          ph.col(i)));
      wc = std::max({wc, Residual::max_abs(nabla_form(gc, i, ms.eta().jets(p))),
                     nabla_bilinear(gc, i, d_eta_matrix(*m, ms.eta().jets(p))).cwiseAbs().maxCoeff()});
    }
    sx.observe(wa, p);
    xs.observe(wb, p);
    cform.observe(wc, p);
    d1phi.observe(MatrixXd(along(g1, xi, ms.phi().jets(p)) - 2.0 * h.at(p)), p);
  }
  const Tensor11Field pd = id - Tensor11Field::outer(ms.xi(), ms.eta());
  out.push_back(sx.finish("S(., xi)", "S(X, xi) = 0 for S = nabla^2 - nabla^1", tol));
  out.push_back(xs.finish("S(xi, .)", "S(xi, X) = -phi h X", tol));
  out.push_back(compare_connections(n2, n1, pd, samples, tol, "S on D", "S = 0 on ker eta"));
  out.push_back(d1phi.finish("nabla1 xi phi", "nabla^1_xi phi = 2h", tol));
  out.push_back(compare_connections(n1, nc, pd, samples, tol, "nabla1 = nablac on D",
                                    "nabla^1 = nabla^c on ker eta"));
  out.push_back(compare_connections(n2, nc, pd, samples, tol, "nabla2 = nablac on D",
                                    "nabla^2 = nabla^c on ker eta"));
  out.push_back(compare_connections(n3, nc, pd, samples, tol, "nabla3 = nablac on D",
                                    "nabla^3 = nabla^c on ker eta"));
  out.push_back(cform.finish("nablac contact", "nabla^c eta = 0 and nabla^c deta = 0", tol));
  const double al = (2.0 / 3.0) * (1.0 - s.mu() / 2.0), la = (2.0 / 3.0) * s.lambda();
  Eigen::Matrix3d want;
  want << 0, -al, 0, al, 0, la, 0, la, 0;
  std::optional<Point> worst;
  const double w = coefficient_pattern(b, nc, want, samples, &worst);
  Check cc = scalar_check("nablac phi coefficients",
                          "nabla^c phi_1 = -2/3 (1 - mu/2) eta (x) phi_2, nabla^c phi_2 = 2/3 (1 - "
                          "mu/2) eta (x) phi_1 + 2/3 lambda eta (x) phi_3, nabla^c phi_3 = 2/3 "
                          "lambda eta (x) phi_2",
                          w, tol);
  cc.worst = worst;
  const Eigen::Matrix3d got = canonical_coefficients(b, nc, samples.front());
  cc.note = "read off: phi_1 -> " + num(got(0, 1)) + " phi_2; phi_2 -> " + num(got(1, 0)) +
            " phi_1 + " + num(got(1, 2)) + " phi_3; phi_3 -> " + num(got(2, 1)) + " phi_2";
  out.push_back(cc);
  return out;
}

Check check_canonical_torsion(const KappaMu& s, const BiParacontact& b, const Connection& nabla_c,
                              const std::vector<Point>& samples, double tol) {
  (void)b;
  const MetricStructure& ms = s.structure();
  const Tensor11Field h = s.h();
  const double al = 1.0 - s.mu() / 2.0;
  Residual r;
  for (const auto& p : samples) {
    const PairTable t = nabla_c.torsion(p);
    const VectorXd xi = ms.xi().at(p), eta = ms.eta().at(p);
    const MatrixXd f = ms.phi().at(p);
    const MatrixXd q = al * f + f * h.at(p);
    const MatrixXd om = s.form().d_eta_matrix(p);
    const int d = static_cast<int>(xi.size());
    double w = 0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const VectorXd e = (2.0 / 3.0) * (eta[j] * q.col(i) - eta[i] * q.col(j)) +
                           2.0 * om(i, j) * xi;
        w = std::max(w, Residual::max_abs(t[i * d + j] - e));
      }
    }
    r.observe(w, p);
  }
  return r.finish("nablac torsion kappa-mu",
                  "T^c(X,Y) = 2/3 (eta(Y)((1 - mu/2) phi X + phi h X) - eta(X)((1 - mu/2) phi Y + "
                  "phi h Y)) + 2 deta(X,Y) xi",
                  tol);
}

// ─── Reconstruction ───

Main3Report main3_reconstruction(const BiParacontact& b, const std::vector<Point>& samples,
                                 double tol) {
  Main3Report rep;
  const Connection nc = nabla_c(b);
  const Eigen::Matrix3d c = canonical_coefficients(b, nc, samples.front());
  rep.a = -c(0, 1);
  rep.b = c(2, 1);
  Eigen::Matrix3d pattern;
  pattern << 0, -rep.a, 0, rep.a, 0, rep.b, 0, rep.b, 0;
  std::optional<Point> worst;
  const double w = coefficient_pattern(b, nc, pattern, samples, &worst);
  if (w > tol) {
    throw PreconditionError("nabla^c phi_a does not follow the (a, b) pattern with nabla^c deta = 0 "
                            "(residual " + std::to_string(w) + ")");
  }
  if (std::abs(rep.a) <= tol) throw PreconditionError("degenerate read-off: a = 0");
  if (!is_integrable(b, samples, tol).value) {
    throw PreconditionError("the bi-paracontact structure is not integrable");
  }
  auto& out = rep.checks;
  Check pc = scalar_check("coefficient pattern",
                          "nabla^c phi_1 = -a eta (x) phi_2, nabla^c phi_2 = a eta (x) phi_1 + b "
                          "eta (x) phi_3, nabla^c phi_3 = b eta (x) phi_2, nabla^c deta = 0",
                          w, tol, "a = " + num(rep.a) + ", b = " + num(rep.b));
  pc.worst = worst;
  out.push_back(pc);

  const ContactForm& form = b.form();
  const MetricField g1f = associated_metric(form, b.phi(1), 1.0, "g1");
  // pi_1 = g_1(h_1 ., .) on ker eta must be definite with the sign of a.
  const Tensor11Field h1 = b.h(1);
  for (const auto& p : samples) {
    const VectorXd xi = b.xi().at(p), eta = b.eta().at(p);
    const MatrixXd basis = column_basis(contact_projector(xi, eta));
    const MatrixXd pi = basis.transpose() * g1f.at(p) * h1.at(p) * basis;
    const Signature sg = signature(0.5 * (pi + pi.transpose()));
    const bool ok = rep.a > 0 ? sg.positive == basis.cols() : sg.negative == basis.cols();
    if (!ok) {
      throw PreconditionError("g_1(h_1 ., .) is not " +
                              std::string(rep.a > 0 ? "positive" : "negative") +
                              " definite on ker eta at " + describe(p));
    }
  }
  const MetricStructure g1(b.structure(1), g1f, samples, tol);
  const MetricStructure g2(b.structure(2), associated_metric(form, b.phi(2), 1.0, "g2"), samples,
                           tol);
  const MetricStructure g3(b.structure(3), associated_metric(form, b.phi(3), -1.0, "g3"), samples,
                           tol);
  const int d = b.model()->dim();
  out.push_back(boolean_check("g3 riemannian", "g_3 is positive definite",
                              g3.signature() == Signature{d, 0, 0}, signature_text(g3.signature())));
  Check assoc = g3.associated(samples, tol);
  assoc.id = "g3 associated";
  out.push_back(assoc);

  Residual conf;
  for (const auto& p : samples) {
    const BiJets j = b.jets(p);
    std::array<MatrixXd, 3> f, h;
    for (int k = 0; k < 3; ++k) {
      f[k] = values(j.phi[k]);
      h[k] = values(j.h[k]);
    }
    conf.observe(std::max({(h[0] + 1.5 * rep.a * f[1]).cwiseAbs().maxCoeff(),
                           (h[1] - 1.5 * (rep.a * f[0] + rep.b * f[2])).cwiseAbs().maxCoeff(),
                           (h[2] - 1.5 * rep.b * f[1]).cwiseAbs().maxCoeff()}),
                 p);
  }
  out.push_back(conf.finish("h read-off",
                            "h_1 = -3/2 a phi_2, h_2 = 3/2 (a phi_1 + b phi_3), h_3 = 3/2 b phi_2",
                            tol));

  const Connection lc1 = levi_civita(g1.g()), lc2 = levi_civita(g2.g()), lc3 = levi_civita(g3.g());
  Residual rel;
  for (const auto& p : samples) {
    const Christoffel gc = nc.christoffel(p), gl = lc3.christoffel(p);
    const JetVec xi = b.xi().jets(p), eta = b.eta().jets(p);
    const JetMat pd = JetMat::identity(d) - outer(xi, eta);
    const MatrixXd pv = values(pd);
    double wr = 0;
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) {
        const JetVec x = pd.column(i), y = pd.column(k);
        const VectorXd lhs = values(Connection::covariant(gc, x, y));
        const VectorXd rhs = pv * values(Connection::covariant(gl, x, y));
        wr = std::max(wr, Residual::max_abs(lhs - rhs));
      }
    }
    rel.observe(wr, p);
  }
  out.push_back(rel.finish("nablac vs g3",
                           "nabla^c_X Y = nabla^{g3}_X Y - eta(nabla^{g3}_X Y) xi on ker eta", tol));

  const double a = rep.a, bb = rep.b;
  rep.kappa1 = 2.25 * a * a - 1.0;
  rep.mu1 = 2.0 - 3.0 * bb;
  rep.kappa2 = 2.25 * (a * a - bb * bb) - 1.0;
  rep.mu2 = 2.0;
  rep.kappa3 = 1.0 - 2.25 * bb * bb;
  rep.mu3_printed = 2.0 + 3.0 * a;
  rep.mu3_alternative = 2.0 - 3.0 * a;
  rep.fit1 = fit_nullity(g1, lc1, samples);
  rep.fit2 = fit_nullity(g2, lc2, samples);
  rep.fit3 = fit_nullity(g3, lc3, samples);
  const double ft = std::max(tol, 1e-7);
  auto fit_check = [&](const std::string& name, double fitted, double formula,
                       const std::string& text) {
    out.push_back(scalar_check(name + " fit", "fitted " + name + " = " + text,
                               std::abs(fitted - formula), ft,
                               "fitted " + num(fitted) + ", formula " + num(formula)));
  };
  auto mu_of = [](const NullityFit& f) { return f.mu ? *f.mu : NAN; };
  fit_check("kappa_1", rep.fit1.kappa, rep.kappa1, "9/4 a^2 - 1");
  fit_check("mu_1", mu_of(rep.fit1), rep.mu1, "2 - 3b");
  fit_check("kappa_2", rep.fit2.kappa, rep.kappa2, "9/4 (a^2 - b^2) - 1");
  fit_check("mu_2", mu_of(rep.fit2), rep.mu2, "2");
  fit_check("kappa_3", rep.fit3.kappa, rep.kappa3, "1 - 9/4 b^2");
  out.push_back(scalar_check("g3 nullity fit", "R^{g3}(X,Y) xi follows the fitted (kappa_3, mu_3)",
                             rep.fit3.residual, tol));
  for (const auto& [label, v] : {std::pair<std::string, double>{"2 + 3a", rep.mu3_printed},
                                 std::pair<std::string, double>{"2 - 3a", rep.mu3_alternative}}) {
    Check c = scalar_check("mu_3 vs " + label, "fitted mu_3 compared with " + label,
                           std::abs(mu_of(rep.fit3) - v), ft,
                           "fitted " + num(mu_of(rep.fit3)) + ", " + label + " = " + num(v));
    c.informational = true;
    out.push_back(c);
  }
  return rep;
}

Main4Report main4_supplementary(const KappaMu& s, const std::vector<Point>& samples, double tol) {
  if (s.sasakian()) throw PreconditionError("the supplementary structure needs kappa < 1");
  const double im = s.boeckx(), lam = s.lambda(), al = 1.0 - s.mu() / 2.0;
  if (std::abs(std::abs(im) - 1.0) <= 1e-12) throw PreconditionError("I_M = +-1");
  const MetricStructure& ms = s.structure();
  const Tensor11Field h = s.h();
  const Tensor11Field h2 = im * (ms.phi() * h) + lam * ms.phi();
  const double c = std::sqrt(std::abs(al * al - lam * lam));
  const Tensor11Field psi = ((1.0 / c) * h2).relabel("psi");
  const Tensor11Field hl = ((1.0 / lam) * h).relabel("h / lambda");
  Main4Report rep;
  auto& out = rep.checks;
  if (std::abs(im) > 1.0) {
    rep.branch = 1;
    rep.structure.emplace(psi, hl, ms.xi(), s.form(), samples, tol);
  } else {
    rep.branch = 2;
    rep.structure.emplace(hl, (hl * psi).relabel("h psi / lambda"), ms.xi(), s.form(), samples,
                          tol);
  }
  const BiParacontact& b = *rep.structure;
  for (const auto& c2 : b.properties()) out.push_back(c2);
  const Assessment integ = is_integrable(b, samples, tol);
  out.push_back(boolean_check("integrable", "the supplementary structure is integrable",
                              integ.value, ""));
  for (const auto& c2 : integ.checks) out.push_back(c2);
  Residual r1, r0;
  const double k1 = std::sqrt(std::abs(im * im - 1.0));
  for (const auto& p : samples) {
    const BiJets j = b.jets(p);
    const MatrixXd hm = h.at(p);
    if (rep.branch == 1) {
      r1.observe(MatrixXd(values(j.h[0]) + k1 * hm), p);
      r0.observe(MatrixXd(values(j.h[2])), p);
    } else {
      r0.observe(MatrixXd(values(j.h[1])), p);
    }
  }
  if (rep.branch == 1) {
    out.push_back(r1.finish("h'1", "h'_1 = -sqrt(I_M^2 - 1) h", tol));
    out.push_back(r0.finish("h'3", "h'_3 = 0", tol));
    const Verdict n3 = is_normal(b.structure(3), samples, tol);
    Check c3 = n3.check;
    c3.id = "phi'3 normal";
    c3.identity = "N1 of phi'_3 = 0";
    out.push_back(c3);
  } else {
    out.push_back(r0.finish("h''2", "h''_2 = 0", tol));
  }
  const Assessment nrm = is_normal(b, samples, tol);
  out.push_back(boolean_check("not normal", "the supplementary structure is not normal",
                              !nrm.value, nrm.value ? "normal" : "not normal"));
  return rep;
}

}  // namespace contactgeo
