#include "contactgeo/contact.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "contactgeo/errors.hpp"

namespace contactgeo {

Jet d_eta(const Model& m, const JetVec& eta, const JetVec& x, const JetVec& y) {
  return Jet(0.5) * (directional(x, dot(eta, y)) - directional(y, dot(eta, x)) -
                     dot(eta, bracket(m, x, y)));
}

JetMat d_eta_matrix(const Model& m, const JetVec& eta) {
  const int n = m.dim();
  JetMat om(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Jet v = eta[j].derivative(i) - eta[i].derivative(j);
      if (m.kind() == ModelKind::Frame)
        for (int k = 0; k < n; ++k)
          if (m.c(i, j, k) != 0.0) v -= Jet(m.c(i, j, k)) * eta[k];
      v *= Jet(0.5);
      om(i, j) = v;
      om(j, i) = -v;
    }
  }
  return om;
}

double d_eta(const OneForm& eta, const VectorField& x, const VectorField& y, const Point& p) {
  require_same_model(eta.model(), x.model());
  require_same_model(eta.model(), y.model());
  return d_eta(*eta.model(), eta.jets(p), x.jets(p), y.jets(p)).value();
}

// ─── ContactForm ───

ContactForm::ContactForm(OneForm eta, const std::vector<Point>& samples, double tol)
    : eta_(std::move(eta)) {
  const int d = model()->dim();
  if (d % 2 == 0 || d < 3) {
    throw NotContactError("contact forms need odd dimension >= 3, got " + std::to_string(d));
  }
  for (const auto& p : samples) {
    // eta ^ (deta)^n != 0 iff [Omega; eta] has full column rank.
    Eigen::MatrixXd a(d + 1, d);
    a.topRows(d) = d_eta_matrix(p);
    a.row(d) = eta_.at(p).transpose();
    if (rank(a, tol) < d) {
      throw NotContactError("eta ^ (deta)^n vanishes at " + describe(p));
    }
  }
}

VectorField ContactForm::reeb() const {
  const OneForm eta = eta_;
  return VectorField(
      model(),
      [eta](const Point& p) {
        const Model& m = *eta.model();
        const JetVec e = eta.jets(p);
        const JetMat om = contactgeo::d_eta_matrix(m, e);
        const int n = m.dim();
        // (Omega^T + eta eta^T) xi = eta is nonsingular exactly when eta is contact.
        JetMat b(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) b(i, j) = om(j, i) + e[i] * e[j];
        return inverse(b) * e;
      },
      "xi");
}

Eigen::VectorXd ContactForm::reeb_at(const Point& p) const { return reeb().at(p); }

Check ContactForm::reeb_residual(const VectorField& xi, const std::vector<Point>& samples,
                                 double tol) const {
  require_same_model(model(), xi.model());
  Residual r;
  for (const auto& p : samples) {
    const Eigen::VectorXd x = xi.at(p);
    Eigen::VectorXd v(x.size() + 1);
    v.head(x.size()) = d_eta_matrix(p).transpose() * x;
    v[x.size()] = eta_.at(p).dot(x) - 1.0;
    r.observe(v, p);
  }
  return r.finish("reeb", "eta(xi) = 1, i_xi deta = 0", tol);
}

double ContactForm::d_eta(const VectorField& x, const VectorField& y, const Point& p) const {
  return contactgeo::d_eta(eta_, x, y, p);
}

Eigen::MatrixXd ContactForm::d_eta_matrix(const Point& p) const {
  return values(contactgeo::d_eta_matrix(*model(), eta_.jets(p)));
}

// ─── Distribution ───

Distribution::Distribution(ModelPtr model, std::vector<VectorField> sections, std::string label)
    : model_(std::move(model)), sections_(std::move(sections)), label_(std::move(label)) {
  for (const auto& s : sections_) require_same_model(model_, s.model());
}

Distribution Distribution::image(const Tensor11Field& projector, const Point& probe,
                                 std::string label) {
  const ModelPtr& m = projector.model();
  const Eigen::MatrixXd pm = projector.at(probe);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(pm);
  qr.setThreshold(1e-9);
  std::vector<int> cols;
  for (int i = 0; i < qr.rank(); ++i) cols.push_back(qr.colsPermutation().indices()[i]);
  std::sort(cols.begin(), cols.end());
  std::vector<VectorField> secs;
  for (int c : cols) secs.push_back(projector * VectorField::basis(m, c));
  return Distribution(m, std::move(secs), std::move(label));
}

Eigen::MatrixXd Distribution::basis_at(const Point& p) const {
  Eigen::MatrixXd b(model_->dim(), sections_.size());
  for (std::size_t i = 0; i < sections_.size(); ++i) b.col(i) = sections_[i].at(p);
  return b;
}

int Distribution::rank_at(const Point& p) const { return rank(basis_at(p)); }

double Distribution::distance(const Point& p, const Eigen::VectorXd& v) const {
  const Eigen::MatrixXd b = column_basis(basis_at(p));
  if (b.cols() == 0) return Residual::max_abs(v);
  const Eigen::VectorXd coef = b.colPivHouseholderQr().solve(v);
  return Residual::max_abs(v - b * coef);
}

// ─── Predicates ───

Verdict is_legendre(const ContactForm& eta, const Distribution& l,
                    const std::vector<Point>& samples, double tol) {
  require_same_model(eta.model(), l.model());
  Residual in_kernel, isotropic;
  int bad_rank = -1;
  std::optional<Point> bad_point;
  for (const auto& p : samples) {
    const Eigen::MatrixXd b = l.basis_at(p);
    in_kernel.observe(Eigen::VectorXd(eta.eta().at(p).transpose() * b), p);
    const Eigen::MatrixXd om = eta.d_eta_matrix(p);
    isotropic.observe(Eigen::MatrixXd(b.transpose() * om * b), p);
    const int r = rank(b);
    if (r != eta.n() && !bad_point) {
      bad_rank = r;
      bad_point = p;
    }
  }
  if (in_kernel.value() > tol) {
    throw PreconditionError(l.label() + " is not contained in ker eta (residual " +
                            std::to_string(in_kernel.value()) + " at " +
                            describe(*in_kernel.worst()) + ")");
  }
  Verdict v;
  v.check = isotropic.finish("legendre:" + l.label(), "deta(X,Y) = 0 on " + l.label(), tol);
  v.value = v.check.pass;
  if (bad_point) {
    v.value = false;
    v.check.pass = false;
    v.check.note = "rank " + std::to_string(bad_rank) + " at " + describe(*bad_point) +
                   ", expected " + std::to_string(eta.n());
  }
  return v;
}

Verdict is_involutive(const Distribution& d, const std::vector<Point>& samples, double tol) {
  Residual res;
  const auto& s = d.sections();
  for (const auto& p : samples) {
    double worst = 0.0;
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        worst = std::max(worst, d.distance(p, lie_bracket(s[a], s[b], p)));
    res.observe(worst, p);
  }
  Verdict v;
  v.check = res.finish("involutive:" + d.label(), "[X,Y] in " + d.label(), tol);
  v.value = v.check.pass;
  return v;
}

int joint_rank(const std::vector<const Distribution*>& ds, const Point& p) {
  if (ds.empty()) return 0;
  const int n = ds.front()->model()->dim();
  int cols = 0;
  for (const auto* d : ds) cols += static_cast<int>(d->sections().size());
  Eigen::MatrixXd all(n, cols);
  int c = 0;
  for (const auto* d : ds) {
    const Eigen::MatrixXd b = d->basis_at(p);
    all.middleCols(c, b.cols()) = b;
    c += static_cast<int>(b.cols());
  }
  return rank(all);
}

double pang_form(const ContactForm& eta, const VectorField& xi, const VectorField& x,
                 const VectorField& x2, const Point& p) {
  // deta is tensorial, so only values of the bracket are needed.
  const Eigen::VectorXd b = lie_bracket(xi, x, p);
  return 2.0 * b.dot(eta.d_eta_matrix(p) * x2.at(p));
}

std::string to_string(PangClass c) {
  switch (c) {
    case PangClass::PositiveDefinite: return "positive definite";
    case PangClass::NegativeDefinite: return "negative definite";
    case PangClass::Nondegenerate: return "non-degenerate";
    case PangClass::Degenerate: return "degenerate";
    case PangClass::Flat: return "flat";
  }
  return "unknown";
}

PangReport classify_pang(const ContactForm& eta, const VectorField& xi, const Distribution& f,
                         const std::vector<Point>& samples, double tol) {
  PangReport rep;
  std::set<PangClass> seen;
  const auto& s = f.sections();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const Point& p = samples[k];
    // Independent sections at this point.
    const Eigen::MatrixXd b = f.basis_at(p);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(b);
    qr.setThreshold(1e-9);
    std::vector<int> idx;
    for (int i = 0; i < qr.rank(); ++i) idx.push_back(qr.colsPermutation().indices()[i]);
    std::sort(idx.begin(), idx.end());
    const int r = static_cast<int>(idx.size());
    Eigen::MatrixXd g(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) g(i, j) = pang_form(eta, xi, s[idx[i]], s[idx[j]], p);
    if (k == 0) rep.gram = g;
    rep.symmetry_residual =
        std::max(rep.symmetry_residual, r ? (g - g.transpose()).cwiseAbs().maxCoeff() : 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g + g.transpose()));
    const Eigen::VectorXd ev = es.eigenvalues();
    const double mx = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
    rep.max_abs = std::max(rep.max_abs, mx);
    int pos = 0, neg = 0;
    for (int i = 0; i < ev.size(); ++i) {
      if (ev[i] > tol) ++pos;
      else if (ev[i] < -tol) ++neg;
    }
    PangClass c;
    if (mx <= tol) c = PangClass::Flat;
    else if (pos == r) c = PangClass::PositiveDefinite;
    else if (neg == r) c = PangClass::NegativeDefinite;
    else if (pos + neg == r) c = PangClass::Nondegenerate;
    else c = PangClass::Degenerate;
    seen.insert(c);
  }
  if (seen.size() == 1) rep.cls = *seen.begin();
  else if (seen.count(PangClass::Degenerate) || seen.count(PangClass::Flat))
    rep.cls = PangClass::Degenerate;
  else rep.cls = PangClass::Nondegenerate;
  return rep;
}

}  // namespace contactgeo
