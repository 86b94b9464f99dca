#include "contactgeo/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "contactgeo/errors.hpp"

namespace contactgeo {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// The model lacks the structure a suite is about.
struct NotApplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The model has the structure but sits outside the theorem's hypotheses.
struct Skip : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void append(std::vector<Check>& to, const std::vector<Check>& from, const std::string& prefix = {}) {
  for (Check c : from) {
    if (!prefix.empty()) c.id = prefix + c.id;
    to.push_back(std::move(c));
  }
}

/// A predicate that comes out false is a property of the model, not a failed
/// identity: its deciding checks are kept for reference only.
void append_assessment(std::vector<Check>& to, const Assessment& a, const std::string& name) {
  std::vector<Check> cs = a.checks;
  if (!a.value) {
    for (auto& c : cs)
      if (!c.pass) c.informational = true;
  }
  Check v = boolean_check(name, "predicate: " + name, a.value, a.value ? "holds" : "does not hold");
  v.informational = true;
  to.push_back(v);
  append(to, cs, name + ": ");
}

void append_verdict(std::vector<Check>& to, const Verdict& v) {
  Check c = v.check;
  if (!v.value) c.informational = true;
  to.push_back(c);
}

// ─── Session: the loaded model and shared derived objects ───

class Session {
 public:
  Session(const ModelPack& pack, const RunOptions& o)
      : samples_(pack.model->samples(o.samples, o.seed)),
        tol_(o.tol ? *o.tol : (o.default_tol ? *o.default_tol : pack.model->default_tolerance())),
        lm_(pack, samples_, tol_) {}

  const std::vector<Point>& samples() const { return samples_; }
  double tol() const { return tol_; }
  const LoadedModel& model() const { return lm_; }

  const BiParacontact& bipara() const {
    if (!lm_.has_bipara()) throw NotApplicable("the model declares no bi-paracontact structure");
    return lm_.bipara();
  }
  const MetricStructure& contact_metric() const {
    if (!lm_.has_contact_metric()) throw NotApplicable("the model declares no contact metric structure");
    return lm_.contact_metric();
  }
  const KappaMu& kappa_mu() const {
    if (!lm_.has_kappa_mu()) throw NotApplicable("the model is not a declared (kappa, mu)-space");
    const KappaMu& s = lm_.kappa_mu();
    if (s.sasakian()) throw NotApplicable("Sasakian, kappa = 1: lambda = 0 and the h-eigenspaces degenerate");
    return s;
  }

  const Connection& nabla(int a) const {
    auto& slot = nabla_[a];
    if (!slot) slot.emplace(nabla_alpha(bipara(), a));
    return *slot;
  }
  const Connection& nc() const {
    if (!nc_) nc_.emplace(nabla_c(bipara()));
    return *nc_;
  }
  const Connection& contact_lc() const {
    if (!lc_) lc_.emplace(levi_civita(contact_metric().g()));
    return *lc_;
  }
  const EigenSplit& split() const {
    if (!split_) split_.emplace(phi_h_eigendecomposition(kappa_mu(), samples_, tol_));
    return *split_;
  }
  const Induced& induced() const {
    if (!induced_) induced_.emplace(induced_metrics(bipara(), samples_, tol_));
    return *induced_;
  }
  bool integrable() const {
    if (!integrable_) integrable_ = is_integrable(bipara(), samples_, tol_).value;
    return *integrable_;
  }
  bool normal() const {
    if (!normal_) normal_ = is_normal(bipara(), samples_, tol_).value;
    return *normal_;
  }

 private:
  std::vector<Point> samples_;
  double tol_;
  LoadedModel lm_;
  mutable std::map<int, std::optional<Connection>> nabla_;
  mutable std::optional<Connection> nc_, lc_;
  mutable std::optional<EigenSplit> split_;
  mutable std::optional<Induced> induced_;
  mutable std::optional<bool> integrable_, normal_;
};

// ─── Helpers for checks not owned by a module ───

/// i_xi deta = 0 and L_xi deta = 0, the latter from
/// xi(deta(E_i,E_j)) - deta([xi,E_i],E_j) - deta(E_i,[xi,E_j]).
std::vector<Check> d_eta_invariance(const ContactForm& form, const VectorField& xi,
                                    const std::vector<Point>& samples, double tol) {
  const Model& m = *form.model();
  const int n = m.dim();
  Residual ixi, lie;
  for (const auto& p : samples) {
    const JetVec x = xi.jets(p);
    const JetMat om = d_eta_matrix(m, form.eta().jets(p));
    const MatrixXd o = values(om);
    ixi.observe(VectorXd(o.transpose() * values(x)), p);
    MatrixXd b(n, n);
    for (int i = 0; i < n; ++i) b.col(i) = values(bracket(m, x, unit(n, i)));
    MatrixXd d(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = directional(x, om(i, j)).value();
    lie.observe(MatrixXd(d - b.transpose() * o - o * b), p);
  }
  return {ixi.finish("i_xi deta", "deta(xi, .) = 0", tol),
          lie.finish("L_xi deta", "L_xi deta = 0", tol)};
}

/// eta ^ (deta)^n != 0: the matrix [eta; deta(E_i, .)] has full rank.
Check contact_condition(const ContactForm& form, const std::vector<Point>& samples) {
  const int n = form.model()->dim();
  int worst = n;
  for (const auto& p : samples) {
    MatrixXd a(n + 1, n);
    a.row(0) = form.eta().at(p).transpose();
    a.bottomRows(n) = form.d_eta_matrix(p);
    worst = std::min(worst, rank(a));
  }
  return boolean_check("contact condition", "eta ^ (deta)^n != 0 (full rank of [eta; deta])",
                       worst == n, "minimum rank " + std::to_string(worst));
}

/// h has eigenvalues 0, lambda, -lambda with multiplicities 1, n, n.
Check h_spectrum(const KappaMu& s, const std::vector<Point>& samples, double tol) {
  const int dim = s.model()->dim(), n = (dim - 1) / 2;
  const double lam = s.lambda();
  Residual r;
  const Tensor11Field h = s.h();
  for (const auto& p : samples) {
    Eigen::EigenSolver<MatrixXd> es(h.at(p));
    std::vector<double> ev;
    double imag = 0.0;
    for (int i = 0; i < dim; ++i) {
      ev.push_back(es.eigenvalues()[i].real());
      imag = std::max(imag, std::abs(es.eigenvalues()[i].imag()));
    }
    std::sort(ev.begin(), ev.end());
    double e = imag;
    for (int i = 0; i < n; ++i) e = std::max({e, std::abs(ev[i] + lam), std::abs(ev[n + 1 + i] - lam)});
    e = std::max(e, std::abs(ev[n]));
    r.observe(e, p);
  }
  Check c = r.finish("h spectrum", "spec h = {0, lambda, -lambda} with multiplicities 1, n, n", tol);
  c.note = "lambda = " + num(lam);
  return c;
}

/// Torsion of a connection equals 2 deta (x) xi on all frame pairs.
Check torsion_is_d_eta(const Connection& c, const BiParacontact& b,
                       const std::vector<Point>& samples, double tol) {
  const int n = b.model()->dim();
  Residual r;
  for (const auto& p : samples) {
    const PairTable t = c.torsion(p);
    const MatrixXd om = b.form().d_eta_matrix(p);
    const VectorXd xi = b.xi().at(p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.observe(VectorXd(t[i * n + j] - 2.0 * om(i, j) * xi), p);
  }
  return r.finish("nablac torsion normal", "T^c = 2 deta (x) xi", tol);
}

Check curvature_vanishes(const Connection& c, const std::vector<Point>& samples, double tol) {
  Residual r;
  for (const auto& p : samples)
    for (const auto& m : c.curvature(p)) r.observe(m, p);
  return r.finish("nablac flat", "R^c = 0", tol);
}

// ─── Suites ───

using SuiteFn = std::function<std::vector<Check>(const Session&)>;

std::vector<Check> contact_basics(const Session& s) {
  const LoadedModel& lm = s.model();
  const auto& sm = s.samples();
  const double tol = s.tol();
  std::vector<Check> out;
  append(out, lm.checks(), "load: ");
  out.push_back(contact_condition(lm.form(), sm));
  Check r = lm.form().reeb_residual(lm.xi(), sm, tol);
  r.id = "reeb";
  out.push_back(r);
  append(out, d_eta_invariance(lm.form(), lm.xi(), sm, tol));
  if (lm.model()->kind() == ModelKind::Frame) out.push_back(jacobi_check(*lm.model(), tol));
  if (lm.has_bipara()) {
    const BiParacontact& b = lm.bipara();
    for (int a = 1; a <= 2; ++a) {
      for (int sign : {1, -1}) {
        const Distribution d = b.eigendistribution(a, sign, sm.front());
        append_verdict(out, is_legendre(lm.form(), d, sm, tol));
        append_verdict(out, is_involutive(d, sm, tol));
        const PangReport pr = classify_pang(lm.form(), lm.xi(), d, sm, tol);
        Check c = scalar_check("pang symmetric " + d.label(), "Pang form on " + d.label() + " is symmetric",
                               pr.symmetry_residual, tol, to_string(pr.cls));
        out.push_back(c);
      }
    }
  }
  return out;
}

std::vector<Check> structures(const Session& s) {
  const LoadedModel& lm = s.model();
  const auto& sm = s.samples();
  const double tol = s.tol();
  std::vector<Check> out;
  if (!lm.has_contact_metric() && !lm.has_bipara())
    throw NotApplicable("the model declares no almost contact or paracontact structure");
  if (lm.has_contact_metric()) {
    const MetricStructure& ms = lm.contact_metric();
    const Connection& lc = s.contact_lc();
    append(out, ms.base().axioms(), "phi: ");
    append(out, ms.axioms(), "g: ");
    out.push_back(ms.associated(sm, tol));
    out.push_back(lemma2_residual(ms.base(), sm, tol));
    append(out, h_properties(ms.base(), &ms.g(), sm, tol));
    append(out, check_integrability_condition(ms, lc, sm, tol));
    out.push_back(check_reeb_gradient(ms, lc, sm, tol));
    append_verdict(out, is_sasakian(ms, lc, sm, tol));
    const Verdict nv = is_normal(ms.base(), sm, tol);
    append_verdict(out, nv);
    if (nv.value) {
      // Normality forces the other three tensors to vanish.
      Residual r2, r3, r4;
      for (const auto& p : sm) {
        r2.observe(n2_table(ms.base(), p), p);
        r3.observe(n3_matrix(ms.base(), p), p);
        r4.observe(n4_covector(ms.base(), p), p);
      }
      out.push_back(r2.finish("N2 after N1", "N1 = 0 implies N2 = 0", tol));
      out.push_back(r3.finish("N3 after N1", "N1 = 0 implies N3 = 0", tol));
      out.push_back(r4.finish("N4 after N1", "N1 = 0 implies N4 = 0", tol));
    }
  }
  if (lm.has_bipara()) {
    const BiParacontact& b = lm.bipara();
    Residual r4;
    for (const auto& p : sm) r4.observe(n4_covector(b.structure(3), p), p);
    out.push_back(r4.finish("N4 phi3", "L_xi eta = 0 for a contact form", tol));
    const Induced& ind = s.induced();
    const bool integrable = s.integrable();
    int k = 1;
    for (const auto* pair : {&ind.g1, &ind.g2}) {
      const std::string tag = "g" + std::to_string(k) + ": ";
      const Connection& lc = k == 1 ? ind.lc1 : ind.lc2;
      append(out, pair->axioms(), tag);
      Check a = pair->associated(sm, tol);
      a.id = tag + a.id;
      out.push_back(a);
      Check rg = check_reeb_gradient(*pair, lc, sm, tol);
      rg.id = tag + rg.id;
      out.push_back(rg);
      append(out, h_properties(pair->base(), &pair->g(), sm, tol), tag);
      if (integrable) append(out, check_integrability_condition(*pair, lc, sm, tol), tag);
      const Connection pc = paracontact_canonical(*pair, lc, sm, tol);
      append(out, check_paracontact_canonical(*pair, lc, pc, sm, tol), tag + "pc ");
      ++k;
    }
  }
  return out;
}

std::vector<Check> bipara_axioms(const Session& s) {
  const BiParacontact& b = s.bipara();
  const auto& sm = s.samples();
  const double tol = s.tol();
  std::vector<Check> out;
  for (int a = 1; a <= 3; ++a) append(out, b.structure(a).axioms(), "phi" + std::to_string(a) + ": ");
  append(out, b.properties());
  for (int a = 1; a <= 3; ++a) {
    Verdict v = contactgeo::is_normal(b.structure(a), sm, tol);
    v.check.id = "N1 phi" + std::to_string(a);
    v.check.identity = "N1 of phi_" + std::to_string(a) + " vanishes";
    append_verdict(out, v);
  }
  Check l2 = lemma2_residual(b.structure(3), sm, tol);
  l2.id = "lemma2 phi3";
  out.push_back(l2);
  const Assessment leg = is_legendrian(b, sm, tol);
  append_assessment(out, leg, "legendrian");
  if (leg.value) append(out, check_legendrian_consequences(b, sm, tol));
  append_assessment(out, is_integrable(b, sm, tol), "integrable");
  append_assessment(out, is_normal(b, sm, tol), "normal");
  return out;
}

std::vector<Check> connections_theorem(const Session& s) {
  const BiParacontact& b = s.bipara();
  std::vector<Check> out;
  for (int a = 1; a <= 3; ++a) {
    const std::string tag = "nabla" + std::to_string(a) + ": ";
    append(out, check_nabla_alpha(b, a, s.nabla(a), s.samples(), s.tol()), tag);
    if (a < 3 && s.integrable()) {
      Check c = check_nabla_xi_projection(b, a, s.nabla(a), s.samples(), s.tol());
      c.id = tag + c.id;
      out.push_back(c);
    }
  }
  return out;
}

std::vector<Check> canonical_connection(const Session& s) {
  const BiParacontact& b = s.bipara();
  const auto& sm = s.samples();
  const double tol = s.tol();
  std::vector<Check> out;
  append(out, check_nabla_c(b, s.nc(), sm, tol));
  out.push_back(compare_connections(s.nc(), nabla_c_explicit(b), Tensor11Field::identity(b.model()),
                                    sm, tol, "nablac explicit",
                                    "barycenter of nabla^1..3 = explicit nabla^c formula"));
  if (s.normal()) {
    out.push_back(torsion_is_d_eta(s.nc(), b, sm, tol));
    const Tensor11Field id = Tensor11Field::identity(b.model());
    for (int a = 1; a <= 3; ++a) {
      const std::string k = std::to_string(a);
      out.push_back(compare_connections(s.nabla(a), s.nc(), id, sm, tol, "nabla" + k + " = nablac",
                                        "normal case: nabla^" + k + " = nabla^c"));
    }
    // Flatness is a fact of the model, not of the theorem.
    Check f = curvature_vanishes(s.nc(), sm, tol);
    f.informational = true;
    out.push_back(f);
    append(out, normal_case_checks(b, s.nc(), sm, tol));
  }
  return out;
}

std::vector<Check> normal_corollaries(const Session& s) {
  if (!s.normal()) throw NotApplicable("the bi-paracontact structure is not normal");
  std::vector<Check> out;
  out.push_back(torsion_is_d_eta(s.nc(), s.bipara(), s.samples(), s.tol()));
  append(out, normal_case_checks(s.bipara(), s.nc(), s.samples(), s.tol()));
  return out;
}

std::vector<Check> kappa_mu_core(const Session& s) {
  const KappaMu& k = s.kappa_mu();
  const auto& sm = s.samples();
  const double tol = s.tol();
  std::vector<Check> out;
  append(out, k.checks());
  const NullityFit fit = fit_nullity(k.structure(), k.levi_civita(), sm);
  const double ft = std::max(tol, 1e-8);
  out.push_back(scalar_check("kappa fit", "fitted kappa = declared kappa", std::abs(fit.kappa - k.kappa()),
                             ft, "fitted " + num(fit.kappa)));
  out.push_back(scalar_check("mu fit", "fitted mu = declared mu",
                             fit.mu ? std::abs(*fit.mu - k.mu()) : INFINITY, ft,
                             fit.mu ? "fitted " + num(*fit.mu) : "mu undetermined"));
  out.push_back(h_spectrum(k, sm, tol));
  append(out, h_properties(k.structure().base(), &k.structure().g(), sm, tol));
  append(out, check_integrability_condition(k.structure(), k.levi_civita(), sm, tol));
  out.push_back(check_reeb_gradient(k.structure(), k.levi_civita(), sm, tol));
  Check bx = scalar_check("boeckx", "I_M = (1 - mu/2) / sqrt(1 - kappa)", 0.0, tol,
                          "I_M = " + num(k.boeckx()) + ", lambda = " + num(k.lambda()));
  bx.informational = true;
  out.push_back(bx);
  return out;
}

std::vector<Check> main1(const Session& s) {
  const KappaMu& k = s.kappa_mu();
  const BiParacontact& b = s.bipara();
  const auto& sm = s.samples();
  const double tol = s.tol();
  std::vector<Check> out;
  append(out, s.split().checks);
  append(out, check_standard_h(k, b, sm, tol));
  const Assessment leg = is_legendrian(b, sm, tol);
  out.push_back(boolean_check("standard legendrian", "the standard structure is Legendrian", leg.value));
  const Assessment in = is_integrable(b, sm, tol);
  out.push_back(boolean_check("standard integrable", "the standard structure is integrable", in.value));
  append(out, in.checks);
  append(out, pang_bridge(k, s.split(), sm, tol));
  return out;
}

std::vector<Check> indotte(const Session& s) {
  const KappaMu& k = s.kappa_mu();
  const BiParacontact& b = s.bipara();
  const Induced& ind = s.induced();
  const auto& sm = s.samples();
  const double tol = s.tol();
  std::vector<Check> out;
  append(out, verify_indotte(k, b, ind, sm, tol).checks);
  int n = 1;
  for (const auto* ms : {&ind.g1, &ind.g2}) {
    const std::string tag = "g" + std::to_string(n) + ": ";
    const Connection& lc = n == 1 ? ind.lc1 : ind.lc2;
    append(out, check_integrability_condition(*ms, lc, sm, tol), tag);
    Check rg = check_reeb_gradient(*ms, lc, sm, tol);
    rg.id = tag + rg.id;
    out.push_back(rg);
    const Connection pc = paracontact_canonical(*ms, lc, sm, tol);
    append(out, check_paracontact_canonical(*ms, lc, pc, sm, tol), tag + "pc ");
    ++n;
  }
  return out;
}

std::vector<Check> connessioni(const Session& s) {
  const KappaMu& k = s.kappa_mu();
  std::vector<Check> out;
  append(out, connection_identifications(k, s.bipara(), s.split(), s.induced(), s.samples(), s.tol()));
  out.push_back(check_canonical_torsion(k, s.bipara(), s.nc(), s.samples(), s.tol()));
  return out;
}

std::vector<Check> main3(const Session& s) {
  const BiParacontact& b = s.bipara();
  Main3Report rep;
  try {
    rep = main3_reconstruction(b, s.samples(), s.tol());
  } catch (const PreconditionError& e) {
    throw Skip(e.what());
  }
  std::vector<Check> out = rep.checks;
  if (s.model().has_kappa_mu()) {
    const KappaMu& k = s.model().kappa_mu();
    const double ft = std::max(s.tol(), 1e-7);
    out.push_back(scalar_check("kappa_3 declared", "fitted kappa_3 = declared kappa",
                               std::abs(rep.fit3.kappa - k.kappa()), ft, "fitted " + num(rep.fit3.kappa)));
    out.push_back(scalar_check("mu_3 declared", "fitted mu_3 = declared mu",
                               rep.fit3.mu ? std::abs(*rep.fit3.mu - k.mu()) : INFINITY, ft,
                               rep.fit3.mu ? "fitted " + num(*rep.fit3.mu) : "mu undetermined"));
  }
  return out;
}

std::vector<Check> main4(const Session& s) {
  const KappaMu& k = s.kappa_mu();
  if (std::abs(std::abs(k.boeckx()) - 1.0) <= 1e-12) throw Skip("I_M = ±1");
  Main4Report rep = main4_supplementary(k, s.samples(), s.tol());
  std::vector<Check> out;
  out.push_back(scalar_check("branch", "|I_M| > 1 gives branch 1, |I_M| < 1 branch 2", 0.0, 0.5,
                             "branch " + std::to_string(rep.branch)));
  out.back().informational = true;
  append(out, rep.checks);
  return out;
}

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"contact-basics", contact_basics},
      {"structures", structures},
      {"bipara-axioms", bipara_axioms},
      {"connections-theorem", connections_theorem},
      {"canonical-connection", canonical_connection},
      {"normal-corollaries", normal_corollaries},
      {"kappa-mu-core", kappa_mu_core},
      {"main1", main1},
      {"indotte", indotte},
      {"connessioni", connessioni},
      {"main3", main3},
      {"main4", main4},
  };
  return r;
}

// ─── JSON ───

nlohmann::json sig3(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return std::stod(buf);
}

nlohmann::json point_json(const Point& p) {
  nlohmann::json j;
  j["sample"] = p.sample;
  nlohmann::json x = nlohmann::json::array();
  for (double v : p.x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    x.push_back(std::stod(buf));
  }
  j["x"] = x;
  return j;
}

}  // namespace

std::string to_string(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::Pass: return "pass";
    case SuiteStatus::Fail: return "fail";
    case SuiteStatus::Skipped: return "skipped";
  }
  return "unknown";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  if (name == "all") return true;
  for (const auto& n : suite_names())
    if (n == name) return true;
  return false;
}

std::vector<SuiteReport> run_suites(const std::string& suite, const ModelPack& pack,
                                    const RunOptions& opts) {
  if (!is_suite(suite)) throw DomainError("unknown suite '" + suite + "'");
  if (opts.samples < 1) throw DomainError("at least one sample is needed");
  const bool all = suite == "all";
  const Session session(pack, opts);
  std::vector<SuiteReport> out;
  for (const auto& [name, fn] : registry()) {
    if (!all && name != suite) continue;
    SuiteReport r;
    r.suite = name;
    r.model = pack.name;
    r.seed = opts.seed;
    r.samples = opts.samples;
    r.tolerance = session.tol();
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.checks = fn(session);
      if (opts.tol)
        for (auto& c : r.checks)
          if (c.exact) c.tolerance = *opts.tol;
      r.status = all_pass(r.checks) ? SuiteStatus::Pass : SuiteStatus::Fail;
      if (const Check* f = first_failure(r.checks)) r.reason = "failed: " + f->id;
    } catch (const NotApplicable& e) {
      r.status = all ? SuiteStatus::Skipped : SuiteStatus::Fail;
      r.reason = e.what();
    } catch (const Skip& e) {
      r.status = SuiteStatus::Skipped;
      r.reason = e.what();
    } catch (const GeometryError& e) {
      r.status = SuiteStatus::Fail;
      r.reason = e.what();
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

bool all_passed(const std::vector<SuiteReport>& reports) {
  for (const auto& r : reports)
    if (r.status == SuiteStatus::Fail) return false;
  return true;
}

std::string reports_json(const std::vector<SuiteReport>& reports, bool include_time) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["suite"] = r.suite;
    j["model"] = r.model;
    j["status"] = to_string(r.status);
    if (!r.reason.empty()) j["reason"] = r.reason;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["tolerance"] = r.tolerance;
    if (include_time) j["wall_time_s"] = sig3(r.wall_seconds);
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : r.checks) {
      nlohmann::json k;
      k["id"] = c.id;
      k["anchor"] = c.identity;
      k["residual"] = sig3(c.residual);
      k["tolerance"] = c.tolerance;
      k["pass"] = c.pass;
      if (c.informational) k["informational"] = true;
      if (c.worst) k["worst_point"] = point_json(*c.worst);
      if (!c.note.empty()) k["note"] = c.note;
      cs.push_back(k);
    }
    j["checks"] = cs;
    arr.push_back(j);
  }
  return arr.dump(2);
}

}  // namespace contactgeo
