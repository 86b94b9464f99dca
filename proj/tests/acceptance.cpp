// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned here.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "contactgeo/affine.hpp"
#include "contactgeo/errors.hpp"
#include "contactgeo/kappa_mu.hpp"
#include "contactgeo/kernel.hpp"
#include "contactgeo/models.hpp"
#include "contactgeo/suites.hpp"
#include "oracles.hpp"

using namespace contactgeo;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// One measured quantity of a criterion.
struct Item {
  std::string what;
  double value = 0.0;
  double limit = 0.0;
  bool ok = false;
};

class Criterion {
 public:
  /// value <= limit.
  void below(std::string what, double value, double limit) {
    items_.push_back({std::move(what), value, limit, std::isfinite(value) && value <= limit});
  }
  void holds(std::string what, bool ok) { items_.push_back({std::move(what), ok ? 1.0 : 0.0, -1.0, ok}); }
  void error(const std::string& what) { holds("error: " + what, false); }
  bool ok() const {
    if (items_.empty()) return false;
    for (const auto& i : items_)
      if (!i.ok) return false;
    return true;
  }
  std::string summary() const {
    std::string out;
    std::string failed;
    char buf[256];
    for (const auto& i : items_) {
      if (i.limit >= 0)
        std::snprintf(buf, sizeof buf, "%s %.3g<=%.0e", i.what.c_str(), i.value, i.limit);
      else
        std::snprintf(buf, sizeof buf, "%s %s", i.what.c_str(), i.ok ? "yes" : "no");
      (i.ok ? out : failed) += std::string(buf) + "; ";
    }
    if (!failed.empty()) return "FAILED: " + failed + "| passed: " + out;
    return out;
  }

 private:
  std::vector<Item> items_;
};

const Check* find(const SuiteReport& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.id == id) return &c;
  return nullptr;
}

double residual(Criterion& c, const SuiteReport& r, const std::string& id) {
  const Check* k = find(r, id);
  if (!k) {
    c.error("no check '" + id + "' in " + r.suite);
    return INFINITY;
  }
  return k->residual;
}

SuiteReport run(const std::string& suite, const ModelPack& p, int samples = kDefaultSamples) {
  RunOptions o;
  o.samples = samples;
  return run_suites(suite, p, o).front();
}

struct Fixture {
  Fixture(double kappa, double mu)
      : pack(kappa_mu_frame(kappa, mu)), samples(pack.model->samples(kDefaultSamples)),
        loaded(pack, samples, 1e-10) {}
  ModelPack pack;
  std::vector<Point> samples;
  LoadedModel loaded;
  const KappaMu& s() const { return loaded.kappa_mu(); }
  const BiParacontact& b() const { return loaded.bipara(); }
};

double max_residual(const std::vector<Check>& cs, const std::string& id) {
  for (const auto& c : cs)
    if (c.id == id) return c.residual;
  return INFINITY;
}

// ─── Criteria ───

void darboux_normality(Criterion& c) {
  const auto t0 = Clock::now();
  const SuiteReport r = run("bipara-axioms", darboux(2));
  const double t = seconds_since(t0);
  for (const char* id : {"N1 phi1", "N1 phi2", "N1 phi3"}) c.below(id, residual(c, r, id), 1e-10);
  c.below("lemma2", residual(c, r, "lemma2 phi3"), 1e-10);
  c.below("runtime s", t, 2.0);
}

void darboux_canonical(Criterion& c) {
  const SuiteReport r = run("canonical-connection", darboux(2));
  c.below("T^c = 2 deta xi", residual(c, r, "nablac torsion normal"), 1e-10);
  c.below("R^c = 0", residual(c, r, "nablac flat"), 1e-10);
  c.below("Ric^c skew", residual(c, r, "Ric skew"), 1e-10);
  c.below("Ric^c = -1/2 tr R^c", residual(c, r, "Ric trace"), 1e-10);
  for (const char* id : {"nabla1 = nablac", "nabla2 = nablac", "nabla3 = nablac"}) c.below(id, residual(c, r, id), 1e-10);
}

void kappa_mu_eigenspaces(Criterion& c) {
  const ModelPack p = kappa_mu_frame(-8, -8);
  const SuiteReport core = run("kappa-mu-core", p);
  const SuiteReport m1 = run("main1", p);
  c.below("nullity", residual(c, core, "nullity"), 1e-9);
  c.below("phi h spectrum {0,3,-3}", residual(c, m1, "phi h spectrum"), 1e-10);
  for (const char* d : {"D_phih(+lambda)", "D_phih(-lambda)"}) {
    c.below(std::string("legendre ") + d, residual(c, m1, std::string("legendre:") + d), 1e-9);
    c.below(std::string("involutive ") + d, residual(c, m1, std::string("involutive:") + d), 1e-9);
  }
  const Check* sums = find(m1, "bi-legendrian sums");
  c.holds("direct sums rank 3", sums && sums->pass && sums->note == "minimal rank 3");
}

void induced_metric_values(Criterion& c) {
  const auto t0 = Clock::now();
  Fixture f(-8, -8);
  const Induced ind = contactgeo::induced_metrics(f.b(), f.samples, 1e-10);
  const IndotteReport r = verify_indotte(f.s(), f.b(), ind, f.samples, 1e-10);
  const double t = seconds_since(t0);
  c.below("|kappa1 - 24|", std::abs(r.fit1.kappa - 24), 1e-7);
  c.below("|mu1 + 4|", r.fit1.mu ? std::abs(*r.fit1.mu + 4) : INFINITY, 1e-7);
  c.below("|kappa2 - 15|", std::abs(r.fit2.kappa - 15), 1e-7);
  c.below("|mu2 - 2|", r.fit2.mu ? std::abs(*r.fit2.mu - 2) : INFINITY, 1e-7);
  c.below("g1 nullity", max_residual(r.checks, "g1 nullity"), 1e-9);
  c.below("g2 nullity", max_residual(r.checks, "g2 nullity"), 1e-9);
  c.holds("g1 signature (2,1)", ind.g1.signature() == Signature{2, 1, 0});
  c.holds("g2 signature (2,1)", ind.g2.signature() == Signature{2, 1, 0});
  c.below("runtime s", t, 5.0);
}

void pang_boeckx(Criterion& c) {
  {
    Fixture f(-8, -8);
    const EigenSplit split = phi_h_eigendecomposition(f.s(), f.samples, 1e-10);
    const std::vector<Check> bridge = pang_bridge(f.s(), split, f.samples, 1e-9);
    for (const char* d : {"D_phih(+lambda)", "D_phih(-lambda)"})
      c.below(std::string("Pi = (10/3) g on ") + d, max_residual(bridge, std::string("pang ") + d), 1e-9);
  }
  struct Row {
    double kappa, mu;
    const char* sign;
    PangClass expect;
  };
  for (const Row& r : {Row{-8, -8, "I_M>0", PangClass::PositiveDefinite}, Row{-8, 2, "I_M=0", PangClass::Flat},
                       Row{-8, 14, "I_M<0", PangClass::NegativeDefinite}}) {
    Fixture f(r.kappa, r.mu);
    const EigenSplit split = phi_h_eigendecomposition(f.s(), f.samples, 1e-10);
    bool ok = true;
    for (const Distribution* d : {&split.phih_plus, &split.phih_minus})
      ok = ok && classify_pang(f.loaded.form(), f.loaded.xi(), *d, f.samples, 1e-10).cls == r.expect;
    c.holds(std::string("class matches ") + r.sign, ok);
    if (r.expect == PangClass::Flat) {
      const Induced ind = contactgeo::induced_metrics(f.b(), f.samples, 1e-10);
      c.holds("g1 para-Sasakian at I_M=0", is_sasakian(ind.g1, ind.lc1, f.samples, 1e-10).value);
    }
  }
}

void connection_agreement(Criterion& c) {
  const SuiteReport r = run("connessioni", kappa_mu_frame(-8, -8));
  double bl2 = 0, bl1 = 0;
  for (const auto& k : r.checks) {
    if (k.id.rfind("nabla2 bl(h): ", 0) == 0) bl2 = std::max(bl2, k.pass ? k.residual : INFINITY);
    if (k.id.rfind("nabla1 bl(phih): ", 0) == 0) bl1 = std::max(bl1, k.pass ? k.residual : INFINITY);
  }
  c.below("nabla2 bi-Legendrian for D_h", bl2, 1e-9);
  c.below("nabla1 bi-Legendrian for D_phih", bl1, 1e-9);
  c.below("S(xi,.) = -phi h", residual(c, r, "S(xi, .)"), 1e-9);
  double agree = 0;
  for (const char* id : {"nabla1 = nablac on D", "nabla2 = nablac on D", "nabla3 = nablac on D"})
    agree = std::max(agree, residual(c, r, id));
  c.below("four connections agree on D", agree, 1e-9);
  c.below("nabla^c deta = 0", residual(c, r, "nablac contact"), 1e-9);
  Fixture f(-8, -8);
  const Eigen::Matrix3d k = canonical_coefficients(f.b(), nabla_c(f.b()), f.samples[0]);
  const double dev = std::max({std::abs(k(0, 1) + 10.0 / 3.0), std::abs(k(1, 0) - 10.0 / 3.0), std::abs(k(1, 2) - 2.0),
                               std::abs(k(2, 1) - 2.0)});
  c.below("coefficients (-10/3, 10/3 & 2, 2)", dev, 1e-8);
}

void main3_round_trip(Criterion& c) {
  Fixture f(-8, -8);
  const Main3Report r = main3_reconstruction(f.b(), f.samples, 1e-9);
  c.below("|a - 10/3| + |b - 2|", std::abs(r.a - 10.0 / 3.0) + std::abs(r.b - 2.0), 1e-9);
  c.below("|kappa3 + 8|", std::abs(r.fit3.kappa + 8), 1e-7);
  c.below("|kappa1 - formula|", std::abs(r.fit1.kappa - r.kappa1), 1e-7);
  c.below("|mu1 - formula|", r.fit1.mu ? std::abs(*r.fit1.mu - r.mu1) : INFINITY, 1e-7);
  c.below("|kappa2 - formula|", std::abs(r.fit2.kappa - r.kappa2), 1e-7);
  c.below("|mu2 - formula|", r.fit2.mu ? std::abs(*r.fit2.mu - r.mu2) : INFINITY, 1e-7);
  c.below("|mu3 - declared mu|", r.fit3.mu ? std::abs(*r.fit3.mu - f.s().mu()) : INFINITY, 1e-7);
  std::printf("    mu3 fitted %.6g, 2 + 3a = %.6g, 2 - 3a = %.6g\n", r.fit3.mu.value_or(NAN), r.mu3_printed,
              r.mu3_alternative);
}

void main4_branch_one(Criterion& c) {
  Fixture f(-8, -8);
  c.below("|I_M - 5/3|", std::abs(f.s().boeckx() - 5.0 / 3.0), 1e-12);
  const Main4Report r = main4_supplementary(f.s(), f.samples, 1e-9);
  c.holds("branch (i)", r.branch == 1);
  double axioms = 0.0;
  if (r.structure) {
    for (int a = 1; a <= 3; ++a)
      for (const auto& k : r.structure->structure(a).axioms()) axioms = std::max(axioms, k.residual);
    for (const auto& k : r.structure->properties()) axioms = std::max(axioms, k.residual);
  } else {
    axioms = INFINITY;
  }
  c.below("bi-paracontact axioms", axioms, 1e-9);
  double integ = 0.0;
  for (const char* id : {"N1 phi1 on D", "N1 phi2 on D", "N1 phi3 on D"}) integ = std::max(integ, max_residual(r.checks, id));
  c.below("integrability", integ, 1e-9);
  c.below("h'1 = -(4/3) h", max_residual(r.checks, "h'1"), 1e-9);
  c.below("h'3 = 0", max_residual(r.checks, "h'3"), 1e-10);
  c.below("N1 phi'3", max_residual(r.checks, "phi'3 normal"), 1e-9);
  c.holds("is_normal = false", r.structure && !is_normal(*r.structure, f.samples, 1e-9).value);
}

void kernel_properties(Criterion& c) {
  std::mt19937_64 rng(0x42195);
  const ModelPtr m = Model::chart("chart3", 3);
  const auto samples = m->samples(16);
  double jac = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const VectorField x = oracle::random_field(m, rng, 3), y = oracle::random_field(m, rng, 3),
                      z = oracle::random_field(m, rng, 3);
    for (const Point& p : samples)
      jac = std::max(jac, (lie_bracket(x, lie_bracket(y, z)).at(p) + lie_bracket(y, lie_bracket(z, x)).at(p) +
                           lie_bracket(z, lie_bracket(x, y)).at(p))
                              .norm());
  }
  c.below("bracket Jacobi", jac, 1e-9);

  for (double last : {2.0, -2.0}) {
    std::vector<Polynomial> sym(9);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        Polynomial q = oracle::random_polynomial(rng, 3, 2) * Polynomial(0.1);
        if (i == j) q = q + Polynomial(i == 2 ? last : 2.0);
        sym[i * 3 + j] = sym[j * 3 + i] = q;
      }
    const MetricField g = MetricField::polynomial(m, sym);
    const Connection lc = levi_civita(g);
    double comp = 0.0, tor = 0.0;
    bool sig = true;
    for (const Point& p : samples) {
      sig = sig && signature(g.at(p)) == (last > 0 ? Signature{3, 0, 0} : Signature{2, 1, 0});
      const Christoffel gam = lc.christoffel(p);
      for (int i = 0; i < 3; ++i) comp = std::max(comp, nabla_bilinear(gam, i, g.jets(p)).cwiseAbs().maxCoeff());
      for (const auto& t : lc.torsion(p)) tor = std::max(tor, t.cwiseAbs().maxCoeff());
    }
    const std::string kind = last > 0 ? "riemannian" : "(2,1)";
    c.holds("signature " + kind, sig);
    c.below("Koszul nabla g " + kind, comp, 1e-9);
    c.below("Koszul torsion " + kind, tor, 1e-9);
  }

  // Central differences of a quartic against its jet at steps 1e-3, 1e-4:
  // the error ratio is 100 for a second-order scheme.
  double worst_ratio = INFINITY, worst_err = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const Polynomial f = oracle::random_polynomial(rng, 3, 4);
    for (const Point& p : samples) {
      const Jet j = f.jet(p.x);
      for (int a = 0; a < 3; ++a) {
        double err[2];
        const double steps[2] = {1e-3, 1e-4};
        for (int s = 0; s < 2; ++s) {
          const double h = steps[s];
          err[s] = std::abs((f.eval(oracle::shifted(p, a, h).x) - f.eval(oracle::shifted(p, a, -h).x)) / (2 * h) - j.d(a));
        }
        worst_err = std::max(worst_err, err[0]);
        if (err[0] > 1e-8) worst_ratio = std::min(worst_ratio, err[0] / err[1]);
      }
    }
  }
  c.below("jet vs FD error at 1e-3", worst_err, 1e-4);
  c.holds("O(step^2) convergence (ratio >= 50)", worst_ratio >= 50.0);
}

void determinism(Criterion& c) {
  for (const ModelPack& p : {darboux(2), kappa_mu_frame(-8, -8)}) {
    const std::string a = reports_json(run_suites("all", p, RunOptions{}), false);
    const std::string b = reports_json(run_suites("all", p, RunOptions{}), false);
    c.holds("identical reports " + p.name, a == b && !a.empty());
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
      {"Darboux normality suite", darboux_normality},
      {"canonical connection on Darboux", darboux_canonical},
      {"(kappa,mu) = (-8,-8) nullity and phi h eigenspaces", kappa_mu_eigenspaces},
      {"induced metrics g1, g2", induced_metric_values},
      {"Pang-Boeckx bridge", pang_boeckx},
      {"connection identifications", connection_agreement},
      {"reconstruction round trip", main3_round_trip},
      {"supplementary structure at I_M = 5/3", main4_branch_one},
      {"kernel properties", kernel_properties},
      {"determinism of verify all", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.error(e.what());
    }
    std::printf("[%s] %zu %s: %s\n", c.ok() ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), c.summary().c_str());
    std::fflush(stdout);
    if (!c.ok()) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
