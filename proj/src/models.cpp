#include "contactgeo/models.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "contactgeo/errors.hpp"

namespace contactgeo {

namespace {

std::string num(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

Check fact_check(std::string id, std::string identity, double declared, double derived,
                 double tol) {
  Check c;
  c.id = std::move(id);
  c.identity = std::move(identity);
  c.residual = std::abs(declared - derived);
  c.tolerance = tol;
  c.pass = c.residual <= tol;
  c.note = "declared " + num(declared) + ", derived " + num(derived);
  return c;
}

void require(const Check& c) {
  if (!c.pass) {
    throw AxiomError("model fact " + c.id + " does not hold: " + c.note);
  }
}

}  // namespace

// ─── LoadedModel ───

LoadedModel::LoadedModel(ModelPack pack, const std::vector<Point>& samples, double tol)
    : pack_(std::move(pack)),
      form_(pack_.eta, samples, tol),
      xi_(pack_.xi ? *pack_.xi : form_.reeb()) {
  if (pack_.xi) {
    Check r = form_.reeb_residual(*pack_.xi, samples, tol);
    r.id = "declared xi";
    require(r);
    checks_.push_back(r);
  }
  if (pack_.phi && pack_.g) {
    contact_.emplace(AlmostContact(*pack_.phi, xi_, pack_.eta, StructureKind::Contact, samples, tol),
                     *pack_.g, samples, tol);
    Check a = contact_->associated(samples, tol);
    require(a);
    checks_.push_back(a);
  }
  const ExpectedFacts& f = pack_.facts;
  if (f.kappa) {
    if (!contact_) throw PreconditionError("kappa declared without a contact metric structure");
    kappa_mu_.emplace(*contact_, *f.kappa, f.mu.value_or(0.0), samples, tol);
    for (const auto& c : kappa_mu_->checks()) {
      require(c);
      checks_.push_back(c);
    }
    if (!kappa_mu_->sasakian()) {
      // lambda re-derived as the largest eigenvalue of h.
      const Tensor11Field h = kappa_mu_->h();
      double top = 0;
      for (const auto& p : samples) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(h.at(p));
        for (int i = 0; i < es.eigenvalues().size(); ++i)
          top = std::max(top, es.eigenvalues()[i].real());
      }
      Check lc = fact_check("lambda", "largest eigenvalue of h = sqrt(1 - kappa)",
                            kappa_mu_->lambda(), top, tol * 10);
      require(lc);
      checks_.push_back(lc);
    }
  }
  if (pack_.phi1 && pack_.phi2) {
    bipara_.emplace(*pack_.phi1, *pack_.phi2, xi_, form_, samples, tol);
  } else if (kappa_mu_ && !kappa_mu_->sasakian()) {
    bipara_.emplace(standard_bipara(*kappa_mu_, samples, tol));
  }
  if (f.normal) {
    if (!bipara_) throw PreconditionError("normality declared without a bi-paracontact structure");
    const bool normal = is_normal(*bipara_, samples, tol).value;
    Check c = fact_check("normal", "declared normality of the bi-paracontact structure",
                         *f.normal ? 1.0 : 0.0, normal ? 1.0 : 0.0, 0.5);
    c.exact = true;
    require(c);
    checks_.push_back(c);
  }
}

const MetricStructure& LoadedModel::contact_metric() const {
  if (!contact_) throw PreconditionError(name() + " declares no contact metric structure");
  return *contact_;
}

const BiParacontact& LoadedModel::bipara() const {
  if (!bipara_) throw PreconditionError(name() + " declares no bi-paracontact structure");
  return *bipara_;
}

const KappaMu& LoadedModel::kappa_mu() const {
  if (!kappa_mu_) throw PreconditionError(name() + " is not a declared (kappa, mu)-space");
  return *kappa_mu_;
}

// ─── Darboux ───

ModelPack darboux(int n) {
  if (n < 1) throw DomainError("darboux needs n >= 1");
  const int d = 2 * n + 1;
  const int z = 2 * n;
  auto x = [](int i) { return i; };
  auto y = [n](int i) { return n + i; };
  const ModelPtr m = Model::chart("darboux:n=" + std::to_string(n), d);
  auto coord = [d](int a, double c = 1.0) { return Polynomial::coordinate(d, a, c); };

  ComponentData eta(d, Polynomial(0.0));
  for (int i = 0; i < n; ++i) eta[x(i)] = coord(y(i), -1.0);
  eta[z] = 1.0;

  ComponentData xi(d, Polynomial(0.0));
  xi[z] = 1.0;

  // Entry k*d + j is the k-th component of T(E_j).
  auto at = [d](int k, int j) { return k * d + j; };
  ComponentData f1(d * d, Polynomial(0.0)), f2(d * d, Polynomial(0.0)), f3(d * d, Polynomial(0.0));
  for (int i = 0; i < n; ++i) {
    // phi_1: d/dy -> d/dy, d/dx -> -d/dx - y d/dz.
    f1[at(y(i), y(i))] = 1.0;
    f1[at(x(i), x(i))] = -1.0;
    f1[at(z, x(i))] = coord(y(i), -1.0);
    // phi_2: d/dy -> -d/dx - y d/dz, d/dx -> -d/dy.
    f2[at(x(i), y(i))] = -1.0;
    f2[at(z, y(i))] = coord(y(i), -1.0);
    f2[at(y(i), x(i))] = -1.0;
    // phi_3 = phi_1 phi_2: d/dy -> d/dx + y d/dz, d/dx -> -d/dy.
    f3[at(x(i), y(i))] = 1.0;
    f3[at(z, y(i))] = coord(y(i));
    f3[at(y(i), x(i))] = -1.0;
  }

  ComponentData g(d * d, Polynomial(0.0));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) g[at(a, b)] = eta[a] * eta[b];
  for (int a = 0; a < 2 * n; ++a) g[at(a, a)] = g[at(a, a)] + Polynomial(0.5);

  ModelPack p{m->name(),
              m,
              OneForm::polynomial(m, eta, "eta"),
              VectorField::polynomial(m, xi, "xi"),
              Tensor11Field::polynomial(m, f3, "phi"),
              MetricField::polynomial(m, g, "g"),
              Tensor11Field::polynomial(m, f1, "phi1"),
              Tensor11Field::polynomial(m, f2, "phi2"),
              {}};
  p.facts.kappa = 1.0;
  p.facts.normal = true;
  return p;
}

// ─── (kappa, mu) frames ───

ModelPack kappa_mu_frame(double kappa, double mu) {
  if (!(kappa < 1.0)) throw DomainError("kappa_mu_frame needs kappa < 1");
  const double lam = std::sqrt(1.0 - kappa);
  const double a = lam + 1.0 - mu / 2.0;
  const double b = lam - 1.0 + mu / 2.0;
  StructureConstants c(3);
  c.set_bracket(1, 2, {2.0, 0.0, 0.0});
  c.set_bracket(0, 1, {0.0, 0.0, a});
  c.set_bracket(0, 2, {0.0, b, 0.0});
  const std::string name = "kappa-mu:kappa=" + num(kappa) + ",mu=" + num(mu);
  const ModelPtr m = Model::frame(name, 3, c, {"xi", "e", "phi e"});
  Eigen::Matrix3d f;
  f << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  ModelPack p{name,
              m,
              OneForm::constant(m, {1.0, 0.0, 0.0}, "eta"),
              VectorField::constant(m, {1.0, 0.0, 0.0}, "xi"),
              Tensor11Field::constant(m, f, "phi"),
              MetricField::constant(m, Eigen::Matrix3d::Identity(), "g"),
              std::nullopt,
              std::nullopt,
              {}};
  p.facts.kappa = kappa;
  p.facts.mu = mu;
  p.facts.normal = false;
  return p;
}

// ─── Names ───

ModelPack builtin(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  std::map<std::string, double> args;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw DomainError("malformed model argument '" + item + "'");
      try {
        args[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw DomainError("malformed model argument '" + item + "'");
      }
    }
  }
  auto take = [&](const std::string& key, double fallback) {
    auto it = args.find(key);
    if (it == args.end()) return fallback;
    const double v = it->second;
    args.erase(it);
    return v;
  };
  ModelPack p = [&]() {
    if (family == "darboux") {
      const double n = take("n", 2);
      if (n != std::floor(n)) throw DomainError("darboux n must be an integer");
      return darboux(static_cast<int>(n));
    }
    if (family == "kappa-mu") {
      const double k = take("kappa", -8), mu = take("mu", -8);
      return kappa_mu_frame(k, mu);
    }
    throw DomainError("unknown builtin model '" + family + "'");
  }();
  if (!args.empty()) throw DomainError("unknown model argument '" + args.begin()->first + "'");
  return p;
}

std::vector<std::string> builtin_examples() {
  return {"darboux:n=2", "kappa-mu:kappa=-8,mu=-8"};
}

}  // namespace contactgeo
