#include <doctest.h>

#include <random>

#include "contactgeo/bipara.hpp"
#include "contactgeo/connections.hpp"
#include "contactgeo/errors.hpp"
#include "contactgeo/kernel.hpp"
#include "contactgeo/models.hpp"
#include "oracles.hpp"

using namespace contactgeo;

namespace {

struct Fixture {
  explicit Fixture(const std::string& name, int count = 8)
      : pack(builtin(name)), samples(pack.model->samples(count)), tol(pack.model->default_tolerance()),
        loaded(pack, samples, tol) {}
  ModelPack pack;
  std::vector<Point> samples;
  double tol;
  LoadedModel loaded;
  const BiParacontact& b() const { return loaded.bipara(); }
  const ModelPtr& m() const { return pack.model; }
};

VectorField darboux_y(const ModelPtr& m, int n, int i) {
  const int d = 2 * n + 1;
  ComponentData c(d, Polynomial(0.0));
  c[i] = Polynomial(1.0);
  c[d - 1] = Polynomial::coordinate(d, n + i);
  return VectorField::polynomial(m, c);
}

void expect_all_pass(const std::vector<Check>& cs) {
  for (const auto& c : cs) CHECK_MESSAGE(c.pass, c.id << " residual " << c.residual);
}

}  // namespace

// ─── Coefficient representation ───

TEST_CASE("nabla^1 on Darboux obeys the Leibniz rule with a non-constant eta") {
  Fixture f("darboux:n=2");
  const Connection c = nabla_alpha(f.b(), 1);
  std::mt19937_64 rng(29);
  const VectorField x = oracle::random_field(f.m(), rng, 2);
  const VectorField y = darboux_y(f.m(), 2, 0) + oracle::random_field(f.m(), rng, 1);
  const Polynomial s = oracle::random_polynomial(rng, 5, 2);
  const VectorField sy(f.m(), [=](const Point& p) { return s.jet(p.x) * y.jets(p); });
  for (const Point& p : f.samples) {
    const double xs = directional(x.jets(p), s.jet(p.x)).value();
    const Eigen::VectorXd lhs = c.nabla(x, sy, p);
    const Eigen::VectorXd rhs = xs * y.at(p) + s.eval(p.x) * c.nabla(x, y, p);
    CHECK((lhs - rhs).norm() <= 1e-9);
  }
}

TEST_CASE("nabla_X Y matches a finite-difference evaluation of the Christoffel form") {
  Fixture f("darboux:n=2");
  const Connection c = nabla_alpha(f.b(), 2);
  std::mt19937_64 rng(31);
  const VectorField x = oracle::random_field(f.m(), rng, 2);
  const VectorField y = oracle::random_field(f.m(), rng, 2);
  for (const Point& p : f.samples) {
    // nabla_X Y = X(Y^k) E_k + Gamma(X, Y), with X(Y^k) by differences.
    const Eigen::VectorXd xv = x.at(p);
    Eigen::VectorXd dy = Eigen::VectorXd::Zero(5);
    auto fy = [&](const Point& q) { return y.at(q); };
    for (int a = 0; a < 5; ++a) dy += xv(a) * oracle::partial(fy, p, a);
    const Eigen::VectorXd gam = values(c.christoffel(p).apply(x.jets(p), y.jets(p)));
    CHECK((c.nabla(x, y, p) - (dy + gam)).norm() < 1e-8);
  }
}

// ─── Connections of a bi-paracontact structure ───

TEST_CASE("nabla^1, nabla^2, nabla^3 satisfy their defining properties") {
  for (const char* name : {"darboux:n=2", "kappa-mu:kappa=-8,mu=-8", "kappa-mu:kappa=-8,mu=-1"}) {
    CAPTURE(name);
    Fixture f(name);
    for (int a = 1; a <= 3; ++a) {
      const Connection c = nabla_alpha(f.b(), a);
      expect_all_pass(check_nabla_alpha(f.b(), a, c, f.samples, f.tol));
      if (a < 3) CHECK(check_nabla_xi_projection(f.b(), a, c, f.samples, f.tol).pass);
    }
  }
}

TEST_CASE("perturbing a Christoffel symbol breaks the characterising axioms") {
  // Each nabla^a is pinned by its axioms: a shift of delta in any single
  // symbol is visible at the level delta / 2.
  const double delta = 1e-3;
  for (const char* name : {"darboux:n=1", "kappa-mu:kappa=-8,mu=-8"}) {
    CAPTURE(name);
    Fixture f(name, 2);
    const int d = f.m()->dim();
    for (int a = 1; a <= 3; ++a) {
      const Connection c = nabla_alpha(f.b(), a);
      CHECK(axiom_violation(f.b(), a, c, f.samples) <= 1e-10);
      double weakest = 1e300;
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            weakest = std::min(weakest, axiom_violation(f.b(), a, c.perturbed(k, i, j, delta), {f.samples[0]}));
      CHECK(weakest >= delta / 2);
    }
  }
}

TEST_CASE("canonical connection: barycenter agrees with the explicit formula") {
  for (const char* name : {"darboux:n=2", "kappa-mu:kappa=-8,mu=-8", "kappa-mu:kappa=-8,mu=14"}) {
    CAPTURE(name);
    Fixture f(name);
    const Connection nc = nabla_c(f.b());
    const Check c = compare_connections(nc, nabla_c_explicit(f.b()), Tensor11Field::identity(f.m()), f.samples,
                                        1e-9, "explicit", "barycenter = explicit");
    CHECK(c.pass);
    expect_all_pass(check_nabla_c(f.b(), nc, f.samples, f.tol));
  }
}

TEST_CASE("normal Darboux example: T^c = 2 deta xi, R^c = 0 and the three connections coincide") {
  Fixture f("darboux:n=2");
  const Connection nc = nabla_c(f.b());
  for (const Point& p : f.samples) {
    const PairTable t = nc.torsion(p);
    const Eigen::MatrixXd om = f.loaded.form().d_eta_matrix(p);
    const Eigen::VectorXd xi = f.loaded.xi().at(p);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) CHECK((t[i * 5 + j] - 2 * om(i, j) * xi).norm() <= 1e-10);
    for (const auto& r : nc.curvature(p)) CHECK(r.norm() <= 1e-10);
    CHECK(nc.ricci(p).norm() <= 1e-10);
  }
  for (int a = 1; a <= 3; ++a)
    CHECK(compare_connections(nabla_alpha(f.b(), a), nc, Tensor11Field::identity(f.m()), f.samples, 1e-10, "eq", "")
              .pass);
  expect_all_pass(normal_case_checks(f.b(), nc, f.samples, f.tol));
}

TEST_CASE("normal corollaries refuse a non-normal structure") {
  Fixture f("kappa-mu:kappa=-8,mu=-8");
  CHECK_THROWS_AS(normal_case_checks(f.b(), nabla_c(f.b()), f.samples, f.tol), PreconditionError);
}

// ─── Legendre pairs ───

TEST_CASE("Legendre pairs rebuild the Darboux example tensors") {
  Fixture f("darboux:n=2");
  const ModelPtr& m = f.m();
  std::vector<VectorField> xs, ys, minus, plus;
  for (int i = 0; i < 2; ++i) {
    const VectorField x = VectorField::basis(m, 2 + i), y = darboux_y(m, 2, i);
    xs.push_back(x);
    ys.push_back(y);
    minus.push_back(x - y);
    plus.push_back(x + y);
  }
  const VectorField& xi = f.loaded.xi();
  const ContactForm& form = f.loaded.form();
  const LegendrePair first(form, xi, Distribution(m, xs), Distribution(m, ys), f.samples);
  const LegendrePair second(form, xi, Distribution(m, minus), Distribution(m, plus), f.samples);
  const BiParacontact b = BiParacontact::from_bilegendrian_pairs(first, second, f.samples, f.tol);
  const BiParacontact swapped = BiParacontact::from_bilegendrian_pairs(second, first, f.samples, f.tol);
  for (const Point& p : f.samples) {
    for (int a = 1; a <= 3; ++a) CHECK((b.phi(a).at(p) - f.b().phi(a).at(p)).norm() <= 1e-12);
    CHECK((swapped.phi(1).at(p) - b.phi(2).at(p)).norm() <= 1e-12);
    CHECK((swapped.phi(2).at(p) - b.phi(1).at(p)).norm() <= 1e-12);
    CHECK((swapped.phi(3).at(p) + b.phi(3).at(p)).norm() <= 1e-12);
  }
  // The pair (span X, span Y) as a paracontact metric structure, and its
  // canonical connection.
  const MetricStructure ms = first.psi_structure(f.samples, f.tol);
  const Connection lc = levi_civita(ms.g());
  const Connection pc = paracontact_canonical(ms, lc, f.samples, f.tol);
  expect_all_pass(check_paracontact_canonical(ms, lc, pc, f.samples, f.tol));
  expect_all_pass(check_bilegendrian_axioms(nabla_alpha(f.b(), 1), first, f.samples, f.tol));
}

TEST_CASE("a pair that is not transversal is rejected") {
  Fixture f("darboux:n=2");
  const ModelPtr& m = f.m();
  const Distribution l(m, {VectorField::basis(m, 2), VectorField::basis(m, 3)});
  CHECK_THROWS_AS(LegendrePair(f.loaded.form(), f.loaded.xi(), l, l, f.samples), PreconditionError);
}
