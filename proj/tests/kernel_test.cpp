#include <doctest.h>

#include <cmath>
#include <random>

#include "contactgeo/affine.hpp"
#include "contactgeo/errors.hpp"
#include "contactgeo/kernel.hpp"
#include "contactgeo/model_io.hpp"
#include "contactgeo/models.hpp"
#include "oracles.hpp"

using namespace contactgeo;

namespace {

// Darboux frame on R^5, coordinates (x1, x2, y1, y2, z).
VectorField darboux_x(const ModelPtr& m, int i) { return VectorField::basis(m, 2 + i); }
VectorField darboux_y(const ModelPtr& m, int i) {
  ComponentData c(5, Polynomial(0.0));
  c[i] = Polynomial(1.0);
  c[4] = Polynomial::coordinate(5, 2 + i);
  return VectorField::polynomial(m, c);
}

ModelPtr chart3() { return Model::chart("chart3", 3); }

}  // namespace

// ─── Jets ───

TEST_CASE("jet derivatives agree with central differences to second order") {
  std::mt19937_64 rng(7);
  const ModelPtr m = chart3();
  for (int trial = 0; trial < 5; ++trial) {
    const Polynomial f = oracle::random_polynomial(rng, 3, 4);
    for (const Point& p : m->samples(6, 100 + trial)) {
      const Jet j = f.jet(p.x);
      CHECK(j.value() == doctest::Approx(f.eval(p.x)).epsilon(1e-14));
      for (int a = 0; a < 3; ++a) {
        double err[2];
        const double steps[2] = {1e-3, 1e-4};
        for (int s = 0; s < 2; ++s) {
          const double h = steps[s];
          const double fd = (f.eval(oracle::shifted(p, a, h).x) - f.eval(oracle::shifted(p, a, -h).x)) / (2 * h);
          err[s] = std::abs(fd - j.d(a));
          for (int b = 0; b < 3; ++b) {
            const double fd2 = (f.jet(oracle::shifted(p, b, h).x).d(a) - f.jet(oracle::shifted(p, b, -h).x).d(a)) / (2 * h);
            CHECK(std::abs(fd2 - j.dd(a, b)) < 50 * h * h);
          }
        }
        CHECK(err[0] < 50 * 1e-6);
        // O(step^2): ten times smaller step, about a hundred times smaller
        // error, unless both are already at rounding level.
        if (err[0] > 1e-9) CHECK(err[1] < err[0] / 50);
      }
    }
  }
}

TEST_CASE("jet arithmetic tracks order and degree") {
  const Jet x = Jet::coordinate(0, 0.5);
  const Jet y = Jet::coordinate(1, -0.25);
  const Jet p = x * x * y;
  CHECK(p.degree() == 3);
  CHECK(p.value() == doctest::Approx(-0.0625));
  CHECK(p.d(0) == doctest::Approx(2 * 0.5 * -0.25));
  CHECK(p.dd(0, 1) == doctest::Approx(1.0));
  const Jet q = (x * y).derivative(0);
  CHECK(q.complete());
  CHECK(q.d(1) == doctest::Approx(1.0));
  const Jet once = p.derivative(0);
  CHECK(once.order() == 1);
  CHECK_THROWS_AS(once.derivative(1).derivative(0), JetOrderError);
  const Jet r = Jet(1.0) / (Jet(2.0) + x);
  CHECK(r.d(0) == doctest::Approx(-1.0 / (2.5 * 2.5)));
  CHECK(r.dd(0, 0) == doctest::Approx(2.0 / (2.5 * 2.5 * 2.5)));
}

// ─── Brackets ───

TEST_CASE("Darboux brackets: [xi, X1] = 0 and [X1, Y1] = xi against finite differences") {
  const ModelPack d = darboux(2);
  const ModelPtr& m = d.model;
  const VectorField x1 = darboux_x(m, 0), y1 = darboux_y(m, 0), xi = VectorField::basis(m, 4);
  for (const Point& p : m->samples(10)) {
    CHECK(lie_bracket(xi, x1, p).norm() == 0.0);
    const Eigen::VectorXd b = lie_bracket(x1, y1, p);
    CHECK((b - xi.at(p)).norm() < 1e-14);
    CHECK((oracle::bracket(x1, y1, p) - b).norm() < 1e-8);
  }
}

TEST_CASE("frame brackets reproduce the structure constants") {
  const ModelPack k = kappa_mu_frame(-8, -8);
  const ModelPtr& m = k.model;
  const Point p = m->samples(1).front();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Eigen::VectorXd b = lie_bracket(VectorField::basis(m, i), VectorField::basis(m, j), p);
      for (int c = 0; c < 3; ++c) CHECK(b(c) == m->c(i, j, c));
    }
}

TEST_CASE("bracket is antisymmetric, satisfies Jacobi and Leibniz on random polynomial fields") {
  std::mt19937_64 rng(11);
  const ModelPtr m = chart3();
  for (int trial = 0; trial < 4; ++trial) {
    const VectorField x = oracle::random_field(m, rng, 3);
    const VectorField y = oracle::random_field(m, rng, 3);
    const VectorField z = oracle::random_field(m, rng, 3);
    const Polynomial f = oracle::random_polynomial(rng, 3, 3);
    const VectorField fy(m, [=](const Point& p) { return f.jet(p.x) * y.jets(p); });
    for (const Point& p : m->samples(8, 200 + trial)) {
      CHECK((lie_bracket(x, y, p) + lie_bracket(y, x, p)).norm() <= 1e-12);
      const Eigen::VectorXd jac = lie_bracket(x, lie_bracket(y, z)).at(p) +
                                  lie_bracket(y, lie_bracket(z, x)).at(p) +
                                  lie_bracket(z, lie_bracket(x, y)).at(p);
      CHECK(jac.norm() <= 1e-9);
      const double xf = directional(x.jets(p), f.jet(p.x)).value();
      const Eigen::VectorXd leib = lie_bracket(x, fy, p) - xf * y.at(p) - f.eval(p.x) * lie_bracket(x, y, p);
      CHECK(leib.norm() <= 1e-9);
      CHECK((oracle::bracket(x, y, p) - lie_bracket(x, y, p)).norm() < 1e-7);
    }
  }
}

TEST_CASE("jacobi_check on frame models") {
  SUBCASE("abelian") {
    const ModelPtr m = Model::frame("abelian", 3, StructureConstants(3));
    const Check c = jacobi_check(*m);
    CHECK(c.pass);
    CHECK(c.residual == 0.0);
  }
  SUBCASE("Heisenberg") {
    StructureConstants c(3);
    c.set_bracket(1, 2, {1, 0, 0});
    const Check r = jacobi_check(*Model::frame("heisenberg", 3, c));
    CHECK(r.pass);
    CHECK(r.residual == 0.0);
  }
  SUBCASE("perturbed constants violate Jacobi") {
    StructureConstants c(3);
    c.set_bracket(1, 2, {2, 0, 0});
    c.set_bracket(0, 1, {0, 0, 8});
    c.set_bracket(0, 2, {0, -2, 0.1});
    const Check r = jacobi_check(*Model::frame("broken", 3, c), 1e-9);
    CHECK_FALSE(r.pass);
    CHECK(r.residual > 1e-9);
  }
  SUBCASE("chart models are unsupported") { CHECK_THROWS_AS(jacobi_check(*chart3()), UnsupportedError); }
}

// ─── Contractions ───

TEST_CASE("contractions on Darboux") {
  const ModelPack d = darboux(2);
  const ModelPtr& m = d.model;
  const VectorField x1 = darboux_x(m, 0), xi = VectorField::basis(m, 4);
  std::mt19937_64 rng(3);
  const VectorField v = oracle::random_field(m, rng, 2);
  for (const Point& p : m->samples(5)) {
    CHECK(oneform_eval(d.eta, xi, p) == doctest::Approx(1.0));
    CHECK(oneform_eval(d.eta, x1, p) == 0.0);
    CHECK((tensor_apply(Tensor11Field::identity(m), v).at(p) - v.at(p)).norm() == 0.0);
  }
  const Point outside{{5, 0, 0, 0, 0}, -1};
  CHECK_THROWS_AS(oneform_eval(d.eta, xi, outside), DomainError);
}

// ─── Levi-Civita ───

namespace {

MetricField random_metric(const ModelPtr& m, std::mt19937_64& rng, const Eigen::Vector3d& diag) {
  std::vector<Polynomial> sym(9);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      Polynomial p = oracle::random_polynomial(rng, 3, 2) * Polynomial(0.1);
      if (i == j) p = p + Polynomial(diag(i));
      sym[i * 3 + j] = p;
      sym[j * 3 + i] = p;
    }
  return MetricField::polynomial(m, sym);
}

void check_levi_civita(const MetricField& g, Signature expect) {
  const Connection lc = levi_civita(g);
  const ModelPtr& m = g.model();
  for (const Point& p : m->samples(8)) {
    CHECK(signature(g.at(p)) == expect);
    const Christoffel gam = lc.christoffel(p);
    double comp = 0.0, tor = 0.0;
    for (int i = 0; i < 3; ++i) comp = std::max(comp, nabla_bilinear(gam, i, g.jets(p)).cwiseAbs().maxCoeff());
    for (const auto& t : lc.torsion(p)) tor = std::max(tor, t.cwiseAbs().maxCoeff());
    CHECK(comp <= 1e-9);
    CHECK(tor <= 1e-9);
  }
}

}  // namespace

TEST_CASE("Koszul output is metric and torsion free for Riemannian and (2,1) metrics") {
  std::mt19937_64 rng(5);
  const ModelPtr m = chart3();
  check_levi_civita(random_metric(m, rng, {2, 2, 2}), Signature{3, 0, 0});
  check_levi_civita(random_metric(m, rng, {2, 2, -2}), Signature{2, 1, 0});
}

TEST_CASE("Levi-Civita on a frame model has the Koszul constants") {
  const ModelPack k = kappa_mu_frame(-8, -8);
  const Connection lc = levi_civita(*k.g);
  const Point p = k.model->samples(1).front();
  const Christoffel g = lc.christoffel(p);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int c = 0; c < 3; ++c) {
        const double koszul = 0.5 * (k.model->c(i, j, c) - k.model->c(i, c, j) - k.model->c(j, c, i));
        CHECK(g(c, i, j).value() == doctest::Approx(koszul).epsilon(1e-14));
      }
}

TEST_CASE("degenerate metric is rejected") {
  const ModelPtr m = chart3();
  Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
  g(2, 2) = 0.0;
  const Connection lc = levi_civita(MetricField::constant(m, g));
  CHECK_THROWS_AS(lc.christoffel(m->samples(1).front()), NondegeneracyError);
}

// ─── Model files ───

TEST_CASE("model file round trip") {
  for (const char* name : {"darboux:n=2", "kappa-mu:kappa=-8,mu=-8"}) {
    CAPTURE(name);
    const ModelPack a = builtin(name);
    const std::string text = export_model(a);
    const ModelPack b = parse_model(text);
    CHECK(export_model(b) == text);
    for (const Point& p : a.model->samples(4)) {
      CHECK((a.eta.at(p) - b.eta.at(p)).norm() == 0.0);
      CHECK((a.phi->at(p) - b.phi->at(p)).norm() == 0.0);
      CHECK((a.g->at(p) - b.g->at(p)).norm() == 0.0);
    }
  }
}

TEST_CASE("model file errors") {
  CHECK_THROWS_AS(parse_model("{"), ModelFileError);
  CHECK_THROWS_AS(parse_model(R"({"kind":"chart","dim":3})"), ModelFileError);
  CHECK_THROWS_AS(parse_model(R"({"kind":"chart","dim":4,"eta":[0,0,0,1]})"), ModelFileError);
  CHECK_THROWS_AS(parse_model(R"({"kind":"frame","dim":3,"c":[[0,0,1,1]],"eta":[1,0,0]})"), ModelFileError);
  CHECK_THROWS_AS(parse_model(R"({"kind":"frame","dim":3,"eta":[[1,[1]],0,0]})"), ModelFileError);
  CHECK_THROWS_AS(read_model_file("/nonexistent/model.json"), ModelFileError);
  const ModelPack p = parse_model(R"({"name":"h","kind":"chart","dim":3,"eta":[[[-1,[0,1]]],0,1]})");
  const Point q{{0.5, 0.25, 0.0}, 0};
  CHECK(p.eta.at(q)(0) == doctest::Approx(-0.25));
}
