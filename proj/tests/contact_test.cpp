#include <doctest.h>

#include <random>

#include "contactgeo/bipara.hpp"
#include "contactgeo/contact.hpp"
#include "contactgeo/errors.hpp"
#include "contactgeo/kernel.hpp"
#include "contactgeo/models.hpp"
#include "contactgeo/structures.hpp"
#include "oracles.hpp"

using namespace contactgeo;

namespace {

struct Darboux {
  ModelPack pack = darboux(2);
  std::vector<Point> samples = pack.model->samples(12);
  ContactForm form{pack.eta, samples};
  const ModelPtr& m() const { return pack.model; }
  VectorField x(int i) const { return VectorField::basis(m(), 2 + i); }
  VectorField y(int i) const {
    ComponentData c(5, Polynomial(0.0));
    c[i] = Polynomial(1.0);
    c[4] = Polynomial::coordinate(5, 2 + i);
    return VectorField::polynomial(m(), c);
  }
  VectorField xi() const { return VectorField::basis(m(), 4); }
  BiParacontact bipara() const { return BiParacontact(*pack.phi1, *pack.phi2, form, samples, 1e-10); }
};

// Five-dimensional Heisenberg frame: [e1, e3] = [e2, e4] = e0.
ModelPtr heisenberg5() {
  StructureConstants c(5);
  c.set_bracket(1, 3, {1, 0, 0, 0, 0});
  c.set_bracket(2, 4, {1, 0, 0, 0, 0});
  return Model::frame("heisenberg5", 5, c);
}

}  // namespace

// ─── Contact form ───

TEST_CASE("deta on the Darboux frame") {
  Darboux d;
  for (const Point& p : d.samples) {
    CHECK(d_eta(d.pack.eta, d.x(0), d.y(0), p) == doctest::Approx(-0.5));
    CHECK(d_eta(d.pack.eta, d.x(0), d.y(1), p) == doctest::Approx(0.0));
    CHECK(d_eta(d.pack.eta, d.xi(), d.y(1), p) == doctest::Approx(0.0));
  }
}

TEST_CASE("Reeb field of eta and of 2 eta") {
  Darboux d;
  const Check r = d.form.reeb_residual(d.xi(), d.samples, 1e-12);
  CHECK(r.pass);
  const OneForm eta2(d.m(), [eta = d.pack.eta](const Point& p) { return Jet(2.0) * eta.jets(p); });
  const ContactForm f2(eta2, d.samples);
  for (const Point& p : d.samples) {
    CHECK((d.form.reeb_at(p) - d.xi().at(p)).norm() < 1e-14);
    CHECK((f2.reeb_at(p) - 0.5 * d.xi().at(p)).norm() < 1e-14);
  }
}

TEST_CASE("contact condition holds for Darboux n = 1, 2, 3 and fails for dz") {
  for (int n = 1; n <= 3; ++n) {
    const ModelPack p = darboux(n);
    CHECK_NOTHROW(ContactForm(p.eta, p.model->samples(8)));
  }
  const ModelPtr m = Model::chart("r3", 3);
  CHECK_THROWS_AS(ContactForm(OneForm::constant(m, {0, 0, 1}), m->samples(4)), NotContactError);
}

TEST_CASE("Legendre predicate") {
  Darboux d;
  const Verdict yes = is_legendre(d.form, Distribution(d.m(), {d.x(0), d.x(1)}), d.samples, 1e-10);
  CHECK(yes.value);
  const Verdict no = is_legendre(d.form, Distribution(d.m(), {d.x(0), d.y(0)}), d.samples, 1e-10);
  CHECK_FALSE(no.value);
  REQUIRE(no.check.worst.has_value());
  CHECK(no.check.residual == doctest::Approx(0.5));
  CHECK_THROWS_AS(is_legendre(d.form, Distribution(d.m(), {d.x(0), d.xi()}), d.samples, 1e-10),
                  PreconditionError);
}

TEST_CASE("involutivity predicate") {
  Darboux d;
  const Distribution diag(d.m(), {d.x(0) - d.y(0), d.x(1) - d.y(1)});
  CHECK(is_involutive(diag, d.samples, 1e-10).value);
  CHECK(is_legendre(d.form, diag, d.samples, 1e-10).value);
  const Verdict no = is_involutive(Distribution(d.m(), {d.x(0), d.y(0)}), d.samples, 1e-10);
  CHECK_FALSE(no.value);
  CHECK(no.check.worst.has_value());
}

TEST_CASE("Pang form of a Legendre foliation with commuting Reeb field is flat") {
  Darboux d;
  const PangReport r = classify_pang(d.form, d.xi(), Distribution(d.m(), {d.x(0), d.x(1)}), d.samples, 1e-10);
  CHECK(r.cls == PangClass::Flat);
  CHECK(r.max_abs == 0.0);
}

// ─── Nijenhuis tensors ───

TEST_CASE("Nijenhuis bracket matches the brute-force expansion") {
  std::mt19937_64 rng(17);
  const ModelPtr m = Model::chart("chart3", 3);
  const Tensor11Field t = oracle::random_tensor(m, rng, 2);
  const VectorField x = oracle::random_field(m, rng, 2);
  const VectorField y = oracle::random_field(m, rng, 2);
  for (const Point& p : m->samples(6)) {
    const Eigen::VectorXd n = values(nijenhuis(*m, t.jets(p), x.jets(p), y.jets(p)));
    CHECK((n - oracle::nijenhuis(t, x, y, p)).norm() < 1e-6);
  }
}

TEST_CASE("Darboux phi_3 on (X1, Y1): brute force and N1 = 0") {
  Darboux d;
  const BiParacontact b = d.bipara();
  const AlmostContact& s3 = b.structure(3);
  for (const Point& p : d.samples) {
    const Eigen::VectorXd brute = oracle::nijenhuis(s3.phi(), d.x(0), d.y(0), p);
    const Eigen::VectorXd n = values(nijenhuis(*d.m(), s3.phi().jets(p), d.x(0).jets(p), d.y(0).jets(p)));
    CHECK((brute - n).norm() < 1e-8);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(n1(s3, d.x(i), d.y(j), p).norm() < 1e-12);
  }
}

TEST_CASE("lemma relating N1, N2 and N3 holds for a random almost contact structure") {
  const ModelPtr m = heisenberg5();
  const auto samples = m->samples(4);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::Matrix4d p;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) p(i, j) = u(rng) + (i == j ? 2.0 : 0.0);
    Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
    j.block<2, 2>(2, 0) = Eigen::Matrix2d::Identity();
    j.block<2, 2>(0, 2) = -Eigen::Matrix2d::Identity();
    Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(5, 5);
    phi.block<4, 4>(1, 1) = p * j * p.inverse();
    const AlmostContact s(Tensor11Field::constant(m, phi), VectorField::constant(m, {1, 0, 0, 0, 0}),
                          OneForm::constant(m, {1, 0, 0, 0, 0}), StructureKind::Contact, samples, 1e-10);
    const Check c = lemma2_residual(s, samples, 1e-10);
    CHECK(c.pass);
    CHECK(c.residual <= 1e-10);
    // The structure is generic, so the identity is not trivially 0 = 0.
    CHECK(n1_table(s, samples[0]).size() == 25);
    double biggest = 0.0;
    for (const auto& v : n1_table(s, samples[0])) biggest = std::max(biggest, v.norm());
    CHECK(biggest > 1e-3);
  }
}

TEST_CASE("almost contact axioms are enforced") {
  Darboux d;
  CHECK_THROWS_AS(AlmostContact(Tensor11Field::identity(d.m()), d.xi(), d.pack.eta, StructureKind::Contact,
                                d.samples, 1e-10),
                  AxiomError);
  CHECK_THROWS_AS(AlmostContact(*d.pack.phi1, d.xi(), d.pack.eta, StructureKind::Contact, d.samples, 1e-10),
                  AxiomError);
  CHECK_NOTHROW(AlmostContact(*d.pack.phi1, d.xi(), d.pack.eta, StructureKind::Paracontact, d.samples, 1e-10));
}

TEST_CASE("Darboux example is K-contact: h vanishes") {
  Darboux d;
  const BiParacontact b = d.bipara();
  for (int a = 1; a <= 3; ++a)
    for (const Point& p : d.samples) CHECK(b.h(a).at(p).norm() <= 1e-14);
}

// ─── Bi-paracontact example ───

TEST_CASE("Darboux eigendistributions") {
  Darboux d;
  const BiParacontact b = d.bipara();
  const Point& probe = d.samples[0];
  const Distribution d1p = b.eigendistribution(1, +1, probe);
  const Distribution d2m = b.eigendistribution(2, -1, probe);
  const Distribution d2p = b.eigendistribution(2, +1, probe);
  for (const Point& p : d.samples) {
    CHECK(d1p.rank_at(p) == 2);
    CHECK(d2m.rank_at(p) == 2);
    for (int i = 0; i < 2; ++i) {
      CHECK(d1p.distance(p, d.x(i).at(p)) < 1e-12);
      CHECK(d2p.distance(p, (d.x(i) - d.y(i)).at(p)) < 1e-12);
      CHECK(d2m.distance(p, (d.x(i) + d.y(i)).at(p)) < 1e-12);
    }
  }
}

TEST_CASE("Darboux example is Legendrian, integrable and normal") {
  Darboux d;
  const BiParacontact b = d.bipara();
  CHECK(is_legendrian(b, d.samples, 1e-10).value);
  CHECK(is_integrable(b, d.samples, 1e-10).value);
  const Assessment n = is_normal(b, d.samples, 1e-10);
  CHECK(n.value);
  for (const auto& c : n.checks) CHECK_MESSAGE(c.pass, c.id);
  for (int a = 1; a <= 3; ++a) CHECK(contactgeo::is_normal(b.structure(a), d.samples, 1e-10).value);
  for (const auto& c : b.properties()) CHECK_MESSAGE(c.pass, c.id);
}

TEST_CASE("non-Legendre splitting is reported with a witness") {
  Darboux d;
  // phi = +1 on span{x(0), y(0)}, -1 on span{x(1), y(1)}: each eigenspace
  // contains a pair with deta(x(i), y(i)) != 0.
  // In coordinates (x1, x2, y1, y2, z): phi d/dx1 = d/dx1 + y1 d/dz,
  // phi d/dx2 = -d/dx2 - y2 d/dz, phi d/dy1 = d/dy1, phi d/dy2 = -d/dy2.
  ComponentData c(25, Polynomial(0.0));
  auto at = [&](int k, int j) -> Polynomial& { return c[k * 5 + j]; };
  at(0, 0) = Polynomial(1.0);
  at(4, 0) = Polynomial::coordinate(5, 2);
  at(1, 1) = Polynomial(-1.0);
  at(4, 1) = Polynomial::coordinate(5, 3, -1.0);
  at(2, 2) = Polynomial(1.0);
  at(3, 3) = Polynomial(-1.0);
  const AlmostContact s(Tensor11Field::polynomial(d.m(), c), d.xi(), d.pack.eta, StructureKind::Paracontact,
                        d.samples, 1e-10);
  const Distribution plus = Distribution::image(para_projector(s, +1), d.samples[0]);
  for (const Point& p : d.samples) {
    CHECK(plus.distance(p, d.x(0).at(p)) < 1e-12);
    CHECK(plus.distance(p, d.y(0).at(p)) < 1e-12);
  }
  const Verdict v = is_legendre(d.form, plus, d.samples, 1e-10);
  CHECK_FALSE(v.value);
  CHECK(v.check.worst.has_value());
}
