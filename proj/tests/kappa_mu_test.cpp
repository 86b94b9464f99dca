#include <doctest.h>

#include <cmath>

#include "contactgeo/errors.hpp"
#include "contactgeo/kappa_mu.hpp"
#include "contactgeo/models.hpp"

using namespace contactgeo;

namespace {

struct KM {
  KM(double kappa, double mu)
      : pack(kappa_mu_frame(kappa, mu)), samples(pack.model->samples(4)), loaded(pack, samples, 1e-10) {}
  ModelPack pack;
  std::vector<Point> samples;
  LoadedModel loaded;
  const KappaMu& s() const { return loaded.kappa_mu(); }
  const BiParacontact& b() const { return loaded.bipara(); }
};

const Check& find(const std::vector<Check>& cs, const std::string& id) {
  for (const auto& c : cs)
    if (c.id == id) return c;
  FAIL("no check " << id);
  throw std::logic_error("unreachable");
}

void expect_all_pass(const std::vector<Check>& cs) {
  for (const auto& c : cs)
    if (!c.informational) CHECK_MESSAGE(c.pass, c.id << " residual " << c.residual);
}

}  // namespace

TEST_CASE("frame constants match the sympy oracle") {
  // tools/oracles/kappa_mu_frame.py -8 -8 -8 2 -8 -1 -8 14 0 0
  struct Row {
    double kappa, mu, a, b;
  };
  for (const Row& r : {Row{-8, -8, 8, -2}, Row{-8, 2, 3, 3}, Row{-8, -1, 4.5, 1.5}, Row{-8, 14, -3, 9}, Row{0, 0, 2, 0}}) {
    const ModelPack p = kappa_mu_frame(r.kappa, r.mu);
    CHECK(p.model->c(1, 2, 0) == 2.0);
    CHECK(p.model->c(0, 1, 2) == doctest::Approx(r.a).epsilon(1e-15));
    CHECK(p.model->c(0, 2, 1) == doctest::Approx(r.b).epsilon(1e-15));
  }
  CHECK_THROWS_AS(kappa_mu_frame(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(builtin("kappa-mu:kappa=2"), DomainError);
}

TEST_CASE("(kappa, mu) = (-8, -8): nullity, lambda, Boeckx invariant, fitted values") {
  KM k(-8, -8);
  expect_all_pass(k.s().checks());
  CHECK(k.s().lambda() == doctest::Approx(3.0));
  CHECK(k.s().boeckx() == doctest::Approx(5.0 / 3.0));
  const NullityFit fit = fit_nullity(k.s().structure(), k.s().levi_civita(), k.samples);
  CHECK(fit.kappa == doctest::Approx(-8).epsilon(1e-12));
  REQUIRE(fit.mu.has_value());
  CHECK(*fit.mu == doctest::Approx(-8).epsilon(1e-12));
  CHECK_FALSE(verify_nullity(k.s().structure(), k.s().levi_civita(), -8, -7.9, k.samples, 1e-9).pass);
}

TEST_CASE("eigendistributions of h and phi h") {
  KM k(-8, -8);
  const EigenSplit split = phi_h_eigendecomposition(k.s(), k.samples, 1e-10);
  expect_all_pass(split.checks);
  const Point& p = k.samples[0];
  const Eigen::MatrixXd fh = (k.pack.phi->at(p) * k.s().h().at(p));
  Eigen::VectorXd ev = fh.eigenvalues().real();
  std::sort(ev.data(), ev.data() + ev.size());
  CHECK(ev(0) == doctest::Approx(-3));
  CHECK(ev(1) == doctest::Approx(0).epsilon(1e-12));
  CHECK(ev(2) == doctest::Approx(3));
}

TEST_CASE("standard bi-paracontact structure and its h tensors") {
  KM k(-8, -8);
  expect_all_pass(check_standard_h(k.s(), k.b(), k.samples, 1e-10));
  CHECK(is_legendrian(k.b(), k.samples, 1e-10).value);
  CHECK(is_integrable(k.b(), k.samples, 1e-10).value);
  CHECK_FALSE(is_normal(k.b(), k.samples, 1e-10).value);
}

TEST_CASE("induced paracontact metrics") {
  KM k(-8, -8);
  const Induced ind = induced_metrics(k.b(), k.samples, 1e-10);
  const IndotteReport r = verify_indotte(k.s(), k.b(), ind, k.samples, 1e-10);
  expect_all_pass(r.checks);
  CHECK(r.fit1.kappa == doctest::Approx(24).epsilon(1e-12));
  CHECK(*r.fit1.mu == doctest::Approx(-4).epsilon(1e-12));
  CHECK(r.fit2.kappa == doctest::Approx(15).epsilon(1e-12));
  CHECK(*r.fit2.mu == doctest::Approx(2).epsilon(1e-12));
  CHECK(ind.g1.signature() == Signature{2, 1, 0});
  CHECK(ind.g2.signature() == Signature{2, 1, 0});
}

TEST_CASE("I_M = 0 makes g_1 para-Sasakian") {
  KM k(-8, 2);
  CHECK(k.s().boeckx() == doctest::Approx(0.0));
  const Induced ind = induced_metrics(k.b(), k.samples, 1e-10);
  CHECK(is_sasakian(ind.g1, ind.lc1, k.samples, 1e-10).value);
  const IndotteReport r = verify_indotte(k.s(), k.b(), ind, k.samples, 1e-10);
  expect_all_pass(r.checks);
  // h_1 = -I_M h vanishes, so mu_1 is not determined by the curvature.
  CHECK_FALSE(r.fit1.mu.has_value());
}

TEST_CASE("Pang form on D_phih(+-lambda) and its sign") {
  // Frozen from a direct evaluation of 2 deta([xi, X], X') on the frame
  // model: the form equals (2 - mu) g = 2 lambda I_M g there.
  struct Row {
    double kappa, mu;
    PangClass cls;
  };
  for (const Row& r : {Row{-8, -8, PangClass::PositiveDefinite}, Row{-8, 2, PangClass::Flat},
                       Row{-8, 14, PangClass::NegativeDefinite}, Row{0, 0, PangClass::PositiveDefinite}}) {
    CAPTURE(r.kappa);
    CAPTURE(r.mu);
    KM k(r.kappa, r.mu);
    const EigenSplit split = phi_h_eigendecomposition(k.s(), k.samples, 1e-10);
    for (const Distribution* f : {&split.phih_plus, &split.phih_minus}) {
      const PangReport rep = classify_pang(k.loaded.form(), k.loaded.xi(), *f, k.samples, 1e-10);
      CHECK(rep.cls == r.cls);
      const Eigen::MatrixXd basis = f->basis_at(k.samples[0]);
      const Eigen::MatrixXd g = basis.transpose() * k.pack.g->at(k.samples[0]) * basis;
      CHECK((rep.gram - (2.0 - r.mu) * g).norm() <= 1e-9);
    }
    const std::vector<Check> bridge = pang_bridge(k.s(), split, k.samples, 1e-9);
    CHECK(find(bridge, "pang class D_phih(+lambda)").pass);
    CHECK(find(bridge, "pang D_phih(+lambda) observed").residual <= 1e-9);
    // 2 I_M g agrees only when lambda = 1 or I_M = 0.
    CHECK(find(bridge, "pang D_phih(+lambda)").pass == (k.s().lambda() == 1.0 || k.s().boeckx() == 0.0));
  }
}

TEST_CASE("connection identifications and canonical torsion") {
  KM k(-8, -8);
  const EigenSplit split = phi_h_eigendecomposition(k.s(), k.samples, 1e-10);
  const Induced ind = induced_metrics(k.b(), k.samples, 1e-10);
  expect_all_pass(connection_identifications(k.s(), k.b(), split, ind, k.samples, 1e-9));
  const Connection nc = nabla_c(k.b());
  CHECK(check_canonical_torsion(k.s(), k.b(), nc, k.samples, 1e-10).pass);
  const Eigen::Matrix3d c = canonical_coefficients(k.b(), nc, k.samples[0]);
  CHECK(c(0, 1) == doctest::Approx(-10.0 / 3.0));
  CHECK(c(1, 0) == doctest::Approx(10.0 / 3.0));
  CHECK(c(1, 2) == doctest::Approx(2.0));
  CHECK(c(2, 1) == doctest::Approx(2.0));
  CHECK(std::abs(c(0, 0)) + std::abs(c(0, 2)) + std::abs(c(1, 1)) + std::abs(c(2, 0)) + std::abs(c(2, 2)) < 1e-12);
}

TEST_CASE("reconstruction from the canonical connection") {
  KM k(-8, -8);
  const Main3Report r = main3_reconstruction(k.b(), k.samples, 1e-9);
  expect_all_pass(r.checks);
  CHECK(r.a == doctest::Approx(10.0 / 3.0));
  CHECK(r.b == doctest::Approx(2.0));
  CHECK(r.fit3.kappa == doctest::Approx(-8).epsilon(1e-12));
  REQUIRE(r.fit3.mu.has_value());
  // The fitted value is the model's mu; it matches 2 - 3a, not 2 + 3a.
  CHECK(*r.fit3.mu == doctest::Approx(-8).epsilon(1e-12));
  CHECK(r.mu3_alternative == doctest::Approx(-8));
  CHECK(r.mu3_printed == doctest::Approx(12));

  KM flat(-8, 2);
  CHECK_THROWS_AS(main3_reconstruction(flat.b(), flat.samples, 1e-9), PreconditionError);
}

TEST_CASE("supplementary structure") {
  SUBCASE("|I_M| > 1") {
    KM k(-8, -8);
    const Main4Report r = main4_supplementary(k.s(), k.samples, 1e-9);
    CHECK(r.branch == 1);
    expect_all_pass(r.checks);
    REQUIRE(r.structure.has_value());
    const Point& p = k.samples[0];
    CHECK((r.structure->h(1).at(p) + (4.0 / 3.0) * k.s().h().at(p)).norm() <= 1e-9);
    CHECK(r.structure->h(3).at(p).norm() <= 1e-10);
  }
  SUBCASE("|I_M| < 1") {
    KM k(-8, -1);
    const Main4Report r = main4_supplementary(k.s(), k.samples, 1e-9);
    CHECK(r.branch == 2);
    expect_all_pass(r.checks);
    CHECK(r.structure->h(2).at(k.samples[0]).norm() <= 1e-10);
  }
  SUBCASE("I_M < -1") {
    KM k(-8, 14);
    const Main4Report r = main4_supplementary(k.s(), k.samples, 1e-9);
    CHECK(r.branch == 1);
    expect_all_pass(r.checks);
  }
  SUBCASE("|I_M| = 1 is excluded") {
    KM k(0, 0);
    CHECK(k.s().boeckx() == doctest::Approx(1.0));
    CHECK_THROWS_AS(main4_supplementary(k.s(), k.samples, 1e-9), PreconditionError);
  }
}

TEST_CASE("Sasakian input is refused where lambda is needed") {
  const ModelPack d = darboux(1);
  const auto samples = d.model->samples(4);
  const LoadedModel lm(d, samples, 1e-8);
  REQUIRE(lm.has_kappa_mu());
  CHECK(lm.kappa_mu().sasakian());
  CHECK_THROWS_AS(lm.kappa_mu().lambda(), PreconditionError);
  CHECK_THROWS_AS(main4_supplementary(lm.kappa_mu(), samples, 1e-8), PreconditionError);
}
