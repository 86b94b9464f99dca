#include <doctest.h>

#include <json.hpp>

#include "contactgeo/errors.hpp"
#include "contactgeo/model_io.hpp"
#include "contactgeo/suites.hpp"

using namespace contactgeo;

namespace {

RunOptions quick() {
  RunOptions o;
  o.samples = 4;
  return o;
}

}  // namespace

TEST_CASE("every suite passes or is skipped on Darboux") {
  const auto reports = run_suites("all", darboux(2), quick());
  CHECK(reports.size() == suite_names().size());
  CHECK(all_passed(reports));
  for (const auto& r : reports) {
    CAPTURE(r.suite);
    CHECK(r.status != SuiteStatus::Fail);
  }
}

TEST_CASE("a suite the model lacks the structure for fails when asked for explicitly") {
  const auto reports = run_suites("kappa-mu-core", darboux(2), quick());
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].status == SuiteStatus::Fail);
  CHECK(reports[0].reason.find("Sasakian") != std::string::npos);
  CHECK_FALSE(all_passed(reports));
}

TEST_CASE("main4 skips I_M = +-1") {
  const auto reports = run_suites("main4", kappa_mu_frame(0, 0), quick());
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].status == SuiteStatus::Skipped);
  CHECK(reports[0].reason == "I_M = ±1");
  CHECK(all_passed(reports));
}

TEST_CASE("tolerance options") {
  RunOptions o = quick();
  o.default_tol = 1e-6;
  CHECK(run_suites("contact-basics", darboux(1), o)[0].tolerance == 1e-6);
  o.tol = 1e-3;
  const auto r = run_suites("contact-basics", darboux(1), o);
  CHECK(r[0].tolerance == 1e-3);
  for (const auto& c : r[0].checks) CHECK(c.tolerance == 1e-3);
  CHECK(run_suites("contact-basics", darboux(1), quick())[0].tolerance == 1e-8);
  CHECK(run_suites("contact-basics", kappa_mu_frame(-8, -8), quick())[0].tolerance == 1e-10);
}

TEST_CASE("unknown suite is an error") {
  CHECK_FALSE(is_suite("main2"));
  CHECK_THROWS_AS(run_suites("main2", darboux(1), quick()), DomainError);
}

TEST_CASE("reports are deterministic and carry anchors") {
  const ModelPack p = kappa_mu_frame(-8, -8);
  const std::string a = reports_json(run_suites("all", p, quick()), false);
  const std::string b = reports_json(run_suites("all", p, quick()), false);
  CHECK(a == b);
  const auto j = nlohmann::json::parse(a);
  REQUIRE(j.is_array());
  for (const auto& s : j) {
    CHECK(s.contains("suite"));
    CHECK(s.contains("model"));
    CHECK(s["seed"] == kDefaultSeed);
    CHECK(s["samples"] == 4);
    CHECK_FALSE(s.contains("wall_time_s"));
    for (const auto& c : s["checks"]) {
      CHECK(c["anchor"].is_string());
      CHECK_FALSE(c["anchor"].get<std::string>().empty());
    }
  }
}

TEST_CASE("a model file runs like the builtin it was exported from") {
  const ModelPack p = darboux(1);
  const ModelPack q = parse_model(export_model(p));
  const std::string a = reports_json(run_suites("structures", p, quick()), false);
  const std::string b = reports_json(run_suites("structures", q, quick()), false);
  CHECK(a == b);
}

TEST_CASE("a model whose declared facts are wrong fails to load") {
  ModelPack p = kappa_mu_frame(-8, -8);
  p.facts.mu = -7;
  CHECK_THROWS_AS(run_suites("contact-basics", p, quick()), GeometryError);
}
