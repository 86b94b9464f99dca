// verify <suite> [--model <file|builtin:name>] [--seed N] [--samples K] [--tol T] [--report out.json]
//
// Exit codes: 0 all suites pass or are skipped, 1 a suite fails, 2 error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "contactgeo/errors.hpp"
#include "contactgeo/model_io.hpp"
#include "contactgeo/suites.hpp"

namespace {

constexpr const char* kTolEnv = "CONTACTGEO_TOL";

std::string suite_list() {
  std::string s = "all";
  for (const auto& n : contactgeo::suite_names()) s += ", " + n;
  return s;
}

void print_summary(const std::vector<contactgeo::SuiteReport>& reports) {
  for (const auto& r : reports) {
    std::size_t failed = 0;
    for (const auto& c : r.checks)
      if (!c.pass && !c.informational) ++failed;
    std::fprintf(stderr, "%-22s %-8s %3zu checks, %zu failed  %.2fs", r.suite.c_str(),
                 contactgeo::to_string(r.status).c_str(), r.checks.size(), failed, r.wall_seconds);
    if (!r.reason.empty()) std::fprintf(stderr, "  (%s)", r.reason.c_str());
    std::fprintf(stderr, "\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run contact geometry verification suites on a model"};
  std::string suite;
  std::string model = "builtin:darboux";
  std::uint64_t seed = contactgeo::kDefaultSeed;
  int samples = contactgeo::kDefaultSamples;
  double tol = 0.0;
  std::string report;
  std::string export_path;
  app.add_option("suite", suite, "Suite to run: " + suite_list())->required();
  app.add_option("--model", model, "Model file or builtin:<name> (builtin:darboux:n=2, builtin:kappa-mu:kappa=-8,mu=-8)");
  app.add_option("--seed", seed, "Sample seed");
  app.add_option("--samples", samples, "Number of sample points")->check(CLI::PositiveNumber);
  auto* tol_opt = app.add_option("--tol", tol, std::string("Tolerance for every check (") + kTolEnv +
                                                   " replaces only the model default)")
                      ->check(CLI::PositiveNumber);
  app.add_option("--report", report, "Write the JSON report here instead of stdout");
  app.add_option("--export-model", export_path, "Also write the model in file format");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!contactgeo::is_suite(suite)) {
      std::cerr << "verify: unknown suite '" << suite << "' (expected one of " << suite_list() << ")\n";
      return 2;
    }
    contactgeo::RunOptions opts;
    opts.seed = seed;
    opts.samples = samples;
    if (*tol_opt) opts.tol = tol;
    if (const char* env = std::getenv(kTolEnv)) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(v > 0)) {
        std::cerr << "verify: " << kTolEnv << " must be a positive number\n";
        return 2;
      }
      opts.default_tol = v;
    }
    const contactgeo::ModelPack pack = contactgeo::resolve_model(model);
    if (!export_path.empty()) {
      std::ofstream out(export_path);
      out << contactgeo::export_model(pack) << "\n";
      if (!out) {
        std::cerr << "verify: cannot write " << export_path << "\n";
        return 2;
      }
    }
    const auto reports = contactgeo::run_suites(suite, pack, opts);
    const std::string body = contactgeo::reports_json(reports);
    if (report.empty()) {
      std::cout << body << "\n";
    } else {
      std::ofstream out(report);
      out << body << "\n";
      if (!out) {
        std::cerr << "verify: cannot write " << report << "\n";
        return 2;
      }
    }
    print_summary(reports);
    return contactgeo::all_passed(reports) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 2;
  }
}
