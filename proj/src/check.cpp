#include "contactgeo/check.hpp"

#include <cmath>

namespace contactgeo {

void Residual::observe(double r, const Point& p) {
  if (std::isnan(r)) r = INFINITY;
  if (!worst_ || r > value_) {
    value_ = r;
    worst_ = p;
  }
}

void Residual::observe(const Eigen::MatrixXd& m, const Point& p) {
  observe(m.size() ? m.cwiseAbs().maxCoeff() : 0.0, p);
}

Check Residual::finish(std::string id, std::string identity, double tol) const {
  Check c;
  c.id = std::move(id);
  c.identity = std::move(identity);
  c.residual = value_;
  c.tolerance = tol;
  c.pass = value_ <= tol;
  c.worst = worst_;
  return c;
}

Check scalar_check(std::string id, std::string identity, double residual, double tol,
                   std::string note) {
  Check c;
  c.id = std::move(id);
  c.identity = std::move(identity);
  c.residual = residual;
  c.tolerance = tol;
  c.pass = residual <= tol;
  c.note = std::move(note);
  return c;
}

Check boolean_check(std::string id, std::string identity, bool ok, std::string note) {
  Check c;
  c.id = std::move(id);
  c.identity = std::move(identity);
  c.residual = ok ? 0.0 : 1.0;
  c.tolerance = 0.5;
  c.pass = ok;
  c.exact = true;
  c.note = std::move(note);
  return c;
}

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass && !c.informational) return false;
  return true;
}

const Check* first_failure(const std::vector<Check>& checks) {
  const Check* worst = nullptr;
  double ratio = 0.0;
  for (const auto& c : checks) {
    if (c.pass || c.informational) continue;
    const double r = c.tolerance > 0 ? c.residual / c.tolerance : INFINITY;
    if (!worst || r > ratio) {
      worst = &c;
      ratio = r;
    }
  }
  return worst;
}

}  // namespace contactgeo
