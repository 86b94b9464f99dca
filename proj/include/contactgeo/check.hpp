#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "contactgeo/model.hpp"

namespace contactgeo {

/// Outcome of checking one identity over a set of sample points.
struct Check {
  std::string id;
  /// The identity in readable form, e.g. "T(X,Y) = 2 deta(X,Y) xi".
  std::string identity;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::optional<Point> worst;
  std::string note;
  /// Reported for reference only; never counts as a failure.
  bool informational = false;
  /// Yes/no outcome; the tolerance is reported but does not decide pass.
  bool exact = false;
};

/// Running maximum of a residual together with the point that produced it.
class Residual {
 public:
  void observe(double r, const Point& p);
  void observe(const Eigen::VectorXd& v, const Point& p) { observe(max_abs(v), p); }
  void observe(const Eigen::MatrixXd& m, const Point& p);
  double value() const { return value_; }
  const std::optional<Point>& worst() const { return worst_; }
  Check finish(std::string id, std::string identity, double tol) const;

  static double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

 private:
  double value_ = 0.0;
  std::optional<Point> worst_;
};

/// A single number compared against a tolerance.
Check scalar_check(std::string id, std::string identity, double residual, double tol,
                   std::string note = {});
/// A yes/no outcome as a check: residual 0 or 1 against tolerance 0.5,
/// or the run tolerance when one is given explicitly.
Check boolean_check(std::string id, std::string identity, bool ok, std::string note = {});

bool all_pass(const std::vector<Check>& checks);
/// The failing check with the largest residual-to-tolerance ratio, if any.
const Check* first_failure(const std::vector<Check>& checks);

}  // namespace contactgeo
