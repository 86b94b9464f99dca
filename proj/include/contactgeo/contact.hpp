#pragma once

#include <string>
#include <vector>

#include "contactgeo/check.hpp"
#include "contactgeo/fields.hpp"
#include "contactgeo/kernel.hpp"

namespace contactgeo {

/// deta(X,Y) = 1/2 (X(eta(Y)) - Y(eta(X)) - eta([X,Y])).
Jet d_eta(const Model& m, const JetVec& eta, const JetVec& x, const JetVec& y);
/// Omega_ij = deta(E_i, E_j), computed from component derivatives.
JetMat d_eta_matrix(const Model& m, const JetVec& eta);
double d_eta(const OneForm& eta, const VectorField& x, const VectorField& y, const Point& p);

/// A one-form with eta ^ (deta)^n != 0 on the sample set.
class ContactForm {
 public:
  /// Throws NotContactError naming the first sample where the form degenerates.
  ContactForm(OneForm eta, const std::vector<Point>& samples, double tol = 1e-9);

  const OneForm& eta() const { return eta_; }
  const ModelPtr& model() const { return eta_.model(); }
  int n() const { return (model()->dim() - 1) / 2; }

  /// Reeb field solved from eta(xi) = 1, i_xi deta = 0 in jet arithmetic.
  VectorField reeb() const;
  Eigen::VectorXd reeb_at(const Point& p) const;
  /// Residual of eta(xi) = 1 and i_xi deta = 0 for a candidate field.
  Check reeb_residual(const VectorField& xi, const std::vector<Point>& samples, double tol) const;

  double d_eta(const VectorField& x, const VectorField& y, const Point& p) const;
  Eigen::MatrixXd d_eta_matrix(const Point& p) const;

 private:
  OneForm eta_;
};

/// Smooth distribution given by spanning sections; rank is read from the
/// sections at each point.
class Distribution {
 public:
  Distribution(ModelPtr model, std::vector<VectorField> sections, std::string label = {});
  /// Image of a projector field: spanned by the projector applied to frame
  /// fields, keeping the columns that are independent at `probe`.
  static Distribution image(const Tensor11Field& projector, const Point& probe,
                            std::string label = {});

  const ModelPtr& model() const { return model_; }
  const std::vector<VectorField>& sections() const { return sections_; }
  const std::string& label() const { return label_; }
  /// Section values as columns.
  Eigen::MatrixXd basis_at(const Point& p) const;
  int rank_at(const Point& p) const;
  /// Distance from v to the span at p (least squares, frame coordinates).
  double distance(const Point& p, const Eigen::VectorXd& v) const;

 private:
  ModelPtr model_;
  std::vector<VectorField> sections_;
  std::string label_;
};

/// Result of a predicate: the verdict plus the residual that decided it.
struct Verdict {
  bool value = false;
  Check check;
};

/// Legendre: rank n, inside ker eta, and deta vanishes on it. Throws
/// PreconditionError when the distribution leaves ker eta.
Verdict is_legendre(const ContactForm& eta, const Distribution& l,
                    const std::vector<Point>& samples, double tol);
Verdict is_involutive(const Distribution& d, const std::vector<Point>& samples, double tol);
/// Rank of the sum of the given distributions at p.
int joint_rank(const std::vector<const Distribution*>& ds, const Point& p);

/// Pi(X, X') = 2 deta([xi, X], X').
double pang_form(const ContactForm& eta, const VectorField& xi, const VectorField& x,
                 const VectorField& x2, const Point& p);

enum class PangClass { PositiveDefinite, NegativeDefinite, Nondegenerate, Degenerate, Flat };
std::string to_string(PangClass c);

struct PangReport {
  PangClass cls = PangClass::Flat;
  /// Gram matrix of Pi on the foliation's sections at the first sample.
  Eigen::MatrixXd gram;
  double symmetry_residual = 0.0;
  /// Largest eigenvalue magnitude over the samples; 0 means Pi vanishes.
  double max_abs = 0.0;
};

/// Classifies Pi on a Legendre foliation. The class must be the same at all
/// samples; otherwise the weakest class seen is returned.
PangReport classify_pang(const ContactForm& eta, const VectorField& xi, const Distribution& f,
                         const std::vector<Point>& samples, double tol);

}  // namespace contactgeo
