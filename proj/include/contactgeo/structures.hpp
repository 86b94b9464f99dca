#pragma once

#include <string>
#include <vector>

#include "contactgeo/affine.hpp"
#include "contactgeo/check.hpp"
#include "contactgeo/contact.hpp"
#include "contactgeo/fields.hpp"
#include "contactgeo/kernel.hpp"

namespace contactgeo {

/// Almost contact: phi^2 = -I + eta (x) xi. Almost paracontact:
/// phi^2 = I - eta (x) xi with +-1 eigendistributions of equal rank.
enum class StructureKind { Contact, Paracontact };

std::string to_string(StructureKind k);

/// (phi, xi, eta) with the defining identities verified on construction.
class AlmostContact {
 public:
  /// Throws AxiomError naming the violated identity and the worst sample.
  AlmostContact(Tensor11Field phi, VectorField xi, OneForm eta, StructureKind kind,
                const std::vector<Point>& samples, double tol);

  const Tensor11Field& phi() const { return phi_; }
  const VectorField& xi() const { return xi_; }
  const OneForm& eta() const { return eta_; }
  StructureKind kind() const { return kind_; }
  const ModelPtr& model() const { return phi_.model(); }
  /// phi^2 = eps (I - eta (x) xi): -1 for contact, +1 for paracontact.
  double eps() const { return kind_ == StructureKind::Contact ? -1.0 : 1.0; }
  const std::vector<Check>& axioms() const { return axioms_; }

 private:
  Tensor11Field phi_;
  VectorField xi_;
  OneForm eta_;
  StructureKind kind_;
  std::vector<Check> axioms_;
};

/// An almost (para)contact structure with a compatible metric:
/// g(phi X, phi Y) = -eps (g(X,Y) - eta(X) eta(Y)) and eta = g(xi, .).
class MetricStructure {
 public:
  MetricStructure(AlmostContact s, MetricField g, const std::vector<Point>& samples, double tol);

  const AlmostContact& base() const { return s_; }
  const Tensor11Field& phi() const { return s_.phi(); }
  const VectorField& xi() const { return s_.xi(); }
  const OneForm& eta() const { return s_.eta(); }
  const MetricField& g() const { return g_; }
  StructureKind kind() const { return s_.kind(); }
  double eps() const { return s_.eps(); }
  const ModelPtr& model() const { return s_.model(); }
  /// Signature of g at the first sample.
  const Signature& signature() const { return sig_; }
  const std::vector<Check>& axioms() const { return axioms_; }

  /// Contact metric condition deta(X,Y) = g(X, phi Y).
  Check associated(const std::vector<Point>& samples, double tol) const;

 private:
  AlmostContact s_;
  MetricField g_;
  Signature sig_;
  std::vector<Check> axioms_;
};

// ─── Normality tensors, as frame tables at a point ───

/// N1(E_i, E_j) = [phi,phi](E_i,E_j) - 2 eps deta(E_i,E_j) xi.
PairTable n1_table(const AlmostContact& s, const Point& p);
/// N2(E_i, E_j) = (L_{phi E_i} eta)(E_j) - (L_{phi E_j} eta)(E_i).
Eigen::MatrixXd n2_table(const AlmostContact& s, const Point& p);
/// N3 = L_xi phi as a matrix.
Eigen::MatrixXd n3_matrix(const AlmostContact& s, const Point& p);
/// N4 = L_xi eta as a covector.
Eigen::VectorXd n4_covector(const AlmostContact& s, const Point& p);

Eigen::VectorXd n1(const AlmostContact& s, const VectorField& x, const VectorField& y,
                   const Point& p);
double n2(const AlmostContact& s, const VectorField& x, const VectorField& y, const Point& p);
Eigen::VectorXd n3(const AlmostContact& s, const VectorField& x, const Point& p);
double n4(const AlmostContact& s, const VectorField& x, const Point& p);

/// Max residual of phi N1(X,Y) + N1(phi X, Y) - N2(X,Y) xi - eta(X) N3(Y)
/// over frame pairs. Almost contact structures only.
Check lemma2_residual(const AlmostContact& s, const std::vector<Point>& samples, double tol);

/// Normal: N1 = 0.
Verdict is_normal(const AlmostContact& s, const std::vector<Point>& samples, double tol);

/// h = 1/2 L_xi phi.
Tensor11Field h_operator(const AlmostContact& s);
/// h xi = 0, eta h = 0, h phi = -phi h, trace h = 0, and g-symmetry when a
/// metric is given.
std::vector<Check> h_properties(const AlmostContact& s, const MetricField* g,
                                const std::vector<Point>& samples, double tol);

// ─── Checks against the Levi-Civita connection ───

/// Contact metric: (nabla_X phi)Y = g(X + hX, Y) xi - eta(Y)(X + hX).
/// Paracontact metric: (nabla_X phi)Y = eta(Y)(X - hX) - g(X - hX, Y) xi.
/// Also checks the consequence N1(X,Y) = 2(eta(Y) phi h X - eta(X) phi h Y).
/// Throws PreconditionError unless the structure is a (para)contact metric one.
std::vector<Check> check_integrability_condition(const MetricStructure& s, const Connection& lc,
                                                 const std::vector<Point>& samples, double tol);

/// nabla xi = -phi - phi h (contact) or -phi + phi h (paracontact).
Check check_reeb_gradient(const MetricStructure& s, const Connection& lc,
                          const std::vector<Point>& samples, double tol);

/// Sasakian: (nabla_X phi)Y = g(X,Y) xi - eta(Y) X. Para-Sasakian:
/// (nabla_X phi)Y = -g(X,Y) xi + eta(Y) X.
Verdict is_sasakian(const MetricStructure& s, const Connection& lc,
                    const std::vector<Point>& samples, double tol);

/// Projector onto the +1 or -1 eigendistribution of a paracontact phi:
/// 1/2 (I +- phi - eta (x) xi).
Tensor11Field para_projector(const AlmostContact& s, int sign);

}  // namespace contactgeo
