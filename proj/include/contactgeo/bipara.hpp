#pragma once

#include <array>
#include <string>
#include <vector>

#include "contactgeo/affine.hpp"
#include "contactgeo/check.hpp"
#include "contactgeo/connections.hpp"
#include "contactgeo/contact.hpp"
#include "contactgeo/structures.hpp"

namespace contactgeo {

/// A predicate value together with the checks that decided it and the
/// consequences verified when it holds.
struct Assessment {
  bool value = false;
  std::vector<Check> checks;
};

/// Jets of all structure tensors at one point. Index a = 0, 1, 2 stands for
/// phi_1, phi_2, phi_3.
struct BiJets {
  std::array<JetMat, 3> phi;
  std::array<JetMat, 3> h;
  JetVec xi;
  JetVec eta;
  JetMat omega;  // deta(E_i, E_j)
};

/// Almost bi-paracontact structure: anticommuting phi_1, phi_2 with
/// phi_1^2 = phi_2^2 = I - eta (x) xi and phi_3 = phi_1 phi_2 almost contact.
class BiParacontact {
 public:
  /// Throws AxiomError naming the violated identity and the worst sample.
  BiParacontact(Tensor11Field phi1, Tensor11Field phi2, VectorField xi, const ContactForm& eta,
                const std::vector<Point>& samples, double tol);
  /// Same, with xi taken as the Reeb field of eta.
  BiParacontact(Tensor11Field phi1, Tensor11Field phi2, const ContactForm& eta,
                const std::vector<Point>& samples, double tol);

  /// (phi psi, psi, phi) where psi = I on L, -I on phi L, 0 on xi, for a contact
  /// metric structure and a Legendre distribution L with n sections.
  static BiParacontact from_conjugate(const MetricStructure& contact, const Distribution& l,
                                      const std::vector<Point>& samples, double tol);
  /// phi_1 from the pair (L, Q), phi_2 from (L', Q'). Throws PreconditionError
  /// unless every eigendistribution of one pair is transversal to both of the
  /// other.
  static BiParacontact from_bilegendrian_pairs(const LegendrePair& first,
                                               const LegendrePair& second,
                                               const std::vector<Point>& samples, double tol);

  /// a in {1, 2, 3}.
  const Tensor11Field& phi(int a) const;
  /// h_a = 1/2 L_xi phi_a.
  Tensor11Field h(int a) const;
  /// (phi_a, xi, eta): paracontact for a = 1, 2 and contact for a = 3.
  const AlmostContact& structure(int a) const;
  /// 1/2 (I + sign phi_a - eta (x) xi), a in {1, 2}.
  Tensor11Field projector(int a, int sign) const;
  /// The eigendistribution D_a^sign spanned by the projected frame.
  Distribution eigendistribution(int a, int sign, const Point& probe) const;

  const VectorField& xi() const { return xi_; }
  const ContactForm& form() const { return eta_; }
  const OneForm& eta() const { return eta_.eta(); }
  const ModelPtr& model() const { return eta_.model(); }
  BiJets jets(const Point& p) const;

  /// Derived identities checked on construction and reported, not enforced:
  /// phi_1 phi_3 = phi_2, phi_3 phi_2 = phi_1, the swaps of eigendistributions,
  /// D_1 = (I + phi_3) D_2, and the h-relations.
  const std::vector<Check>& properties() const { return properties_; }

 private:
  void derive(const std::vector<Point>& samples, double tol);

  std::array<Tensor11Field, 3> phi_;
  VectorField xi_;
  ContactForm eta_;
  std::vector<AlmostContact> s_;
  std::vector<Check> properties_;
};

// ─── Predicates ───

/// All four D_a^sign are Legendre. When true, also verifies N2 of phi_1 and
/// phi_2 vanishes and deta(phi_1 X, phi_1 Y) = deta(phi_2 X, phi_2 Y)
/// = -deta(phi_3 X, phi_3 Y) = -deta(X, Y). When false, the failing check
/// carries the worst point.
Assessment is_legendrian(const BiParacontact& b, const std::vector<Point>& samples, double tol);

/// N1 of phi_1 and phi_2 vanish on the contact distribution; then N1 of phi_3
/// on the contact distribution is verified as a consequence.
Assessment is_integrable(const BiParacontact& b, const std::vector<Point>& samples, double tol);

/// Integrable and N3 of phi_1, phi_2 vanish. For Legendrian structures also
/// checks that normality agrees with flatness of all four foliations.
Assessment is_normal(const BiParacontact& b, const std::vector<Point>& samples, double tol);

/// For Legendrian structures, N1 of phi_a maps pairs from D_a^sign into
/// D_a^-sign.
std::vector<Check> check_legendrian_consequences(const BiParacontact& b,
                                                 const std::vector<Point>& samples, double tol);

// ─── Connections ───

/// The connection nabla^a, a in {1, 2, 3}, from its bracket formula on frame
/// pairs.
Connection nabla_alpha(const BiParacontact& b, int a);

/// nabla^a xi = 0, the three nabla^a phi_b relations, the torsion relation
/// T(phi_a X, Y) - T(X, phi_a Y) = 2(deta(phi_a X, Y) - deta(X, phi_a Y)) xi
/// + eta(Y) h_a X + eta(X) h_a Y, and the closed torsion formula.
std::vector<Check> check_nabla_alpha(const BiParacontact& b, int a, const Connection& c,
                                     const std::vector<Point>& samples, double tol);

/// For a in {1, 2}: nabla^a_xi X equals the D_a^sign part of [xi, X] for X in
/// D_a^sign.
Check check_nabla_xi_projection(const BiParacontact& b, int a, const Connection& c,
                                const std::vector<Point>& samples, double tol);

/// Largest violation of the nabla^a axioms (xi, phi_b, torsion relation)
/// over samples.
double axiom_violation(const BiParacontact& b, int a, const Connection& c,
                       const std::vector<Point>& samples);

/// nabla^c = (nabla^1 + nabla^2 + nabla^3) / 3.
Connection nabla_c(const BiParacontact& b);
/// nabla^c from its own bracket formula, used as an independent cross-check.
Connection nabla_c_explicit(const BiParacontact& b);

/// nabla^c xi = 0, nabla^c phi_a = 2/3 eta (x) h_a, and the torsion formula.
std::vector<Check> check_nabla_c(const BiParacontact& b, const Connection& c,
                                 const std::vector<Point>& samples, double tol);

/// Max over frame pairs of |(nabla_X Y) - (nabla'_X Y)| for X, Y restricted by
/// the given projectors (identity for all pairs).
Check compare_connections(const Connection& a, const Connection& c, const Tensor11Field& restrict,
                          const std::vector<Point>& samples, double tol, std::string id,
                          std::string identity);

/// Corollaries for normal structures: the curvature symmetries under phi_a,
/// R(X, xi) = 0, Ric skew with Ric(X,Y) = -1/2 trace R(X,Y), flat totally
/// geodesic leaves and L_xi phi_a = 0. Throws PreconditionError for
/// non-normal input.
std::vector<Check> normal_case_checks(const BiParacontact& b, const Connection& c,
                                      const std::vector<Point>& samples, double tol);

}  // namespace contactgeo
