#pragma once

#include <optional>
#include <vector>

#include "contactgeo/bipara.hpp"
#include "contactgeo/connections.hpp"
#include "contactgeo/structures.hpp"

namespace contactgeo {

// ─── Nullity conditions ───

/// R(X,Y) xi = kappa (eta(Y) X - eta(X) Y) + mu (eta(Y) hX - eta(X) hY) with
/// h = 1/2 L_xi phi of the given structure; contact or paracontact.
Check verify_nullity(const MetricStructure& ms, const Connection& lc, double kappa, double mu,
                     const std::vector<Point>& samples, double tol);

struct NullityFit {
  double kappa = 0.0;
  /// Empty when h vanishes and mu is not determined by the curvature.
  std::optional<double> mu;
  /// Largest residual of the fitted condition.
  double residual = 0.0;
};

/// Least-squares (kappa, mu) from R(E_i, E_j) xi over all samples and frame
/// pairs.
NullityFit fit_nullity(const MetricStructure& ms, const Connection& lc,
                       const std::vector<Point>& samples);

/// g = sign deta(., phi .) + eta (x) eta, symmetrized.
MetricField associated_metric(const ContactForm& eta, const Tensor11Field& phi, double sign,
                              std::string label);

// ─── Contact metric (kappa, mu)-spaces ───

class KappaMu {
 public:
  /// Throws DomainError for kappa > 1, PreconditionError unless ms is contact
  /// metric, and AxiomError if the nullity condition fails.
  KappaMu(MetricStructure ms, double kappa, double mu, const std::vector<Point>& samples,
          double tol);

  const MetricStructure& structure() const { return ms_; }
  const Connection& levi_civita() const { return lc_; }
  const ContactForm& form() const { return eta_; }
  const ModelPtr& model() const { return ms_.model(); }
  double kappa() const { return kappa_; }
  double mu() const { return mu_; }
  bool sasakian() const { return kappa_ >= 1.0; }
  /// sqrt(1 - kappa). Throws PreconditionError in the Sasakian case.
  double lambda() const;
  /// Boeckx invariant (1 - mu/2) / sqrt(1 - kappa).
  double boeckx() const;
  Tensor11Field h() const { return h_operator(ms_.base()); }
  /// Nullity residual and h^2 = (kappa - 1) phi^2.
  const std::vector<Check>& checks() const { return checks_; }

 private:
  MetricStructure ms_;
  ContactForm eta_;
  Connection lc_;
  double kappa_;
  double mu_;
  std::vector<Check> checks_;
};

/// The eigendistributions D_h(+-lambda) and D_phih(+-lambda).
struct EigenSplit {
  Distribution h_plus, h_minus, phih_plus, phih_minus;
  std::vector<Check> checks;
};

/// D_phih(lambda) = {X + phi X : X in D_h(lambda)}, D_phih(-lambda) likewise.
/// Checks the spectrum of phi h, eigenvalue equations, orthogonality,
/// phi D_h(lambda) = D_h(-lambda), Legendre and involutive, and transversality.
EigenSplit phi_h_eigendecomposition(const KappaMu& s, const std::vector<Point>& samples,
                                    double tol);

/// phi_1 = phi h / lambda, phi_2 = h / lambda, phi_3 = phi.
BiParacontact standard_bipara(const KappaMu& s, const std::vector<Point>& samples, double tol);

/// h_1 = -I_M h, h_2 = I_M phi h + lambda phi, h_3 = h.
std::vector<Check> check_standard_h(const KappaMu& s, const BiParacontact& b,
                                    const std::vector<Point>& samples, double tol);

struct Induced {
  MetricStructure g1;
  MetricStructure g2;
  Connection lc1;
  Connection lc2;
};

/// (phi_a, xi, eta, g_a) with g_a = deta(., phi_a .) + eta (x) eta, a = 1, 2.
Induced induced_metrics(const BiParacontact& b, const std::vector<Point>& samples, double tol);

struct IndotteReport {
  NullityFit fit1, fit2;
  double kappa1 = 0, mu1 = 0, kappa2 = 0, mu2 = 0;
  std::vector<Check> checks;
};

/// Paracontact nullity of g_1 with kappa_1 = (1 - mu/2)^2 - 1,
/// mu_1 = 2(1 - lambda), and of g_2 with kappa_2 = kappa - 2 + (1 - mu/2)^2,
/// mu_2 = 2; signatures (n+1, n); g_1 para-Sasakian iff I_M = 0; torsion of
/// the canonical connections along xi.
IndotteReport verify_indotte(const KappaMu& s, const BiParacontact& b, const Induced& ind,
                             const std::vector<Point>& samples, double tol);

/// Pang form on D_phih(+-lambda) equals 2 I_M g, and the classification
/// follows the sign of I_M.
std::vector<Check> pang_bridge(const KappaMu& s, const EigenSplit& split,
                               const std::vector<Point>& samples, double tol);

/// Coefficients c(a, b) with nabla^c_xi phi_a = sum_b c(a, b) phi_b,
/// least squares at p.
Eigen::Matrix3d canonical_coefficients(const BiParacontact& b, const Connection& nabla_c,
                                       const Point& p);

/// nabla^2 and nabla^1 are the bi-Legendrian connections of the h and phi h
/// splittings, they agree with the canonical paracontact connections of g_2
/// and g_1, S = nabla^2 - nabla^1 has S(., xi) = 0, S(xi, .) = -phi h and
/// S = 0 on the contact distribution, nabla^1_xi phi = 2h, the four
/// connections agree on the contact distribution, and nabla^c is a contact
/// connection with the stated phi_a derivatives.
std::vector<Check> connection_identifications(const KappaMu& s, const BiParacontact& b,
                                              const EigenSplit& split, const Induced& ind,
                                              const std::vector<Point>& samples, double tol);

/// T^c(X,Y) = 2/3 (eta(Y)((1 - mu/2) phi X + phi h X) - eta(X)((1 - mu/2) phi Y
/// + phi h Y)) + 2 deta(X,Y) xi.
Check check_canonical_torsion(const KappaMu& s, const BiParacontact& b, const Connection& nabla_c,
                              const std::vector<Point>& samples, double tol);

struct Main3Report {
  double a = 0, b = 0;
  NullityFit fit1, fit2, fit3;
  double kappa1 = 0, mu1 = 0, kappa2 = 0, mu2 = 0, kappa3 = 0;
  /// mu_3 as printed (2 + 3a) and with the opposite sign (2 - 3a).
  double mu3_printed = 0, mu3_alternative = 0;
  std::vector<Check> checks;
};

/// From an integrable structure whose canonical connection has
/// nabla^c phi_1 = -a eta (x) phi_2, nabla^c phi_2 = a eta (x) phi_1 + b eta (x) phi_3,
/// nabla^c phi_3 = b eta (x) phi_2 and nabla^c deta = 0, rebuild the metrics
/// and the (kappa, mu) values. Throws PreconditionError when the pattern does
/// not hold, a = 0, or g_1(h_1 ., .) is not definite on ker eta.
Main3Report main3_reconstruction(const BiParacontact& b, const std::vector<Point>& samples,
                                 double tol);

struct Main4Report {
  /// 1 for |I_M| > 1, 2 for |I_M| < 1.
  int branch = 0;
  std::optional<BiParacontact> structure;
  std::vector<Check> checks;
};

/// The supplementary structure built from psi = h_2 / sqrt|(1 - mu/2)^2 - (1 - kappa)|.
/// Throws PreconditionError for Sasakian input or |I_M| = 1.
Main4Report main4_supplementary(const KappaMu& s, const std::vector<Point>& samples, double tol);

}  // namespace contactgeo
