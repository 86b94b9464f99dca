#pragma once

#include <vector>

#include "contactgeo/affine.hpp"
#include "contactgeo/contact.hpp"
#include "contactgeo/structures.hpp"

namespace contactgeo {

/// Canonical connection of a paracontact metric structure:
/// nabla_X Y = nabla^g_X Y + eta(X) phi Y + eta(Y)(phi X - phi h X)
///             + g(X - hX, phi Y) xi.
/// Throws PreconditionError unless `s` is paracontact metric.
Connection paracontact_canonical(const MetricStructure& s, const Connection& lc,
                                 const std::vector<Point>& samples, double tol);
Connection paracontact_canonical(const MetricStructure& s, const std::vector<Point>& samples,
                                 double tol);

/// nabla eta = 0, nabla xi = 0, nabla g = 0, the phi-derivative relation,
/// T(xi, phi Y) = -phi T(xi, Y), T = 2 deta (x) xi on ker eta, and the
/// closed torsion formula.
std::vector<Check> check_paracontact_canonical(const MetricStructure& s, const Connection& lc,
                                               const Connection& pc,
                                               const std::vector<Point>& samples, double tol);

/// A pair of Legendre distributions L1, L2 with TM = L1 + L2 + R xi, and the
/// associated projections.
class LegendrePair {
 public:
  /// Throws PreconditionError if the pair is not transversal at some sample.
  LegendrePair(const ContactForm& eta, VectorField xi, Distribution l1, Distribution l2,
               const std::vector<Point>& samples);

  const Distribution& l1() const { return l1_; }
  const Distribution& l2() const { return l2_; }
  const VectorField& xi() const { return xi_; }
  const ContactForm& form() const { return eta_; }
  const ModelPtr& model() const { return eta_.model(); }

  /// Frame matrix [sections of L1 | sections of L2 | xi] in jets; requires
  /// exactly n sections on each side.
  JetMat frame_jets(const Point& p) const;
  /// Projection onto L1 along L2 + R xi (which = 1) or onto L2 (which = 2).
  Eigen::MatrixXd projector(int which, const Point& p) const;
  /// phi~ of the pair: +1 on L1, -1 on L2, 0 on xi.
  Tensor11Field psi() const;
  /// g~ = deta(., phi~ .) + eta (x) eta.
  MetricField psi_metric() const;
  /// (phi~, xi, eta, g~) as a paracontact metric structure.
  MetricStructure psi_structure(const std::vector<Point>& samples, double tol) const;

 private:
  ContactForm eta_;
  VectorField xi_;
  Distribution l1_;
  Distribution l2_;
};

/// Bi-Legendrian connection axioms: nabla preserves L1 and L2, nabla xi = 0,
/// nabla deta = 0, T(X,Y) = 2 deta(X,Y) xi for X in L1, Y in L2, and
/// T(X, xi) = [xi, X_L1]_L2 + [xi, X_L2]_L1.
std::vector<Check> check_bilegendrian_axioms(const Connection& c, const LegendrePair& pair,
                                             const std::vector<Point>& samples, double tol);

}  // namespace contactgeo
