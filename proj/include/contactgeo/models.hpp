#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contactgeo/bipara.hpp"
#include "contactgeo/kappa_mu.hpp"

namespace contactgeo {

/// Facts a model declares about itself; re-derived when the pack is checked.
struct ExpectedFacts {
  std::optional<double> kappa;
  std::optional<double> mu;
  /// Whether the declared bi-paracontact structure is normal.
  std::optional<bool> normal;
};

/// A model with its declared structures. The contact metric structure is
/// (phi, xi, eta, g); the bi-paracontact structure is (phi1, phi2) when given,
/// otherwise the standard one of a (kappa, mu)-space.
struct ModelPack {
  std::string name;
  ModelPtr model;
  OneForm eta;
  std::optional<VectorField> xi;
  std::optional<Tensor11Field> phi;
  std::optional<MetricField> g;
  std::optional<Tensor11Field> phi1;
  std::optional<Tensor11Field> phi2;
  ExpectedFacts facts;
};

/// Structures built from a pack and checked against its expected facts.
class LoadedModel {
 public:
  /// Throws AxiomError (or the error of the failing construction) when a
  /// declared structure or fact does not hold.
  LoadedModel(ModelPack pack, const std::vector<Point>& samples, double tol);

  const ModelPack& pack() const { return pack_; }
  const std::string& name() const { return pack_.name; }
  const ModelPtr& model() const { return pack_.model; }
  const ContactForm& form() const { return form_; }
  const VectorField& xi() const { return xi_; }
  bool has_contact_metric() const { return contact_.has_value(); }
  /// Throws PreconditionError when absent.
  const MetricStructure& contact_metric() const;
  bool has_bipara() const { return bipara_.has_value(); }
  const BiParacontact& bipara() const;
  bool has_kappa_mu() const { return kappa_mu_.has_value(); }
  const KappaMu& kappa_mu() const;
  /// Checks made while loading.
  const std::vector<Check>& checks() const { return checks_; }

 private:
  ModelPack pack_;
  ContactForm form_;
  VectorField xi_;
  std::optional<MetricStructure> contact_;
  std::optional<KappaMu> kappa_mu_;
  std::optional<BiParacontact> bipara_;
  std::vector<Check> checks_;
};

/// R^{2n+1} with eta = dz - sum y_i dx_i, the three tensors
/// phi_1 X_i = X_i, phi_1 Y_i = -Y_i, phi_2 X_i = -Y_i, phi_2 Y_i = -X_i
/// (X_i = d/dy_i, Y_i = d/dx_i + y_i d/dz) and the Sasakian metric
/// eta (x) eta + 1/2 sum (dx_i^2 + dy_i^2). Coordinates are ordered
/// x_1..x_n, y_1..y_n, z.
ModelPack darboux(int n);

/// Three-dimensional Lie algebra frame {xi, e, phi e} with g the identity,
/// [e, phi e] = 2 xi, [xi, e] = a phi e, [xi, phi e] = b e where
/// a = lambda + 1 - mu/2, b = lambda - 1 + mu/2 and lambda = sqrt(1 - kappa).
/// Throws DomainError for kappa >= 1.
ModelPack kappa_mu_frame(double kappa, double mu);

/// "darboux", "darboux:n=3", "kappa-mu", "kappa-mu:kappa=-8,mu=-8".
ModelPack builtin(const std::string& spec);

/// Names accepted by builtin(), for help output.
std::vector<std::string> builtin_examples();

}  // namespace contactgeo
