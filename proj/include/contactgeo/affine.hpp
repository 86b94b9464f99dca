#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "contactgeo/fields.hpp"

namespace contactgeo {

/// Gamma^k_ij with nabla_{E_i} E_j = Gamma^k_ij E_k.
class Christoffel {
 public:
  Christoffel() = default;
  explicit Christoffel(int n) : n_(n), g_(n * n * n) {}

  int dim() const { return n_; }
  Jet& operator()(int k, int i, int j) { return g_[(i * n_ + j) * n_ + k]; }
  const Jet& operator()(int k, int i, int j) const { return g_[(i * n_ + j) * n_ + k]; }
  /// Matrix (k, j) -> Gamma^k_ij, i.e. nabla_{E_i} as a matrix on constants.
  JetMat slice(int i) const;
  /// Gamma(X, Y)^k = X^i Y^j Gamma^k_ij, the tensorial part of nabla_X Y.
  JetVec apply(const JetVec& x, const JetVec& y) const;
  /// Sets Gamma^k_ij from a vector nabla_{E_i}E_j.
  void set(int i, int j, const JetVec& v);

 private:
  int n_ = 0;
  std::vector<Jet> g_;
};

/// Tables of values at one point, indexed by an (i, j) pair of frame fields.
using PairTable = std::vector<Eigen::VectorXd>;  // entry i*n+j: T(E_i,E_j)
using EndTable = std::vector<Eigen::MatrixXd>;   // entry i*n+j: R(E_i,E_j)

Eigen::VectorXd contract(const PairTable& t, const Eigen::VectorXd& x, const Eigen::VectorXd& y);
Eigen::MatrixXd contract(const EndTable& t, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Affine connection on a model, given by Christoffel jets.
class Connection {
 public:
  using Fn = std::function<Christoffel(const Point&)>;
  Connection(ModelPtr model, Fn fn, std::string name);

  const ModelPtr& model() const { return model_; }
  const std::string& name() const { return name_; }
  Christoffel christoffel(const Point& p) const;

  /// nabla_X Y for jet fields at p, keeping jets.
  static JetVec covariant(const Christoffel& g, const JetVec& x, const JetVec& y);
  Eigen::VectorXd nabla(const VectorField& x, const VectorField& y, const Point& p) const;

  /// T(E_i, E_j) at p.
  PairTable torsion(const Point& p) const;
  /// R(E_i, E_j) as an endomorphism at p:
  /// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
  EndTable curvature(const Point& p) const;
  /// Ric(X,Y) = trace(Z -> R(Z,X)Y); entry (i, j) is Ric(E_i, E_j).
  Eigen::MatrixXd ricci(const Point& p) const;

  Eigen::VectorXd torsion(const VectorField& x, const VectorField& y, const Point& p) const;
  Eigen::VectorXd curvature(const VectorField& x, const VectorField& y, const VectorField& z,
                            const Point& p) const;

  /// The connection with one Christoffel symbol shifted by delta.
  Connection perturbed(int k, int i, int j, double delta) const;
  /// Mean of several connections on the same model.
  static Connection average(const std::vector<Connection>& cs, std::string name);

 private:
  // Christoffel tables already computed, keyed by point. Copies of a
  // connection share it.
  struct Cache {
    std::mutex lock;
    std::map<std::pair<int, std::vector<double>>, Christoffel> tables;
  };

  ModelPtr model_;
  Fn fn_;
  std::string name_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Covariant derivatives of tensors along E_i, as values at one point.

Eigen::VectorXd nabla_vector(const Christoffel& g, int i, const JetVec& y);
Eigen::MatrixXd nabla_tensor(const Christoffel& g, int i, const JetMat& t);
Eigen::VectorXd nabla_form(const Christoffel& g, int i, const JetVec& omega);
/// For a (0,2)-tensor b with entries b(E_j, E_k).
Eigen::MatrixXd nabla_bilinear(const Christoffel& g, int i, const JetMat& b);

/// Levi-Civita connection of a pseudo-Riemannian metric by the Koszul formula
/// in the model frame.
Connection levi_civita(const MetricField& g);

/// nabla'_X Y = nabla_X Y + S(X, Y), with S given by its table S^k_ij.
Connection shifted(const Connection& base, std::function<Christoffel(const Point&)> s,
                   std::string name);

}  // namespace contactgeo
