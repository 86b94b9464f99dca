#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "contactgeo/jet.hpp"
#include "contactgeo/model.hpp"

namespace contactgeo {

Eigen::VectorXd values(const JetVec& v);
Eigen::MatrixXd values(const JetMat& m);

/// Components of a field as polynomials (constants on frame models). Present
/// only for fields built from explicit data, which is what model files store.
using ComponentData = std::vector<Polynomial>;

class ScalarField {
 public:
  using Fn = std::function<Jet(const Point&)>;
  ScalarField(ModelPtr model, Fn fn) : model_(std::move(model)), fn_(std::move(fn)) {}

  Jet jet(const Point& p) const;
  double at(const Point& p) const { return jet(p).value(); }
  const ModelPtr& model() const { return model_; }

 private:
  ModelPtr model_;
  Fn fn_;
};

class VectorField {
 public:
  using Fn = std::function<JetVec(const Point&)>;
  VectorField(ModelPtr model, Fn fn, std::string label = {});

  static VectorField constant(ModelPtr model, const std::vector<double>& comps,
                              std::string label = {});
  static VectorField polynomial(ModelPtr model, ComponentData comps,
                                std::string label = {});
  /// The i-th frame field (coordinate field on charts).
  static VectorField basis(ModelPtr model, int i);

  JetVec jets(const Point& p) const;
  Eigen::VectorXd at(const Point& p) const { return values(jets(p)); }
  const ModelPtr& model() const { return model_; }
  const std::string& label() const { return label_; }
  VectorField& relabel(std::string l) { label_ = std::move(l); return *this; }
  const std::optional<ComponentData>& data() const { return data_; }

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(double s, const VectorField& a);

 private:
  ModelPtr model_;
  Fn fn_;
  std::string label_;
  std::optional<ComponentData> data_;
};

class OneForm;

/// Field of endomorphisms of the tangent bundle.
class Tensor11Field {
 public:
  using Fn = std::function<JetMat(const Point&)>;
  Tensor11Field(ModelPtr model, Fn fn, std::string label = {});

  static Tensor11Field identity(ModelPtr model);
  static Tensor11Field zero(ModelPtr model);
  /// Row-major component data: entry k*dim+j is the k-th component of T(E_j).
  static Tensor11Field constant(ModelPtr model, const Eigen::MatrixXd& m,
                                std::string label = {});
  static Tensor11Field polynomial(ModelPtr model, ComponentData comps,
                                  std::string label = {});
  /// X (x) omega, i.e. Y -> omega(Y) X.
  static Tensor11Field outer(const VectorField& x, const OneForm& omega);

  JetMat jets(const Point& p) const;
  Eigen::MatrixXd at(const Point& p) const { return values(jets(p)); }
  const ModelPtr& model() const { return model_; }
  const std::string& label() const { return label_; }
  Tensor11Field& relabel(std::string l) { label_ = std::move(l); return *this; }
  const std::optional<ComponentData>& data() const { return data_; }

  /// Composition (a*b)(X) = a(b(X)).
  friend Tensor11Field operator*(const Tensor11Field& a, const Tensor11Field& b);
  friend VectorField operator*(const Tensor11Field& a, const VectorField& x);
  friend Tensor11Field operator+(const Tensor11Field& a, const Tensor11Field& b);
  friend Tensor11Field operator-(const Tensor11Field& a, const Tensor11Field& b);
  friend Tensor11Field operator*(double s, const Tensor11Field& a);

 private:
  ModelPtr model_;
  Fn fn_;
  std::string label_;
  std::optional<ComponentData> data_;
};

class OneForm {
 public:
  using Fn = std::function<JetVec(const Point&)>;
  OneForm(ModelPtr model, Fn fn, std::string label = {});

  static OneForm constant(ModelPtr model, const std::vector<double>& comps,
                          std::string label = {});
  static OneForm polynomial(ModelPtr model, ComponentData comps, std::string label = {});

  JetVec jets(const Point& p) const;
  Eigen::VectorXd at(const Point& p) const { return values(jets(p)); }
  ScalarField operator()(const VectorField& x) const;
  const ModelPtr& model() const { return model_; }
  const std::string& label() const { return label_; }
  const std::optional<ComponentData>& data() const { return data_; }

 private:
  ModelPtr model_;
  Fn fn_;
  std::string label_;
  std::optional<ComponentData> data_;
};

/// Symmetric (0,2)-tensor field; entry (i, j) is g(E_i, E_j).
class MetricField {
 public:
  using Fn = std::function<JetMat(const Point&)>;
  MetricField(ModelPtr model, Fn fn, std::string label = {});

  static MetricField constant(ModelPtr model, const Eigen::MatrixXd& m, std::string label = {});
  static MetricField polynomial(ModelPtr model, ComponentData comps, std::string label = {});

  JetMat jets(const Point& p) const;
  Eigen::MatrixXd at(const Point& p) const { return values(jets(p)); }
  const ModelPtr& model() const { return model_; }
  const std::string& label() const { return label_; }
  const std::optional<ComponentData>& data() const { return data_; }

 private:
  ModelPtr model_;
  Fn fn_;
  std::string label_;
  std::optional<ComponentData> data_;
};

/// Throws DimensionError unless both fields live on the same model.
void require_same_model(const ModelPtr& a, const ModelPtr& b);

}  // namespace contactgeo
