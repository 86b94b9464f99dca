#include "contactgeo/fields.hpp"

#include "contactgeo/errors.hpp"

namespace contactgeo {

Eigen::VectorXd values(const JetVec& v) {
  Eigen::VectorXd r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].value();
  return r;
}

Eigen::MatrixXd values(const JetMat& m) {
  Eigen::MatrixXd r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).value();
  return r;
}

void require_same_model(const ModelPtr& a, const ModelPtr& b) {
  if (a != b) throw DimensionError("fields live on different models");
}

namespace {

void require_size(const ModelPtr& m, std::size_t n, std::size_t expected, const char* what) {
  if (n != expected) {
    throw DimensionError(std::string(what) + " on " + m->name() + " needs " +
                         std::to_string(expected) + " components, got " + std::to_string(n));
  }
}

JetVec eval_vector(const ComponentData& d, const Point& p) {
  JetVec v(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) v[i] = d[i].jet(p.x);
  return v;
}

JetMat eval_matrix(const ComponentData& d, int n, const Point& p) {
  JetMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = d[i * n + j].jet(p.x);
  return m;
}

ComponentData constant_data(const Eigen::MatrixXd& m) {
  ComponentData d;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) d.emplace_back(m(i, j));
  return d;
}

}  // namespace

// ─── ScalarField ───

Jet ScalarField::jet(const Point& p) const {
  model_->require(p);
  return fn_(p);
}

// ─── VectorField ───

VectorField::VectorField(ModelPtr model, Fn fn, std::string label)
    : model_(std::move(model)), fn_(std::move(fn)), label_(std::move(label)) {}

VectorField VectorField::constant(ModelPtr model, const std::vector<double>& comps,
                                  std::string label) {
  ComponentData d(comps.begin(), comps.end());
  return polynomial(std::move(model), std::move(d), std::move(label));
}

VectorField VectorField::polynomial(ModelPtr model, ComponentData comps, std::string label) {
  require_size(model, comps.size(), model->dim(), "vector field");
  VectorField v(model, [comps](const Point& p) { return eval_vector(comps, p); },
                std::move(label));
  v.data_ = std::move(comps);
  return v;
}

VectorField VectorField::basis(ModelPtr model, int i) {
  if (i < 0 || i >= model->dim()) throw DimensionError("basis index out of range");
  std::vector<double> c(model->dim(), 0.0);
  c[i] = 1.0;
  std::string label = model->kind() == ModelKind::Frame ? model->labels()[i]
                                                         : "d/dx" + std::to_string(i);
  return constant(std::move(model), c, std::move(label));
}

JetVec VectorField::jets(const Point& p) const {
  model_->require(p);
  JetVec v = fn_(p);
  require_size(model_, v.size(), model_->dim(), "vector field");
  return v;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_model(a.model_, b.model_);
  return VectorField(a.model_, [a, b](const Point& p) { return a.jets(p) + b.jets(p); },
                     a.label_ + "+" + b.label_);
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  require_same_model(a.model_, b.model_);
  return VectorField(a.model_, [a, b](const Point& p) { return a.jets(p) - b.jets(p); },
                     a.label_ + "-" + b.label_);
}

VectorField operator*(double s, const VectorField& a) {
  return VectorField(a.model_, [s, a](const Point& p) { return Jet(s) * a.jets(p); },
                     a.label_);
}

// ─── Tensor11Field ───

Tensor11Field::Tensor11Field(ModelPtr model, Fn fn, std::string label)
    : model_(std::move(model)), fn_(std::move(fn)), label_(std::move(label)) {}

Tensor11Field Tensor11Field::identity(ModelPtr model) {
  return constant(model, Eigen::MatrixXd::Identity(model->dim(), model->dim()), "I");
}

Tensor11Field Tensor11Field::zero(ModelPtr model) {
  return constant(model, Eigen::MatrixXd::Zero(model->dim(), model->dim()), "0");
}

Tensor11Field Tensor11Field::constant(ModelPtr model, const Eigen::MatrixXd& m,
                                      std::string label) {
  if (m.rows() != model->dim() || m.cols() != model->dim())
    throw DimensionError("tensor matrix shape");
  return polynomial(std::move(model), constant_data(m), std::move(label));
}

Tensor11Field Tensor11Field::polynomial(ModelPtr model, ComponentData comps, std::string label) {
  const int n = model->dim();
  require_size(model, comps.size(), static_cast<std::size_t>(n * n), "(1,1)-tensor");
  Tensor11Field t(model, [comps, n](const Point& p) { return eval_matrix(comps, n, p); },
                  std::move(label));
  t.data_ = std::move(comps);
  return t;
}

Tensor11Field Tensor11Field::outer(const VectorField& x, const OneForm& omega) {
  require_same_model(x.model(), omega.model());
  return Tensor11Field(x.model(), [x, omega](const Point& p) {
    return contactgeo::outer(x.jets(p), omega.jets(p));
  });
}

JetMat Tensor11Field::jets(const Point& p) const {
  model_->require(p);
  JetMat m = fn_(p);
  if (m.rows() != model_->dim() || m.cols() != model_->dim())
    throw DimensionError("(1,1)-tensor evaluated to the wrong shape");
  return m;
}

Tensor11Field operator*(const Tensor11Field& a, const Tensor11Field& b) {
  require_same_model(a.model_, b.model_);
  return Tensor11Field(a.model_, [a, b](const Point& p) { return a.jets(p) * b.jets(p); },
                       a.label_ + b.label_);
}

VectorField operator*(const Tensor11Field& a, const VectorField& x) {
  require_same_model(a.model_, x.model());
  return VectorField(a.model_, [a, x](const Point& p) { return a.jets(p) * x.jets(p); },
                     a.label_ + x.label());
}

Tensor11Field operator+(const Tensor11Field& a, const Tensor11Field& b) {
  require_same_model(a.model_, b.model_);
  return Tensor11Field(a.model_, [a, b](const Point& p) { return a.jets(p) + b.jets(p); },
                       a.label_ + "+" + b.label_);
}

Tensor11Field operator-(const Tensor11Field& a, const Tensor11Field& b) {
  require_same_model(a.model_, b.model_);
  return Tensor11Field(a.model_, [a, b](const Point& p) { return a.jets(p) - b.jets(p); },
                       a.label_ + "-" + b.label_);
}

Tensor11Field operator*(double s, const Tensor11Field& a) {
  return Tensor11Field(a.model_, [s, a](const Point& p) { return Jet(s) * a.jets(p); },
                       a.label_);
}

// ─── OneForm ───

OneForm::OneForm(ModelPtr model, Fn fn, std::string label)
    : model_(std::move(model)), fn_(std::move(fn)), label_(std::move(label)) {}

OneForm OneForm::constant(ModelPtr model, const std::vector<double>& comps, std::string label) {
  ComponentData d(comps.begin(), comps.end());
  return polynomial(std::move(model), std::move(d), std::move(label));
}

OneForm OneForm::polynomial(ModelPtr model, ComponentData comps, std::string label) {
  require_size(model, comps.size(), model->dim(), "one-form");
  OneForm f(model, [comps](const Point& p) { return eval_vector(comps, p); }, std::move(label));
  f.data_ = std::move(comps);
  return f;
}

JetVec OneForm::jets(const Point& p) const {
  model_->require(p);
  JetVec v = fn_(p);
  require_size(model_, v.size(), model_->dim(), "one-form");
  return v;
}

ScalarField OneForm::operator()(const VectorField& x) const {
  require_same_model(model_, x.model());
  OneForm self = *this;
  return ScalarField(model_, [self, x](const Point& p) { return dot(self.jets(p), x.jets(p)); });
}

// ─── MetricField ───

MetricField::MetricField(ModelPtr model, Fn fn, std::string label)
    : model_(std::move(model)), fn_(std::move(fn)), label_(std::move(label)) {}

MetricField MetricField::constant(ModelPtr model, const Eigen::MatrixXd& m, std::string label) {
  if (m.rows() != model->dim() || m.cols() != model->dim())
    throw DimensionError("metric matrix shape");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 0.0) throw DomainError("metric not symmetric");
  return polynomial(std::move(model), constant_data(m), std::move(label));
}

MetricField MetricField::polynomial(ModelPtr model, ComponentData comps, std::string label) {
  const int n = model->dim();
  require_size(model, comps.size(), static_cast<std::size_t>(n * n), "metric");
  MetricField g(model, [comps, n](const Point& p) { return eval_matrix(comps, n, p); },
                std::move(label));
  g.data_ = std::move(comps);
  return g;
}

JetMat MetricField::jets(const Point& p) const {
  model_->require(p);
  JetMat m = fn_(p);
  if (m.rows() != model_->dim() || m.cols() != model_->dim())
    throw DimensionError("metric evaluated to the wrong shape");
  return m;
}

}  // namespace contactgeo
