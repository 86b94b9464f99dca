#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "contactgeo/jet.hpp"

namespace contactgeo {

/// A chart model is a box in R^dim with the coordinate frame (all brackets
/// vanish). A frame model is a Lie algebra frame with constant structure
/// constants; it is homogeneous, so points are only sample tags.
enum class ModelKind { Chart, Frame };

struct Point {
  std::vector<double> x;
  int sample = -1;
};

std::string describe(const Point& p);

inline constexpr std::uint64_t kDefaultSeed = 0x42195;
inline constexpr int kDefaultSamples = 32;

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

/// c^k_ij with [E_i, E_j] = sum_k c^k_ij E_k.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(int dim) : dim_(dim), c_(dim * dim * dim, 0.0) {}

  int dim() const { return dim_; }
  double operator()(int i, int j, int k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  /// Sets [E_i, E_j] = v and [E_j, E_i] = -v.
  void set_bracket(int i, int j, const std::vector<double>& v);
  bool zero() const;

 private:
  int dim_ = 0;
  std::vector<double> c_;
};

class Model {
 public:
  static std::shared_ptr<const Model> chart(std::string name, int dim,
                                            std::vector<Interval> box = {});
  static std::shared_ptr<const Model> frame(std::string name, int dim,
                                            StructureConstants c,
                                            std::vector<std::string> labels = {});

  ModelKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const StructureConstants& constants() const { return c_; }
  double c(int i, int j, int k) const { return c_(i, j, k); }
  const std::vector<Interval>& box() const { return box_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool contains(const Point& p) const;
  /// Throws DomainError for points outside the model.
  void require(const Point& p) const;

  /// Deterministic sample points. Chart samples are uniform in the box;
  /// frame samples are tags.
  std::vector<Point> samples(int count = kDefaultSamples,
                             std::uint64_t seed = kDefaultSeed) const;

  /// Tolerance for theorem checks: frame models are exact up to rounding.
  double default_tolerance() const { return kind_ == ModelKind::Frame ? 1e-10 : 1e-8; }

 private:
  Model() = default;

  ModelKind kind_ = ModelKind::Chart;
  int dim_ = 0;
  std::string name_;
  StructureConstants c_;
  std::vector<Interval> box_;
  std::vector<std::string> labels_;
};

using ModelPtr = std::shared_ptr<const Model>;

struct Monomial {
  double coef = 0.0;
  std::vector<int> exps;
};

/// Polynomial in the chart coordinates, evaluated exactly to second order.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(double c) { if (c != 0.0) terms_.push_back({c, {}}); }  // NOLINT

  static Polynomial coordinate(int dim, int a, double coef = 1.0);

  Polynomial& add(double coef, std::vector<int> exps);
  const std::vector<Monomial>& terms() const { return terms_; }
  int degree() const;
  double eval(const std::vector<double>& x) const;
  Jet jet(const std::vector<double>& x) const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b);
  friend Polynomial operator-(Polynomial a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  std::vector<Monomial> terms_;
};

}  // namespace contactgeo
