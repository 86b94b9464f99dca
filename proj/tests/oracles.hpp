#pragma once

// Independent reference computations for the tests: finite differences on
// component values only, never on jets.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "contactgeo/fields.hpp"
#include "contactgeo/model.hpp"

namespace oracle {

using contactgeo::ModelPtr;
using contactgeo::Point;
using contactgeo::Polynomial;

inline Point shifted(const Point& p, int a, double step) {
  Point q = p;
  q.x[a] += step;
  q.sample = -1;
  return q;
}

/// Central difference of a vector-valued function along coordinate a.
template <class F>
Eigen::VectorXd partial(const F& f, const Point& p, int a, double step = 1e-5) {
  return (f(shifted(p, a, step)) - f(shifted(p, a, -step))) / (2.0 * step);
}

/// [X,Y] = DY X - DX Y on a chart, by central differences of the component
/// values.
inline Eigen::VectorXd bracket(const contactgeo::VectorField& x, const contactgeo::VectorField& y,
                               const Point& p, double step = 1e-5) {
  const Eigen::VectorXd xv = x.at(p), yv = y.at(p);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(xv.size());
  auto fy = [&](const Point& q) { return y.at(q); };
  auto fx = [&](const Point& q) { return x.at(q); };
  for (int a = 0; a < xv.size(); ++a) out += xv(a) * partial(fy, p, a, step) - yv(a) * partial(fx, p, a, step);
  return out;
}

/// Random polynomial of the given degree in `dim` variables with
/// coefficients in [-1, 1].
inline Polynomial random_polynomial(std::mt19937_64& rng, int dim, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Polynomial p(u(rng));
  for (int a = 0; a < dim; ++a) p.add(u(rng), [&] { std::vector<int> e(dim, 0); e[a] = 1; return e; }());
  for (int t = 0; degree >= 2 && t < 2 * dim; ++t) {
    std::vector<int> e(dim, 0);
    std::uniform_int_distribution<int> pick(0, dim - 1);
    const int total = std::uniform_int_distribution<int>(2, degree)(rng);
    for (int s = 0; s < total; ++s) ++e[pick(rng)];
    p.add(u(rng), e);
  }
  return p;
}

inline contactgeo::VectorField random_field(const ModelPtr& m, std::mt19937_64& rng, int degree) {
  contactgeo::ComponentData c;
  for (int k = 0; k < m->dim(); ++k) c.push_back(random_polynomial(rng, m->dim(), degree));
  return contactgeo::VectorField::polynomial(m, c);
}

/// Random (1,1)-tensor with polynomial entries.
inline contactgeo::Tensor11Field random_tensor(const ModelPtr& m, std::mt19937_64& rng, int degree) {
  contactgeo::ComponentData c;
  for (int k = 0; k < m->dim() * m->dim(); ++k) c.push_back(random_polynomial(rng, m->dim(), degree));
  return contactgeo::Tensor11Field::polynomial(m, c);
}

/// [T,T](X,Y) = T^2[X,Y] + [TX,TY] - T[TX,Y] - T[X,TY], every bracket by
/// finite differences.
inline Eigen::VectorXd nijenhuis(const contactgeo::Tensor11Field& t, const contactgeo::VectorField& x,
                                 const contactgeo::VectorField& y, const Point& p) {
  using contactgeo::VectorField;
  const VectorField tx(x.model(), [=](const Point& q) { return t.jets(q) * x.jets(q); });
  const VectorField ty(y.model(), [=](const Point& q) { return t.jets(q) * y.jets(q); });
  const Eigen::MatrixXd tp = t.at(p);
  return tp * tp * bracket(x, y, p) + bracket(tx, ty, p) - tp * bracket(tx, y, p) - tp * bracket(x, ty, p);
}

}  // namespace oracle
