#include "contactgeo/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "contactgeo/errors.hpp"

namespace contactgeo {

std::string describe(const Point& p) {
  std::ostringstream os;
  if (p.x.empty()) {
    os << "sample " << p.sample;
    return os.str();
  }
  os << "(";
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    if (i) os << ", ";
    os << p.x[i];
  }
  os << ")";
  return os.str();
}

void StructureConstants::set_bracket(int i, int j, const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != dim_) throw DimensionError("bracket vector size");
  if (i == j) throw DomainError("[E_i, E_i] must vanish");
  for (int k = 0; k < dim_; ++k) {
    c_[(i * dim_ + j) * dim_ + k] = v[k];
    c_[(j * dim_ + i) * dim_ + k] = -v[k];
  }
}

bool StructureConstants::zero() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

ModelPtr Model::chart(std::string name, int dim, std::vector<Interval> box) {
  if (dim < 1 || dim > kMaxDim) throw DimensionError("chart dimension out of range");
  if (box.empty()) box.assign(dim, Interval{});
  if (static_cast<int>(box.size()) != dim) throw DimensionError("box size");
  for (const auto& iv : box)
    if (!(iv.lo < iv.hi)) throw DomainError("empty chart interval");
  auto m = std::shared_ptr<Model>(new Model());
  m->kind_ = ModelKind::Chart;
  m->dim_ = dim;
  m->name_ = std::move(name);
  m->c_ = StructureConstants(dim);
  m->box_ = std::move(box);
  return m;
}

ModelPtr Model::frame(std::string name, int dim, StructureConstants c,
                      std::vector<std::string> labels) {
  if (dim < 1 || dim > kMaxDim) throw DimensionError("frame dimension out of range");
  if (c.dim() != dim) throw DimensionError("structure constants dimension");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        if (c(i, j, k) != -c(j, i, k)) throw DomainError("structure constants not antisymmetric");
  if (labels.empty())
    for (int i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
  auto m = std::shared_ptr<Model>(new Model());
  m->kind_ = ModelKind::Frame;
  m->dim_ = dim;
  m->name_ = std::move(name);
  m->c_ = std::move(c);
  m->labels_ = std::move(labels);
  return m;
}

bool Model::contains(const Point& p) const {
  if (kind_ == ModelKind::Frame) return p.x.empty() || static_cast<int>(p.x.size()) == dim_;
  if (static_cast<int>(p.x.size()) != dim_) return false;
  for (int a = 0; a < dim_; ++a)
    if (!(p.x[a] >= box_[a].lo && p.x[a] <= box_[a].hi)) return false;
  return true;
}

void Model::require(const Point& p) const {
  if (!contains(p)) throw DomainError("point " + describe(p) + " is outside model " + name_);
}

std::vector<Point> Model::samples(int count, std::uint64_t seed) const {
  if (count < 1) throw DomainError("sample count must be positive");
  std::vector<Point> pts(count);
  std::mt19937_64 rng(seed);
  for (int s = 0; s < count; ++s) {
    pts[s].sample = s;
    if (kind_ == ModelKind::Frame) continue;
    pts[s].x.resize(dim_);
    for (int a = 0; a < dim_; ++a) {
      // 53 random bits mapped to [0, 1); avoids implementation-defined
      // distribution classes so samples agree across standard libraries.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      pts[s].x[a] = box_[a].lo + u * (box_[a].hi - box_[a].lo);
    }
  }
  return pts;
}

// ─── Polynomials ───

Polynomial Polynomial::coordinate(int dim, int a, double coef) {
  std::vector<int> e(dim, 0);
  e.at(a) = 1;
  Polynomial p;
  p.add(coef, std::move(e));
  return p;
}

Polynomial& Polynomial::add(double coef, std::vector<int> exps) {
  for (int e : exps)
    if (e < 0) throw DomainError("negative exponent");
  while (!exps.empty() && exps.back() == 0) exps.pop_back();
  if (coef == 0.0) return *this;
  for (auto& t : terms_) {
    if (t.exps == exps) {
      t.coef += coef;
      return *this;
    }
  }
  terms_.push_back({coef, std::move(exps)});
  return *this;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (int e : t.exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// Product of x_b^{e_b} with the exponents of a and b lowered by the given
// amounts; returns 0 when an exponent would go negative.
double lowered(const Monomial& t, const std::vector<double>& x, int a, int b) {
  double r = t.coef;
  for (std::size_t c = 0; c < t.exps.size(); ++c) {
    int e = t.exps[c];
    double f = 1.0;
    if (static_cast<int>(c) == a) {
      f *= e;
      --e;
    }
    if (static_cast<int>(c) == b) {
      if (e <= 0) return 0.0;
      f *= e;
      --e;
    }
    if (e < 0) return 0.0;
    r *= f * ipow(x[c], e);
  }
  if (a >= static_cast<int>(t.exps.size()) && a >= 0) return 0.0;
  if (b >= static_cast<int>(t.exps.size()) && b >= 0) return 0.0;
  return r;
}

}  // namespace

double Polynomial::eval(const std::vector<double>& x) const {
  double v = 0.0;
  for (const auto& t : terms_) v += lowered(t, x, -1, -1);
  return v;
}

Jet Polynomial::jet(const std::vector<double>& x) const {
  for (const auto& t : terms_)
    if (t.exps.size() > x.size()) throw DimensionError("polynomial uses more coordinates than the point has");
  const int n = static_cast<int>(x.size());
  std::array<double, kMaxDim> g{};
  std::array<double, kMaxDim * kMaxDim> h{};
  double v = 0.0;
  for (const auto& t : terms_) {
    v += lowered(t, x, -1, -1);
    for (int a = 0; a < n; ++a) {
      g[a] += lowered(t, x, a, -1);
      for (int b = 0; b < n; ++b) h[a * kMaxDim + b] += lowered(t, x, a, b);
    }
  }
  Jet j;
  j.set(v, g, h, 2, degree(), n);
  return j;
}

Polynomial operator+(Polynomial a, const Polynomial& b) {
  for (const auto& t : b.terms_) a.add(t.coef, t.exps);
  return a;
}

Polynomial operator-(Polynomial a, const Polynomial& b) {
  for (const auto& t : b.terms_) a.add(-t.coef, t.exps);
  return a;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      std::vector<int> e(std::max(s.exps.size(), t.exps.size()), 0);
      for (std::size_t i = 0; i < s.exps.size(); ++i) e[i] += s.exps[i];
      for (std::size_t i = 0; i < t.exps.size(); ++i) e[i] += t.exps[i];
      r.add(s.coef * t.coef, std::move(e));
    }
  }
  return r;
}

}  // namespace contactgeo
