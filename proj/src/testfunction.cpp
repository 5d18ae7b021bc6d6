#include "slimcalc/testfunction.hpp"

#include <cmath>

namespace slimcalc::dist {

TestFunction TestFunction::bump(std::vector<double> center, double radius,
                                double amplitude, std::vector<double> poly) {
  if (center.empty()) throw InputError("bump: empty center");
  if (!(radius > 0.0)) throw InputError("bump: radius must be positive");
  TestFunction f;
  f.dim_ = static_cast<int>(center.size());
  f.center_ = std::move(center);
  f.radius_ = radius;
  f.amplitude_ = amplitude;
  f.poly_ = std::move(poly);
  return f;
}

TestFunction TestFunction::bump_unit_peak(std::vector<double> center,
                                          double radius) {
  return bump(std::move(center), radius, std::exp(1.0));
}

TestFunction TestFunction::tensor(const TestFunction& f, const TestFunction& g) {
  TestFunction t;
  t.dim_ = f.dim_ + g.dim_;
  // Flatten so nested tensors stay a simple factor list.
  auto append = [&t](const TestFunction& h) {
    if (h.is_tensor())
      t.factors_.insert(t.factors_.end(), h.factors_.begin(), h.factors_.end());
    else
      t.factors_.push_back(h);
  };
  append(f);
  append(g);
  return t;
}

double TestFunction::operator()(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw InputError("test function: dimension mismatch");
  if (is_tensor()) {
    double prod = 1.0;
    std::size_t off = 0;
    for (const TestFunction& f : factors_) {
      std::vector<double> part(x.begin() + static_cast<long>(off),
                               x.begin() + static_cast<long>(off) +
                                   f.dim_);
      const double v = f(part);
      if (v == 0.0) return 0.0;
      prod *= v;
      off += static_cast<std::size_t>(f.dim_);
    }
    return prod;
  }
  double r2 = 0.0;
  for (int i = 0; i < dim_; ++i) r2 += sqr((x[static_cast<std::size_t>(i)] -
                                            center_[static_cast<std::size_t>(i)]) /
                                           radius_);
  if (r2 >= 1.0) return 0.0;  // compact support, exact zero
  double p = 1.0;
  if (!poly_.empty()) {
    const double y1 = (x[0] - center_[0]) / radius_;
    p = 0.0;
    for (std::size_t k = poly_.size(); k-- > 0;) p = p * y1 + poly_[k];
  }
  return amplitude_ * p * std::exp(-1.0 / (1.0 - r2));
}

double TestFunction::operator()(double x) const {
  return (*this)(std::vector<double>{x});
}

TestFunction TestFunction::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw InputError("scale: lambda must be positive");
  TestFunction f(*this);
  if (is_tensor()) {
    for (TestFunction& g : f.factors_) g = g.scaled(lambda);
    return f;
  }
  // phi(x/lambda): center -> lambda c, radius -> lambda r, same profile.
  for (double& c : f.center_) c *= lambda;
  f.radius_ = radius_ * lambda;
  return f;
}

double TestFunction::peak() const {
  if (is_tensor()) {
    double p = 1.0;
    for (const TestFunction& f : factors_) p *= f.peak();
    return p;
  }
  const double p0 = poly_.empty() ? 1.0 : poly_[0];
  return amplitude_ * p0 * std::exp(-1.0);
}

std::vector<double> TestFunction::center() const {
  if (is_tensor()) {
    std::vector<double> c;
    for (const TestFunction& f : factors_) {
      auto fc = f.center();
      c.insert(c.end(), fc.begin(), fc.end());
    }
    return c;
  }
  return center_;
}

double TestFunction::radius() const {
  if (is_tensor()) throw InputError("radius() of a tensor product");
  return radius_;
}

void TestFunction::support_box(std::vector<double>& lo,
                               std::vector<double>& hi) const {
  lo.clear();
  hi.clear();
  if (is_tensor()) {
    for (const TestFunction& f : factors_) {
      std::vector<double> flo, fhi;
      f.support_box(flo, fhi);
      lo.insert(lo.end(), flo.begin(), flo.end());
      hi.insert(hi.end(), fhi.begin(), fhi.end());
    }
    return;
  }
  for (int i = 0; i < dim_; ++i) {
    lo.push_back(center_[static_cast<std::size_t>(i)] - radius_);
    hi.push_back(center_[static_cast<std::size_t>(i)] + radius_);
  }
}

bool TestFunction::in_support(const std::vector<double>& x) const {
  if (is_tensor()) {
    std::size_t off = 0;
    for (const TestFunction& f : factors_) {
      std::vector<double> part(x.begin() + static_cast<long>(off),
                               x.begin() + static_cast<long>(off) + f.dim_);
      if (!f.in_support(part)) return false;
      off += static_cast<std::size_t>(f.dim_);
    }
    return true;
  }
  double r2 = 0.0;
  for (int i = 0; i < dim_; ++i)
    r2 += sqr((x[static_cast<std::size_t>(i)] -
               center_[static_cast<std::size_t>(i)]) /
              radius_);
  return r2 < 1.0;
}

std::vector<std::vector<double>> TestFunction::support_cloud(
    std::size_t per_axis) const {
  std::vector<double> lo, hi;
  support_box(lo, hi);
  const std::size_t n = lo.size();
  std::vector<std::vector<double>> cloud;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<double> pt(n);
    for (std::size_t i = 0; i < n; ++i)
      pt[i] = lo[i] + (hi[i] - lo[i]) * (static_cast<double>(idx[i]) + 0.5) /
                          static_cast<double>(per_axis);
    if (in_support(pt)) cloud.push_back(pt);
    std::size_t d = 0;
    while (d < n && ++idx[d] == per_axis) idx[d++] = 0;
    if (d == n) break;
  }
  return cloud;
}

Probe to_probe(const TestFunction& f) {
  Probe p;
  p.dim = f.dimension();
  f.support_box(p.lo, p.hi);
  p.eval = [f](const std::vector<double>& x) { return f(x); };
  return p;
}

}  // namespace slimcalc::dist
