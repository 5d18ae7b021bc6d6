#ifndef SLIMCALC_TESTFUNCTION_HPP
#define SLIMCALC_TESTFUNCTION_HPP

#include <functional>
#include <memory>
#include <vector>

#include "slimcalc/common.hpp"

namespace slimcalc::dist {

/// Smooth compactly supported test function on R^n.
///
/// The base profile is the standard mollifier exp(-1/(1-|y|^2)) on |y| < 1
/// with y = (x - c)/r, optionally modulated by a polynomial in y_1 and
/// scaled by an amplitude.  Evaluation is bit-exact zero outside |y| < 1.
/// Tensor products of such bumps are test functions on the product space.
class TestFunction {
public:
  /// Mollifier bump: amplitude * p(y_1) * exp(-1/(1-|y|^2)).
  /// poly holds p's coefficients in increasing powers; empty means p = 1.
  static TestFunction bump(std::vector<double> center, double radius,
                           double amplitude = 1.0,
                           std::vector<double> poly = {});
  /// Bump normalized to unit peak value (amplitude e, p = 1).
  static TestFunction bump_unit_peak(std::vector<double> center, double radius);
  /// (f (x) g)(x, y) = f(x) g(y) on R^{nf+ng}.
  static TestFunction tensor(const TestFunction& f, const TestFunction& g);

  int dimension() const { return dim_; }
  double operator()(const std::vector<double>& x) const;
  double operator()(double x) const;  // n = 1 convenience

  /// x -> phi(x / lambda); exact in the stored parameters.
  TestFunction scaled(double lambda) const;

  /// Peak value at the (scaled) center for a plain bump.
  double peak() const;
  std::vector<double> center() const;
  double radius() const;
  bool is_tensor() const { return !factors_.empty(); }
  const std::vector<TestFunction>& factors() const { return factors_; }

  /// Axis-aligned bounding box of the support.
  void support_box(std::vector<double>& lo, std::vector<double>& hi) const;
  /// Strictly inside the open support?
  bool in_support(const std::vector<double>& x) const;
  /// Point cloud filling the support (for domain checks).
  std::vector<std::vector<double>> support_cloud(std::size_t per_axis) const;

private:
  TestFunction() = default;
  int dim_ = 0;
  // bump data
  std::vector<double> center_;
  double radius_ = 1.0;
  double amplitude_ = 1.0;
  std::vector<double> poly_;
  // tensor data (non-empty means product of factors)
  std::vector<TestFunction> factors_;
};

/// Pointwise-evaluable pairing target; what the quadrature engine consumes.
/// Wraps a TestFunction or a chart-pushforward of one.
struct Probe {
  int dim = 0;
  std::vector<double> lo, hi;                      // support bounding box
  std::function<double(const std::vector<double>&)> eval;
  double operator()(const std::vector<double>& x) const { return eval(x); }
};

Probe to_probe(const TestFunction& f);

}  // namespace slimcalc::dist

#endif
