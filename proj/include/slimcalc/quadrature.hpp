#ifndef SLIMCALC_QUADRATURE_HPP
#define SLIMCALC_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "slimcalc/common.hpp"

namespace slimcalc::quad {

struct Options {
  double abs_tol = 1e-10;
  std::size_t max_intervals = 20000;
  // Extra initial subdivision points (poles, support edges, ...).
  std::vector<double> breakpoints{};
  // When false, exhausting the interval budget returns the best estimate
  // instead of throwing.
  bool throw_on_failure = true;
};

struct Result {
  Complex value{};
  double error = 0.0;   // accumulated error estimate
  std::size_t evals = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7,K15) on [a, b].
Result integrate(const std::function<Complex(double)>& f, double a, double b,
                 const Options& opt = {});

/// Same rule for real-valued integrands.
Result integrate_real(const std::function<double(double)>& f, double a,
                      double b, const Options& opt = {});

/// \int_a^b f(t) e^{i omega t} dt with panels sized to the oscillation.
Result oscillatory(const std::function<Complex(double)>& f, double a, double b,
                   double omega, const Options& opt = {});

/// Fixed composite Gauss-Legendre nodes for cached transforms: `panels`
/// equal panels on [a, b], `order` nodes each.
struct FixedGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
};
FixedGrid fixed_grid(double a, double b, std::size_t panels,
                     std::size_t order = 24);

/// Nested adaptive integration over an axis-aligned box (dim <= 3).
Result integrate_box(const std::function<Complex(const std::vector<double>&)>& f,
                     const std::vector<double>& lo, const std::vector<double>& hi,
                     const Options& opt = {});

/// k-th derivative by Richardson-extrapolated central differences (k <= 4).
double derivative(const std::function<double(double)>& f, double x, int order,
                  double h0 = 0.05);

}  // namespace slimcalc::quad

#endif
