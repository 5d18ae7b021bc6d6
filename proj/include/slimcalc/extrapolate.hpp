#ifndef SLIMCALC_EXTRAPOLATE_HPP
#define SLIMCALC_EXTRAPOLATE_HPP

#include <vector>

#include "slimcalc/common.hpp"

namespace slimcalc {

struct Extrapolation {
  Complex value{};        // polynomial value at x = 0
  double error = 0.0;     // change over the last refinement
  bool converged = false; // residuals monotone decreasing over last 3 steps
  std::vector<double> residuals;  // |E_k - E_{k-1}| per added point
};

/// Polynomial-in-x extrapolation of f(x_k) to x = 0 (Neville on the tail of
/// the sequence, `order`+1 points).  xs must be positive and decreasing.
Extrapolation extrapolate_to_zero(const std::vector<double>& xs,
                                  const std::vector<Complex>& ys, int order);

/// Least-squares straight line y = a + b x; returns {a, b, rms}.
struct LineFit {
  double intercept = 0.0, slope = 0.0, rms = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace slimcalc

#endif
