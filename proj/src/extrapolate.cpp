#include "slimcalc/extrapolate.hpp"

#include <algorithm>
#include <cmath>

namespace slimcalc {

namespace {

// Neville tableau at x = 0 using the last (order+1) points ending at `last`.
Complex neville_at_zero(const std::vector<double>& xs,
                        const std::vector<Complex>& ys, std::size_t last,
                        int order) {
  const int n = std::min<int>(order + 1, static_cast<int>(last) + 1);
  std::vector<double> x(n);
  std::vector<Complex> p(n);
  for (int i = 0; i < n; ++i) {
    x[i] = xs[last - static_cast<std::size_t>(n - 1 - i)];
    p[i] = ys[last - static_cast<std::size_t>(n - 1 - i)];
  }
  for (int level = 1; level < n; ++level)
    for (int i = 0; i < n - level; ++i)
      p[i] = (x[i + level] * p[i] - x[i] * p[i + 1]) / (x[i + level] - x[i]);
  return p[0];
}

}  // namespace

Extrapolation extrapolate_to_zero(const std::vector<double>& xs,
                                  const std::vector<Complex>& ys, int order) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw InputError("extrapolate_to_zero needs matching sequences, >= 2 points");
  Extrapolation out;
  Complex prev = neville_at_zero(xs, ys, 0, order);
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const Complex cur = neville_at_zero(xs, ys, k, order);
    out.residuals.push_back(std::abs(cur - prev));
    prev = cur;
  }
  out.value = prev;
  out.error = out.residuals.empty() ? 0.0 : out.residuals.back();
  const std::size_t m = out.residuals.size();
  out.converged =
      m >= 3 && out.residuals[m - 1] <= out.residuals[m - 2] &&
      out.residuals[m - 2] <= out.residuals[m - 3];
  // A sequence that is constant to rounding is converged as well.
  if (!out.converged && m >= 2 && out.residuals[m - 1] < 1e-13 &&
      out.residuals[m - 2] < 1e-13)
    out.converged = true;
  return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InputError("fit_line needs matching vectors, >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  const double det = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    ss += sqr(y[i] - f.intercept - f.slope * x[i]);
  f.rms = std::sqrt(ss / n);
  return f;
}

}  // namespace slimcalc
