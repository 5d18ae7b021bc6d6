#ifndef SLIMCALC_COMMON_HPP
#define SLIMCALC_COMMON_HPP

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace slimcalc {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Input that violates an operation's precondition (dimension mismatch,
/// non-positive scale factor, point outside a region, ...).
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive quadrature failed to reach the requested tolerance.
/// Carries the error estimate that was actually achieved.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved error estimate " +
                           scientific(achieved) + ")"),
        achieved_error(achieved) {}
  static std::string scientific(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
  }
  double achieved_error;
};

/// The lambda -> 0 sequence diverges: no scaling limit for this N.
class NoScalingLimitError : public std::runtime_error {
public:
  explicit NoScalingLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Support of a scaled test function leaves the domain of the distribution.
class DomainEscapeError : public std::runtime_error {
public:
  DomainEscapeError(const std::string& what, double lambda)
      : std::runtime_error(what + " (violating lambda " +
                           std::to_string(lambda) + ")"),
        violating_lambda(lambda) {}
  double violating_lambda;
};

/// Degree estimation got zero pairings or non-power-law behaviour.
class DegenerateInputError : public std::runtime_error {
public:
  explicit DegenerateInputError(const std::string& what)
      : std::runtime_error(what) {}
};
class NonScaledDistributionError : public std::runtime_error {
public:
  NonScaledDistributionError(const std::string& what, double fit_rms)
      : std::runtime_error(what + " (log-log fit RMS " +
                           std::to_string(fit_rms) + ")"),
        rms(fit_rms) {}
  double rms;
};

/// The zero point is not conically regular for the region's closure.
class NotConicallyRegularError : public std::runtime_error {
public:
  explicit NotConicallyRegularError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Correlation function fails the L^1 hypothesis of the reconstruction.
class NotL1Error : public std::runtime_error {
public:
  explicit NotL1Error(const std::string& what) : std::runtime_error(what) {}
};

/// epsilon -> 0 regularization did not converge.
class RegularizationError : public std::runtime_error {
public:
  explicit RegularizationError(const std::string& what)
      : std::runtime_error(what) {}
};

inline double sqr(double x) { return x * x; }

}  // namespace slimcalc

#endif
