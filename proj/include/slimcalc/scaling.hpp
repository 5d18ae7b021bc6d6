#ifndef SLIMCALC_SCALING_HPP
#define SLIMCALC_SCALING_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slimcalc/distribution.hpp"
#include "slimcalc/geometry_fwd.hpp"

namespace slimcalc::scaling {

/// Power-law scaling function N(lambda) = c * lambda^(-alpha).
struct ScalingFunction {
  double coefficient = 1.0;  // c > 0
  double exponent = 0.0;     // alpha

  double operator()(double lambda) const;
  static ScalingFunction one() { return {1.0, 0.0}; }
  static ScalingFunction power(double alpha, double c = 1.0) {
    return {c, alpha};
  }
  /// Parse "lambda^-2", "3*lambda^-2", "1".
  static ScalingFunction parse(const std::string& text);
};

/// Geometric grid lambda_k = start * ratio^k, k = 0..count-1.
std::vector<double> lambda_grid(double start = 1.0, double ratio = 0.5,
                                std::size_t count = 14);

struct SlimOptions {
  std::vector<double> lambdas = lambda_grid();
  int extrapolation_order = 2;
  quad::Options quadrature{};
  // Optional domain of the distribution; when set, the support of every
  // scaled probe is checked to stay inside (sampled cloud).
  const geom::Region* domain = nullptr;
};

struct SlimEstimate {
  std::vector<double> lambdas;
  std::vector<Complex> sequence;   // N(lambda) <u, phi_lambda>
  Complex limit{};
  double error = 0.0;              // change over the last refinement
  double fitted_slope = 0.0;       // d log|<u,phi_l>| / d log l (tail fit)
  double fit_rms = 0.0;
  bool converged = false;
  std::string verdict;             // "converged" / "diverged" / "stalled"
};

/// Least-squares slope of log|<u, phi_lambda>| vs log(lambda) over the tail
/// of the grid, averaged over probes with nonzero pairings.  The matching
/// scaling function is N(lambda) = lambda^{-slope}.
double estimate_degree(const dist::GeneralizedFunction& u,
                       const std::vector<dist::TestFunction>& probes,
                       const std::vector<double>& lambdas,
                       const quad::Options& opt = {},
                       double rms_threshold = 0.05);

/// slim(u; N)(phi) = lim_{lambda->0} N(lambda) <u, phi_lambda> by polynomial
/// extrapolation in lambda.  Throws NoScalingLimitError on divergence and
/// DomainEscapeError when the scaled support leaves `domain`.
SlimEstimate slim(const dist::GeneralizedFunction& u, const ScalingFunction& N,
                  const dist::TestFunction& phi, const SlimOptions& opt = {});

struct HomogeneityReport {
  double field_degree = 0.0;  // a with slim(phi_mu) = mu^{n+a} slim(phi)
  std::vector<double> dilations;
  std::vector<double> relative_deviation;
  double max_relative_deviation = 0.0;
};

/// Verify slim(u;N)(phi_mu) = mu^{n+a} slim(u;N)(phi) for mu in `dilations`.
HomogeneityReport check_homogeneity(const dist::GeneralizedFunction& u,
                                    const ScalingFunction& N,
                                    const dist::TestFunction& phi,
                                    double field_degree,
                                    const std::vector<double>& dilations =
                                        {0.5, 1.0 / 3.0, 2.0},
                                    const SlimOptions& opt = {});

/// lim S(lambda)/N(lambda): c_S/c_N when the exponents match, else nothing.
std::optional<double> equivalence_scale(const ScalingFunction& N,
                                        const ScalingFunction& S);

/// Identification map Phi between the tangent space at q and the manifold:
/// Phi(0) = q, Phi'(0) = id, with a pointwise inverse.  Construction checks
/// the defining properties by finite differences and sample round-trips.
class IdentificationMap {
public:
  IdentificationMap(std::function<double(double)> forward,
                    std::function<double(double)> inverse, double base_point);
  double forward(double x) const { return fwd_(x); }
  double inverse(double y) const { return inv_(y); }
  double base() const { return q_; }
  static IdentificationMap identity(double q = 0.0);

private:
  std::function<double(double)> fwd_, inv_;
  double q_;
};

/// <u, Phi_* phi_lambda> with Phi_* f(y) = f(Phi^{-1}(y)); the lambda -> 0
/// limit is chart independent.
SlimEstimate slim_via_chart(const dist::GeneralizedFunction& u,
                            const IdentificationMap& chart,
                            const ScalingFunction& N,
                            const dist::TestFunction& phi,
                            const SlimOptions& opt = {});

/// Per-lambda pairing N(lambda) <u, Phi_* phi_lambda> (for convergence
/// studies of chart independence).
std::vector<Complex> chart_sequence(const dist::GeneralizedFunction& u,
                                    const IdentificationMap& chart,
                                    const ScalingFunction& N,
                                    const dist::TestFunction& phi,
                                    const SlimOptions& opt = {});

/// Canonical representative of the equivalence class [v] = {alpha v}:
/// values scaled so the reference entry has unit modulus.
std::vector<Complex> class_representative(const std::vector<Complex>& pairings,
                                          std::size_t reference_index = 0);

}  // namespace slimcalc::scaling

#endif
