#ifndef SLIMCALC_KMS_HPP
#define SLIMCALC_KMS_HPP

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "slimcalc/quadrature.hpp"

namespace slimcalc::kms {

inline constexpr double kBetaInfinity = std::numeric_limits<double>::infinity();

/// Declared decay of a correlator's smooth part.
struct Envelope {
  enum class Kind { Power, Exponential, Compact };
  Kind kind = Kind::Compact;
  double amplitude = 0.0;  // C
  double rate = 1.0;       // alpha (power) or kappa (exponential)
  double support = 0.0;    // half-width, Compact only

  double bound(double t) const;
  /// |g| stays below tol beyond this radius.
  double truncation_radius(double tol) const;
  static Envelope power(double C, double alpha) {
    return {Kind::Power, C, alpha, 0.0};
  }
  static Envelope exponential(double C, double kappa) {
    return {Kind::Exponential, C, kappa, 0.0};
  }
  static Envelope compact(double support, double C = 0.0) {
    return {Kind::Compact, C, 1.0, support};
  }
};

struct DeltaTerm {
  double location = 0.0;
  Complex weight{};
};

/// r * PV 1/(t - t0) content of the smooth channel.
struct PvPole {
  double location = 0.0;
  Complex residue{};
};

/// Correlator of boost time: smooth part with declared envelope, plus
/// explicit delta terms, plus principal-value poles split off analytically
/// so the remaining pointwise part is regular.
class CorrelationFunction {
public:
  std::function<Complex(double)> smooth_regular;  // may be empty (pure deltas)
  Envelope envelope;
  std::vector<DeltaTerm> deltas;
  std::vector<PvPole> pv_poles;
  double beta = kBetaInfinity;  // thermal metadata, when known
  double mass = 0.0;
  // kink/edge locations of the smooth part (quadrature seeds)
  std::vector<double> smooth_breakpoints;
  // radius beyond which the regular part alone is negligible; 0 = use the
  // envelope (the envelope covers the PV pole tails, which transform
  // analytically and must not drive quadrature windows)
  double regular_truncation = 0.0;
  // exact frequency-domain form, when the correlator is a reconstruction
  // whose transform is known analytically (kernel times commutator spectrum);
  // fourier() prefers this over numeric oscillatory quadrature
  std::function<Complex(double)> fourier_direct;

  bool has_smooth() const { return static_cast<bool>(smooth_regular); }
  /// Regular part plus the PV pole terms (valid away from pole locations).
  Complex evaluate_smooth(double t) const;
  CorrelationFunction reversed() const;    // t -> -t
  CorrelationFunction conjugated() const;  // complex conjugate

  /// Max |antisymmetry defect| g(-t) + g(t) on a sample grid, including the
  /// pairing of delta terms (commutator-type correlators should be ~0).
  double antisymmetry_defect(double t_max, std::size_t samples = 64) const;
  /// Max of |g(t)| - envelope bound over a sample grid (<= 0 when declared
  /// envelope holds).
  double envelope_defect(double t_max, std::size_t samples = 128) const;
};

/// Bose / ground-state reconstruction kernel.
struct ThermalKernel {
  double beta = kBetaInfinity;
  enum class Kind { BoseFrequency, CothTime } kind = Kind::BoseFrequency;

  /// 1/(1 - e^{-beta omega}); the positive-frequency indicator at beta = inf.
  double bose(double omega) const;
  /// coth(pi z / beta).
  Complex coth(Complex z) const;
  /// coth(pi z / beta) - beta/(pi z): the pole-free part.
  Complex coth_regular(Complex z) const;
};

/// Fourier transform \int g(t) e^{i omega t} dt of the full correlator
/// (deltas and PV poles analytically, smooth part by oscillatory panels).
Complex fourier(const CorrelationFunction& g, double omega,
                const quad::Options& opt = {});

struct TransformOptions {
  double omega_max = 60.0;      // frequency truncation
  double pv_window = 0.5;       // outermost excision half-width at omega = 0
  std::size_t panels_per_unit = 2;  // frequency panels per unit * max|t|
  double smooth_tol = 3e-11;    // quadrature tolerance for inner transforms
  std::vector<double> eps_sequence = {1e-1, 1e-1 / 3.16227766016838,
                                      1e-2, 1e-2 / 3.16227766016838,
                                      1e-3, 1e-3 / 3.16227766016838, 1e-4};
  int eps_extrapolation_order = 2;
};

/// Two-point function from a commutator through the Bose factor (frequency
/// domain, vp at omega = 0 by symmetric excision with Richardson shrink).
/// Input must not carry PV poles.  Throws NotL1Error when the declared
/// envelope is not integrable.
CorrelationFunction bose_transform(const CorrelationFunction& commutator,
                                   double beta,
                                   const TransformOptions& opt = {});

/// Same reconstruction in the time domain: (i pi / beta) lim_{eps->0}
/// \int coth(pi (t + i eps)/beta) ... with the epsilon sequence extrapolated.
/// Delta terms evaluate the kernel pointwise; agrees with bose_transform.
CorrelationFunction coth_transform(const CorrelationFunction& commutator,
                                   double beta,
                                   const TransformOptions& opt = {});

/// Evaluate the coth reconstruction at fixed regularization eps (no
/// extrapolation); used by smeared pairings across the light cone.
Complex coth_transform_at_eps(const CorrelationFunction& commutator,
                              double beta, double t, double eps,
                              const quad::Options& opt = {});

struct KmsReport {
  std::vector<double> omegas;
  std::vector<double> residuals;  // relative detailed-balance defect
  double max_residual = 0.0;
  double noise_floor = 0.0;
};

/// Detailed balance W+^(omega) = e^{beta omega} W-^(omega) on a grid
/// (frequency form of the KMS boundary condition).  For beta = inf checks
/// that W-^ vanishes on omega > 0.
KmsReport kms_check(const CorrelationFunction& w_plus,
                    const CorrelationFunction& w_minus, double beta,
                    const std::vector<double>& omega_grid,
                    double noise_floor = 1e-9,
                    const quad::Options& opt = {});

struct L1Report {
  bool is_l1 = false;
  double bound = 0.0;          // estimated \int |g|
  double tail_estimate = 0.0;  // extrapolated contribution beyond T_max
  bool distributional = false; // delta terms present
  std::string note;
};

/// Integrate |g| to T_max and extrapolate the tail along the declared
/// envelope; verdict plus bound.
L1Report l1_clustering_check(const CorrelationFunction& g, double t_max,
                             const quad::Options& opt = {});

struct DecaySideReport {
  double alpha_fit = 0.0;       // |g| ~ C/(1+|t|)^alpha tail fit
  bool condition_b = false;     // alpha > sqrt(3)
  bool derivative_envelope_integrable = false;  // condition (a)
  double envelope_integral = 0.0;
};

struct DecayReport {
  DecaySideReport positive, negative;  // t -> +inf / -inf separately
  bool condition_a = false;            // either side admits integrable M
  bool condition_b = false;            // both tails above sqrt(3)
};

/// Tail classifiers for the (L^1, beta) family criteria: power-law fit of
/// |g| with the sqrt(3) threshold, and the monotone envelope of |g'|.
DecayReport decay_condition_check(const CorrelationFunction& g, double t_max,
                                  double derivative_step = 1e-3);

// Correlator interchange format: envelope declaration, delta list, smooth
// sample table (t, Re g, Im g); read back with a cubic-spline smooth part.
void write_correlator(const std::string& path, const CorrelationFunction& g,
                      double t_min, double t_max, std::size_t samples);
CorrelationFunction read_correlator(const std::string& path);

}  // namespace slimcalc::kms

#endif
