#ifndef SLIMCALC_RINDLER_HPP
#define SLIMCALC_RINDLER_HPP

#include <array>
#include <string>
#include <vector>

#include "slimcalc/kms.hpp"

namespace slimcalc::rindler {

/// Point of the right wedge in boost coordinates: Minkowski image
/// (xi sinh eta, xi cosh eta, xperp), automatically inside x^1 > |x^0|.
struct RindlerPoint {
  double eta = 0.0;
  double xi = 1.0;
  std::array<double, 2> xperp{0.0, 0.0};

  std::array<double, 4> minkowski() const;
  static RindlerPoint from_minkowski(const std::array<double, 4>& x);
};

/// Pair kinematics reduced to boost invariants: the orbit interval is
/// tau^2(s) = 2 xi xi' (cosh s - cosh gamma) with
/// cosh gamma = (xi^2 + xi'^2 + dperp^2) / (2 xi xi').
struct WedgePairGeometry {
  double xi = 1.0;
  double xi_prime = 1.0;
  double dperp = 0.0;

  WedgePairGeometry(double xi_, double xi_prime_, double dperp_);

  double cosh_gamma() const;
  double gamma() const;
  /// 2 xi xi' sinh(gamma): the light-cone crossing Jacobian.
  double crossing_jacobian() const;
  double tau_squared(double s) const;
  /// Dilated geometry (xi, xi', dperp) -> lambda * (...); gamma invariant.
  WedgePairGeometry scaled(double lambda) const;
};

// -- closed forms ----------------------------------------------------------

/// Massive Minkowski vacuum two-point function restricted to the boost
/// orbit, spacelike separation (|s| < gamma):
/// (m / 4 pi^2) K_1(m u)/u with u = sqrt(-tau^2(s)); massless limit
/// -1/(4 pi^2 tau^2(s)).
Complex vacuum_orbit_value(const WedgePairGeometry& g, double m, double s);

/// The explicit massless beta-KMS function: coth kernel on the two light
/// cone crossings,
///   W(s) = [coth(pi(gamma-s)/beta) + coth(pi(gamma+s)/beta)]
///          / (8 pi beta xi xi' sinh gamma),
/// with deltas -+i/(4 pi D) and PV residues -+1/(4 pi^2 D) at s = +-gamma
/// (D = 2 xi xi' sinh gamma).  The prefactor is pinned by the beta = 2pi
/// vacuum restriction; see the derivation note in rindler.cpp.
kms::CorrelationFunction dowker_massless(const WedgePairGeometry& g,
                                         double beta);

// -- pipeline --------------------------------------------------------------

/// Pauli-Jordan commutator along the boost orbit: delta pair at +-gamma with
/// weights -+ i/(4 pi xi xi' sinh gamma), plus for m > 0 the timelike tail
/// i sgn(s) (m / 4 pi tau) J_1(m tau).  Validated by the Klein-Gordon /
/// locality / canonical-normalization oracle in the test suite.
kms::CorrelationFunction commutator_massive(const WedgePairGeometry& g,
                                            double m);

/// Two-point function of the (L^1, beta)-KMS state along the orbit:
/// coth transform of the commutator.
kms::CorrelationFunction wightman_beta(const WedgePairGeometry& g, double beta,
                                       double m,
                                       const kms::TransformOptions& opt = {});

/// Pointwise value at fixed regularization (s -> s - i eps), cheap enough
/// for Monte Carlo sweeps; exact eps -> 0 limit for |s| < gamma as eps -> 0.
Complex wightman_value_at_eps(const WedgePairGeometry& g, double beta,
                              double m, double s, double eps,
                              double quad_tol = 1e-9);

// -- the 4D Pauli-Jordan form behind commutator_massive (oracle surface) ---

/// Smooth (timelike-tail) part of <[phi(x), phi(y)]> at Minkowski separation
/// (t, r): i sgn(t) (m / 4 pi tau) J_1(m tau), tau = sqrt(t^2 - r^2), zero
/// at spacelike separation.  The light-cone delta -(i/2pi) sgn(t) delta(tau^2)
/// is carried analytically by the orbit restriction.
Complex pauli_jordan_tail_4d(double t, double r, double m);

/// Massive vacuum two-point function at Minkowski separation (t, r) with
/// t -> t - i eps (the closed K_1 form, any separation).
Complex vacuum_wightman_4d(double t, double r, double m, double eps = 0.0);

// -- verification reports ---------------------------------------------------

struct HorizonProbe {
  WedgePairGeometry geom{1.0, 2.0, 0.0};
  double s = 0.0;
};

/// Spacelike probe family used by the verification reports.
std::vector<HorizonProbe> default_probes(std::size_t count = 30);

struct ScalingLimitOptions {
  std::vector<double> lambdas = {1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125,
                                 0.015625};
  int extrapolation_order = 2;
  double eps = 1e-4;       // iepsilon for pointwise evaluation
  double quad_tol = 1e-10;
  // smeared Monte Carlo consistency check
  bool run_smeared = true;
  std::size_t mc_samples = 1024;
  std::uint64_t mc_seed = 1234;
};

struct ScalingLimitRow {
  HorizonProbe probe;
  std::vector<Complex> scaled_values;  // lambda^2 W_{beta,m}(lambda geom)(s)
  Complex extrapolated{};
  Complex reference{};                 // W_{beta,0}(geom)(s)
  double deviation = 0.0;
  bool converged = false;
};

struct ScalingLimitReport {
  double beta = 2.0 * kPi;
  double mass = 1.0;
  std::vector<double> lambdas;
  std::vector<ScalingLimitRow> rows;
  double max_deviation = 0.0;
  // smeared pairing consistency: |smeared difference| vs 3 sigma_MC
  double smeared_difference = 0.0;
  double smeared_sigma = 0.0;
  bool smeared_consistent = true;
};

/// Theorem content: lambda^2 W_{beta,m}(lambda geom)(s) -> W_{beta,0}(geom)(s)
/// as lambda -> 0, pointwise over the probes plus a low-resolution smeared
/// Monte Carlo pairing in the 8-dimensional pair space.
ScalingLimitReport scaling_limit_horizon(double beta, double m,
                                         const std::vector<HorizonProbe>& probes,
                                         const ScalingLimitOptions& opt = {});

struct SlcReport {
  double beta = 0.0;
  double max_ratio_deviation = 0.0;  // sup |R - 1| over the probe grid
  double ratio_variation = 0.0;      // max |R_i - R_j| / |R|
  bool satisfied = false;
};

/// Scaling Limit Condition: W_{beta,0}(s) / [-(2pi)^{-2} / tau^2(s)] must be
/// identically 1; satisfied iff beta = 2 pi.
SlcReport slc_check(double beta, const std::vector<HorizonProbe>& probes,
                    double tolerance = 1e-6);

struct BetaIndependenceOptions {
  double lambda_small = 0.015625;  // scaling-limit stand-in dilation
  std::vector<double> eps_list = {3e-2, 1.5e-2, 7.5e-3, 3.75e-3};
  double quad_tol = 1e-9;
};

struct BetaIndependenceReport {
  std::vector<double> betas;
  // smeared pairings of the antisymmetric part, one row per probe function
  std::vector<std::vector<Complex>> antisymmetric;  // [probe][beta]
  std::vector<std::vector<Complex>> symmetric;      // [probe][beta]
  std::vector<Complex> antisym_closed_form;         // commutator pairing
  double max_antisym_spread = 0.0;     // sup over probes, beta pairs
  double max_antisym_vs_closed = 0.0;  // against the massless commutator
  double min_sym_spread_rel = 0.0;     // min over probes of max pairwise rel diff
};

/// The commutator part of the scaling limit is the same for every beta while
/// the symmetric part is genuinely beta-dependent.
BetaIndependenceReport antisymmetric_part_beta_independence(
    const std::vector<double>& betas, double m,
    const std::vector<WedgePairGeometry>& geoms,
    const BetaIndependenceOptions& opt = {});

struct L1FamilyRow {
  double beta = 0.0;
  kms::L1Report l1;
  kms::DecayReport decay;
  bool distributional = false;
};

struct L1FamilyReport {
  std::vector<L1FamilyRow> rows;
  bool all_l1 = true;
};

/// L1 / decay classifiers across the KMS family (the numerical face of the
/// "all regular quasi-free KMS states are L1" statement).
L1FamilyReport l1_family_report(const std::vector<double>& betas, double m,
                                const WedgePairGeometry& geom,
                                double t_max = 40.0);

// -- mode-sum oracle ---------------------------------------------------------

struct ModeSumOptions {
  double k_max = 45.0;
  std::size_t k_panels = 30;
  struct Block {
    double w_lo, w_hi;
    double contour_offset;  // y0 = pi - offset
    double x_halfwidth;
    std::size_t x_panels, w_panels;
  };
  std::vector<Block> blocks = {{1e-9, 100.0, 0.25, 18.0, 110, 70},
                               {100.0, 200.0, 0.12, 15.0, 150, 70},
                               {200.0, 300.0, 0.07, 14.0, 200, 70}};
  std::vector<double> eps_list = {0.14, 0.105, 0.079, 0.059, 0.044, 0.033};
  int extrapolation_order = 3;
  std::size_t gl_order = 48;
};

/// Independent construction of W_beta from the Fulling mode decomposition:
/// normalization sinh(pi w)/(4 pi^4), transverse k integral, thermal
/// occupation, with the Macdonald product sinh(pi w) K_{iw}(a) K_{iw}(b)
/// evaluated on a shifted contour for numerical stability at large w.
class ModeSum {
public:
  ModeSum(const WedgePairGeometry& g, double m, ModeSumOptions opt = {});
  /// Thermal expectation at inverse temperature beta and boost time s
  /// (spacelike |s| < gamma for absolute convergence).
  Complex value(double beta, double s) const;

private:
  ModeSumOptions opt_;
  std::vector<double> omega_nodes_, omega_weights_;
  std::vector<Complex> spectral_;  // sinh(pi w) Q(w) per node
};

/// K_0 of a complex argument, Re z > 0 (series / asymptotic switch).
Complex k0_complex(Complex z);
/// Macdonald function of imaginary order K_{i omega}(x) by the cosh-integral
/// (direct route; stable for moderate omega).
double macdonald_i_omega(double omega, double x);

// -- probe-set file ----------------------------------------------------------

struct ProbeRecord {
  double xi, xi_prime, dperp, beta, mass;
  std::vector<double> s_values;
};
std::vector<ProbeRecord> read_probe_file(const std::string& path);
void write_probe_file(const std::string& path,
                      const std::vector<ProbeRecord>& records);

}  // namespace slimcalc::rindler

#endif
