#include "slimcalc/rindler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "slimcalc/extrapolate.hpp"
#include "slimcalc/parallel.hpp"
#include "slimcalc/rng.hpp"
#include "slimcalc/testfunction.hpp"

namespace slimcalc::rindler {

std::array<double, 4> RindlerPoint::minkowski() const {
  return {xi * std::sinh(eta), xi * std::cosh(eta), xperp[0], xperp[1]};
}

RindlerPoint RindlerPoint::from_minkowski(const std::array<double, 4>& x) {
  if (!(x[1] > std::abs(x[0])))
    throw InputError("point outside the right wedge");
  RindlerPoint p;
  p.xi = std::sqrt(x[1] * x[1] - x[0] * x[0]);
  p.eta = std::atanh(x[0] / x[1]);
  p.xperp = {x[2], x[3]};
  return p;
}

WedgePairGeometry::WedgePairGeometry(double xi_, double xi_prime_,
                                     double dperp_)
    : xi(xi_), xi_prime(xi_prime_), dperp(dperp_) {
  if (!(xi > 0.0) || !(xi_prime > 0.0) || dperp < 0.0)
    throw InputError("wedge pair geometry: need xi, xi' > 0 and dperp >= 0");
  if (cosh_gamma() < 1.0 + 1e-14)
    throw InputError(
        "wedge pair geometry: coincident boost orbit (gamma = 0) is singular");
}

double WedgePairGeometry::cosh_gamma() const {
  return (xi * xi + xi_prime * xi_prime + dperp * dperp) /
         (2.0 * xi * xi_prime);
}

double WedgePairGeometry::gamma() const { return std::acosh(cosh_gamma()); }

double WedgePairGeometry::crossing_jacobian() const {
  return 2.0 * xi * xi_prime * std::sinh(gamma());
}

double WedgePairGeometry::tau_squared(double s) const {
  return 2.0 * xi * xi_prime * (std::cosh(s) - cosh_gamma());
}

WedgePairGeometry WedgePairGeometry::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw InputError("geometry scaling: lambda must be > 0");
  return WedgePairGeometry(lambda * xi, lambda * xi_prime, lambda * dperp);
}

Complex vacuum_orbit_value(const WedgePairGeometry& g, double m, double s) {
  const double tau2 = g.tau_squared(s);
  if (m == 0.0) {
    if (tau2 == 0.0) throw InputError("vacuum value on the light cone");
    return Complex(-1.0 / (4.0 * kPi * kPi * tau2), 0.0);
  }
  if (!(tau2 < 0.0))
    throw InputError("massive vacuum closed form evaluated at spacelike "
                     "separation only (|s| < gamma)");
  const double u = std::sqrt(-tau2);
  return Complex(m / (4.0 * kPi * kPi) * std::cyl_bessel_k(1.0, m * u) / u,
                 0.0);
}

Complex pauli_jordan_tail_4d(double t, double r, double m) {
  const double tau2 = t * t - r * r;
  if (tau2 <= 0.0 || m == 0.0) return Complex{};  // spacelike or massless
  const double tau = std::sqrt(tau2);
  const double x = m * tau;
  // (m / 4 pi tau) J_1(m tau); series for small argument avoids 0/0
  double amp;
  if (x < 1e-4)
    amp = m * m / (8.0 * kPi) * (1.0 - x * x / 8.0);
  else
    amp = m / (4.0 * kPi * tau) * std::cyl_bessel_j(1.0, x);
  const double sgn = t > 0.0 ? 1.0 : -1.0;
  return Complex(0.0, sgn * amp);
}

Complex vacuum_wightman_4d(double t, double r, double m, double /*eps*/) {
  const double tau2 = t * t - r * r;
  if (m == 0.0) {
    return Complex(-1.0 / (4.0 * kPi * kPi * (-tau2)), 0.0);  // spacelike form
  }
  if (tau2 < 0.0) {
    const double u = std::sqrt(-tau2);
    return Complex(m / (4.0 * kPi * kPi) * std::cyl_bessel_k(1.0, m * u) / u,
                   0.0);
  }
  // timelike branch of K_1(i m tau)/(i tau):
  //   (m / 8 pi tau) (Y_1(m tau) + i sgn(t) J_1(m tau))
  const double tau = std::sqrt(tau2);
  const double sgn = t > 0.0 ? 1.0 : -1.0;
  const double j = std::cyl_bessel_j(1.0, m * tau);
  const double y = std::cyl_neumann(1.0, m * tau);
  return m / (8.0 * kPi * tau) * Complex(y, sgn * j);
}

kms::CorrelationFunction commutator_massive(const WedgePairGeometry& g,
                                            double m) {
  if (m < 0.0) throw InputError("commutator: mass must be >= 0");
  kms::CorrelationFunction c;
  c.mass = m;
  const double gam = g.gamma();
  const double D = g.crossing_jacobian();
  // light-cone crossings of the orbit: delta pair with weights -+ i/(2 pi D)
  c.deltas = {{gam, Complex(0.0, -1.0 / (2.0 * kPi * D))},
              {-gam, Complex(0.0, 1.0 / (2.0 * kPi * D))}};
  if (m > 0.0) {
    const double xi = g.xi, xip = g.xi_prime, cg = g.cosh_gamma();
    c.smooth_regular = [xi, xip, cg, gam, m](double s) -> Complex {
      const double tau2 = 2.0 * xi * xip * (std::cosh(s) - cg);
      if (tau2 <= 0.0) return Complex{};  // vanishes at spacelike separation
      const double tau = std::sqrt(tau2);
      const double x = m * tau;
      double amp;
      if (x < 1e-4)
        amp = m * m / (8.0 * kPi) * (1.0 - x * x / 8.0);
      else
        amp = m / (4.0 * kPi * tau) * std::cyl_bessel_j(1.0, x);
      return Complex(0.0, (s > 0.0 ? amp : -amp));
    };
    // |C(s)| <= amp * e^{-0.7|s|}: tau grows like sqrt(xi xi') e^{|s|/2}, so
    // the true tail is ~ e^{-3|s|/4}; sample the prefactor and pad.
    double amp = 0.0;
    for (int i = 0; i < 160; ++i) {
      const double s = gam + 0.05 + 0.3 * i;
      amp = std::max(amp,
                     std::abs(c.smooth_regular(s)) * std::exp(0.7 * s));
    }
    c.envelope = kms::Envelope::exponential(amp * 1.1 + 1e-300, 0.7);
    c.smooth_breakpoints = {-gam, gam};  // support edges of the tail
  } else {
    c.envelope = kms::Envelope::compact(gam, 0.0);
  }
  return c;
}

kms::CorrelationFunction dowker_massless(const WedgePairGeometry& g,
                                         double beta) {
  if (!(beta > 0.0) || std::isinf(beta))
    throw InputError("dowker form: finite beta > 0 required (the ground "
                     "state uses the positive-frequency kernel)");
  // Coth kernel on the two delta crossings of the massless commutator:
  //   W(s) = [coth(pi(gamma-s)/beta) + coth(pi(gamma+s)/beta)] / (4 pi beta D)
  // with D = 2 xi xi' sinh gamma.  The prefactor is pinned by beta = 2pi:
  //   coth((gamma-z)/2) + coth((gamma+z)/2) = 2 sinh gamma/(cosh gamma-cosh z)
  // turns the pair into sinh gamma / (4 pi^2 D (cosh gamma - cosh z)), which
  // is exactly the massless vacuum -1/(4 pi^2 tau^2(z)).
  kms::CorrelationFunction w;
  w.beta = beta;
  w.mass = 0.0;
  const double gam = g.gamma();
  const double D = g.crossing_jacobian();
  const double pref = 1.0 / (4.0 * kPi * beta * D);
  kms::ThermalKernel kernel{beta, kms::ThermalKernel::Kind::CothTime};
  w.smooth_regular = [pref, gam, kernel](double s) -> Complex {
    return pref * (kernel.coth_regular(Complex(gam - s, 0.0)) +
                   kernel.coth_regular(Complex(gam + s, 0.0)));
  };
  w.deltas = {{gam, Complex(0.0, -1.0 / (4.0 * kPi * D))},
              {-gam, Complex(0.0, 1.0 / (4.0 * kPi * D))}};
  w.pv_poles = {{gam, Complex(-1.0 / (4.0 * kPi * kPi * D), 0.0)},
                {-gam, Complex(1.0 / (4.0 * kPi * kPi * D), 0.0)}};
  // exact spectrum: Bose kernel times the commutator pair transform
  w.fourier_direct = [gam, D, beta](double om) -> Complex {
    kms::ThermalKernel kernel{beta, kms::ThermalKernel::Kind::BoseFrequency};
    const Complex chat = std::sin(om * gam) / (kPi * D);
    if (std::abs(om) < 1e-9) return Complex(gam / (kPi * D * beta), 0.0);
    return kernel.bose(om) * chat;
  };
  w.regular_truncation = gam + 40.0 * beta / (2.0 * kPi) + 5.0;
  double amp = 0.0;
  const double rate = std::min(2.0 * kPi / beta, 2.0) * 0.95;
  for (int i = 1; i <= 14; ++i) {
    const double s = gam + 0.8 * i;
    amp = std::max(amp, std::abs(w.smooth_regular(s)) * std::exp(rate * s));
  }
  w.envelope = kms::Envelope::exponential(amp * 1.2 + 1e-300, rate);
  return w;
}

kms::CorrelationFunction wightman_beta(const WedgePairGeometry& g, double beta,
                                       double m,
                                       const kms::TransformOptions& opt) {
  auto c = commutator_massive(g, m);
  auto w = kms::coth_transform(c, beta, opt);
  w.beta = beta;
  w.mass = m;
  return w;
}

Complex wightman_value_at_eps(const WedgePairGeometry& g, double beta,
                              double m, double s, double eps,
                              double quad_tol) {
  const double gam = g.gamma();
  const double D = g.crossing_jacobian();
  kms::ThermalKernel kernel{beta, kms::ThermalKernel::Kind::CothTime};
  // delta channel in closed form (full coth kernel, poles included):
  // (i/2beta) [w+ coth(pi(gamma-s+i eps)/beta) + w- coth(pi(-gamma-s+i eps)/beta)]
  const Complex wplus(0.0, -1.0 / (2.0 * kPi * D));
  const Complex wminus(0.0, 1.0 / (2.0 * kPi * D));
  Complex value = Complex(0.0, 0.5 / beta) *
                  (wplus * kernel.coth(Complex(gam - s, eps)) +
                   wminus * kernel.coth(Complex(-gam - s, eps)));
  if (m > 0.0) {
    auto c = commutator_massive(g, m);
    const double T = c.envelope.truncation_radius(1e-14);
    quad::Options o;
    o.abs_tol = quad_tol;
    o.breakpoints = {-gam, gam, s};
    for (double f : {3.0, 10.0}) {
      o.breakpoints.push_back(s - f * eps);
      o.breakpoints.push_back(s + f * eps);
    }
    const Complex tail =
        quad::integrate(
            [&](double u) {
              return kernel.coth(Complex(u - s, eps)) * c.smooth_regular(u);
            },
            -T, T, o)
            .value;
    value += Complex(0.0, 0.5 / beta) * tail;
  }
  return value;
}

namespace {

// Spacelike fast path: all kernels regular at eps = 0.
Complex wightman_smooth_spacelike(const WedgePairGeometry& g, double beta,
                                  double m, double s, double quad_tol) {
  const double gam = g.gamma();
  if (!(std::abs(s) < gam))
    throw InputError("spacelike evaluation requires |s| < gamma");
  auto dowker = dowker_massless(g, beta);
  Complex value = dowker.evaluate_smooth(s);
  if (m > 0.0) {
    auto c = commutator_massive(g, m);
    kms::ThermalKernel kernel{beta, kms::ThermalKernel::Kind::CothTime};
    const double T = c.envelope.truncation_radius(1e-15);
    quad::Options o;
    o.abs_tol = quad_tol;
    o.breakpoints = {-gam, gam};
    const Complex tail =
        quad::integrate(
            [&](double u) {
              return kernel.coth(Complex(u - s, 0.0)) * c.smooth_regular(u);
            },
            -T, T, o)
            .value;
    value += Complex(0.0, 0.5 / beta) * tail;
  }
  return value;
}

}  // namespace

std::vector<HorizonProbe> default_probes(std::size_t count) {
  static const std::array<std::array<double, 3>, 6> geoms = {
      {{1.0, 1.0, 1.0},
       {1.0, 1.5, 0.5},
       {0.8, 1.3, 1.1},
       {1.0, 1.0, 2.0},
       {1.2, 0.7, 0.9},
       {0.9, 1.6, 1.4}}};
  static const std::array<double, 6> fracs = {0.2, -0.35, 0.5, -0.6, 0.05,
                                              0.72};
  std::vector<HorizonProbe> out;
  for (std::size_t gi = 0; gi < geoms.size() && out.size() < count; ++gi) {
    WedgePairGeometry g(geoms[gi][0], geoms[gi][1], geoms[gi][2]);
    const double gam = g.gamma();
    for (double f : fracs) {
      if (out.size() >= count) break;
      out.push_back({g, f * gam});
    }
  }
  return out;
}

ScalingLimitReport scaling_limit_horizon(double beta, double m,
                                         const std::vector<HorizonProbe>& probes,
                                         const ScalingLimitOptions& opt) {
  ScalingLimitReport rep;
  rep.beta = beta;
  rep.mass = m;
  rep.lambdas = opt.lambdas;

  rep.rows = par::parallel_map<ScalingLimitRow>(probes.size(), [&](std::size_t p) {
    ScalingLimitRow row{probes[p], {}, {}, {}, 0.0, false};
    const auto& geom = probes[p].geom;
    const double s = probes[p].s;
    row.reference = wightman_smooth_spacelike(geom, beta, 0.0, s, opt.quad_tol);
    for (double l : opt.lambdas) {
      // lambda^2 W needs the inner tolerance relaxed by 1/lambda^2
      const double tol = std::min(opt.quad_tol / (l * l), 1e-5);
      const Complex v =
          wightman_smooth_spacelike(geom.scaled(l), beta, m, s, tol);
      row.scaled_values.push_back(l * l * v);
    }
    const auto ex = extrapolate_to_zero(opt.lambdas, row.scaled_values,
                                        opt.extrapolation_order);
    row.extrapolated = ex.value;
    row.converged = ex.converged;
    row.deviation = std::abs(ex.value - row.reference);
    return row;
  });
  for (const auto& row : rep.rows)
    rep.max_deviation = std::max(rep.max_deviation, row.deviation);

  if (opt.run_smeared && m > 0.0) {
    // Smeared consistency: tensor bumps in the 8-dimensional pair space with
    // spacelike-separated supports; common random numbers across lambdas.
    const std::array<double, 4> cf = {0.0, 2.0, 0.0, 0.0};
    const std::array<double, 4> cg = {0.0, 4.5, 0.0, 0.0};
    const double rf = 0.45, rg = 0.45;
    const dist::TestFunction f =
        dist::TestFunction::bump_unit_peak({cf[0], cf[1], cf[2], cf[3]}, rf);
    const dist::TestFunction h =
        dist::TestFunction::bump_unit_peak({cg[0], cg[1], cg[2], cg[3]}, rg);

    struct Sample {
      WedgePairGeometry geom{1.0, 1.0, 1.0};
      double s = 0.0;
      double weight = 0.0;
    };
    std::vector<Sample> samples;
    samples.reserve(opt.mc_samples);
    std::size_t tries = 0;
    while (samples.size() < opt.mc_samples && tries < opt.mc_samples * 50) {
      const std::size_t i = tries++;
      std::array<double, 4> x{}, y{};
      for (int k = 0; k < 4; ++k) {
        x[static_cast<std::size_t>(k)] =
            cf[static_cast<std::size_t>(k)] +
            rf * (2.0 * rng::uniform(opt.mc_seed, 11, i, static_cast<std::uint64_t>(k)) - 1.0);
        y[static_cast<std::size_t>(k)] =
            cg[static_cast<std::size_t>(k)] +
            rg * (2.0 * rng::uniform(opt.mc_seed, 23, i, static_cast<std::uint64_t>(k)) - 1.0);
      }
      const double fw = f({x[0], x[1], x[2], x[3]});
      const double gw = h({y[0], y[1], y[2], y[3]});
      if (fw == 0.0 || gw == 0.0) continue;
      const auto px = RindlerPoint::from_minkowski(x);
      const auto py = RindlerPoint::from_minkowski(y);
      const double dp = std::hypot(x[2] - y[2], x[3] - y[3]);
      Sample smp;
      smp.geom = WedgePairGeometry(px.xi, py.xi, dp);
      smp.s = px.eta - py.eta;
      smp.weight = fw * gw;
      samples.push_back(smp);
    }
    // per-sample difference lambda^2 W_m(lambda geom) - W_0 at the smallest
    // lambda of the grid; its mean must vanish within Monte Carlo error
    const double l = opt.lambdas.back();
    auto diffs = par::parallel_map<double>(samples.size(), [&](std::size_t i) {
      const auto& smp = samples[i];
      const Complex wm = wightman_value_at_eps(smp.geom.scaled(l), beta, m,
                                               smp.s, opt.eps, 1e-7);
      const Complex w0 =
          wightman_value_at_eps(smp.geom, beta, 0.0, smp.s, opt.eps, 1e-7);
      return smp.weight * (l * l * wm - w0).real();
    });
    double mean = 0.0;
    for (double d : diffs) mean += d;
    mean /= static_cast<double>(diffs.size());
    double var = 0.0;
    for (double d : diffs) var += sqr(d - mean);
    var /= static_cast<double>(diffs.size()) *
           static_cast<double>(diffs.size() - 1);
    rep.smeared_difference = std::abs(mean);
    rep.smeared_sigma = std::sqrt(var);
    rep.smeared_consistent =
        rep.smeared_difference <= 3.0 * rep.smeared_sigma + 1e-6;
  }
  return rep;
}

SlcReport slc_check(double beta, const std::vector<HorizonProbe>& probes,
                    double tolerance) {
  SlcReport rep;
  rep.beta = beta;
  std::vector<double> ratios;
  for (const auto& p : probes) {
    auto w = dowker_massless(p.geom, beta);
    const double target =
        -1.0 / (4.0 * kPi * kPi * p.geom.tau_squared(p.s));
    const double r = w.evaluate_smooth(p.s).real() / target;
    ratios.push_back(r);
    rep.max_ratio_deviation = std::max(rep.max_ratio_deviation,
                                       std::abs(r - 1.0));
  }
  double rmin = ratios[0], rmax = ratios[0];
  for (double r : ratios) {
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  rep.ratio_variation = (rmax - rmin) / std::max(1e-300, std::abs(rmax));
  rep.satisfied = rep.max_ratio_deviation < tolerance;
  return rep;
}

BetaIndependenceReport antisymmetric_part_beta_independence(
    const std::vector<double>& betas, double m,
    const std::vector<WedgePairGeometry>& geoms,
    const BetaIndependenceOptions& opt) {
  BetaIndependenceReport rep;
  rep.betas = betas;
  const double l = opt.lambda_small;

  for (const auto& geom : geoms) {
    const double gam = geom.gamma();
    const double D = geom.crossing_jacobian();
    // probe functions: one covering the +gamma crossing, one spacelike
    const dist::TestFunction phi_cone =
        dist::TestFunction::bump_unit_peak({gam}, 0.35 * gam);
    const dist::TestFunction phi_space =
        dist::TestFunction::bump_unit_peak({0.15 * gam}, 0.4 * gam);

    std::vector<Complex> anti_row, sym_row;
    for (double beta : betas) {
      // scaled stand-in for the scaling limit: lambda^2 W_{beta,m}(lambda .)
      auto value_eps = [&](double s, double eps) {
        return l * l *
               wightman_value_at_eps(geom.scaled(l), beta, m, s, eps,
                                     std::min(opt.quad_tol / (l * l), 1e-5));
      };
      // antisymmetric pairing across the cone crossing, eps extrapolated
      std::vector<Complex> vals;
      for (double eps : opt.eps_list) {
        quad::Options o;
        o.abs_tol = opt.quad_tol;
        o.breakpoints = {gam};
        for (double fct : {3.0, 10.0, 30.0}) {
          o.breakpoints.push_back(gam - fct * eps);
          o.breakpoints.push_back(gam + fct * eps);
        }
        vals.push_back(quad::integrate(
                           [&](double s) {
                             const Complex u = value_eps(s, eps) -
                                               std::conj(value_eps(-s, eps));
                             return u * phi_cone(s);
                           },
                           gam * 0.65, gam * 1.35, o)
                           .value);
      }
      anti_row.push_back(
          extrapolate_to_zero(opt.eps_list, vals, 2).value);
      // symmetric pairing on a spacelike window (regular at eps -> 0)
      quad::Options os;
      os.abs_tol = opt.quad_tol;
      sym_row.push_back(quad::integrate(
                            [&](double s) {
                              const Complex u =
                                  value_eps(s, 1e-6) +
                                  std::conj(value_eps(-s, 1e-6));
                              return u * phi_space(s);
                            },
                            -0.25 * gam, 0.55 * gam, os)
                            .value);
    }
    rep.antisymmetric.push_back(anti_row);
    rep.symmetric.push_back(sym_row);
    // closed form: the massless commutator pairing sum_k w_k phi(t_k)
    const Complex wplus(0.0, -1.0 / (2.0 * kPi * D));
    rep.antisym_closed_form.push_back(wplus * phi_cone(gam));
  }

  for (std::size_t p = 0; p < rep.antisymmetric.size(); ++p) {
    const auto& row = rep.antisymmetric[p];
    for (std::size_t i = 0; i < row.size(); ++i) {
      rep.max_antisym_vs_closed =
          std::max(rep.max_antisym_vs_closed,
                   std::abs(row[i] - rep.antisym_closed_form[p]));
      for (std::size_t j = i + 1; j < row.size(); ++j)
        rep.max_antisym_spread =
            std::max(rep.max_antisym_spread, std::abs(row[i] - row[j]));
    }
  }
  rep.min_sym_spread_rel = 1e300;
  for (const auto& row : rep.symmetric) {
    double spread = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      scale = std::max(scale, std::abs(row[i]));
      for (std::size_t j = i + 1; j < row.size(); ++j)
        spread = std::max(spread, std::abs(row[i] - row[j]));
    }
    rep.min_sym_spread_rel =
        std::min(rep.min_sym_spread_rel, spread / std::max(1e-300, scale));
  }
  return rep;
}

L1FamilyReport l1_family_report(const std::vector<double>& betas, double m,
                                const WedgePairGeometry& geom, double t_max) {
  L1FamilyReport rep;
  for (double beta : betas) {
    L1FamilyRow row;
    row.beta = beta;
    if (m == 0.0) {
      // delta-only commutator: the distributional case
      auto c = commutator_massive(geom, 0.0);
      row.l1 = kms::l1_clustering_check(c, t_max);
      row.distributional = true;
      row.decay = kms::DecayReport{};  // no smooth tail to classify
    } else {
      auto w = wightman_beta(geom, beta, m);
      row.l1 = kms::l1_clustering_check(w, t_max);
      row.decay = kms::decay_condition_check(w, t_max);
      row.distributional = row.l1.distributional;
    }
    rep.all_l1 = rep.all_l1 && row.l1.is_l1;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::vector<ProbeRecord> read_probe_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open probe file: " + path);
  std::vector<ProbeRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok != "probe") throw InputError("probe file: expected 'probe' lines");
    ProbeRecord r{1.0, 1.0, 0.0, 2.0 * kPi, 1.0, {}};
    std::string kv;
    while (ls >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw InputError("probe file: expected key=value, got " + kv);
      const std::string key = kv.substr(0, eq);
      const std::string val = kv.substr(eq + 1);
      if (key == "xi") r.xi = std::stod(val);
      else if (key == "xip") r.xi_prime = std::stod(val);
      else if (key == "dperp") r.dperp = std::stod(val);
      else if (key == "beta") {
        if (val == "2pi") r.beta = 2.0 * kPi;
        else if (val == "pi") r.beta = kPi;
        else if (val == "4pi") r.beta = 4.0 * kPi;
        else r.beta = std::stod(val);
      } else if (key == "mass") r.mass = std::stod(val);
      else if (key == "s") {
        std::istringstream ss(val);
        std::string item;
        while (std::getline(ss, item, ',')) r.s_values.push_back(std::stod(item));
      } else {
        throw InputError("probe file: unknown key " + key);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_probe_file(const std::string& path,
                      const std::vector<ProbeRecord>& records) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write probe file: " + path);
  out.precision(17);
  out << "# probe records: xi xip dperp beta mass s-list\n";
  for (const auto& r : records) {
    out << "probe xi=" << r.xi << " xip=" << r.xi_prime
        << " dperp=" << r.dperp << " beta=" << r.beta << " mass=" << r.mass
        << " s=";
    for (std::size_t i = 0; i < r.s_values.size(); ++i)
      out << (i ? "," : "") << r.s_values[i];
    out << "\n";
  }
}

}  // namespace slimcalc::rindler
