#include "slimcalc/kms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "slimcalc/extrapolate.hpp"
#include "slimcalc/parallel.hpp"

namespace slimcalc::kms {

double Envelope::bound(double t) const {
  switch (kind) {
    case Kind::Power:
      return amplitude / std::pow(1.0 + std::abs(t), rate);
    case Kind::Exponential:
      return amplitude * std::exp(-rate * std::abs(t));
    case Kind::Compact:
      return std::abs(t) <= support ? amplitude : 0.0;
  }
  return 0.0;
}

double Envelope::truncation_radius(double tol) const {
  switch (kind) {
    case Kind::Power:
      if (amplitude <= tol) return 1.0;
      return std::pow(amplitude / tol, 1.0 / rate);
    case Kind::Exponential:
      if (amplitude <= tol) return 1.0;
      return std::log(amplitude / tol) / rate;
    case Kind::Compact:
      return support;
  }
  return 0.0;
}

Complex CorrelationFunction::evaluate_smooth(double t) const {
  Complex v = smooth_regular ? smooth_regular(t) : Complex{};
  for (const PvPole& p : pv_poles) v += p.residue / (t - p.location);
  return v;
}

CorrelationFunction CorrelationFunction::reversed() const {
  CorrelationFunction r(*this);
  if (smooth_regular) {
    auto f = smooth_regular;
    r.smooth_regular = [f](double t) { return f(-t); };
  }
  for (DeltaTerm& d : r.deltas) d.location = -d.location;
  for (PvPole& p : r.pv_poles) {
    p.location = -p.location;
    p.residue = -p.residue;
  }
  if (fourier_direct) {
    auto ft = fourier_direct;
    r.fourier_direct = [ft](double om) { return ft(-om); };
  }
  return r;
}

CorrelationFunction CorrelationFunction::conjugated() const {
  CorrelationFunction r(*this);
  if (smooth_regular) {
    auto f = smooth_regular;
    r.smooth_regular = [f](double t) { return std::conj(f(t)); };
  }
  for (DeltaTerm& d : r.deltas) d.weight = std::conj(d.weight);
  for (PvPole& p : r.pv_poles) p.residue = std::conj(p.residue);
  if (fourier_direct) {
    auto ft = fourier_direct;
    r.fourier_direct = [ft](double om) { return std::conj(ft(-om)); };
  }
  return r;
}

double CorrelationFunction::antisymmetry_defect(double t_max,
                                                std::size_t samples) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    // avoid pole locations by sampling at irrational-ish offsets
    const double t = t_max * (static_cast<double>(i) + 0.618033988) /
                     static_cast<double>(samples);
    worst = std::max(worst, std::abs(evaluate_smooth(t) + evaluate_smooth(-t)));
  }
  // delta terms must pair up with opposite weights
  for (const DeltaTerm& d : deltas) {
    Complex mirror{};
    for (const DeltaTerm& e : deltas)
      if (std::abs(e.location + d.location) < 1e-12) mirror += e.weight;
    worst = std::max(worst, std::abs(mirror + d.weight));
  }
  return worst;
}

double CorrelationFunction::envelope_defect(double t_max,
                                            std::size_t samples) const {
  if (!smooth_regular) return 0.0;
  double worst = -1e300;
  for (std::size_t i = 1; i <= samples; ++i) {
    const double t = t_max * (static_cast<double>(i) - 0.382) /
                     static_cast<double>(samples);
    for (double s : {t, -t})
      worst = std::max(worst, std::abs(evaluate_smooth(s)) - envelope.bound(s));
  }
  return worst;
}

double ThermalKernel::bose(double omega) const {
  if (std::isinf(beta)) {
    if (omega > 0.0) return 1.0;
    if (omega < 0.0) return 0.0;
    return 0.5;
  }
  const double x = beta * omega;
  if (x > 700.0) return 1.0;
  if (x < -700.0) return 0.0;
  return 1.0 / -std::expm1(-x);
}

Complex ThermalKernel::coth(Complex z) const {
  const Complex w = kPi * z / beta;
  // large |Re w|: coth -> sign with exponentially small correction
  if (std::abs(w.real()) > 20.0) {
    const double s = w.real() > 0.0 ? 1.0 : -1.0;
    const Complex e = std::exp(-2.0 * s * w);
    return s * (1.0 + 2.0 * e);
  }
  return 1.0 / std::tanh(w);
}

Complex ThermalKernel::coth_regular(Complex z) const {
  const Complex w = kPi * z / beta;
  if (std::abs(w) < 0.25) {
    // coth(w) - 1/w = w/3 - w^3/45 + 2 w^5/945 - w^7/4725 + 2 w^9/93555
    const Complex w2 = w * w;
    return w * (1.0 / 3.0 +
                w2 * (-1.0 / 45.0 +
                      w2 * (2.0 / 945.0 +
                            w2 * (-1.0 / 4725.0 + w2 * (2.0 / 93555.0)))));
  }
  return coth(z) - 1.0 / w;
}

Complex fourier(const CorrelationFunction& g, double omega,
                const quad::Options& opt) {
  if (g.fourier_direct) return g.fourier_direct(omega);
  Complex out{};
  for (const DeltaTerm& d : g.deltas)
    out += d.weight * std::exp(Complex(0.0, omega * d.location));
  for (const PvPole& p : g.pv_poles) {
    const double sgn = omega > 0.0 ? 1.0 : (omega < 0.0 ? -1.0 : 0.0);
    out += p.residue * Complex(0.0, kPi * sgn) *
           std::exp(Complex(0.0, omega * p.location));
  }
  if (g.has_smooth()) {
    const double T =
        g.regular_truncation > 0.0
            ? g.regular_truncation
            : std::max(1.0, g.envelope.truncation_radius(
                                std::max(1e-14, opt.abs_tol * 1e-2)));
    quad::Options o = opt;
    o.breakpoints.insert(o.breakpoints.end(), g.smooth_breakpoints.begin(),
                         g.smooth_breakpoints.end());
    for (const PvPole& p : g.pv_poles) {
      o.breakpoints.push_back(p.location);
    }
    auto f = [&](double t) { return g.smooth_regular(t); };
    out += quad::oscillatory(f, -T, T, omega, o).value;
  }
  return out;
}

namespace {

// Shared precomputed frequency-grid data for the reconstruction closures.
struct BoseGridData {
  std::vector<double> nodes, weights;
  std::vector<double> window_edges;  // excision windows w0 > w0/2 > ...
  std::vector<Complex> amplitude;    // kernel-weighted transform at nodes
  std::vector<DeltaTerm> in_deltas;
  double beta = kBetaInfinity;
};

// Excised integral I(w) = sum over |omega| >= w, then Richardson to w -> 0.
Complex excised_value(const BoseGridData& grid, double t) {
  std::vector<Complex> partial(grid.window_edges.size(), Complex{});
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const double om = grid.nodes[i];
    const Complex term = grid.amplitude[i] * grid.weights[i] *
                         std::exp(Complex(0.0, -om * t));
    for (std::size_t j = 0; j < grid.window_edges.size(); ++j)
      if (std::abs(om) >= grid.window_edges[j]) partial[j] += term;
  }
  // window_edges descending; extrapolate in w to 0
  std::vector<double> xs(grid.window_edges.begin(), grid.window_edges.end());
  return extrapolate_to_zero(xs, partial, 4).value;
}

void check_l1(const CorrelationFunction& c) {
  if (!c.pv_poles.empty())
    throw InputError("reconstruction input must not carry PV poles");
  if (c.has_smooth() && c.envelope.kind == Envelope::Kind::Power &&
      c.envelope.rate <= 1.0)
    throw NotL1Error(
        "commutator envelope is not integrable (power decay <= 1)");
}

std::vector<DeltaTerm> half_deltas(const std::vector<DeltaTerm>& in) {
  std::vector<DeltaTerm> out(in);
  for (DeltaTerm& d : out) d.weight *= 0.5;
  return out;
}

std::vector<PvPole> pole_terms(const std::vector<DeltaTerm>& in) {
  // theta-kernel part of each delta: w/2 delta + w * (i/2pi) PV 1/(t_k - t),
  // i.e. residue -(i/2pi) w at t_k in the t - t_k convention.
  std::vector<PvPole> out;
  for (const DeltaTerm& d : in)
    out.push_back({d.location, Complex(0.0, -0.5 / kPi) * d.weight});
  return out;
}

// Exact frequency-domain form of the reconstruction: Bose kernel times the
// commutator spectrum (deltas analytic, smooth part by oscillatory panels).
std::function<Complex(double)> spectral_closure(const CorrelationFunction& in,
                                                double beta) {
  auto inp = std::make_shared<CorrelationFunction>(in);
  std::function<Complex(double)> eval = [inp, beta](double om) -> Complex {
    ThermalKernel kernel{beta, ThermalKernel::Kind::BoseFrequency};
    Complex chat{};
    for (const DeltaTerm& d : inp->deltas)
      chat += d.weight * std::exp(Complex(0.0, om * d.location));
    if (inp->has_smooth()) {
      const double T = inp->envelope.truncation_radius(1e-15);
      quad::Options o;
      o.abs_tol = 1e-12;
      o.breakpoints = inp->smooth_breakpoints;
      chat += quad::oscillatory(
                  [&](double t) { return inp->smooth_regular(t); }, -T, T, om,
                  o)
                  .value;
    }
    return kernel.bose(om) * chat;
  };
  if (std::isinf(beta)) return eval;
  // the kernel pole at omega = 0 multiplies the vanishing odd spectrum;
  // evaluate the product just off zero
  return [eval](double om) -> Complex {
    if (std::abs(om) < 1e-9)
      return 0.5 * (eval(1e-9) + eval(-1e-9));
    return eval(om);
  };
}

// Reach of the reconstruction's regular part: input support plus the
// kernel's exponential skirt.
double regular_reach(const CorrelationFunction& in, double beta) {
  double t_in = 0.0;
  if (in.has_smooth()) t_in = in.envelope.truncation_radius(1e-14);
  for (const DeltaTerm& d : in.deltas)
    t_in = std::max(t_in, std::abs(d.location));
  const double skirt =
      std::isinf(beta) ? 40.0 : std::max(40.0 * beta / (2.0 * kPi), 40.0);
  return t_in + skirt;
}

Envelope output_envelope(const CorrelationFunction& in, double beta,
                         const std::function<Complex(double)>& eval) {
  if (!in.deltas.empty()) {
    // pole tails dominate: |sum r_k/(t - t_k)| ~ (sum |w_k|/2pi) * 2/|t|
    double rsum = 0.0, tmax = 1.0;
    for (const DeltaTerm& d : in.deltas) {
      rsum += std::abs(d.weight);
      tmax = std::max(tmax, std::abs(d.location));
    }
    return Envelope::power(rsum / kPi * (1.0 + tmax), 1.0);
  }
  // Pure smooth input: the reconstruction carries the input support plus the
  // kernel's exponential skirt e^{-2 pi |t|/beta}; declare a compact bound
  // out to where that skirt is far below working precision.
  const double t_in = in.envelope.truncation_radius(1e-14);
  const double skirt = std::isinf(beta) ? 40.0 : std::max(40.0 * beta / (2.0 * kPi), 40.0);
  double amp = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double t = t_in * i / 10.0;
    amp = std::max(amp, std::abs(eval(t)));
    amp = std::max(amp, std::abs(eval(-t)));
  }
  return Envelope::compact(t_in + skirt, amp * 1.5);
}

}  // namespace

CorrelationFunction bose_transform(const CorrelationFunction& commutator,
                                   double beta, const TransformOptions& opt) {
  check_l1(commutator);
  ThermalKernel kernel{beta, ThermalKernel::Kind::BoseFrequency};

  auto grid = std::make_shared<BoseGridData>();
  grid->beta = beta;
  grid->in_deltas = commutator.deltas;

  // Frequency grid: outer oscillation-resolving panels plus halving shells
  // around omega = 0 for the principal value (6 halvings, extrapolated).
  const double w0 = opt.pv_window;
  const double Om = opt.omega_max;
  double max_t = 4.0;
  for (const DeltaTerm& d : commutator.deltas)
    max_t = std::max(max_t, std::abs(d.location) + 2.0);
  const std::size_t outer_panels = std::max<std::size_t>(
      16, static_cast<std::size_t>((Om - w0) * max_t * opt.panels_per_unit));
  constexpr int kHalvings = 6;
  std::vector<std::pair<double, double>> bands;
  bands.emplace_back(w0, Om);
  for (int j = 0; j < kHalvings; ++j)
    bands.emplace_back(w0 * std::pow(0.5, j + 1), w0 * std::pow(0.5, j));
  for (int j = 0; j <= kHalvings; ++j)
    grid->window_edges.push_back(w0 * std::pow(0.5, j));

  for (const auto& [lo, hi] : bands) {
    const std::size_t panels =
        (hi - lo) > 1.0
            ? outer_panels
            : std::max<std::size_t>(
                  4, static_cast<std::size_t>((hi - lo) * max_t * 2) + 4);
    for (double sign : {1.0, -1.0}) {
      auto g = quad::fixed_grid(sign > 0 ? lo : -hi, sign > 0 ? hi : -lo,
                                panels, 15);
      grid->nodes.insert(grid->nodes.end(), g.nodes.begin(), g.nodes.end());
      grid->weights.insert(grid->weights.end(), g.weights.begin(),
                           g.weights.end());
    }
  }

  // Transform of the smooth part at every node (cached; the expensive step).
  const bool smooth_in = commutator.has_smooth();
  const double T =
      smooth_in ? commutator.envelope.truncation_radius(1e-14) : 0.0;
  quad::Options fopt;
  fopt.abs_tol = opt.smooth_tol;
  fopt.breakpoints = commutator.smooth_breakpoints;
  std::vector<Complex> chat(grid->nodes.size(), Complex{});
  if (smooth_in) {
    auto vals = par::parallel_map<Complex>(grid->nodes.size(), [&](std::size_t i) {
      return quad::oscillatory(
                 [&](double t) { return commutator.smooth_regular(t); }, -T, T,
                 grid->nodes[i], fopt)
          .value;
    });
    chat = std::move(vals);
  }
  grid->amplitude.resize(grid->nodes.size());
  for (std::size_t i = 0; i < grid->nodes.size(); ++i) {
    const double om = grid->nodes[i];
    const double K = kernel.bose(om);
    const double theta = om > 0.0 ? 1.0 : (om < 0.0 ? 0.0 : 0.5);
    Complex a = chat[i] * K;
    for (const DeltaTerm& d : commutator.deltas)
      a += d.weight * std::exp(Complex(0.0, om * d.location)) * (K - theta);
    grid->amplitude[i] = a;
  }

  CorrelationFunction W;
  W.beta = beta;
  W.mass = commutator.mass;
  W.deltas = half_deltas(commutator.deltas);
  W.pv_poles = pole_terms(commutator.deltas);
  W.smooth_regular = [grid](double t) {
    return excised_value(*grid, t) / (2.0 * kPi);
  };
  W.envelope = output_envelope(commutator, beta, W.smooth_regular);
  W.regular_truncation = regular_reach(commutator, beta);
  W.fourier_direct = spectral_closure(commutator, beta);
  return W;
}

Complex coth_transform_at_eps(const CorrelationFunction& commutator,
                              double beta, double t, double eps,
                              const quad::Options& opt) {
  ThermalKernel kernel{beta, ThermalKernel::Kind::CothTime};
  Complex sum{};
  for (const DeltaTerm& d : commutator.deltas)
    sum += d.weight * kernel.coth(Complex(d.location - t, eps));
  if (commutator.has_smooth()) {
    const double T = commutator.envelope.truncation_radius(1e-14);
    quad::Options o = opt;
    o.breakpoints.push_back(t);
    for (double m : {3.0, 10.0, 40.0}) {
      o.breakpoints.push_back(t - m * eps);
      o.breakpoints.push_back(t + m * eps);
    }
    sum += quad::integrate(
               [&](double u) {
                 return kernel.coth(Complex(u - t, eps)) *
                        commutator.smooth_regular(u);
               },
               -T, T, o)
               .value;
  }
  return Complex(0.0, 0.5 / beta) * sum;
}

CorrelationFunction coth_transform(const CorrelationFunction& commutator,
                                   double beta, const TransformOptions& opt) {
  check_l1(commutator);
  if (std::isinf(beta))
    throw InputError(
        "coth_transform: beta = inf uses the ground-state kernel; call "
        "bose_transform instead");
  auto in = std::make_shared<CorrelationFunction>(commutator);
  const TransformOptions topt = opt;

  CorrelationFunction W;
  W.beta = beta;
  W.mass = commutator.mass;
  W.deltas = half_deltas(commutator.deltas);
  W.pv_poles = pole_terms(commutator.deltas);
  W.smooth_regular = [in, beta, topt](double t) -> Complex {
    ThermalKernel kernel{beta, ThermalKernel::Kind::CothTime};
    // Delta channel: the kernel pole is carried by pv_poles, the remainder
    // is analytic on the real axis, so eps = 0 is exact here.
    Complex delta_part{};
    for (const DeltaTerm& d : in->deltas)
      delta_part += d.weight * kernel.coth_regular(Complex(d.location - t, 0.0));
    delta_part *= Complex(0.0, 0.5 / beta);
    if (!in->has_smooth()) return delta_part;

    // Smooth channel: the kernel pole can sit inside the support; evaluate
    // on the eps sequence and extrapolate.
    const double T = in->envelope.truncation_radius(1e-14);
    quad::Options o;
    o.abs_tol = topt.smooth_tol;
    std::vector<Complex> vals;
    std::vector<double> eps_used;
    for (double eps : topt.eps_sequence) {
      quad::Options oo = o;
      oo.breakpoints = in->smooth_breakpoints;
      oo.breakpoints.push_back(t);
      for (double m : {3.0, 10.0, 40.0}) {
        oo.breakpoints.push_back(t - m * eps);
        oo.breakpoints.push_back(t + m * eps);
      }
      const Complex integral =
          quad::integrate(
              [&](double u) {
                return kernel.coth(Complex(u - t, eps)) *
                       in->smooth_regular(u);
              },
              -T, T, oo)
              .value;
      vals.push_back(Complex(0.0, 0.5 / beta) * integral);
      eps_used.push_back(eps);
    }
    auto ex = extrapolate_to_zero(eps_used, vals, topt.eps_extrapolation_order);
    if (!ex.converged && ex.error > 1e-5 * (1.0 + std::abs(ex.value)))
      throw RegularizationError(
          "coth_transform: eps -> 0 extrapolation not converged");
    return delta_part + ex.value;
  };
  W.envelope = output_envelope(commutator, beta, W.smooth_regular);
  W.regular_truncation = regular_reach(commutator, beta);
  W.fourier_direct = spectral_closure(commutator, beta);
  return W;
}

KmsReport kms_check(const CorrelationFunction& w_plus,
                    const CorrelationFunction& w_minus, double beta,
                    const std::vector<double>& omega_grid, double noise_floor,
                    const quad::Options& opt) {
  KmsReport rep;
  rep.noise_floor = noise_floor;
  auto plus = par::parallel_map<Complex>(omega_grid.size(), [&](std::size_t i) {
    return fourier(w_plus, omega_grid[i], opt);
  });
  auto minus = par::parallel_map<Complex>(omega_grid.size(), [&](std::size_t i) {
    return fourier(w_minus, omega_grid[i], opt);
  });
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    const double om = omega_grid[i];
    double r = 0.0;
    if (std::isinf(beta)) {
      // ground state: no support at positive frequency in W-
      if (om > 0.0) r = std::abs(minus[i]) / std::max(std::abs(plus[i]), noise_floor);
    } else {
      const double x = beta * om;
      if (std::abs(plus[i]) > noise_floor && x < 600.0) {
        r = std::abs(plus[i] - std::exp(x) * minus[i]) /
            std::max(std::abs(plus[i]), noise_floor);
      }
    }
    rep.omegas.push_back(om);
    rep.residuals.push_back(r);
    rep.max_residual = std::max(rep.max_residual, r);
  }
  return rep;
}

L1Report l1_clustering_check(const CorrelationFunction& g, double t_max,
                             const quad::Options& opt) {
  L1Report rep;
  rep.distributional = !g.deltas.empty() || !g.pv_poles.empty();
  double bound = 0.0;
  for (const DeltaTerm& d : g.deltas) bound += std::abs(d.weight);
  if (!g.has_smooth() && g.pv_poles.empty()) {
    rep.is_l1 = true;
    rep.bound = bound;
    rep.note = "delta-only correlator: L1 trivially (distributional case)";
    return rep;
  }
  quad::Options o = opt;
  o.abs_tol = std::max(opt.abs_tol, 1e-8);
  o.throw_on_failure = false;
  // PV poles are light-cone singularities removed by smearing; integrate
  // |g| outside small neighborhoods and note the exclusion.
  std::vector<std::pair<double, double>> gaps;
  for (const PvPole& p : g.pv_poles)
    gaps.emplace_back(p.location - 0.3, p.location + 0.3);
  std::sort(gaps.begin(), gaps.end());
  double lo = -t_max;
  double smooth_int = 0.0;
  for (const auto& [a, b] : gaps) {
    if (a > lo)
      smooth_int += quad::integrate_real(
                        [&](double t) { return std::abs(g.evaluate_smooth(t)); },
                        lo, std::min(a, t_max), o)
                        .value.real();
    lo = std::max(lo, b);
  }
  if (lo < t_max)
    smooth_int += quad::integrate_real(
                      [&](double t) { return std::abs(g.evaluate_smooth(t)); },
                      lo, t_max, o)
                      .value.real();
  bound += smooth_int;
  if (!gaps.empty())
    rep.note = "principal-value pole neighborhoods excluded from |g|";
  // Tail: fit |g| on block maxima of the outer half and extrapolate.  The
  // abscissa is where the block maximum actually sits, not the midpoint
  // (monotone tails would otherwise bias the slope).
  std::vector<double> lx, ly;
  const std::size_t blocks = 12;
  for (std::size_t b = 0; b < blocks; ++b) {
    const double lo = t_max * (0.5 + 0.5 * static_cast<double>(b) / blocks);
    const double hi = t_max * (0.5 + 0.5 * static_cast<double>(b + 1) / blocks);
    double m = 0.0, at = 0.5 * (lo + hi);
    for (int k = 0; k < 16; ++k) {
      const double t = lo + (hi - lo) * (k + 0.5) / 16.0;
      const double v = std::max(std::abs(g.evaluate_smooth(t)),
                                std::abs(g.evaluate_smooth(-t)));
      if (v > m) {
        m = v;
        at = t;
      }
    }
    if (m > 0.0) {
      lx.push_back(std::log(at));
      ly.push_back(std::log(m));
    }
  }
  if (lx.size() >= 4) {
    const auto fit = fit_line(lx, ly);
    const double alpha = -fit.slope;  // |g| ~ C t^-alpha on the tail
    if (alpha > 1.05) {
      const double C = std::exp(fit.intercept);
      rep.tail_estimate = 2.0 * C * std::pow(t_max, 1.0 - alpha) / (alpha - 1.0);
      rep.is_l1 = true;
    } else {
      rep.is_l1 = false;
      rep.note = "tail fit diverges (power decay <= 1)";
      rep.bound = bound;
      return rep;
    }
  } else {
    rep.is_l1 = true;  // no measurable tail left
  }
  rep.bound = bound + rep.tail_estimate;
  return rep;
}

namespace {

DecaySideReport decay_side(const CorrelationFunction& g, double t_max,
                           double h, double sign) {
  DecaySideReport side;
  // condition (b): |g| <= C/(1+|t|)^alpha, fitted on tail block maxima at
  // the abscissa where each maximum occurs
  std::vector<double> lx, ly;
  const std::size_t blocks = 10;
  for (std::size_t b = 0; b < blocks; ++b) {
    const double lo = t_max * (0.45 + 0.55 * static_cast<double>(b) / blocks);
    const double hi =
        t_max * (0.45 + 0.55 * static_cast<double>(b + 1) / blocks);
    double m = 0.0, at = 0.5 * (lo + hi);
    for (int k = 0; k < 16; ++k) {
      const double t = lo + (hi - lo) * (k + 0.5) / 16.0;
      const double v = std::abs(g.evaluate_smooth(sign * t));
      if (v > m) {
        m = v;
        at = t;
      }
    }
    if (m > 1e-300) {
      lx.push_back(std::log(1.0 + at));
      ly.push_back(std::log(m));
    }
  }
  if (lx.size() >= 4) {
    side.alpha_fit = -fit_line(lx, ly).slope;
    side.condition_b = side.alpha_fit > std::sqrt(3.0);
  }
  // condition (a): monotone envelope of |g'| from the far end inward
  const std::size_t n = 160;
  std::vector<double> ts(n), dabs(n);
  for (std::size_t i = 0; i < n; ++i) {
    ts[i] = t_max * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double t = sign * ts[i];
    const Complex d =
        (g.evaluate_smooth(t + h) - g.evaluate_smooth(t - h)) / (2.0 * h);
    dabs[i] = std::abs(d);
  }
  std::vector<double> M(n);
  double run = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    run = std::max(run, dabs[i]);
    M[i] = run;
  }
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    integral += 0.5 * (M[i] + M[i + 1]) * (ts[i + 1] - ts[i]);
  // integrable iff the envelope's own tail decays faster than 1/t
  std::vector<double> mx, my;
  for (std::size_t i = n / 2; i < n; ++i)
    if (M[i] > 1e-300) {
      mx.push_back(std::log(ts[i]));
      my.push_back(std::log(M[i]));
    }
  bool tail_ok = false;
  if (mx.size() >= 4) tail_ok = -fit_line(mx, my).slope > 1.05;
  if (!mx.empty() && M.back() < 1e-12) tail_ok = true;
  side.derivative_envelope_integrable = tail_ok && M.back() < 1e-3 * (M.front() + 1e-300);
  side.envelope_integral = integral;
  return side;
}

}  // namespace

DecayReport decay_condition_check(const CorrelationFunction& g, double t_max,
                                  double derivative_step) {
  DecayReport rep;
  rep.positive = decay_side(g, t_max, derivative_step, +1.0);
  rep.negative = decay_side(g, t_max, derivative_step, -1.0);
  // (a) asks for M -> 0 monotonously as t -> +inf or -inf
  rep.condition_a = rep.positive.derivative_envelope_integrable ||
                    rep.negative.derivative_envelope_integrable;
  rep.condition_b = rep.positive.condition_b && rep.negative.condition_b;
  return rep;
}

}  // namespace slimcalc::kms
