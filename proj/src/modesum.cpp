#include <cmath>

#include "slimcalc/extrapolate.hpp"
#include "slimcalc/parallel.hpp"
#include "slimcalc/rindler.hpp"

namespace slimcalc::rindler {

Complex k0_complex(Complex z) {
  if (!(z.real() > 0.0) && !(z.real() == 0.0 && z.imag() != 0.0))
    throw InputError("k0_complex requires Re z >= 0");
  const double az = std::abs(z);
  if (az <= 10.0) {
    // K_0(z) = -(ln(z/2) + gamma_E) I_0(z) + sum (z^2/4)^k h_k / (k!)^2
    const Complex t = 0.25 * z * z;
    Complex term(1.0, 0.0), i0(1.0, 0.0), s(0.0, 0.0);
    double hk = 0.0;
    for (int k = 1; k < 46; ++k) {
      term *= t / static_cast<double>(k * k);
      hk += 1.0 / static_cast<double>(k);
      i0 += term;
      s += term * hk;
    }
    return -(std::log(0.5 * z) + kEulerGamma) * i0 + s;
  }
  // asymptotic: sqrt(pi/2z) e^{-z} [1 - 1/(8z) + 9/(2 (8z)^2) - ...]
  Complex sum(1.0, 0.0), term(1.0, 0.0);
  for (int k = 1; k <= 15; ++k) {
    term *= -sqr(2.0 * k - 1.0) / (8.0 * z * static_cast<double>(k));
    sum += term;
  }
  return std::sqrt(kPi / (2.0 * z)) * std::exp(-z) * sum;
}

double macdonald_i_omega(double omega, double x) {
  if (!(x > 0.0)) throw InputError("macdonald_i_omega requires x > 0");
  // K_{i w}(x) = \int_0^inf e^{-x cosh t} cos(w t) dt.  The integrand dies
  // at cosh t ~ 45/x; fine fixed panels resolve the oscillation for the
  // moderate orders used here (large orders go through the contour product).
  const double T = std::acosh(std::max(2.0, 45.0 / x));
  const std::size_t panels =
      std::max<std::size_t>(8, static_cast<std::size_t>(T * (4.0 + omega) / 2.5));
  const auto g = quad::fixed_grid(0.0, T, panels, 24);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    sum += g.weights[i] * std::exp(-x * std::cosh(g.nodes[i])) *
           std::cos(omega * g.nodes[i]);
  return sum;
}

ModeSum::ModeSum(const WedgePairGeometry& g, double m, ModeSumOptions opt)
    : opt_(std::move(opt)) {
  if (!(m > 0.0))
    throw InputError("mode sum oracle requires m > 0 (massive modes)");
  const double xi = g.xi, xip = g.xi_prime, dperp = g.dperp;

  // transverse grid
  const auto kgrid = quad::fixed_grid(0.0, opt_.k_max, opt_.k_panels,
                                      opt_.gl_order);
  std::vector<double> kappa(kgrid.nodes.size());
  std::vector<double> jweight(kgrid.nodes.size());
  for (std::size_t i = 0; i < kgrid.nodes.size(); ++i) {
    kappa[i] = std::hypot(kgrid.nodes[i], m);
    jweight[i] = kgrid.nodes[i] *
                 std::cyl_bessel_j(0.0, kgrid.nodes[i] * dperp) *
                 kgrid.weights[i];
  }

  for (const auto& blk : opt_.blocks) {
    const double y0 = kPi - blk.contour_offset;
    const auto xg = quad::fixed_grid(-blk.x_halfwidth, blk.x_halfwidth,
                                     blk.x_panels, opt_.gl_order);
    // A(x) = sum_k jweight_k K_0(kappa_k R(x + i y0)),
    // R^2 = kappa^2 (xi^2 + xi'^2 + 2 xi xi' cosh(x + i y0)).
    std::vector<Complex> base(xg.nodes.size());
    for (std::size_t j = 0; j < xg.nodes.size(); ++j) {
      const Complex z(xg.nodes[j], y0);
      base[j] = xi * xi + xip * xip + 2.0 * xi * xip * std::cosh(z);
    }
    auto A = par::parallel_map<Complex>(xg.nodes.size(), [&](std::size_t j) {
      Complex acc{};
      const Complex rb = std::sqrt(base[j]);
      for (std::size_t i = 0; i < kappa.size(); ++i) {
        const Complex arg = kappa[i] * rb;
        // negligible beyond |e^{-z}| ~ 1e-22: skip for speed
        if (arg.real() > 50.0) continue;
        acc += jweight[i] * k0_complex(arg);
      }
      return acc * xg.weights[j];
    });

    const auto wgrid =
        quad::fixed_grid(blk.w_lo, blk.w_hi, blk.w_panels, opt_.gl_order);
    auto rows = par::parallel_map<Complex>(wgrid.nodes.size(), [&](std::size_t wi) {
      const double w = wgrid.nodes[wi];
      Complex h{};
      for (std::size_t j = 0; j < xg.nodes.size(); ++j)
        h += A[j] * std::exp(Complex(0.0, w * xg.nodes[j]));
      // sinh(pi w) e^{-w y0} = (e^{w(pi-y0)} - e^{-w(pi+y0)})/2, stable
      const double shf = 0.5 * (std::exp(w * (kPi - y0)) -
                                std::exp(-w * (kPi + y0)));
      // 2 pi from the transverse angular integral, 1/2 from the product
      // representation of sinh(pi w) K_{iw} K_{iw}
      return 2.0 * kPi * 0.5 * shf * h;
    });
    for (std::size_t wi = 0; wi < wgrid.nodes.size(); ++wi) {
      omega_nodes_.push_back(wgrid.nodes[wi]);
      omega_weights_.push_back(wgrid.weights[wi]);
      spectral_.push_back(rows[wi]);
    }
  }
}

Complex ModeSum::value(double beta, double s) const {
  std::vector<Complex> vals;
  for (double eps : opt_.eps_list) {
    Complex acc{};
    for (std::size_t i = 0; i < omega_nodes_.size(); ++i) {
      const double w = omega_nodes_[i];
      const double bw = beta * w;
      const double nb = bw < 500.0 ? 1.0 / std::expm1(bw) : 0.0;
      const Complex phase = std::exp(Complex(0.0, -w * s) - w * eps);
      const Complex phase_rev = std::exp(Complex(0.0, w * s) - w * eps);
      acc += spectral_[i] / (4.0 * kPi * kPi * kPi * kPi) *
             ((nb + 1.0) * phase + nb * phase_rev) * omega_weights_[i];
    }
    vals.push_back(acc);
  }
  return extrapolate_to_zero(opt_.eps_list, vals, opt_.extrapolation_order)
      .value;
}

}  // namespace slimcalc::rindler
