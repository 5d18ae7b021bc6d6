#include "slimcalc/distribution.hpp"

#include <cmath>

namespace slimcalc::dist {

namespace {

Complex pair_smooth(const SmoothDensity& s, const Probe& probe,
                    const quad::Options& opt) {
  return quad::integrate_box(
             [&](const std::vector<double>& x) {
               const double pv = probe(x);
               if (pv == 0.0) return Complex{};
               return s.f(x) * pv;
             },
             probe.lo, probe.hi, opt)
      .value;
}

// Radial pairing of |x-x0|^(-a) against phi: subtract phi(x0) analytically,
// then the radial integrand is O(rho^{1-a}) and adaptive GK converges.
Complex pair_power(const PowerSingularity& p, const Probe& probe,
                   const quad::Options& opt) {
  const int n = probe.dim;
  const double a = p.exponent;
  std::vector<double> x0 = p.location;
  if (x0.empty()) x0.assign(static_cast<std::size_t>(n), 0.0);
  if (static_cast<int>(x0.size()) != n)
    throw InputError("power singularity: location dimension mismatch");

  // Radial reach of the probe support around x0.
  double rmax = 0.0, rmin2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    rmax += sqr(std::max(std::abs(probe.lo[k] - x0[k]),
                         std::abs(probe.hi[k] - x0[k])));
    // distance from x0 to the support box, per axis
    double gap = 0.0;
    if (x0[k] < probe.lo[k]) gap = probe.lo[k] - x0[k];
    if (x0[k] > probe.hi[k]) gap = x0[k] - probe.hi[k];
    rmin2 += sqr(gap);
  }
  rmax = std::sqrt(rmax) * (1.0 + 1e-12);
  const double rmin = std::sqrt(rmin2);
  if (!(a < n) && rmin <= 0.0)
    throw InputError("power singularity: need a < n for integrability");

  // Angular average Psi(rho) = \int_{S^{n-1}} phi(x0 + rho w) dS(w).
  std::function<double(double)> angular;
  if (n == 1) {
    angular = [&](double rho) {
      return probe({x0[0] + rho}) + probe({x0[0] - rho});
    };
  } else if (n == 2) {
    angular = [&](double rho) {
      // Periodic trapezoid; doubled until stable (spectral for smooth phi).
      std::size_t m = 32;
      double prev = 0.0;
      for (int pass = 0; pass < 6; ++pass) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          const double th = 2.0 * kPi * static_cast<double>(j) /
                            static_cast<double>(m);
          s += probe({x0[0] + rho * std::cos(th), x0[1] + rho * std::sin(th)});
        }
        s *= 2.0 * kPi / static_cast<double>(m);
        if (pass > 0 && std::abs(s - prev) < 1e-13 * (1.0 + std::abs(s)))
          return s;
        prev = s;
        m *= 2;
      }
      return prev;
    };
  } else if (n == 3) {
    angular = [&](double rho) {
      // Product rule: Gauss-Legendre in cos(theta) x trapezoid in azimuth.
      const auto g = quad::fixed_grid(-1.0, 1.0, 1, 24);
      const std::size_t maz = 48;
      double s = 0.0;
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double ct = g.nodes[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        double ring = 0.0;
        for (std::size_t j = 0; j < maz; ++j) {
          const double ph = 2.0 * kPi * static_cast<double>(j) /
                            static_cast<double>(maz);
          ring += probe({x0[0] + rho * st * std::cos(ph),
                         x0[1] + rho * st * std::sin(ph), x0[2] + rho * ct});
        }
        s += g.weights[i] * ring * 2.0 * kPi / static_cast<double>(maz);
      }
      return s;
    };
  } else {
    throw InputError("power singularity pairing limited to n <= 3");
  }

  quad::Options o = opt;
  if (rmin > 0.0) {
    // Singularity outside the support: plain radial quadrature.
    return quad::integrate_real(
               [&](double rho) {
                 return std::pow(rho, static_cast<double>(n - 1) - a) *
                        angular(rho);
               },
               rmin * (1.0 - 1e-12), rmax, o)
        .value;
  }
  // Surface area of S^{n-1}.
  const double surf = (n == 1) ? 2.0 : (n == 2 ? 2.0 * kPi : 4.0 * kPi);
  const double psi_center = surf * probe(x0);

  o.breakpoints.push_back(rmax * 0.5);
  // Subtract the angular average at 0; the remainder is O(rho^{n-a}) and
  // the subtracted piece integrates in closed form.
  auto reg = quad::integrate_real(
      [&](double rho) {
        const double w = std::pow(rho, static_cast<double>(n - 1) - a);
        return w * (angular(rho) - psi_center);
      },
      0.0, rmax, o);
  const double analytic =
      psi_center * std::pow(rmax, static_cast<double>(n) - a) /
      (static_cast<double>(n) - a);
  return reg.value + analytic;
}

Complex pair_pv(const PrincipalValue& p, const Probe& probe,
                const quad::Options& opt) {
  if (probe.dim != 1)
    throw InputError("principal value pairing is defined for n = 1");
  const double x0 = p.location;
  const double reach =
      std::max(std::abs(probe.hi[0] - x0), std::abs(probe.lo[0] - x0)) *
      (1.0 + 1e-12);
  if (reach <= 0.0) return Complex{};
  // Symmetric-point quadrature: odd kernel against the odd part of phi.
  return quad::integrate_real(
             [&](double rho) {
               const double diff = probe({x0 + rho}) - probe({x0 - rho});
               if (diff == 0.0) return 0.0;
               return p.kernel(rho) * diff;
             },
             0.0, reach, opt)
      .value;
}

double probe_derivative(const Probe& probe, double x, int order) {
  return quad::derivative([&](double t) { return probe({t}); }, x, order,
                          0.02 * (probe.hi[0] - probe.lo[0]));
}

}  // namespace

GeneralizedFunction GeneralizedFunction::operator*(Complex c) const {
  std::vector<Term> t = terms_;
  for (Term& term : t) term.coefficient *= c;
  return GeneralizedFunction(dim_, std::move(t));
}

GeneralizedFunction GeneralizedFunction::operator+(
    const GeneralizedFunction& other) const {
  if (other.dim_ != dim_) throw InputError("distribution sum: dimension mismatch");
  std::vector<Term> t = terms_;
  t.insert(t.end(), other.terms_.begin(), other.terms_.end());
  return GeneralizedFunction(dim_, std::move(t));
}

GeneralizedFunction GeneralizedFunction::delta(std::vector<double> location,
                                               Complex weight) {
  const int n = static_cast<int>(location.size());
  return GeneralizedFunction(n, {Term{weight, PointDelta{std::move(location)}}});
}

GeneralizedFunction GeneralizedFunction::pv_inverse() {
  return GeneralizedFunction(1, {Term{1.0, PrincipalValue{}}});
}

GeneralizedFunction GeneralizedFunction::power(int n, double a,
                                               std::vector<double> x0) {
  return GeneralizedFunction(n, {Term{1.0, PowerSingularity{a, std::move(x0)}}});
}

GeneralizedFunction GeneralizedFunction::smooth(
    int n, std::function<Complex(const std::vector<double>&)> f) {
  return GeneralizedFunction(n, {Term{1.0, SmoothDensity{std::move(f)}}});
}

Complex pair(const GeneralizedFunction& u, const Probe& probe,
             const quad::Options& opt) {
  if (u.dimension() != probe.dim)
    throw InputError("pair: distribution/test function dimension mismatch");
  quad::Options per_term = opt;
  if (!u.terms().empty())
    per_term.abs_tol = opt.abs_tol / static_cast<double>(u.terms().size());
  Complex total{};
  for (const Term& t : u.terms()) {
    Complex v{};
    if (const auto* s = std::get_if<SmoothDensity>(&t.kind)) {
      v = pair_smooth(*s, probe, per_term);
    } else if (const auto* p = std::get_if<PowerSingularity>(&t.kind)) {
      v = pair_power(*p, probe, per_term);
    } else if (const auto* p = std::get_if<PrincipalValue>(&t.kind)) {
      v = pair_pv(*p, probe, per_term);
    } else if (const auto* d = std::get_if<PointDelta>(&t.kind)) {
      if (static_cast<int>(d->location.size()) != probe.dim)
        throw InputError("pair: delta location dimension mismatch");
      v = Complex(probe(d->location), 0.0);
    } else if (const auto* d = std::get_if<DeltaDerivative>(&t.kind)) {
      if (probe.dim != 1)
        throw InputError("pair: delta derivative requires n = 1");
      const double sign = (d->order % 2 == 0) ? 1.0 : -1.0;
      v = Complex(sign * probe_derivative(probe, d->location, d->order), 0.0);
    }
    total += t.coefficient * v;
  }
  return total;
}

Complex pair(const GeneralizedFunction& u, const TestFunction& phi,
             const quad::Options& opt) {
  return pair(u, to_probe(phi), opt);
}

TestFunction scale(const TestFunction& phi, double lambda) {
  return phi.scaled(lambda);
}

TestFunction tensor(const TestFunction& f, const TestFunction& g) {
  return TestFunction::tensor(f, g);
}

}  // namespace slimcalc::dist
