#include "slimcalc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace slimcalc::quad {

namespace {

// (G7, K15) nodes/weights on [-1, 1], positive half; node 0 included.
constexpr double kKronrodNode[8] = {
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
constexpr double kKronrodWeight[8] = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};
// Gauss-7 weights matching Kronrod nodes 0, 2, 4, 6.
constexpr double kGaussWeight[4] = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct PanelEstimate {
  Complex value;
  double error;
};

template <class F>
PanelEstimate gk15(const F& f, double a, double b, std::size_t& evals) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex fk[15];
  fk[7] = f(mid);
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kKronrodNode[i];
    fk[7 - i] = f(mid - dx);
    fk[7 + i] = f(mid + dx);
  }
  evals += 15;
  Complex kron = kKronrodWeight[0] * fk[7];
  for (int i = 1; i < 8; ++i)
    kron += kKronrodWeight[i] * (fk[7 - i] + fk[7 + i]);
  Complex gauss = kGaussWeight[0] * fk[7];
  for (int i = 1; i < 4; ++i)
    gauss += kGaussWeight[i] * (fk[7 - 2 * i] + fk[7 + 2 * i]);
  kron *= half;
  gauss *= half;
  double err = std::abs(kron - gauss);
  // Sharpen the raw (K - G) difference the usual way.
  err = std::pow(200.0 * err, 1.5);
  double scale = std::abs(kron);
  if (scale > 0.0 && err > scale) err = scale;
  if (err < std::abs(kron - gauss)) err = std::abs(kron - gauss);
  return {kron, err};
}

struct Interval {
  double a, b, error;
  Complex value;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Result adapt(const std::function<Complex(double)>& f, double a, double b,
             const Options& opt) {
  Result res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::vector<double> edges{a, b};
  for (double p : opt.breakpoints)
    if (p > a && p < b) edges.push_back(p);
  std::sort(edges.begin(), edges.end());

  // Iterable heap: running sums over transient huge panel estimates cancel
  // catastrophically, so totals are recomputed from the intervals instead.
  std::vector<Interval> heap;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    auto e = gk15(f, edges[i], edges[i + 1], res.evals);
    heap.push_back({edges[i], edges[i + 1], e.error, e.value});
  }
  std::make_heap(heap.begin(), heap.end());

  auto exact_error = [&heap] {
    double s = 0.0;
    for (const Interval& iv : heap) s += iv.error;
    return s;
  };

  double toterr = exact_error();
  std::size_t since_resync = 0;
  while (heap.size() < opt.max_intervals) {
    if (!(toterr > opt.abs_tol) || since_resync >= 64) {
      toterr = exact_error();
      since_resync = 0;
      if (!(toterr > opt.abs_tol)) break;
    }
    std::pop_heap(heap.begin(), heap.end());
    Interval worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval width exhausted
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      break;
    }
    auto l = gk15(f, worst.a, mid, res.evals);
    auto r = gk15(f, mid, worst.b, res.evals);
    toterr += l.error + r.error - worst.error;
    ++since_resync;
    heap.push_back({worst.a, mid, l.error, l.value});
    std::push_heap(heap.begin(), heap.end());
    heap.push_back({mid, worst.b, r.error, r.value});
    std::push_heap(heap.begin(), heap.end());
  }
  // Final sums in ascending-interval order: deterministic and cancellation-free.
  std::sort(heap.begin(), heap.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  Complex total{};
  double err = 0.0;
  for (const Interval& iv : heap) {
    total += iv.value;
    err += iv.error;
  }
  res.value = total;
  res.error = err;
  res.converged = err <= opt.abs_tol;
  if (!res.converged && opt.throw_on_failure)
    throw QuadratureError("adaptive quadrature did not converge", err);
  return res;
}

}  // namespace

Result integrate(const std::function<Complex(double)>& f, double a, double b,
                 const Options& opt) {
  return adapt(f, a, b, opt);
}

Result integrate_real(const std::function<double(double)>& f, double a,
                      double b, const Options& opt) {
  return adapt([&f](double x) { return Complex(f(x), 0.0); }, a, b, opt);
}

Result oscillatory(const std::function<Complex(double)>& f, double a, double b,
                   double omega, const Options& opt) {
  // Seed panels so each holds at most ~half an oscillation, then refine.
  Options o = opt;
  const double w = std::abs(omega);
  if (w > 1.0) {
    const double panel = 3.0 / w;
    const std::size_t count = static_cast<std::size_t>((b - a) / panel);
    if (count > 1 && count < 200000) {
      for (std::size_t i = 1; i < count; ++i)
        o.breakpoints.push_back(a + (b - a) * static_cast<double>(i) /
                                        static_cast<double>(count));
    }
  }
  return adapt(
      [&](double t) { return f(t) * std::exp(Complex(0.0, omega * t)); }, a, b,
      o);
}

FixedGrid fixed_grid(double a, double b, std::size_t panels,
                     std::size_t order) {
  // Gauss-Legendre nodes by Newton iteration on Legendre polynomials.
  std::vector<double> x(order), w(order);
  for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
    double z = std::cos(kPi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(order) + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * static_cast<double>(j) + 1.0) * z * p1 -
              static_cast<double>(j) * p2) /
             (static_cast<double>(j) + 1.0);
      }
      pp = static_cast<double>(order) * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[order - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[order - 1 - i] = w[i];
  }
  FixedGrid g;
  g.nodes.reserve(panels * order);
  g.weights.reserve(panels * order);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + h * (static_cast<double>(p) + 0.5);
    for (std::size_t i = 0; i < order; ++i) {
      g.nodes.push_back(mid + 0.5 * h * x[i]);
      g.weights.push_back(0.5 * h * w[i]);
    }
  }
  return g;
}

Result integrate_box(
    const std::function<Complex(const std::vector<double>&)>& f,
    const std::vector<double>& lo, const std::vector<double>& hi,
    const Options& opt) {
  const std::size_t dim = lo.size();
  if (dim == 0 || dim != hi.size() || dim > 3)
    throw InputError("integrate_box supports dimensions 1..3");
  if (dim == 1) {
    std::vector<double> pt(1);
    return adapt(
        [&](double x) {
          pt[0] = x;
          return f(pt);
        },
        lo[0], hi[0], opt);
  }
  // Outer adaptive in the last coordinate, inner integral as integrand.
  Options inner = opt;
  inner.abs_tol = opt.abs_tol / (8.0 * std::max(1.0, hi[dim - 1] - lo[dim - 1]));
  inner.throw_on_failure = false;
  std::vector<double> ilo(lo.begin(), lo.end() - 1),
      ihi(hi.begin(), hi.end() - 1);
  std::size_t evals = 0;
  auto outer = adapt(
      [&](double xlast) {
        auto r = integrate_box(
            [&](const std::vector<double>& p) {
              std::vector<double> full(p);
              full.push_back(xlast);
              return f(full);
            },
            ilo, ihi, inner);
        evals += r.evals;
        return r.value;
      },
      lo[dim - 1], hi[dim - 1], opt);
  outer.evals += evals;
  return outer;
}

double derivative(const std::function<double(double)>& f, double x, int order,
                  double h0) {
  if (order == 0) return f(x);
  if (order < 0 || order > 4) throw InputError("derivative order must be 0..4");
  auto stencil = [&](double h) -> double {
    switch (order) {
      case 1:
        return (f(x + h) - f(x - h)) / (2.0 * h);
      case 2:
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
      case 3:
        return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) -
                f(x - 2.0 * h)) /
               (2.0 * h * h * h);
      default:
        return (f(x + 2.0 * h) - 4.0 * f(x + h) + 6.0 * f(x) -
                4.0 * f(x - h) + f(x - 2.0 * h)) /
               (h * h * h * h);
    }
  };
  // Richardson over h, h/2, ..., error O(h^2) per level.
  constexpr int kLevels = 6;
  double tab[kLevels][kLevels];
  double h = h0;
  for (int i = 0; i < kLevels; ++i) {
    tab[i][0] = stencil(h);
    for (int j = 1; j <= i; ++j) {
      const double fac = std::pow(4.0, j);
      tab[i][j] = (fac * tab[i][j - 1] - tab[i - 1][j - 1]) / (fac - 1.0);
    }
    h *= 0.5;
  }
  return tab[kLevels - 1][kLevels - 1];
}

}  // namespace slimcalc::quad
