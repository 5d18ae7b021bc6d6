#include "slimcalc/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "slimcalc/extrapolate.hpp"
#include "slimcalc/geometry.hpp"
#include "slimcalc/parallel.hpp"

namespace slimcalc::scaling {

double ScalingFunction::operator()(double lambda) const {
  if (!(lambda > 0.0)) throw InputError("scaling function: lambda must be > 0");
  return coefficient * std::pow(lambda, -exponent);
}

ScalingFunction ScalingFunction::parse(const std::string& text) {
  // Accepted forms: "1", "lambda^-2", "3*lambda^-2", "2.5*lambda^1.5".
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw InputError("scaling function: empty spec");
  double c = 1.0;
  auto star = s.find('*');
  if (star != std::string::npos) {
    c = std::stod(s.substr(0, star));
    s = s.substr(star + 1);
  }
  if (s == "1") return {c, 0.0};
  const std::string prefix = "lambda^";
  if (s.rfind(prefix, 0) != 0)
    throw InputError("scaling function: cannot parse '" + text + "'");
  const double p = std::stod(s.substr(prefix.size()));
  if (!(c > 0.0)) throw InputError("scaling function: coefficient must be > 0");
  return {c, -p};
}

std::vector<double> lambda_grid(double start, double ratio, std::size_t count) {
  if (!(start > 0.0) || !(ratio > 0.0) || !(ratio < 1.0))
    throw InputError("lambda grid: need start > 0 and ratio in (0,1)");
  std::vector<double> g(count);
  double l = start;
  for (std::size_t i = 0; i < count; ++i, l *= ratio) g[i] = l;
  return g;
}

namespace {

void check_domain(const geom::Region* domain, const dist::TestFunction& phi,
                  const std::vector<double>& lambdas) {
  if (!domain) return;
  const auto cloud = phi.support_cloud(9);
  for (double l : lambdas) {
    for (const auto& pt : cloud) {
      std::vector<double> scaled(pt);
      for (double& c : scaled) c *= l;
      if (!domain->contains(scaled))
        throw DomainEscapeError(
            "support of scaled test function leaves the domain", l);
    }
  }
}

bool diverging(const std::vector<Complex>& seq) {
  const std::size_t n = seq.size();
  if (n < 4) return false;
  const double a = std::abs(seq[n - 1]), b = std::abs(seq[n - 2]),
               c = std::abs(seq[n - 3]), d = std::abs(seq[n - 4]);
  return a > b * 1.5 && b > c * 1.5 && c > d * 1.5 && a > 1e3 * std::abs(seq[0]);
}

}  // namespace

double estimate_degree(const dist::GeneralizedFunction& u,
                       const std::vector<dist::TestFunction>& probes,
                       const std::vector<double>& lambdas,
                       const quad::Options& opt, double rms_threshold) {
  if (lambdas.size() < 6)
    throw InputError("estimate_degree: need at least 6 grid points");
  std::vector<double> slopes;
  double worst_rms = 0.0;
  for (const auto& phi : probes) {
    auto vals = par::parallel_map<Complex>(lambdas.size(), [&](std::size_t i) {
      return dist::pair(u, phi.scaled(lambdas[i]), opt);
    });
    // Tail of the grid (smallest lambdas) carries the asymptotics.
    const std::size_t tail = std::max<std::size_t>(4, lambdas.size() / 2);
    std::vector<double> lx, ly;
    for (std::size_t i = lambdas.size() - tail; i < lambdas.size(); ++i) {
      const double m = std::abs(vals[i]);
      if (m < 1e3 * opt.abs_tol) continue;  // treat as zero pairing
      lx.push_back(std::log(lambdas[i]));
      ly.push_back(std::log(m));
    }
    if (lx.size() < 3) continue;
    const auto fit = fit_line(lx, ly);
    slopes.push_back(fit.slope);
    worst_rms = std::max(worst_rms, fit.rms);
  }
  if (slopes.empty())
    throw DegenerateInputError("estimate_degree: zero against all probes");
  if (worst_rms > rms_threshold)
    throw NonScaledDistributionError(
        "estimate_degree: pairings are not power-law in lambda", worst_rms);
  double mean = 0.0;
  for (double s : slopes) mean += s;
  return mean / static_cast<double>(slopes.size());
}

SlimEstimate slim(const dist::GeneralizedFunction& u, const ScalingFunction& N,
                  const dist::TestFunction& phi, const SlimOptions& opt) {
  check_domain(opt.domain, phi, opt.lambdas);
  SlimEstimate est;
  est.lambdas = opt.lambdas;
  est.sequence = par::parallel_map<Complex>(opt.lambdas.size(), [&](std::size_t i) {
    const double l = opt.lambdas[i];
    return N(l) * dist::pair(u, phi.scaled(l), opt.quadrature);
  });
  if (diverging(est.sequence))
    throw NoScalingLimitError(
        "slim: N(lambda) <u, phi_lambda> grows along the grid; no scaling limit");
  const auto ex =
      extrapolate_to_zero(est.lambdas, est.sequence, opt.extrapolation_order);
  est.limit = ex.value;
  est.error = ex.error;
  est.converged = ex.converged;
  est.verdict = ex.converged ? "converged" : "stalled";
  // Tail slope diagnostic for the report.
  std::vector<double> lx, ly;
  for (std::size_t i = opt.lambdas.size() / 2; i < opt.lambdas.size(); ++i) {
    const double m = std::abs(est.sequence[i]);
    if (m > 0.0) {
      lx.push_back(std::log(opt.lambdas[i]));
      ly.push_back(std::log(m));
    }
  }
  if (lx.size() >= 3) {
    const auto fit = fit_line(lx, ly);
    est.fitted_slope = fit.slope;
    est.fit_rms = fit.rms;
  }
  return est;
}

HomogeneityReport check_homogeneity(const dist::GeneralizedFunction& u,
                                    const ScalingFunction& N,
                                    const dist::TestFunction& phi,
                                    double field_degree,
                                    const std::vector<double>& dilations,
                                    const SlimOptions& opt) {
  HomogeneityReport rep;
  rep.field_degree = field_degree;
  const Complex base = slim(u, N, phi, opt).limit;
  const double n = static_cast<double>(u.dimension());
  for (double mu : dilations) {
    const Complex dil = slim(u, N, phi.scaled(mu), opt).limit;
    const Complex expect = std::pow(mu, n + field_degree) * base;
    const double dev =
        std::abs(dil - expect) / std::max(1e-300, std::abs(expect));
    rep.dilations.push_back(mu);
    rep.relative_deviation.push_back(dev);
    rep.max_relative_deviation = std::max(rep.max_relative_deviation, dev);
  }
  return rep;
}

std::optional<double> equivalence_scale(const ScalingFunction& N,
                                        const ScalingFunction& S) {
  if (N.exponent != S.exponent) return std::nullopt;
  return S.coefficient / N.coefficient;
}

IdentificationMap::IdentificationMap(std::function<double(double)> forward,
                                     std::function<double(double)> inverse,
                                     double base_point)
    : fwd_(std::move(forward)), inv_(std::move(inverse)), q_(base_point) {
  if (fwd_(0.0) != q_)
    throw InputError("identification map: Phi(0) must equal the base point");
  const double jac = quad::derivative(fwd_, 0.0, 1, 0.01);
  if (std::abs(jac - 1.0) > 1e-6)
    throw InputError("identification map: Phi'(0) must be the identity");
  for (double x : {-0.3, -0.05, 0.02, 0.17, 0.4}) {
    const double y = fwd_(x);
    if (std::abs(inv_(y) - x) > 1e-10)
      throw InputError("identification map: inverse does not match forward");
  }
}

IdentificationMap IdentificationMap::identity(double q) {
  return IdentificationMap([q](double x) { return x + q; },
                           [q](double y) { return y - q; }, q);
}

namespace {

// Probe for the pushforward Phi_* phi_lambda: evaluate phi_lambda(Phi^{-1}(y))
// with the support box mapped through Phi.
dist::Probe chart_probe(const IdentificationMap& chart,
                        const dist::TestFunction& phi_lambda) {
  if (phi_lambda.dimension() != 1)
    throw InputError("chart pairing implemented for n = 1");
  dist::Probe p;
  p.dim = 1;
  std::vector<double> lo, hi;
  phi_lambda.support_box(lo, hi);
  const double a = chart.forward(lo[0]);
  const double b = chart.forward(hi[0]);
  p.lo = {std::min(a, b)};
  p.hi = {std::max(a, b)};
  const double ylo = p.lo[0], yhi = p.hi[0];
  p.eval = [chart, phi_lambda, ylo, yhi](const std::vector<double>& y) {
    if (y[0] <= ylo || y[0] >= yhi) return 0.0;  // outside the mapped support
    return phi_lambda(std::vector<double>{chart.inverse(y[0])});
  };
  return p;
}

}  // namespace

std::vector<Complex> chart_sequence(const dist::GeneralizedFunction& u,
                                    const IdentificationMap& chart,
                                    const ScalingFunction& N,
                                    const dist::TestFunction& phi,
                                    const SlimOptions& opt) {
  return par::parallel_map<Complex>(opt.lambdas.size(), [&](std::size_t i) {
    const double l = opt.lambdas[i];
    return N(l) * dist::pair(u, chart_probe(chart, phi.scaled(l)),
                             opt.quadrature);
  });
}

SlimEstimate slim_via_chart(const dist::GeneralizedFunction& u,
                            const IdentificationMap& chart,
                            const ScalingFunction& N,
                            const dist::TestFunction& phi,
                            const SlimOptions& opt) {
  SlimEstimate est;
  est.lambdas = opt.lambdas;
  est.sequence = chart_sequence(u, chart, N, phi, opt);
  if (diverging(est.sequence))
    throw NoScalingLimitError("slim_via_chart: sequence diverges");
  const auto ex =
      extrapolate_to_zero(est.lambdas, est.sequence, opt.extrapolation_order);
  est.limit = ex.value;
  est.error = ex.error;
  est.converged = ex.converged;
  est.verdict = ex.converged ? "converged" : "stalled";
  return est;
}

std::vector<Complex> class_representative(const std::vector<Complex>& pairings,
                                          std::size_t reference_index) {
  if (reference_index >= pairings.size())
    throw InputError("class_representative: reference index out of range");
  const double mod = std::abs(pairings[reference_index]);
  if (mod == 0.0)
    throw InputError("class_representative: reference pairing vanishes");
  std::vector<Complex> out(pairings);
  for (Complex& v : out) v /= mod;
  return out;
}

}  // namespace slimcalc::scaling
