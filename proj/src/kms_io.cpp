#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "slimcalc/kms.hpp"

namespace slimcalc::kms {

namespace {

// Natural cubic spline through (x_i, y_i); complex values via two splines.
class Spline {
public:
  Spline(std::vector<double> x, std::vector<Complex> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3) throw InputError("spline needs >= 3 samples");
    m_.assign(n, Complex{});
    std::vector<double> diag(n, 2.0), sub(n, 0.0);
    std::vector<Complex> rhs(n, Complex{});
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double hl = x_[i] - x_[i - 1], hr = x_[i + 1] - x_[i];
      sub[i] = hl / (hl + hr);
      rhs[i] = 6.0 / (hl + hr) *
               ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
    }
    // Thomas solve for the second derivatives (natural ends m_0 = m_n = 0).
    std::vector<double> c(n, 0.0);
    std::vector<Complex> d(n, Complex{});
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double up = 1.0 - sub[i];
      const double denom = diag[i] - sub[i] * c[i - 1];
      c[i] = up / denom;
      d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 1;) m_[i] = d[i] - c[i] * m_[i + 1];
  }

  Complex operator()(double t) const {
    if (t <= x_.front() || t >= x_.back()) return Complex{};
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - t) / h, b = (t - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h) /
               6.0;
  }

private:
  std::vector<double> x_;
  std::vector<Complex> y_, m_;
};

}  // namespace

void write_correlator(const std::string& path, const CorrelationFunction& g,
                      double t_min, double t_max, std::size_t samples) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write correlator file: " + path);
  out.precision(17);
  out << "# correlator v1\n";
  switch (g.envelope.kind) {
    case Envelope::Kind::Power:
      out << "envelope power C=" << g.envelope.amplitude
          << " alpha=" << g.envelope.rate << "\n";
      break;
    case Envelope::Kind::Exponential:
      out << "envelope exp C=" << g.envelope.amplitude
          << " kappa=" << g.envelope.rate << "\n";
      break;
    case Envelope::Kind::Compact:
      out << "envelope compact support=" << g.envelope.support
          << " C=" << g.envelope.amplitude << "\n";
      break;
  }
  if (!std::isinf(g.beta)) out << "beta " << g.beta << "\n";
  if (g.mass != 0.0) out << "mass " << g.mass << "\n";
  for (const DeltaTerm& d : g.deltas)
    out << "delta t=" << d.location << " re=" << d.weight.real()
        << " im=" << d.weight.imag() << "\n";
  for (const PvPole& p : g.pv_poles)
    out << "pvpole t=" << p.location << " re=" << p.residue.real()
        << " im=" << p.residue.imag() << "\n";
  if (g.has_smooth()) {
    out << "samples\n";
    for (std::size_t i = 0; i < samples; ++i) {
      const double t = t_min + (t_max - t_min) * static_cast<double>(i) /
                                   static_cast<double>(samples - 1);
      const Complex v = g.smooth_regular(t);
      out << t << " " << v.real() << " " << v.imag() << "\n";
    }
  }
}

namespace {

double parse_kv(const std::string& tok, const char* key) {
  const std::string k = std::string(key) + "=";
  if (tok.rfind(k, 0) != 0)
    throw InputError("correlator file: expected " + k + "..., got " + tok);
  return std::stod(tok.substr(k.size()));
}

}  // namespace

CorrelationFunction read_correlator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open correlator file: " + path);
  CorrelationFunction g;
  std::vector<double> ts;
  std::vector<Complex> vs;
  std::string line;
  bool in_samples = false;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    if (in_samples) {
      double t, re, im;
      if (ls >> t >> re >> im) {
        ts.push_back(t);
        vs.push_back(Complex(re, im));
      }
      continue;
    }
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "envelope") {
      std::string kind, a, b;
      ls >> kind >> a >> b;
      if (kind == "power")
        g.envelope = Envelope::power(parse_kv(a, "C"), parse_kv(b, "alpha"));
      else if (kind == "exp")
        g.envelope =
            Envelope::exponential(parse_kv(a, "C"), parse_kv(b, "kappa"));
      else if (kind == "compact")
        g.envelope = Envelope::compact(parse_kv(a, "support"), parse_kv(b, "C"));
      else
        throw InputError("correlator file: unknown envelope kind " + kind);
    } else if (tok == "beta") {
      ls >> g.beta;
    } else if (tok == "mass") {
      ls >> g.mass;
    } else if (tok == "delta" || tok == "pvpole") {
      std::string a, b, c;
      ls >> a >> b >> c;
      const double t = parse_kv(a, "t");
      const Complex w(parse_kv(b, "re"), parse_kv(c, "im"));
      if (tok == "delta")
        g.deltas.push_back({t, w});
      else
        g.pv_poles.push_back({t, w});
    } else if (tok == "samples") {
      in_samples = true;
    } else {
      throw InputError("correlator file: unknown directive " + tok);
    }
  }
  if (!ts.empty()) {
    auto sp = std::make_shared<Spline>(std::move(ts), std::move(vs));
    g.smooth_regular = [sp](double t) { return (*sp)(t); };
  }
  return g;
}

}  // namespace slimcalc::kms
