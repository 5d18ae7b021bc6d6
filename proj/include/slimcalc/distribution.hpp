#ifndef SLIMCALC_DISTRIBUTION_HPP
#define SLIMCALC_DISTRIBUTION_HPP

#include <functional>
#include <variant>
#include <vector>

#include "slimcalc/quadrature.hpp"
#include "slimcalc/testfunction.hpp"

namespace slimcalc::dist {

// A distribution with explicitly declared singular structure: a finite sum
// of terms, each carrying a complex coefficient.  Everything needed here
// (model homogeneous distributions, commutators, two-point functions along
// an orbit) fits this taxonomy.

/// Locally integrable pointwise-evaluable density.
struct SmoothDensity {
  std::function<Complex(const std::vector<double>&)> f;
};

/// |x - x0|^(-a) with a < n (integrable).  Supported for n <= 3.
struct PowerSingularity {
  double exponent = 1.0;  // the a in |x-x0|^(-a)
  std::vector<double> location;
};

/// Principal value of an odd kernel about x0 (n = 1 only).  kernel(rho)
/// is the value at signed offset rho > 0; pairing uses symmetric points
/// kernel(rho) * (phi(x0+rho) - phi(x0-rho)).
struct PrincipalValue {
  std::function<double(double)> kernel = [](double r) { return 1.0 / r; };
  double location = 0.0;
};

struct PointDelta {
  std::vector<double> location;
};

/// k-th derivative of a point delta (n = 1, k <= 4).
struct DeltaDerivative {
  int order = 1;
  double location = 0.0;
};

struct Term {
  Complex coefficient{1.0, 0.0};
  std::variant<SmoothDensity, PowerSingularity, PrincipalValue, PointDelta,
               DeltaDerivative>
      kind;
};

class GeneralizedFunction {
public:
  GeneralizedFunction(int dimension, std::vector<Term> terms)
      : dim_(dimension), terms_(std::move(terms)) {
    if (dim_ <= 0) throw InputError("distribution: dimension must be positive");
  }

  int dimension() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  GeneralizedFunction operator*(Complex c) const;
  GeneralizedFunction operator+(const GeneralizedFunction& other) const;

  // Convenience constructors for the model corpus.
  static GeneralizedFunction delta(std::vector<double> location,
                                   Complex weight = 1.0);
  static GeneralizedFunction pv_inverse();                       // PV(1/x), n=1
  static GeneralizedFunction power(int n, double a,
                                   std::vector<double> x0 = {});  // |x-x0|^-a
  static GeneralizedFunction smooth(int n,
                                    std::function<Complex(const std::vector<double>&)> f);

private:
  int dim_;
  std::vector<Term> terms_;
};

/// <u, phi>: sum of per-term pairings, each by quadrature adapted to the
/// term's singular structure.  Throws QuadratureError when a term cannot be
/// integrated to tolerance, InputError on dimension mismatch.
Complex pair(const GeneralizedFunction& u, const Probe& probe,
             const quad::Options& opt = {});
Complex pair(const GeneralizedFunction& u, const TestFunction& phi,
             const quad::Options& opt = {});

/// phi -> phi(./lambda).
TestFunction scale(const TestFunction& phi, double lambda);

/// (f (x) g)(x, y) = f(x) g(y).
TestFunction tensor(const TestFunction& f, const TestFunction& g);

}  // namespace slimcalc::dist

#endif
