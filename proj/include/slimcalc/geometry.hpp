#ifndef SLIMCALC_GEOMETRY_HPP
#define SLIMCALC_GEOMETRY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slimcalc/common.hpp"

namespace slimcalc::geom {

using Point = std::vector<double>;

/// Open cone with apex `apex`, unit `axis`, slope s = r/h and height h:
/// { apex + t axis + v : 0 < t < h, v _|_ axis, |v| < s t }.  In R^1 the
/// cone is the interval (apex, apex + h axis); slope is ignored.
struct Cone {
  Point apex;
  Point axis;
  double slope = 1.0;
  double height = 1.0;

  bool contains(const Point& x) const;
  int dimension() const { return static_cast<int>(apex.size()); }
};

/// Region given by a membership oracle, with optional structure flags.
class Region {
public:
  struct HalfSpace {
    Point normal;     // a
    double offset{};  // region side: a . x > offset
  };

  Region(int dim, std::function<bool(const Point&)> oracle,
         double bounding_radius, std::string name = "oracle");
  static Region polytope(int dim, std::vector<HalfSpace> halfspaces,
                         double bounding_radius, std::string name = "polytope");

  // Built-in corpus.
  static Region ball(Point center, double radius);
  static Region quadrant(int dim = 2);          // open positive orthant
  static Region wedge4d();                      // { x1 > |x0| } x R^2
  static Region cusp();                         // {(x,y): x>0, 0<y<exp(-1/x^2)}
  static Region slit_ball();                    // unit disc minus [0,1) x {0}

  int dimension() const { return dim_; }
  bool contains(const Point& x) const { return oracle_(x); }
  double bounding_radius() const { return bound_; }
  const std::string& name() const { return name_; }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  bool is_polytope() const { return !halfspaces_.empty(); }

  std::optional<bool> convex_flag;        // set when known
  std::optional<Point> interior_anchor;   // for the convex fast path

private:
  int dim_;
  std::function<bool(const Point&)> oracle_;
  double bound_;
  std::string name_;
  std::vector<HalfSpace> halfspaces_;
};

struct SamplingConfig {
  std::uint64_t seed = 20240915;
  std::size_t cone_density = 100000;   // certification samples per cone
  std::size_t search_density = 8000;   // samples during bisection
  std::size_t directions = 2048;       // direction grid on the sphere
  std::size_t azimuth_sweep = 128;     // deterministic cross-section sweep
  double slope_cap = 50.0;
  double bisection_tol = 1e-3;
  std::size_t budget = 400000000;      // membership-test budget
};

/// Low-discrepancy unit directions on S^{n-1}.
std::vector<Point> sphere_directions(int dim, std::size_t count,
                                     std::uint64_t seed);

/// All cone sample points are members of the region?  Returns a violating
/// witness otherwise.  Samples interior points, stratified geometrically
/// toward the apex and toward the lateral boundary.
std::optional<Point> certify_cone(const Cone& cone, const Region& region,
                                  std::size_t density,
                                  const SamplingConfig& cfg);

struct ContractibilityResult {
  bool contractible = false;
  double lambda0 = 0.0;       // all tested lambda below this passed
  std::optional<Point> witness;
  double witness_lambda = 0.0;
  std::string tested_family;  // what was actually sampled (finite family)
};

/// Sampled version of "every compact K in V is pulled into Omega by all
/// small dilations": point-cloud compacta, geometric lambda sub-grid.
ContractibilityResult is_contractible(
    const Region& V, const Region& Omega,
    const std::vector<std::vector<Point>>& compacta,
    double lambda_min = 1e-6, double ratio = 0.5);

struct ConeSearchResult {
  std::optional<Cone> cone;
  std::size_t membership_tests = 0;
  double best_fraction = 0.0;  // best passing fraction among failures
};

/// Search for a cone with apex p inside Omega (conical regularity of p).
/// Throws InputError when p is not in the closure of Omega.
ConeSearchResult conical_regularity(const Point& p, const Region& region,
                                    const SamplingConfig& cfg = {});

struct SlopeTableRow {
  Point direction;
  double max_slope = 0.0;   // 0: no cone along this direction
  double max_height = 0.0;
};

struct MaximalRegionResult {
  bool whole_space = false;  // 0 interior: M(Omega) = R^n
  std::vector<SlopeTableRow> table;
};

/// Direction-wise inner approximation of the maximal contractible region
/// M(Omega) at 0.  Throws NotConicallyRegularError when no cone exists.
MaximalRegionResult maximal_contractible_region(const Region& region,
                                                const SamplingConfig& cfg = {});

struct ProductRegularityResult {
  bool regular = false;
  std::optional<Cone> factor_cone;
  std::string note;  // the product table is the product of factor tables
};

/// Conical regularity of (p, p) in Omega x Omega == regularity of p in
/// Omega; the product maximal region is the product of the factor tables.
ProductRegularityResult product_point_regularity(const Point& p,
                                                 const Region& region,
                                                 const SamplingConfig& cfg = {});

/// Region description file: `dim n` + `halfspace a1..an b` lines, or
/// `builtin <name> [params...]`.
Region read_region_file(const std::string& path);
/// Slope table as CSV (direction components, max slope, max height).
void write_slope_table_csv(const std::string& path,
                           const MaximalRegionResult& result,
                           const std::vector<std::string>& header_comments);

}  // namespace slimcalc::geom

#endif
