#include "slimcalc/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "slimcalc/parallel.hpp"
#include "slimcalc/rng.hpp"

namespace slimcalc::geom {

namespace {

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Point& a) { return std::sqrt(dot(a, a)); }

// Orthonormal basis of the complement of `axis`.
std::vector<Point> complement_basis(const Point& axis) {
  const std::size_t n = axis.size();
  std::vector<Point> basis;
  for (std::size_t i = 0; i < n && basis.size() < n - 1; ++i) {
    Point v(n, 0.0);
    v[i] = 1.0;
    double c = dot(v, axis);
    for (std::size_t k = 0; k < n; ++k) v[k] -= c * axis[k];
    for (const Point& b : basis) {
      const double cb = dot(v, b);
      for (std::size_t k = 0; k < n; ++k) v[k] -= cb * b[k];
    }
    const double m = norm(v);
    if (m < 1e-9) continue;
    for (double& x : v) x /= m;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

bool Cone::contains(const Point& x) const {
  const std::size_t n = apex.size();
  if (x.size() != n) throw InputError("cone membership: dimension mismatch");
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) t += (x[i] - apex[i]) * axis[i];
  if (!(t > 0.0) || !(t < height)) return false;  // open in the axial variable
  if (n == 1) return true;
  double rho2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    rho2 += sqr(x[i] - apex[i] - t * axis[i]);
  return rho2 < sqr(slope * t);  // strict: lateral boundary excluded
}

Region::Region(int dim, std::function<bool(const Point&)> oracle,
               double bounding_radius, std::string name)
    : dim_(dim), oracle_(std::move(oracle)), bound_(bounding_radius),
      name_(std::move(name)) {
  if (dim_ <= 0) throw InputError("region: dimension must be positive");
}

Region Region::polytope(int dim, std::vector<HalfSpace> halfspaces,
                        double bounding_radius, std::string name) {
  auto hs = std::make_shared<std::vector<HalfSpace>>(std::move(halfspaces));
  Region r(dim,
           [hs](const Point& x) {
             for (const HalfSpace& h : *hs)
               if (!(dot(h.normal, x) > h.offset)) return false;
             return true;
           },
           bounding_radius, std::move(name));
  r.halfspaces_ = *hs;
  r.convex_flag = true;
  return r;
}

Region Region::ball(Point center, double radius) {
  const int n = static_cast<int>(center.size());
  Point c = center;
  Region r(n,
           [c, radius](const Point& x) {
             double d2 = 0.0;
             for (std::size_t i = 0; i < c.size(); ++i) d2 += sqr(x[i] - c[i]);
             return d2 < sqr(radius);
           },
           norm(center) + radius, "ball");
  r.convex_flag = true;
  r.interior_anchor = std::move(c);
  return r;
}

Region Region::quadrant(int dim) {
  std::vector<HalfSpace> hs;
  for (int i = 0; i < dim; ++i) {
    Point n(static_cast<std::size_t>(dim), 0.0);
    n[static_cast<std::size_t>(i)] = 1.0;
    hs.push_back({std::move(n), 0.0});
  }
  Region r = polytope(dim, std::move(hs), 4.0, "quadrant");
  r.interior_anchor = Point(static_cast<std::size_t>(dim), 1.0);
  return r;
}

Region Region::wedge4d() {
  // x^1 > |x^0| as the two half-spaces x1 - x0 > 0, x1 + x0 > 0.
  std::vector<HalfSpace> hs = {{{-1.0, 1.0, 0.0, 0.0}, 0.0},
                               {{1.0, 1.0, 0.0, 0.0}, 0.0}};
  Region r = polytope(4, std::move(hs), 4.0, "wedge4d");
  r.interior_anchor = Point{0.0, 1.0, 0.0, 0.0};
  return r;
}

Region Region::cusp() {
  Region r(2,
           [](const Point& x) {
             if (!(x[0] > 0.0) || !(x[1] > 0.0)) return false;
             return x[1] < std::exp(-1.0 / sqr(x[0]));
           },
           4.0, "cusp");
  r.convex_flag = false;
  return r;
}

Region Region::slit_ball() {
  Region r(2,
           [](const Point& x) {
             if (sqr(x[0]) + sqr(x[1]) >= 1.0) return false;
             return !(x[1] == 0.0 && x[0] >= 0.0);
           },
           1.0, "slit-ball");
  r.convex_flag = false;
  return r;
}

std::vector<Point> sphere_directions(int dim, std::size_t count,
                                     std::uint64_t seed) {
  std::vector<Point> dirs;
  dirs.reserve(count);
  if (dim == 1) {
    dirs.push_back({1.0});
    if (count > 1) dirs.push_back({-1.0});
    return dirs;
  }
  if (dim == 2) {
    for (std::size_t i = 0; i < count; ++i) {
      const double th = 2.0 * kPi * static_cast<double>(i) /
                        static_cast<double>(count);
      dirs.push_back({std::cos(th), std::sin(th)});
    }
    return dirs;
  }
  if (dim == 3) {
    // Fibonacci sphere.
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) /
                                 static_cast<double>(count);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = ga * static_cast<double>(i);
      dirs.push_back({r * std::cos(th), r * std::sin(th), z});
    }
    return dirs;
  }
  // n >= 4: hashed low-discrepancy Gaussians, normalized.
  for (std::size_t i = 0; i < count; ++i) {
    Point d(static_cast<std::size_t>(dim));
    double m = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double u1 =
          rng::uniform(seed, 0x5d1e, i, static_cast<std::uint64_t>(2 * k));
      const double u2 =
          rng::uniform(seed, 0x5d1e, i, static_cast<std::uint64_t>(2 * k + 1));
      const double g = std::sqrt(-2.0 * std::log(u1 + 1e-300)) *
                       std::cos(2.0 * kPi * u2);
      d[static_cast<std::size_t>(k)] = g;
      m += g * g;
    }
    m = std::sqrt(m);
    if (m < 1e-12) {
      d.assign(static_cast<std::size_t>(dim), 0.0);
      d[0] = 1.0;
      m = 1.0;
    }
    for (double& x : d) x /= m;
    dirs.push_back(std::move(d));
  }
  return dirs;
}

std::optional<Point> certify_cone(const Cone& cone, const Region& region,
                                  std::size_t density,
                                  const SamplingConfig& cfg) {
  const int n = cone.dimension();
  if (region.dimension() != n)
    throw InputError("certify_cone: dimension mismatch");

  auto make_point = [&](double t, double frac, const Point& cross) {
    Point x(cone.apex);
    for (int i = 0; i < n; ++i)
      x[static_cast<std::size_t>(i)] += t * cone.axis[static_cast<std::size_t>(i)];
    if (n > 1) {
      const double rho = frac * cone.slope * t;
      for (int i = 0; i < n; ++i)
        x[static_cast<std::size_t>(i)] += rho * cross[static_cast<std::size_t>(i)];
    }
    return x;
  };

  std::vector<Point> cross_dirs;
  if (n > 1) {
    const auto basis = complement_basis(cone.axis);
    const auto sub = sphere_directions(n - 1, cfg.azimuth_sweep, cfg.seed);
    for (const Point& s : sub) {
      Point c(static_cast<std::size_t>(n), 0.0);
      for (std::size_t b = 0; b < basis.size(); ++b)
        for (int i = 0; i < n; ++i)
          c[static_cast<std::size_t>(i)] += s[b] * basis[b][static_cast<std::size_t>(i)];
      cross_dirs.push_back(std::move(c));
    }
  } else {
    cross_dirs.push_back({0.0});
  }

  // Deterministic layers: t geometric toward the apex, radial fractions
  // pushed toward the lateral boundary; catches asymptotic violations
  // (cusps) and overshooting slopes.
  static const double kFracs[] = {1.0 - 1e-9, 0.999, 0.97, 0.8, 0.5, 0.15};
  std::optional<Point> witness;
  std::atomic<bool> found{false};

  const std::size_t layers = 44;
  par::parallel_for(layers, [&](std::size_t j) {
    if (found.load(std::memory_order_relaxed)) return;
    const double t = cone.height * std::pow(0.62, static_cast<double>(j));
    for (const Point& c : cross_dirs) {
      for (double f : kFracs) {
        const Point x = make_point(t * (1.0 - 1e-12), f, c);
        if (!region.contains(x)) {
          if (!found.exchange(true)) witness = x;
          return;
        }
      }
    }
  });
  if (witness) return witness;

  // Bulk randomized interior samples (hash RNG: order-independent).
  const std::size_t bulk = density;
  par::parallel_for(bulk, [&](std::size_t i) {
    if (found.load(std::memory_order_relaxed)) return;
    const double u = rng::uniform(cfg.seed, 0xc0e, i, 1);
    const double t = cone.height *
                     std::pow(u, 1.0 / static_cast<double>(n));  // volume-uniform
    double frac = 1.0;
    Point cross(static_cast<std::size_t>(n), 0.0);
    if (n > 1) {
      frac = std::pow(rng::uniform(cfg.seed, 0xc0e, i, 2),
                      1.0 / static_cast<double>(n - 1));
      const auto& cd =
          cross_dirs[rng::key(cfg.seed, 0xc0e, i, 3) % cross_dirs.size()];
      // jitter the azimuth by blending two sweep directions
      const auto& cd2 =
          cross_dirs[rng::key(cfg.seed, 0xc0e, i, 4) % cross_dirs.size()];
      const double mix = rng::uniform(cfg.seed, 0xc0e, i, 5);
      double m = 0.0;
      for (int k = 0; k < n; ++k) {
        cross[static_cast<std::size_t>(k)] =
            (1.0 - mix) * cd[static_cast<std::size_t>(k)] +
            mix * cd2[static_cast<std::size_t>(k)];
        m += sqr(cross[static_cast<std::size_t>(k)]);
      }
      m = std::sqrt(m);
      if (m < 1e-12) {
        cross = cd;
      } else {
        for (double& x : cross) x /= m;
      }
    }
    const Point x = make_point(std::max(t, cone.height * 1e-14), frac, cross);
    if (!region.contains(x)) {
      if (!found.exchange(true)) witness = x;
    }
  });
  return witness;
}

ContractibilityResult is_contractible(
    const Region& V, const Region& Omega,
    const std::vector<std::vector<Point>>& compacta, double lambda_min,
    double ratio) {
  ContractibilityResult res;
  std::ostringstream fam;
  fam << compacta.size() << " point clouds, lambda grid ratio " << ratio
      << " down to " << lambda_min;
  res.tested_family = fam.str();
  std::vector<double> grid;  // descending: 1, ratio, ratio^2, ...
  for (double l = 1.0; l >= lambda_min; l *= ratio) grid.push_back(l);

  double best_lambda0 = 1.0;
  for (const auto& cloud : compacta) {
    for (const Point& p : cloud)
      if (!V.contains(p))
        throw InputError("is_contractible: compact sample not inside V");

    auto fails_at = [&](double l) -> std::optional<Point> {
      for (const Point& p : cloud) {
        Point q(p);
        for (double& c : q) c *= l;
        if (!Omega.contains(q)) return q;
      }
      return std::nullopt;
    };

    // Largest index whose dilation fails; everything below it passes.
    std::ptrdiff_t last_fail = -1;
    std::optional<Point> small_witness;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (auto w = fails_at(grid[j])) {
        last_fail = static_cast<std::ptrdiff_t>(j);
        small_witness = w;
      }
    }
    if (last_fail == static_cast<std::ptrdiff_t>(grid.size()) - 1) {
      // Even the smallest tested dilation fails: sampled violation.
      res.contractible = false;
      res.witness = small_witness;
      res.witness_lambda = grid.back();
      return res;
    }
    const double lambda0 =
        (last_fail < 0) ? 1.0 : grid[static_cast<std::size_t>(last_fail) + 1];
    best_lambda0 = std::min(best_lambda0, lambda0);
  }
  res.contractible = true;
  res.lambda0 = best_lambda0;
  return res;
}

namespace {

// Sampled closure membership at resolution `r_resolution`: any member of the
// region found inside B(p, r_resolution).  Magnitudes are drawn log-uniform
// per coordinate so extremely thin regions (cusps) are still reachable.
bool in_closure(const Point& p, const Region& region, std::uint64_t seed,
                double r_resolution) {
  if (region.contains(p)) return true;
  const std::size_t n = p.size();
  for (std::size_t k = 0; k < 6000; ++k) {
    Point q(p);
    if (k % 2 == 0) {
      // uniform in the ball
      double m = 0.0;
      std::vector<double> g(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double u1 = rng::uniform(seed, 0xc105, k, 2 * i);
        const double u2 = rng::uniform(seed, 0xc105, k, 2 * i + 1);
        g[i] = std::sqrt(-2.0 * std::log(u1 + 1e-300)) *
               std::cos(2.0 * kPi * u2);
        m += g[i] * g[i];
      }
      m = std::sqrt(m) + 1e-300;
      const double rad = r_resolution *
                         std::pow(rng::uniform(seed, 0xc106, k, 7),
                                  1.0 / static_cast<double>(n));
      for (std::size_t i = 0; i < n; ++i) q[i] += rad * g[i] / m;
    } else {
      // per-coordinate magnitudes with independently mixed scales, from
      // O(r) down to the denormal range (reaches extreme aspect ratios)
      static const double kExp[6] = {0.0, 2.0, 10.0, 50.0, 150.0, 300.0};
      for (std::size_t i = 0; i < n; ++i) {
        const double u = rng::uniform(seed, 0xc107, k, 2 * i);
        const double sign =
            rng::uniform(seed, 0xc107, k, 2 * i + 1) < 0.5 ? -1.0 : 1.0;
        const double e = kExp[rng::key(seed, 0xc108, k, i) % 6];
        const double mag =
            e == 0.0 ? u : std::pow(10.0, -(0.02 + u) * e);
        q[i] += sign * r_resolution * mag;
      }
    }
    if (region.contains(q)) return true;
  }
  return false;
}

// Largest certified slope along `axis` (0 when even tiny cones fail).
SlopeTableRow max_cone_along(const Point& p, const Point& axis,
                             const Region& region, const SamplingConfig& cfg) {
  SlopeTableRow row;
  row.direction = axis;
  const double hcap = std::max(1e-6, region.bounding_radius() * 0.5);

  auto ok = [&](double slope, double height, std::size_t density) {
    Cone c{p, axis, slope, height};
    SamplingConfig probe = cfg;
    // light cross-section sweep while bisecting, full sweep when certifying
    if (density < cfg.cone_density) probe.azimuth_sweep = 32;
    return !certify_cone(c, region, density, probe).has_value();
  };

  // Height first (tiny slope), then slope at the certified height.
  const double s_tiny = 1e-3;
  double h_lo = 0.0, h_hi = 0.0;
  for (double h = hcap; h > 1e-7; h *= 0.25) {
    if (ok(s_tiny, h, cfg.search_density / 4)) {
      h_lo = h;
      break;
    }
  }
  if (h_lo == 0.0) return row;  // no cone along this direction
  h_hi = std::min(hcap * 2.0, h_lo * 4.0);
  for (int it = 0; it < 10 && (h_hi - h_lo) > 1e-3 * h_hi; ++it) {
    const double mid = 0.5 * (h_lo + h_hi);
    (ok(s_tiny, mid, cfg.search_density / 4) ? h_lo : h_hi) = mid;
  }
  const double height = h_lo;

  double s_lo = 0.0;
  if (ok(cfg.slope_cap, height, cfg.search_density)) {
    s_lo = cfg.slope_cap;
  } else {
    // bisection on atan(slope) for uniform angular resolution
    double a_lo = 0.0, a_hi = std::atan(cfg.slope_cap);
    if (ok(s_tiny, height, cfg.search_density)) a_lo = std::atan(s_tiny);
    while (a_hi - a_lo > cfg.bisection_tol) {
      const double mid = 0.5 * (a_lo + a_hi);
      (ok(std::tan(mid), height, cfg.search_density) ? a_lo : a_hi) = mid;
    }
    s_lo = std::tan(a_lo);
  }
  if (s_lo == 0.0) return row;
  // Final certification at full density, backing off if a dense check fails.
  double s = s_lo;
  for (int back = 0; back < 6; ++back) {
    if (ok(s, height, cfg.cone_density)) {
      row.max_slope = s;
      row.max_height = height;
      return row;
    }
    s = std::tan(std::atan(s) - cfg.bisection_tol);
    if (s <= 0.0) break;
  }
  return row;
}

}  // namespace

ConeSearchResult conical_regularity(const Point& p, const Region& region,
                                    const SamplingConfig& cfg) {
  const double r_res = region.bounding_radius() / 64.0;
  if (!in_closure(p, region, cfg.seed, r_res))
    throw InputError(
        "conical_regularity: point not in the closure of the region "
        "(sampled at resolution " +
        std::to_string(r_res) + ")");
  ConeSearchResult res;

  // Convex fast path: aim at an interior anchor.
  std::vector<Point> candidates;
  if (region.convex_flag.value_or(false) && region.interior_anchor) {
    Point d(*region.interior_anchor);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= p[i];
    const double m = norm(d);
    if (m > 1e-12) {
      for (double& x : d) x /= m;
      candidates.push_back(std::move(d));
    }
  }
  const std::size_t coarse =
      std::min<std::size_t>(cfg.directions, region.dimension() <= 2 ? 128 : 512);
  for (auto& d : sphere_directions(region.dimension(), coarse, cfg.seed))
    candidates.push_back(std::move(d));

  const double scale = std::max(1e-3, region.bounding_radius() * 0.25);
  static const double kSlopes[] = {0.5, 0.2, 0.05, 0.01};
  static const double kHeights[] = {1.0, 0.25, 0.05, 0.01};
  for (const Point& d : candidates) {
    for (double s : kSlopes) {
      for (double hf : kHeights) {
        Cone c{p, d, s, hf * scale};
        res.membership_tests += cfg.search_density;
        if (res.membership_tests > cfg.budget) return res;
        if (!certify_cone(c, region, cfg.search_density, cfg)) {
          // certify at full density before returning
          if (!certify_cone(c, region, cfg.cone_density, cfg)) {
            res.cone = c;
            return res;
          }
        }
      }
    }
  }
  return res;
}

MaximalRegionResult maximal_contractible_region(const Region& region,
                                                const SamplingConfig& cfg) {
  MaximalRegionResult out;
  const int n = region.dimension();
  const Point origin(static_cast<std::size_t>(n), 0.0);

  // Interior test: a whole small ball around 0 inside Omega.
  {
    bool interior = false;
    for (int level = 1; level <= 10 && !interior; ++level) {
      const double r = std::pow(0.5, level) * region.bounding_radius();
      bool all_in = true;
      const auto dirs = sphere_directions(n, 256, cfg.seed);
      for (const auto& d : dirs) {
        for (double f : {1.0, 0.7, 0.35, 0.1}) {
          Point q(origin);
          for (int i = 0; i < n; ++i)
            q[static_cast<std::size_t>(i)] = f * r * d[static_cast<std::size_t>(i)];
          if (!region.contains(q)) {
            all_in = false;
            break;
          }
        }
        if (!all_in) break;
      }
      interior = all_in;
    }
    if (interior) {
      out.whole_space = true;
      return out;
    }
  }

  const auto reg = conical_regularity(origin, region, cfg);
  if (!reg.cone)
    throw NotConicallyRegularError(
        "maximal_contractible_region: 0 is not conically regular");

  const auto dirs = sphere_directions(n, cfg.directions, cfg.seed);
  out.table = par::parallel_map<SlopeTableRow>(dirs.size(), [&](std::size_t i) {
    SamplingConfig local = cfg;
    local.search_density = std::max<std::size_t>(500, cfg.search_density / 4);
    return max_cone_along(origin, dirs[i], region, local);
  });
  return out;
}

ProductRegularityResult product_point_regularity(const Point& p,
                                                 const Region& region,
                                                 const SamplingConfig& cfg) {
  ProductRegularityResult res;
  const auto fac = conical_regularity(p, region, cfg);
  res.regular = fac.cone.has_value();
  res.factor_cone = fac.cone;
  res.note =
      "product maximal region = factor table x factor table (per-direction "
      "slopes multiply pairwise)";
  return res;
}

Region read_region_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open region file: " + path);
  int dim = 0;
  std::vector<Region::HalfSpace> hs;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "dim") {
      ls >> dim;
    } else if (tok == "builtin") {
      std::string name;
      ls >> name;
      if (name == "ball") {
        std::vector<double> vals;
        double v;
        while (ls >> v) vals.push_back(v);
        if (vals.size() < 2) throw InputError("region file: ball needs center..., radius");
        const double r = vals.back();
        vals.pop_back();
        return Region::ball(vals, r);
      }
      if (name == "quadrant") {
        int d = 2;
        ls >> d;
        return Region::quadrant(d);
      }
      if (name == "wedge4d") return Region::wedge4d();
      if (name == "cusp") return Region::cusp();
      if (name == "slit-ball") return Region::slit_ball();
      throw InputError("region file: unknown builtin '" + name + "'");
    } else if (tok == "halfspace") {
      std::vector<double> vals;
      double v;
      while (ls >> v) vals.push_back(v);
      if (vals.size() < 2) throw InputError("region file: bad halfspace line");
      Region::HalfSpace h;
      h.offset = vals.back();
      vals.pop_back();
      h.normal = vals;
      hs.push_back(std::move(h));
    } else {
      throw InputError("region file: unknown directive '" + tok + "'");
    }
  }
  if (dim == 0 || hs.empty())
    throw InputError("region file: need dim and at least one halfspace");
  for (const auto& h : hs)
    if (static_cast<int>(h.normal.size()) != dim)
      throw InputError("region file: halfspace dimension mismatch");
  return Region::polytope(dim, std::move(hs), 4.0, "file-polytope");
}

void write_slope_table_csv(const std::string& path,
                           const MaximalRegionResult& result,
                           const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write slope table: " + path);
  for (const auto& c : header_comments) out << "# " << c << "\n";
  if (result.whole_space) {
    out << "# maximal contractible region: all of R^n (interior point)\n";
    return;
  }
  out << "direction...,max_slope,max_height\n";
  out.precision(12);
  for (const auto& row : result.table) {
    for (double d : row.direction) out << d << ",";
    out << row.max_slope << "," << row.max_height << "\n";
  }
}

}  // namespace slimcalc::geom
