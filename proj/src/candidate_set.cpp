#include "optdes/candidate_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "optdes/errors.hpp"
#include "optdes/rng.hpp"

namespace optdes {

namespace {

// Boundary slack on membership constraints, so grid points that land on a
// curved or slanted boundary up to rounding still count as members.
constexpr double kBoundaryTol = 1e-12;

const double kSqrt2 = std::sqrt(2.0);

// Evenly spaced values over [lo, hi] with exact endpoints.
std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> g(count);
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[i] = lo + i * step;
  g.front() = lo;
  g.back() = hi;
  return g;
}

void check_count(int n, const char *where) {
  if (n < 1) {
    std::ostringstream msg;
    msg << where << ": need at least 1 point, got " << n;
    throw std::invalid_argument(msg.str());
  }
}

void check_resolution(int r, const char *where) {
  if (r < 2) {
    std::ostringstream msg;
    msg << where << ": need a resolution of at least 2, got " << r;
    throw std::invalid_argument(msg.str());
  }
}

bool disk_contains(const double *x) {
  return x[0] * x[0] + x[1] * x[1] <= 1.0 + kBoundaryTol;
}

// Wynn's polygon: the kite-shaped region cut from the unit disk by
//   x1 >= -sqrt(2)/4,  x2 >= -sqrt(2)/4,
//   3*x1 <= x2 + sqrt(2),  3*x2 <= x1 + sqrt(2).
// The two slanted edges and the disk boundary meet at the apex
// (sqrt(2)/2, sqrt(2)/2); the other vertices are (-s,-s), (t,-s), (-s,t)
// with s = sqrt(2)/4 and t = sqrt(2)/4 (from the slanted edges meeting the
// axis bounds).
bool wynn_contains(const double *x) {
  const double lo = -kSqrt2 / 4.0;
  return x[0] >= lo - kBoundaryTol && x[1] >= lo - kBoundaryTol &&
         3.0 * x[0] <= x[1] + kSqrt2 + kBoundaryTol &&
         3.0 * x[1] <= x[0] + kSqrt2 + kBoundaryTol &&
         x[0] * x[0] + x[1] * x[1] <= 1.0 + kBoundaryTol;
}

bool box_contains(const double *x, int q) {
  for (int d = 0; d < q; ++d) {
    if (std::abs(x[d]) > 1.0 + kBoundaryTol) return false;
  }
  return true;
}

bool sphere_contains(const double *x) {
  const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  return std::abs(r2 - 1.0) <= kBoundaryTol;
}

}  // namespace

CandidateSet make_candidates(const FeatureMap &map, const std::vector<double> &pts,
                             int n, int q) {
  check_count(n, "make_candidates");
  if (map.input_dim() != q) {
    std::ostringstream msg;
    msg << "make_candidates: feature map expects dimension " << map.input_dim()
        << " but points have dimension " << q;
    throw std::invalid_argument(msg.str());
  }
  if (static_cast<int>(pts.size()) != n * q) {
    throw std::invalid_argument("make_candidates: point buffer size mismatch");
  }
  CandidateSet c;
  c.n = n;
  c.q = q;
  c.p = map.output_dim();
  c.points = pts;
  c.regressors.resize(static_cast<size_t>(n) * c.p);
  for (int i = 0; i < n; ++i) {
    map.evaluate(&c.points[static_cast<size_t>(i) * q],
                 &c.regressors[static_cast<size_t>(i) * c.p]);
  }
  return c;
}

CandidateSet square_grid_points(const FeatureMap &map, int side) {
  check_resolution(side, "square_grid_points");
  const std::vector<double> g = linspace(-1.0, 1.0, side);
  std::vector<double> pts;
  pts.reserve(static_cast<size_t>(side) * side * 2);
  for (double a : g) {
    for (double b : g) {
      pts.push_back(a);
      pts.push_back(b);
    }
  }
  return make_candidates(map, pts, side * side, 2);
}

CandidateSet cube_grid_points(const FeatureMap &map, int side) {
  check_resolution(side, "cube_grid_points");
  const std::vector<double> g = linspace(-1.0, 1.0, side);
  std::vector<double> pts;
  pts.reserve(static_cast<size_t>(side) * side * side * 3);
  for (double a : g) {
    for (double b : g) {
      for (double c : g) {
        pts.push_back(a);
        pts.push_back(b);
        pts.push_back(c);
      }
    }
  }
  return make_candidates(map, pts, side * side * side, 3);
}

CandidateSet disk_grid_points(const FeatureMap &map, int resolution) {
  check_resolution(resolution, "disk_grid_points");
  const std::vector<double> g = linspace(-1.0, 1.0, resolution);
  std::vector<double> pts;
  int n = 0;
  for (double a : g) {
    for (double b : g) {
      const double x[2] = {a, b};
      if (disk_contains(x)) {
        pts.push_back(a);
        pts.push_back(b);
        ++n;
      }
    }
  }
  return make_candidates(map, pts, n, 2);
}

CandidateSet disk_random_points(const FeatureMap &map, int n, std::uint64_t seed) {
  check_count(n, "disk_random_points");
  Rng rng(seed);
  std::vector<double> pts;
  pts.reserve(static_cast<size_t>(n) * 2);
  for (int i = 0; i < n; ++i) {
    // Rejection from the bounding square keeps the distribution uniform.
    int tries = 0;
    for (;;) {
      const double x[2] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      if (x[0] * x[0] + x[1] * x[1] <= 1.0) {
        pts.push_back(x[0]);
        pts.push_back(x[1]);
        break;
      }
      if (++tries > 10000) {
        throw RejectionStall(
            "disk_random_points: rejection sampler failed to hit the disk");
      }
    }
  }
  return make_candidates(map, pts, n, 2);
}

const std::vector<double> &wynn_injected_points() {
  // Support points of the published optimal designs on this region, rounded
  // to two decimals: the seven D-optimal points and the three additional
  // A-optimal ones.  Injecting them makes both optima representable on the
  // grid.
  static const std::vector<double> pts = {
      -0.35, -0.35,  //
      -0.35, 0.35,   //
      0.07,  0.07,   //
      0.12,  0.12,   //
      0.18,  0.53,   //
      0.21,  0.54,   //
      0.35,  -0.35,  //
      0.53,  0.18,   //
      0.54,  0.21,   //
      0.70,  0.70,   //
  };
  return pts;
}

CandidateSet wynn_polygon_points(const FeatureMap &map, int resolution) {
  check_resolution(resolution, "wynn_polygon_points");
  // Axis grid anchored at the lower polygon bound -sqrt(2)/4 with
  // `resolution` points across the bounding box [-sqrt(2)/4, 1]; points
  // violating a polygon constraint are dropped.
  const double lo = -kSqrt2 / 4.0;
  const double h = (1.0 - lo) / (resolution - 1);
  const std::vector<double> g = linspace(lo, 1.0, resolution);

  const std::vector<double> &inj = wynn_injected_points();
  const int n_inj = static_cast<int>(inj.size()) / 2;

  std::vector<double> pts;
  int n = 0;
  for (double a : g) {
    for (double b : g) {
      const double x[2] = {a, b};
      if (!wynn_contains(x)) continue;
      // The injected table points stand in for their grid cell: a grid
      // point within half a step (per axis) of an injected point would
      // otherwise compete with it as a near-duplicate, so it is replaced.
      bool replaced = false;
      for (int k = 0; k < n_inj && !replaced; ++k) {
        const double dx = std::abs(a - inj[2 * k]);
        const double dy = std::abs(b - inj[2 * k + 1]);
        replaced = std::max(dx, dy) <= h / 2.0;
      }
      if (replaced) continue;
      pts.push_back(a);
      pts.push_back(b);
      ++n;
    }
  }
  for (int k = 0; k < n_inj; ++k) {
    pts.push_back(inj[2 * k]);
    pts.push_back(inj[2 * k + 1]);
    ++n;
  }

  // Restore the canonical lexicographic order the injected points broke.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&pts](int a, int b) {
    if (pts[2 * a] != pts[2 * b]) return pts[2 * a] < pts[2 * b];
    return pts[2 * a + 1] < pts[2 * b + 1];
  });
  std::vector<double> sorted;
  sorted.reserve(pts.size());
  for (int idx : order) {
    sorted.push_back(pts[2 * idx]);
    sorted.push_back(pts[2 * idx + 1]);
  }
  return make_candidates(map, sorted, n, 2);
}

CandidateSet sphere_fibonacci_points(const FeatureMap &map, int n) {
  check_count(n, "sphere_fibonacci_points");
  // Fibonacci lattice with the offset-(2i+1)/n latitude variant, which
  // avoids placing points at the poles; azimuth advances by the golden
  // ratio conjugate per index.
  const double golden_conjugate = (std::sqrt(5.0) - 1.0) / 2.0;
  const double two_pi = 2.0 * std::acos(-1.0);
  std::vector<double> pts;
  pts.reserve(static_cast<size_t>(n) * 3);
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double theta = two_pi * i * golden_conjugate;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    pts.push_back(r * std::cos(theta));
    pts.push_back(r * std::sin(theta));
    pts.push_back(z);
  }
  return make_candidates(map, pts, n, 3);
}

CandidateSet square_random_points(const FeatureMap &map, int n, std::uint64_t seed) {
  check_count(n, "square_random_points");
  Rng rng(seed);
  std::vector<double> pts;
  pts.reserve(static_cast<size_t>(n) * 2);
  for (int i = 0; i < n; ++i) {
    pts.push_back(rng.uniform(-1.0, 1.0));
    pts.push_back(rng.uniform(-1.0, 1.0));
  }
  return make_candidates(map, pts, n, 2);
}

CandidateSet scaling_candidates(const FeatureMap &map, int q, int lhs_points,
                                std::uint64_t seed) {
  check_count(lhs_points, "scaling_candidates");
  if (q < 1 || q > 20) {
    throw std::invalid_argument(
        "scaling_candidates: dimension must be between 1 and 20");
  }
  Rng rng(seed);
  const int m = lhs_points;
  std::vector<double> pts(static_cast<size_t>(m) * q);
  // Latin hypercube: per dimension, a random permutation of m strata, each
  // sample jittered uniformly within its stratum.
  std::vector<int> perm(m);
  for (int d = 0; d < q; ++d) {
    for (int i = 0; i < m; ++i) perm[i] = i;
    for (int i = m - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
      std::swap(perm[i], perm[j]);
    }
    for (int i = 0; i < m; ++i) {
      const double cell = (perm[i] + rng.uniform01()) / m;
      pts[static_cast<size_t>(i) * q + d] = -1.0 + 2.0 * cell;
    }
  }
  // The 2^q corners, in lexicographic order with -1 before +1, then the
  // center point.
  const std::uint64_t corners = std::uint64_t{1} << q;
  for (std::uint64_t c = 0; c < corners; ++c) {
    for (int d = 0; d < q; ++d) {
      const bool high = (c >> (q - 1 - d)) & 1;
      pts.push_back(high ? 1.0 : -1.0);
    }
  }
  for (int d = 0; d < q; ++d) pts.push_back(0.0);
  const int n = m + static_cast<int>(corners) + 1;
  return make_candidates(map, pts, n, q);
}

CandidateSet generate_candidates(const SpaceSpec &spec, const FeatureMap &map) {
  switch (spec.kind) {
    case SpaceKind::SquareGrid:
      return square_grid_points(map, spec.size);
    case SpaceKind::CubeGrid:
      return cube_grid_points(map, spec.size);
    case SpaceKind::DiskGrid:
      return disk_grid_points(map, spec.size);
    case SpaceKind::DiskRandom:
      return disk_random_points(map, spec.size, spec.seed);
    case SpaceKind::WynnPolygonGrid:
      return wynn_polygon_points(map, spec.size);
    case SpaceKind::SphereFibonacci:
      return sphere_fibonacci_points(map, spec.size);
    case SpaceKind::SquareRandom:
      return square_random_points(map, spec.size, spec.seed);
    case SpaceKind::Custom:
      return make_candidates(map, spec.custom_points,
                             static_cast<int>(spec.custom_points.size()) / spec.q,
                             spec.q);
  }
  throw std::invalid_argument("generate_candidates: unknown space kind");
}

int space_dimension(const SpaceSpec &spec) {
  switch (spec.kind) {
    case SpaceKind::SquareGrid:
    case SpaceKind::DiskGrid:
    case SpaceKind::DiskRandom:
    case SpaceKind::WynnPolygonGrid:
    case SpaceKind::SquareRandom:
      return 2;
    case SpaceKind::CubeGrid:
    case SpaceKind::SphereFibonacci:
      return 3;
    case SpaceKind::Custom:
      return spec.q;
  }
  throw std::invalid_argument("space_dimension: unknown space kind");
}

bool space_contains(const SpaceSpec &spec, const double *x) {
  switch (spec.kind) {
    case SpaceKind::SquareGrid:
    case SpaceKind::SquareRandom:
      return box_contains(x, 2);
    case SpaceKind::CubeGrid:
      return box_contains(x, 3);
    case SpaceKind::DiskGrid:
    case SpaceKind::DiskRandom:
      return disk_contains(x);
    case SpaceKind::WynnPolygonGrid:
      return wynn_contains(x);
    case SpaceKind::SphereFibonacci:
      return sphere_contains(x);
    case SpaceKind::Custom: {
      // Membership in a custom space means coinciding with a listed point.
      const int q = spec.q;
      const int n = static_cast<int>(spec.custom_points.size()) / q;
      for (int i = 0; i < n; ++i) {
        bool same = true;
        for (int d = 0; d < q && same; ++d) {
          same = std::abs(spec.custom_points[static_cast<size_t>(i) * q + d] -
                          x[d]) <= kBoundaryTol;
        }
        if (same) return true;
      }
      return false;
    }
  }
  throw std::invalid_argument("space_contains: unknown space kind");
}

}  // namespace optdes
