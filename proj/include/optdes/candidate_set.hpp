#ifndef OPTDES_CANDIDATE_SET_HPP_
#define OPTDES_CANDIDATE_SET_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "optdes/feature_map.hpp"

namespace optdes {

// A finite design space: N candidate points with their precomputed
// regressor vectors.  Immutable after construction and safe to share.
struct CandidateSet {
  int n = 0;  // number of candidates
  int q = 0;  // point dimension
  int p = 0;  // regressor dimension
  std::vector<double> points;      // n x q, row major
  std::vector<double> regressors;  // n x p, row major

  const double *point(int i) const { return &points[static_cast<size_t>(i) * q]; }
  const double *regressor(int i) const {
    return &regressors[static_cast<size_t>(i) * p];
  }
};

enum class SpaceKind {
  SquareGrid,
  CubeGrid,
  DiskGrid,
  DiskRandom,
  WynnPolygonGrid,
  SphereFibonacci,
  SquareRandom,
  Custom,
};

// Declarative description of a design space.  size is the side count for
// grids, the per-axis resolution for the disk and polygon grids, and the
// point count for random and Fibonacci spaces.  seed feeds the random
// generators; custom_points (row major, q per row) backs Custom.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::SquareGrid;
  int size = 3;
  std::uint64_t seed = 0;
  int q = 2;  // only consulted by Custom (others imply their dimension)
  std::vector<double> custom_points;

  bool operator==(const SpaceSpec &) const = default;
};

// Builds a candidate set from explicit points (row major, n x q).
CandidateSet make_candidates(const FeatureMap &map, const std::vector<double> &pts,
                             int n, int q);

// The five concrete spaces plus random sampling.  Every generator is pure:
// the same arguments (and seed) produce the same point set.
CandidateSet square_grid_points(const FeatureMap &map, int side);
CandidateSet cube_grid_points(const FeatureMap &map, int side);
CandidateSet disk_grid_points(const FeatureMap &map, int resolution);
CandidateSet disk_random_points(const FeatureMap &map, int n, std::uint64_t seed);
CandidateSet wynn_polygon_points(const FeatureMap &map, int resolution);
CandidateSet sphere_fibonacci_points(const FeatureMap &map, int n);
CandidateSet square_random_points(const FeatureMap &map, int n, std::uint64_t seed);

// Candidate set for high-dimensional quadratic scaling runs: seeded
// Latin-hypercube points in [-1,1]^q plus the 2^q cube corners and the
// center (a full grid is infeasible at these dimensions).
CandidateSet scaling_candidates(const FeatureMap &map, int q, int lhs_points,
                                std::uint64_t seed);

// Dispatches on spec.kind.  The feature map's input dimension must match
// the space's point dimension.
CandidateSet generate_candidates(const SpaceSpec &spec, const FeatureMap &map);

// Membership predicate of the space described by spec, with the documented
// boundary tolerance of 1e-12 on the quadratic constraints.  Grid and random
// spaces share the membership region of their continuous container (the
// square, cube, disk, polygon, or sphere).
bool space_contains(const SpaceSpec &spec, const double *x);

// The point dimension implied by a space.
int space_dimension(const SpaceSpec &spec);

// The ten published support points that are injected into the Wynn polygon
// grid so the optimal designs are representable on it (seven from the
// D-optimal table and three more from the A-optimal one).  Row major, 2 per
// row.  Exposed for tests.
const std::vector<double> &wynn_injected_points();

}  // namespace optdes

#endif  // OPTDES_CANDIDATE_SET_HPP_
