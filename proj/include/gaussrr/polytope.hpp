#pragma once

// Exact lattice-polytope geometry in ambient dimension <= 4: convex hulls,
// normalized volumes, 2D lattice-point counts, Minkowski sums and mixed
// volumes.  Everything is integer arithmetic (int64 coordinates, int128
// predicates); no floating point enters any decision.

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "gaussrr/laurent.hpp"

namespace gaussrr {

using LatticeVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Coordinates beyond this bound are outside the supported envelope.
inline constexpr std::int64_t kCoordinateCap = std::int64_t(1) << 20;

class LatticePolytope {
 public:
  int ambient_dimension() const { return ambient_dim_; }
  int affine_dimension() const { return affine_dim_; }

  // Minimal vertex set (every element is an extreme point), lex-sorted.
  const std::vector<LatticeVector>& vertices() const { return vertices_; }

 private:
  LatticePolytope(int ambient_dim, int affine_dim, std::vector<LatticeVector> vertices)
      : ambient_dim_(ambient_dim), affine_dim_(affine_dim), vertices_(std::move(vertices)) {}

  friend LatticePolytope convex_hull(const std::vector<LatticeVector>& points);

  int ambient_dim_;
  int affine_dim_;
  std::vector<LatticeVector> vertices_;
};

// Convex hull of a finite nonempty point set.  Throws std::invalid_argument
// on empty input, mixed dimensions, ambient dimension outside [1,4] or
// coordinates beyond the cap.
LatticePolytope convex_hull(const std::vector<LatticeVector>& points);

// d! times the Euclidean volume; 0 when the polytope is lower-dimensional.
std::int64_t normalized_volume(const LatticePolytope& p);

struct LatticePointCounts {
  std::int64_t interior = 0;
  std::int64_t boundary = 0;
};

// Interior and boundary lattice point counts; ambient dimension must be 2.
// For lower-dimensional polygons interior is 0 and boundary counts all
// lattice points of the segment or point.
LatticePointCounts lattice_point_counts(const LatticePolytope& p);

LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b);

// Mixed volume of d polytopes in ambient dimension d, normalized so that
// MV(P, ..., P) = normalized_volume(P); computed by inclusion-exclusion over
// normalized volumes of Minkowski subset sums (the alternating sum equals
// d! times the classical mixed volume, hence division by d! is exact).
std::int64_t mixed_volume(const std::vector<LatticePolytope>& polytopes);

// Newton polytope of a nonzero Laurent polynomial.
LatticePolytope newton_polytope(const LaurentPolynomial& poly);

// Vertices of a full-dimensional polygon (ambient dimension 2) in
// counterclockwise order starting from the lex-least vertex.
std::vector<LatticeVector> ccw_vertex_ring(const LatticePolytope& p);

}  // namespace gaussrr
