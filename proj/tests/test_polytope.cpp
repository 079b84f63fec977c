#include <algorithm>
#include <cstdint>
#include <vector>

#include "doctest.h"

#include "gaussrr/laurent.hpp"
#include "gaussrr/polytope.hpp"
#include "gaussrr/rng.hpp"

using namespace gaussrr;

namespace {

LatticeVector lv2(std::int64_t a, std::int64_t b) {
  LatticeVector v(2);
  v << a, b;
  return v;
}

LatticeVector lv3(std::int64_t a, std::int64_t b, std::int64_t c) {
  LatticeVector v(3);
  v << a, b, c;
  return v;
}

std::vector<LatticeVector> square_points() {
  return {lv2(0, 0), lv2(1, 0), lv2(0, 1), lv2(1, 1)};
}

// Independent area oracle: shoelace over an explicit ring.
std::int64_t shoelace_twice_area(const std::vector<LatticeVector>& ring) {
  std::int64_t twice = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const LatticeVector& a = ring[i];
    const LatticeVector& b = ring[(i + 1) % ring.size()];
    twice += a(0) * b(1) - a(1) * b(0);
  }
  return twice;
}

// Random lattice polygon as the hull of a handful of random points.
LatticePolytope random_polygon(Rng& rng, int span = 6) {
  while (true) {
    std::vector<LatticeVector> pts;
    const int count = 3 + static_cast<int>(rng.uniform_int(0, 5));
    for (int i = 0; i < count; ++i) {
      pts.push_back(lv2(rng.uniform_int(-span, span), rng.uniform_int(-span, span)));
    }
    const LatticePolytope p = convex_hull(pts);
    if (p.affine_dimension() == 2) return p;
  }
}

}  // namespace

TEST_CASE("convex hull drops interior and redundant points") {
  auto pts = square_points();
  pts.push_back(lv2(0, 0));  // duplicate
  const LatticePolytope square = convex_hull(pts);
  CHECK(square.affine_dimension() == 2);
  CHECK(square.vertices().size() == 4);

  pts.push_back(lv2(1, 1));  // another duplicate of a vertex
  std::vector<LatticeVector> with_center = pts;
  with_center.push_back(lv2(0, 0));
  const LatticePolytope again = convex_hull(with_center);
  CHECK(again.vertices().size() == 4);

  // Collinear interior points on edges are not vertices.
  const LatticePolytope seg =
      convex_hull({lv2(0, 0), lv2(1, 1), lv2(2, 2), lv2(3, 3)});
  CHECK(seg.affine_dimension() == 1);
  REQUIRE(seg.vertices().size() == 2);
  CHECK(seg.vertices().front() == lv2(0, 0));
  CHECK(seg.vertices().back() == lv2(3, 3));
}

TEST_CASE("convex hull: points and validation") {
  const LatticePolytope pt = convex_hull({lv2(4, -2)});
  CHECK(pt.affine_dimension() == 0);
  CHECK(pt.vertices().size() == 1);
  CHECK_THROWS_AS(convex_hull({}), std::invalid_argument);
  LatticeVector huge(2);
  huge << (std::int64_t{1} << 21), 0;
  CHECK_THROWS_AS(convex_hull({huge}), std::invalid_argument);
}

TEST_CASE("normalized volumes of standard bodies") {
  CHECK(normalized_volume(convex_hull({lv2(0, 0), lv2(1, 0), lv2(0, 1)})) == 1);
  CHECK(normalized_volume(convex_hull(square_points())) == 2);
  CHECK(normalized_volume(convex_hull({lv2(0, 0), lv2(1, 0), lv2(2, 2), lv2(0, 1)})) == 4);
  CHECK(normalized_volume(convex_hull({lv2(0, 0), lv2(3, 3)})) == 0);  // affine dim 1 < 2
  CHECK(normalized_volume(convex_hull({lv2(2, 1)})) == 0);

  const LatticePolytope simplex3 =
      convex_hull({lv3(0, 0, 0), lv3(1, 0, 0), lv3(0, 1, 0), lv3(0, 0, 1)});
  CHECK(normalized_volume(simplex3) == 1);

  std::vector<LatticeVector> cube;
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b)
      for (int c = 0; c <= 1; ++c) cube.push_back(lv3(a, b, c));
  CHECK(normalized_volume(convex_hull(cube)) == 6);

  // The body behind the headline n=3 value: unit simplex glued to a
  // determinant-2 tetrahedron gives 1 + 2 = 3.
  const LatticePolytope spindle = convex_hull(
      {lv3(0, 0, 0), lv3(1, 0, 0), lv3(0, 1, 0), lv3(0, 0, 1), lv3(1, 1, 1)});
  CHECK(spindle.vertices().size() == 5);
  CHECK(normalized_volume(spindle) == 3);
}

TEST_CASE("normalized volume agrees with shoelace on random polygons") {
  Rng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const LatticePolytope p = random_polygon(rng);
    CHECK(normalized_volume(p) == shoelace_twice_area(ccw_vertex_ring(p)));
  }
}

TEST_CASE("ccw vertex ring of the square") {
  const LatticePolytope square = convex_hull(square_points());
  const std::vector<LatticeVector> ring = ccw_vertex_ring(square);
  REQUIRE(ring.size() == 4);
  CHECK(ring[0] == lv2(0, 0));
  CHECK(ring[1] == lv2(1, 0));
  CHECK(ring[2] == lv2(1, 1));
  CHECK(ring[3] == lv2(0, 1));
}

TEST_CASE("lattice point counts") {
  {
    const LatticePolytope p = convex_hull({lv2(0, 0), lv2(1, 0), lv2(2, 2), lv2(0, 1)});
    const LatticePointCounts counts = lattice_point_counts(p);
    CHECK(counts.interior == 1);
    CHECK(counts.boundary == 4);
  }
  {
    const LatticePointCounts counts = lattice_point_counts(convex_hull(square_points()));
    CHECK(counts.interior == 0);
    CHECK(counts.boundary == 4);
  }
  {
    const LatticePointCounts counts =
        lattice_point_counts(convex_hull({lv2(0, 0), lv2(2, 2)}));
    CHECK(counts.interior == 0);
    CHECK(counts.boundary == 3);
  }
  {
    const LatticePointCounts counts = lattice_point_counts(convex_hull({lv2(5, 5)}));
    CHECK(counts.interior == 0);
    CHECK(counts.boundary == 1);
  }
}

TEST_CASE("Pick identity on random polygons") {
  Rng rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const LatticePolytope p = random_polygon(rng);
    const LatticePointCounts counts = lattice_point_counts(p);
    CHECK(normalized_volume(p) == 2 * counts.interior + counts.boundary - 2);
  }
}

TEST_CASE("minkowski sums") {
  const LatticePolytope tri = convex_hull({lv2(0, 0), lv2(1, 0), lv2(0, 1)});
  const LatticePolytope sum = minkowski_sum(tri, tri);
  CHECK(normalized_volume(sum) == 4);  // 2-dilated triangle
  const LatticePolytope seg = convex_hull({lv2(0, 0), lv2(1, 1)});
  // Pentagon (0,0),(1,0),(2,1),(1,2),(0,1): shoelace twice-area 5.
  CHECK(normalized_volume(minkowski_sum(tri, seg)) == 5);

  Rng rng(303);
  for (int trial = 0; trial < 20; ++trial) {
    const LatticePolytope a = random_polygon(rng, 3);
    const LatticePolytope b = random_polygon(rng, 3);
    const LatticePolytope ab = minkowski_sum(a, b);
    const LatticePolytope ba = minkowski_sum(b, a);
    CHECK(ab.vertices().size() == ba.vertices().size());
    CHECK(normalized_volume(ab) == normalized_volume(ba));
  }
}

TEST_CASE("mixed volumes: pinned values") {
  const LatticePolytope tri = convex_hull({lv2(0, 0), lv2(1, 0), lv2(0, 1)});
  const LatticePolytope square = convex_hull(square_points());
  CHECK(mixed_volume({tri, tri}) == 1);
  CHECK(mixed_volume({square, square}) == 2);
  const LatticePolytope simplex3 =
      convex_hull({lv3(0, 0, 0), lv3(1, 0, 0), lv3(0, 1, 0), lv3(0, 0, 1)});
  CHECK(mixed_volume({simplex3, simplex3, simplex3}) == 1);
}

TEST_CASE("mixed volume symmetry and diagonal") {
  Rng rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    const LatticePolytope a = random_polygon(rng, 3);
    const LatticePolytope b = random_polygon(rng, 3);
    CHECK(mixed_volume({a, b}) == mixed_volume({b, a}));
    CHECK(mixed_volume({a, a}) == normalized_volume(a));
  }
}

TEST_CASE("mixed volume is monotone under dilation on segments") {
  // MV of axis segments equals the absolute determinant of their directions.
  const LatticePolytope ex = convex_hull({lv2(0, 0), lv2(1, 0)});
  const LatticePolytope ey = convex_hull({lv2(0, 0), lv2(0, 1)});
  CHECK(mixed_volume({ex, ey}) == 1);
  CHECK(mixed_volume({ex, ex}) == 0);  // degenerate pair
  const LatticePolytope diag = convex_hull({lv2(0, 0), lv2(2, 3)});
  CHECK(mixed_volume({ex, diag}) == 3);
}

TEST_CASE("newton polytopes") {
  const LatticePolytope np = newton_polytope(parse("1+x+y", 2));
  CHECK(np.affine_dimension() == 2);
  CHECK(np.vertices().size() == 3);
  CHECK(newton_polytope(parse("1 + x*y + x^2*y^2", 2)).affine_dimension() == 1);
  CHECK(newton_polytope(parse("7", 2)).affine_dimension() == 0);
  CHECK(normalized_volume(newton_polytope(parse("x^-1+2*y^-1+3*x+5*y", 2))) == 4);
}
