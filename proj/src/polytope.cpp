#include "gaussrr/polytope.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace gaussrr {

namespace {

using I128 = __int128;

I128 iabs(I128 v) { return v < 0 ? -v : v; }

I128 igcd(I128 a, I128 b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    const I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow_i128(I128 v, const char* what) {
  if (v > I128(std::int64_t(1) << 62) || v < -I128(std::int64_t(1) << 62)) {
    throw std::overflow_error(std::string("exact predicate overflow in ") + what);
  }
  return static_cast<std::int64_t>(v);
}

bool lex_less(const LatticeVector& a, const LatticeVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

bool lex_equal(const LatticeVector& a, const LatticeVector& b) {
  return (a.array() == b.array()).all();
}

// Bareiss fraction-free elimination; returns the rank and the pivot columns.
// Rows are consumed (entries stay bounded by integer minors, safe in int128).
std::pair<int, std::vector<int>> rank_and_pivots(std::vector<std::array<I128, 4>> rows,
                                                 int cols) {
  std::vector<int> pivots;
  I128 prev = 1;
  int row = 0;
  for (int col = 0; col < cols && row < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = row; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[row], rows[pivot]);
    for (int r = row + 1; r < static_cast<int>(rows.size()); ++r) {
      for (int c = col + 1; c < cols; ++c) {
        rows[r][c] = (rows[r][c] * rows[row][col] - rows[r][col] * rows[row][c]) / prev;
      }
      rows[r][col] = 0;
    }
    prev = rows[row][col];
    pivots.push_back(col);
    ++row;
  }
  return {row, pivots};
}

std::vector<std::array<I128, 4>> difference_rows(const std::vector<LatticeVector>& pts) {
  std::vector<std::array<I128, 4>> rows;
  rows.reserve(pts.size() > 0 ? pts.size() - 1 : 0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::array<I128, 4> row{0, 0, 0, 0};
    for (Eigen::Index j = 0; j < pts[i].size(); ++j) row[j] = pts[i](j) - pts[0](j);
    rows.push_back(row);
  }
  return rows;
}

// --- 2D monotone chain (counterclockwise, starts at the lex-least point) ---

I128 cross2(const std::array<std::int64_t, 4>& o, const std::array<std::int64_t, 4>& a,
            const std::array<std::int64_t, 4>& b) {
  return I128(a[0] - o[0]) * (b[1] - o[1]) - I128(a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<int> monotone_chain(const std::vector<std::array<std::int64_t, 4>>& pts) {
  // Points must be lex-sorted and distinct; returns ids in ccw ring order.
  const int n = static_cast<int>(pts.size());
  std::vector<int> hull;
  for (int i = 0; i < n; ++i) {  // lower hull
    while (hull.size() >= 2 &&
           cross2(pts[hull[hull.size() - 2]], pts[hull.back()], pts[i]) <= 0) {
      hull.pop_back();
    }
    hull.push_back(i);
  }
  const std::size_t lower_size = hull.size() + 1;
  for (int i = n - 2; i >= 0; --i) {  // upper hull
    while (hull.size() >= lower_size &&
           cross2(pts[hull[hull.size() - 2]], pts[hull.back()], pts[i]) <= 0) {
      hull.pop_back();
    }
    hull.push_back(i);
  }
  hull.pop_back();  // last point repeats the first
  return hull;
}

// --- Incremental hull in rank 3 or 4 with exact predicates ---

struct Plane {
  std::array<std::int64_t, 4> n{0, 0, 0, 0};
  std::int64_t c = 0;

  bool operator==(const Plane& o) const { return n == o.n && c == o.c; }
  bool operator<(const Plane& o) const { return std::tie(n, c) < std::tie(o.n, o.c); }
};

struct Facet {
  std::vector<int> vtx;  // r point ids, ascending
  Plane plane;           // outward: plane.n . x <= plane.c on the hull
  bool alive = true;
};

I128 det2(I128 a, I128 b, I128 c, I128 d) { return a * d - b * c; }

I128 det3(const std::array<std::array<I128, 4>, 3>& m, int c0, int c1, int c2) {
  return m[0][c0] * det2(m[1][c1], m[1][c2], m[2][c1], m[2][c2]) -
         m[0][c1] * det2(m[1][c0], m[1][c2], m[2][c0], m[2][c2]) +
         m[0][c2] * det2(m[1][c0], m[1][c1], m[2][c0], m[2][c1]);
}

class IncrementalHull {
 public:
  IncrementalHull(const std::vector<std::array<std::int64_t, 4>>& pts, int rank)
      : pts_(pts), r_(rank) {
    build();
  }

  std::vector<int> vertex_ids() const {
    std::vector<int> candidates;
    for (const auto& f : facets_) {
      if (!f.alive) continue;
      candidates.insert(candidates.end(), f.vtx.begin(), f.vtx.end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // A candidate is a true vertex iff its distinct supporting facet planes
    // have normals of full rank; points interior to an edge or facet fail.
    std::vector<int> result;
    for (int id : candidates) {
      std::vector<Plane> planes;
      for (const auto& f : facets_) {
        if (!f.alive) continue;
        if (std::find(f.vtx.begin(), f.vtx.end(), id) != f.vtx.end()) planes.push_back(f.plane);
      }
      std::sort(planes.begin(), planes.end());
      planes.erase(std::unique(planes.begin(), planes.end()), planes.end());
      std::vector<std::array<I128, 4>> rows;
      rows.reserve(planes.size());
      for (const auto& pl : planes) {
        rows.push_back({pl.n[0], pl.n[1], pl.n[2], pl.n[3]});
      }
      if (rank_and_pivots(std::move(rows), r_).first == r_) result.push_back(id);
    }
    return result;
  }

  // Simplicial facets of the final hull (vertex ids ascending per facet).
  std::vector<std::vector<int>> facet_list() const {
    std::vector<std::vector<int>> out;
    for (const auto& f : facets_) {
      if (f.alive) out.push_back(f.vtx);
    }
    return out;
  }

 private:
  void build() {
    pick_initial_simplex();
    for (int j = 0; j <= r_; ++j) {
      std::vector<int> vtx;
      for (int k = 0; k <= r_; ++k) {
        if (k != j) vtx.push_back(simplex_[k]);
      }
      facets_.push_back(make_facet(vtx));
    }
    for (int i = 0; i < static_cast<int>(pts_.size()); ++i) {
      if (std::find(simplex_.begin(), simplex_.end(), i) != simplex_.end()) continue;
      insert_point(i);
    }
  }

  void pick_initial_simplex() {
    simplex_.push_back(0);
    std::vector<std::array<I128, 4>> rows;
    int rank = 0;
    for (int i = 1; i < static_cast<int>(pts_.size()) && rank < r_; ++i) {
      std::array<I128, 4> row{0, 0, 0, 0};
      for (int j = 0; j < r_; ++j) row[j] = I128(pts_[i][j]) - pts_[0][j];
      auto trial = rows;
      trial.push_back(row);
      const int new_rank = rank_and_pivots(trial, r_).first;
      if (new_rank > rank) {
        rows.push_back(row);
        rank = new_rank;
        simplex_.push_back(i);
      }
    }
    if (static_cast<int>(simplex_.size()) != r_ + 1) {
      throw std::logic_error("point set does not span the expected rank");
    }
    ref_sum_.fill(0);
    for (int id : simplex_) {
      for (int j = 0; j < r_; ++j) ref_sum_[j] += pts_[id][j];
    }
  }

  Facet make_facet(std::vector<int> vtx) {
    std::sort(vtx.begin(), vtx.end());
    std::array<std::array<I128, 4>, 3> edges{};
    for (int e = 1; e < r_; ++e) {
      for (int j = 0; j < r_; ++j) {
        edges[e - 1][j] = I128(pts_[vtx[e]][j]) - pts_[vtx[0]][j];
      }
    }
    std::array<I128, 4> normal{0, 0, 0, 0};
    if (r_ == 3) {
      normal[0] = det2(edges[0][1], edges[0][2], edges[1][1], edges[1][2]);
      normal[1] = -det2(edges[0][0], edges[0][2], edges[1][0], edges[1][2]);
      normal[2] = det2(edges[0][0], edges[0][1], edges[1][0], edges[1][1]);
    } else {
      normal[0] = det3(edges, 1, 2, 3);
      normal[1] = -det3(edges, 0, 2, 3);
      normal[2] = det3(edges, 0, 1, 3);
      normal[3] = -det3(edges, 0, 1, 2);
    }
    I128 g = 0;
    for (int j = 0; j < r_; ++j) g = igcd(g, normal[j]);
    if (g == 0) throw std::logic_error("degenerate facet simplex");
    for (int j = 0; j < r_; ++j) normal[j] /= g;

    Facet f;
    f.vtx = std::move(vtx);
    I128 offset = 0;
    for (int j = 0; j < r_; ++j) offset += normal[j] * pts_[f.vtx[0]][j];

    // Orient outward: the interior reference point must be strictly beneath.
    I128 ref_side = -offset * (r_ + 1);
    for (int j = 0; j < r_; ++j) ref_side += normal[j] * ref_sum_[j];
    if (ref_side == 0) throw std::logic_error("reference point on facet plane");
    if (ref_side > 0) {
      for (int j = 0; j < r_; ++j) normal[j] = -normal[j];
      offset = -offset;
    }
    for (int j = 0; j < r_; ++j) f.plane.n[j] = narrow_i128(normal[j], "facet normal");
    f.plane.c = narrow_i128(offset, "facet offset");
    return f;
  }

  I128 side(const Facet& f, int id) const {
    I128 s = -I128(f.plane.c);
    for (int j = 0; j < r_; ++j) s += I128(f.plane.n[j]) * pts_[id][j];
    return s;
  }

  void insert_point(int id) {
    bool strict = false;
    for (const auto& f : facets_) {
      if (f.alive && side(f, id) > 0) {
        strict = true;
        break;
      }
    }
    if (!strict) return;  // inside or on the boundary: not an extreme point

    // Visible set includes facets whose plane contains the point, so the new
    // cone re-triangulates coplanar patches from the point and no horizon
    // ridge is ever affinely dependent with it.
    std::map<std::vector<int>, int> ridge_count;
    for (auto& f : facets_) {
      if (!f.alive || side(f, id) < 0) continue;
      f.alive = false;
      for (int skip = 0; skip < r_; ++skip) {
        std::vector<int> ridge;
        for (int k = 0; k < r_; ++k) {
          if (k != skip) ridge.push_back(f.vtx[k]);
        }
        ++ridge_count[ridge];
      }
    }
    std::vector<Facet> fresh;
    for (const auto& [ridge, count] : ridge_count) {
      if (count != 1) continue;  // interior ridge of the visible region
      std::vector<int> vtx = ridge;
      vtx.push_back(id);
      fresh.push_back(make_facet(std::move(vtx)));
    }
    facets_.erase(std::remove_if(facets_.begin(), facets_.end(),
                                 [](const Facet& f) { return !f.alive; }),
                  facets_.end());
    facets_.insert(facets_.end(), fresh.begin(), fresh.end());
  }

  const std::vector<std::array<std::int64_t, 4>>& pts_;
  int r_;
  std::vector<int> simplex_;
  std::array<I128, 4> ref_sum_{0, 0, 0, 0};
  std::vector<Facet> facets_;
};

std::vector<std::array<std::int64_t, 4>> project(const std::vector<LatticeVector>& pts,
                                                 const std::vector<int>& cols) {
  std::vector<std::array<std::int64_t, 4>> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out[i].fill(0);
    for (std::size_t j = 0; j < cols.size(); ++j) out[i][j] = pts[i](cols[j]);
  }
  return out;
}

std::vector<LatticeVector> sorted_unique(std::vector<LatticeVector> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(), lex_equal), pts.end());
  return pts;
}

I128 simplex_det(const LatticeVector& apex, const std::vector<int>& facet,
                 const std::vector<LatticeVector>& pts) {
  const int d = static_cast<int>(apex.size());
  std::array<std::array<I128, 4>, 4> m{};
  for (int row = 0; row < d; ++row) {
    for (int j = 0; j < d; ++j) m[row][j] = I128(pts[facet[row]](j)) - apex(j);
  }
  if (d == 3) {
    std::array<std::array<I128, 4>, 3> mm{m[0], m[1], m[2]};
    return det3(mm, 0, 1, 2);
  }
  // 4x4 by cofactor expansion along the first row.
  I128 det = 0;
  for (int j = 0; j < 4; ++j) {
    std::array<std::array<I128, 4>, 3> mm{m[1], m[2], m[3]};
    int cols[3];
    int cc = 0;
    for (int c = 0; c < 4; ++c) {
      if (c != j) cols[cc++] = c;
    }
    const I128 minor = det3(mm, cols[0], cols[1], cols[2]);
    det += ((j % 2 == 0) ? 1 : -1) * m[0][j] * minor;
  }
  return det;
}

}  // namespace

LatticePolytope convex_hull(const std::vector<LatticeVector>& points) {
  if (points.empty()) throw std::invalid_argument("convex hull of empty point set");
  const int d = static_cast<int>(points[0].size());
  if (d < 1 || d > 4) throw std::invalid_argument("ambient dimension must be in [1,4]");
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != d) {
      throw std::invalid_argument("points of mixed dimension");
    }
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      if (std::abs(p(j)) > kCoordinateCap) {
        throw std::invalid_argument("lattice coordinate exceeds cap");
      }
    }
  }

  std::vector<LatticeVector> pts = sorted_unique(points);
  if (pts.size() == 1) return LatticePolytope(d, 0, std::move(pts));

  const auto [rank, pivots] = rank_and_pivots(difference_rows(pts), d);
  const auto proj = project(pts, pivots);

  std::vector<int> ids;
  if (rank == 1) {
    // Endpoints along the single pivot coordinate.
    int lo = 0, hi = 0;
    for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
      if (proj[i][0] < proj[lo][0]) lo = i;
      if (proj[i][0] > proj[hi][0]) hi = i;
    }
    ids = {lo, hi};
  } else if (rank == 2) {
    ids = monotone_chain(proj);
  } else {
    ids = IncrementalHull(proj, rank).vertex_ids();
  }

  std::vector<LatticeVector> vertices;
  vertices.reserve(ids.size());
  for (int id : ids) vertices.push_back(pts[id]);
  std::sort(vertices.begin(), vertices.end(), lex_less);
  return LatticePolytope(d, rank, std::move(vertices));
}

std::int64_t normalized_volume(const LatticePolytope& p) {
  const int d = p.ambient_dimension();
  if (p.affine_dimension() < d) return 0;
  const auto& verts = p.vertices();

  if (d == 1) return verts.back()(0) - verts.front()(0);

  if (d == 2) {
    const auto ring = ccw_vertex_ring(p);
    I128 twice_area = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const auto& a = ring[i];
      const auto& b = ring[(i + 1) % ring.size()];
      twice_area += I128(a(0)) * b(1) - I128(b(0)) * a(1);
    }
    return narrow_i128(iabs(twice_area), "polygon area");
  }

  // d = 3 or 4: fan from the lex-least vertex over the boundary facets that
  // do not contain it; |det| of each cone simplex sums to d! * volume.
  std::vector<std::array<std::int64_t, 4>> raw(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    raw[i].fill(0);
    for (int j = 0; j < d; ++j) raw[i][j] = verts[i](j);
  }
  IncrementalHull hull(raw, d);
  const LatticeVector apex = verts.front();  // vertices are lex-sorted
  I128 total = 0;
  for (const auto& facet : hull.facet_list()) {
    bool touches_apex = false;
    for (int id : facet) {
      if (lex_equal(verts[id], apex)) {
        touches_apex = true;
        break;
      }
    }
    if (touches_apex) continue;
    total += iabs(simplex_det(apex, facet, verts));
  }
  return narrow_i128(total, "normalized volume");
}

LatticePointCounts lattice_point_counts(const LatticePolytope& p) {
  if (p.ambient_dimension() != 2) {
    throw std::invalid_argument("lattice point counts require ambient dimension 2");
  }
  LatticePointCounts counts;
  const auto& verts = p.vertices();

  if (p.affine_dimension() == 0) {
    counts.boundary = 1;
    return counts;
  }
  if (p.affine_dimension() == 1) {
    const auto& a = verts.front();
    const auto& b = verts.back();
    counts.boundary = std::gcd(std::abs(b(0) - a(0)), std::abs(b(1) - a(1))) + 1;
    return counts;
  }

  const auto ring = ccw_vertex_ring(p);
  std::int64_t xmin = ring[0](0), xmax = ring[0](0), ymin = ring[0](1), ymax = ring[0](1);
  for (const auto& v : ring) {
    xmin = std::min(xmin, v(0));
    xmax = std::max(xmax, v(0));
    ymin = std::min(ymin, v(1));
    ymax = std::max(ymax, v(1));
  }
  for (std::int64_t x = xmin; x <= xmax; ++x) {
    for (std::int64_t y = ymin; y <= ymax; ++y) {
      bool on_boundary = false;
      bool inside = true;
      for (std::size_t i = 0; i < ring.size() && !on_boundary; ++i) {
        const auto& a = ring[i];
        const auto& b = ring[(i + 1) % ring.size()];
        const I128 cross = I128(b(0) - a(0)) * (y - a(1)) - I128(b(1) - a(1)) * (x - a(0));
        if (cross < 0) {
          inside = false;
          break;
        }
        if (cross == 0 && x >= std::min(a(0), b(0)) && x <= std::max(a(0), b(0)) &&
            y >= std::min(a(1), b(1)) && y <= std::max(a(1), b(1))) {
          on_boundary = true;
        }
      }
      if (on_boundary) {
        ++counts.boundary;
      } else if (inside) {
        ++counts.interior;
      }
    }
  }
  return counts;
}

LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b) {
  if (a.ambient_dimension() != b.ambient_dimension()) {
    throw std::invalid_argument("Minkowski sum of polytopes in different dimensions");
  }
  std::vector<LatticeVector> sums;
  sums.reserve(a.vertices().size() * b.vertices().size());
  for (const auto& va : a.vertices()) {
    for (const auto& vb : b.vertices()) {
      sums.push_back(va + vb);
    }
  }
  return convex_hull(sums);
}

std::int64_t mixed_volume(const std::vector<LatticePolytope>& polytopes) {
  const int d = static_cast<int>(polytopes.size());
  if (d < 1 || d > 4) throw std::invalid_argument("mixed volume takes 1..4 polytopes");
  for (const auto& p : polytopes) {
    if (p.ambient_dimension() != d) {
      throw std::invalid_argument("mixed volume needs d polytopes in ambient dimension d");
    }
  }

  // Inclusion-exclusion: sum_{S} (-1)^{d-|S|} nvol(sum_{i in S} P_i) equals
  // d! times the classical mixed volume, i.e. d! * MV / d! ... divided by d!
  // below with the Bernstein normalization MV(P,...,P) = nvol(P).
  std::vector<std::optional<LatticePolytope>> sums(std::size_t(1) << d);
  I128 total = 0;
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    const int low = std::countr_zero(mask);
    const unsigned rest = mask & (mask - 1);
    if (rest == 0) {
      sums[mask] = polytopes[low];
    } else {
      sums[mask] = minkowski_sum(*sums[rest], polytopes[low]);
    }
    const int popcount = std::popcount(mask);
    const std::int64_t nvol = normalized_volume(*sums[mask]);
    total += ((d - popcount) % 2 == 0) ? I128(nvol) : -I128(nvol);
  }
  I128 factorial = 1;
  for (int k = 2; k <= d; ++k) factorial *= k;
  if (total % factorial != 0) {
    throw std::logic_error("mixed volume inclusion-exclusion not divisible by d!");
  }
  return narrow_i128(total / factorial, "mixed volume");
}

LatticePolytope newton_polytope(const LaurentPolynomial& poly) {
  if (poly.is_zero()) {
    throw std::invalid_argument("Newton polytope of the zero polynomial");
  }
  std::vector<LatticeVector> pts;
  pts.reserve(poly.terms().size());
  for (const auto& [exps, coeff] : poly.terms()) {
    pts.push_back(exps.cast<std::int64_t>());
  }
  return convex_hull(pts);
}

std::vector<LatticeVector> ccw_vertex_ring(const LatticePolytope& p) {
  if (p.ambient_dimension() != 2 || p.affine_dimension() != 2) {
    throw std::invalid_argument("ccw ring requires a full-dimensional polygon");
  }
  std::vector<std::array<std::int64_t, 4>> raw(p.vertices().size());
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    raw[i] = {p.vertices()[i](0), p.vertices()[i](1), 0, 0};
  }
  // Vertices are stored lex-sorted, which is what the chain expects.
  const auto ids = monotone_chain(raw);
  std::vector<LatticeVector> ring;
  ring.reserve(ids.size());
  for (int id : ids) ring.push_back(p.vertices()[id]);
  return ring;
}

}  // namespace gaussrr
