#pragma once

// Combinatorial Euler-characteristic oracles for nondegenerate torus
// hypersurfaces: the lattice-volume formula, the Pick-count route for curves,
// and the face-by-face nondegeneracy test that guards both.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gaussrr/gauss.hpp"
#include "gaussrr/laurent.hpp"
#include "gaussrr/polytope.hpp"

namespace gaussrr {

enum class ChiMethod { Khovanskii, Pick, OneDim };

struct ChiReport {
  std::int64_t chi = 0;
  ChiMethod method = ChiMethod::Khovanskii;
  // Whether nondegeneracy was established; nullopt when it is assumed.
  std::optional<bool> nondegenerate;
};

// chi of the hypersurface f = 0 in the torus via the volume formula
// (-1)^{n-1} n! vol(Newton polytope); valid for nondegenerate f (assumed,
// not checked here).  1 <= n <= 3; throws MonomialInputError for monomials.
ChiReport chi_nondegenerate_hypersurface(const LaurentPolynomial& f);

// Curve route (n = 2, full-dimensional Newton polygon): chi = -(2I + B - 2)
// from interior/boundary lattice counts; cross-checked against the volume
// formula, which must agree by Pick's theorem.
ChiReport chi_curve_pick(const LaurentPolynomial& f);

// chi of the hypersurface complement: chi((C*)^n \ Z) = -chi(Z) since the
// torus itself has vanishing Euler characteristic.
std::int64_t chi_complement(const LaurentPolynomial& f);

enum class NondegeneracyVerdict { Nondegenerate, Degenerate, Inconclusive };

struct NondegeneracyReport {
  NondegeneracyVerdict verdict = NondegeneracyVerdict::Inconclusive;
  // Offending face (its vertices, in exponent coordinates) when degenerate.
  std::vector<LatticeVector> face_vertices;
  bool face_is_full_polytope = false;
  // A torus point where the face polynomial and all its logarithmic
  // derivatives vanish, mapped back to the original coordinates.
  std::optional<Eigen::VectorXcd> witness;
  std::string note;
};

// Tests every face F of the Newton polytope for a common torus zero of
// {f_F, theta_1 f_F, ..., theta_n f_F} by solving all square subsystems in
// the face's intrinsic lattice coordinates and screening candidates against
// the full overdetermined system at residual 1e-9.  Full check for n <= 2;
// n = 3 examines only the full-dimensional face and is otherwise
// inconclusive.
NondegeneracyReport nondegeneracy_check(const LaurentPolynomial& f, const GdegConfig& cfg);

}  // namespace gaussrr
