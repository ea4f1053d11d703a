#pragma once

#include <cmath>
#include <numbers>

#include "turnover/hermitian.hpp"

namespace turnover {

// A complex geodesic presented as a disc with a chosen center:
//   c  center, <c,c> = -1
//   q  polar of the geodesic, <q,q> = +1, <c,q> = 0
//   d  direction inside the geodesic, <d,d> = +1, <d,c> = <d,q> = 0
// Points of the closed disc are [c + w d] with |w| <= 1; the boundary circle
// is [c + theta d], |theta| = 1.  The phase gauge of d is arbitrary but fixed
// per Slice object, so theta-coordinates taken against one Slice are mutually
// consistent (all circle-order computations below only ever compare thetas
// extracted from the same Slice).
struct Slice {
  CVec3 c, q, d;
};

// Build the slice of the complex geodesic polar to q passing through center c.
inline Slice make_slice(const CVec3& center, const CVec3& polar,
                        double tol = kDefaultTol) {
  CVec3 c = normalize_negative(center, tol);
  CVec3 q = normalize_positive(polar, tol);
  if (std::abs(herm(c, q)) > 1e3 * tol * (norm(c) * norm(q)))
    raise(Err::DegenerateInput, "slice center not on the complex geodesic");
  CVec3 d = normalize_positive(herm_cross(c, q), tol);
  return {c, q, d};
}

// Disc coordinate of a point z on the slice: z ~ c + w d with w = -<z,d>/<z,c>.
// |w| = 1 on the boundary circle, |w| < 1 inside.
inline cx theta_coordinate(const Slice& s, const CVec3& z, double tol = kDefaultTol) {
  cx zc = herm(z, s.c);
  cx zd = herm(z, s.d);
  double scale = norm(z);
  if (std::abs(zc) <= tol * scale)
    raise(Err::NotOnSlice, "point is orthogonal to the slice center");
  // The component along q must vanish for z to lie on the slice.
  if (std::abs(herm(z, s.q)) > 1e3 * tol * scale)
    raise(Err::NotOnSlice, "point has a component off the slice");
  return -zd / zc;
}

// Cyclic order of three boundary coordinates: o = 0 when (t1,t2,t3) appear in
// counterclockwise cyclic order (increasing argument) or when any two
// coincide exactly-within-noise; o = 1 when they are pairwise distinct and in
// clockwise order.  o is invariant under cyclic permutation and under a
// common rotation of all three coordinates.
//
// Coincidence handling: pairs closer than eq_tol count as equal (order 0 by
// convention); pairs in the ambiguous band (eq_tol, guard_tol) raise
// IndeterminateOrder so the caller can re-choose its base point.
inline int cyclic_order_o(cx t1, cx t2, cx t3, double eq_tol = 1e-12,
                          double guard_tol = kDefaultTol) {
  const double s1 = std::abs(t1), s2 = std::abs(t2), s3 = std::abs(t3);
  if (s1 == 0.0 || s2 == 0.0 || s3 == 0.0)
    raise(Err::DegenerateInput, "cyclic order of a zero coordinate");
  // Work with unit phases; inputs are boundary coordinates up to noise.
  t1 /= s1; t2 /= s2; t3 /= s3;
  const double d12 = std::abs(t1 - t2), d13 = std::abs(t1 - t3), d23 = std::abs(t2 - t3);
  const double dmin = std::min({d12, d13, d23});
  if (dmin <= eq_tol) return 0;
  if (dmin < guard_tol)
    raise(Err::IndeterminateOrder, "two circle coordinates nearly coincide");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto arg_in_0_2pi = [&](cx w) {
    double a = std::arg(w);
    if (a <= 0.0) a += two_pi;
    return a;
  };
  const double a2 = arg_in_0_2pi(t2 / t1);
  const double a3 = arg_in_0_2pi(t3 / t1);
  return (a2 < a3) ? 0 : 1;
}

}  // namespace turnover
