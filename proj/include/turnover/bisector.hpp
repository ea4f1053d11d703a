#pragma once

#include <cmath>

#include "turnover/hermitian.hpp"
#include "turnover/isometry.hpp"
#include "turnover/slice.hpp"

namespace turnover {

// Bisector between two ultraparallel complex geodesics L1 = P(q1-perp),
// L2 = P(q2-perp).  The complex spine is P(p-perp) with p = q1 x q2; the
// feet c1, c2 are the points where L1, L2 meet the spine.  The feet are
// gauged so that <c1,c2> is real and negative, which pins the midpoint
// m ~ c1 + c2 and makes meridional transport across the bisector canonical.
struct BisectorSegment {
  CVec3 q1, q2;    // slice polars, <q,q> = +1
  CVec3 p;         // spine polar, <p,p> = +1
  CVec3 c1, c2;    // feet, <c,c> = -1, <c1,c2> real < 0
  CVec3 m;         // spine midpoint, <m,m> = -1
  CVec3 m_pol;     // polar of the middle slice span(m, p), <.,.> = +1
};

enum class Foot { One, Two };

inline BisectorSegment bisector_between(const CVec3& q1_in, const CVec3& q2_in,
                                        double tol = kDefaultTol) {
  BisectorSegment seg;
  seg.q1 = normalize_positive(q1_in, tol);
  seg.q2 = normalize_positive(q2_in, tol);
  const CVec3 p_raw = herm_cross(seg.q1, seg.q2);
  const double pp = herm(p_raw, p_raw).real();
  if (!(pp > tol * norm2(p_raw)) || norm2(p_raw) < tol)
    raise(Err::NotUltraparallel,
          "common polar not positive: the geodesics are not ultraparallel");
  seg.p = normalize_positive(p_raw, tol);
  seg.c1 = normalize_negative(herm_cross(seg.q1, seg.p), tol);
  seg.c2 = normalize_negative(herm_cross(seg.q2, seg.p), tol);
  const cx g = herm(seg.c1, seg.c2);
  if (std::abs(g) < tol)
    raise(Err::DegenerateInput, "feet are orthogonal; midpoint gauge undefined");
  seg.c2 = (-g / std::abs(g)) * seg.c2;
  seg.m = normalize_negative(seg.c1 + seg.c2, tol);
  seg.m_pol = normalize_positive(herm_cross(seg.m, seg.p), tol);
  return seg;
}

// Reflection in the middle slice of the bisector.  It swaps the two
// boundary slices, realizing the meridional matching: in the chosen gauge
// R c1 = -c2 and R p = -p, so [a c1 + b p] |-> [a c2 + b p].
inline Mat3 reflection_in_middle_slice(const BisectorSegment& seg) {
  return reflection_in(seg.m_pol);
}

inline const CVec3& foot(const BisectorSegment& seg, Foot f) {
  return f == Foot::One ? seg.c1 : seg.c2;
}

inline Slice slice_at_foot(const BisectorSegment& seg, Foot f,
                           double tol = kDefaultTol) {
  return f == Foot::One ? make_slice(seg.c1, seg.q1, tol)
                        : make_slice(seg.c2, seg.q2, tol);
}

namespace detail {

// Shared arithmetic of meridional matching: z = a c_from + b p maps to
// c_to + (b/a) p.  Returns the meridional coordinate through `w`.
inline CVec3 transport_raw(const BisectorSegment& seg, const CVec3& z,
                           Foot from, double tol, cx* w) {
  const CVec3& c_from = foot(seg, from);
  const CVec3& c_to = foot(seg, from == Foot::One ? Foot::Two : Foot::One);
  const cx a = -herm(z, c_from);
  const cx b = herm(z, seg.p);
  const double scale = norm(z);
  if (scale < tol) raise(Err::DegenerateInput, "zero vector");
  const CVec3 residual = z - a * c_from - b * seg.p;
  if (norm(residual) > 1e3 * tol * scale)
    raise(Err::NotOnSlice, "point is not on the source slice of the bisector");
  if (std::abs(a) <= tol * scale)
    raise(Err::NotOnSlice, "point is the polar of the slice");
  *w = b / a;
  return c_to + *w * seg.p;
}

}  // namespace detail

// Meridional transport of a boundary point of the slice at `from`:
// z ~ c_from + w p with |w| = 1 maps to c_to + w p, preserving the
// meridional coordinate.  Raises NotOnSlice for points off the slice or
// off its boundary circle (interior points included).
inline CVec3 meridional_transport(const BisectorSegment& seg, const CVec3& z,
                                  Foot from, double tol = kDefaultTol) {
  cx w;
  const CVec3 out = detail::transport_raw(seg, z, from, tol, &w);
  if (std::abs(std::abs(w) - 1.0) > 1e3 * tol)
    raise(Err::NotOnSlice, "point is not on the boundary circle of the slice");
  return out;
}

// Transport along the equidistant meridional curves for points of the
// closed slice disc: z ~ c_from + w p with |w| = tanh(delta) <= 1, i.e.
// cosh(delta) c_from + sinh(delta) eps p maps to the same expression over
// c_to.  Used for the interior companion points of the Toledo curve.
inline CVec3 meridional_transport_interior(const BisectorSegment& seg,
                                           const CVec3& z, Foot from,
                                           double tol = kDefaultTol) {
  cx w;
  const CVec3 out = detail::transport_raw(seg, z, from, tol, &w);
  if (std::abs(w) > 1.0 + 1e3 * tol)
    raise(Err::NotOnSlice, "point lies outside the closed slice disc");
  return out;
}

}  // namespace turnover
