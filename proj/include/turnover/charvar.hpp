#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "turnover/isometry.hpp"
#include "turnover/selection.hpp"

namespace turnover {

// Point of the two-parameter family in the regular case:
//   s = u2^2, t = u3^2 where u = (sqrt(1+s+t), sqrt s, sqrt t) is the center
// of I2 in the eigenbasis of I1; the branch picks the sign of i*sqrt(Delta)
// in the closed form for v2.
struct CharVarPoint {
  double s = 0.0, t = 0.0;
  Branch branch = Branch::Plus;
};

// A solved generator triple.  I3 I2 I1 = 1; u, v are the I2 spectral points
// used downstream as the quadrangle data (c2, p2).  For the special-point
// case v is a chosen direction in u-perp (the solution does not constrain
// it); for the special-line case u is the canonical center
// (e1 + v1 v)/sqrt(1+v1^2), the projection of the I1 center onto v-perp.
struct RepresentationTriple {
  EigenvalueSelection sel;
  CharVarPoint point;
  Mat3 I1, I2, I3;
  CVec3 u, v;
  double trace_residual = 0.0;
  double identity_residual = 0.0;
  bool c_plane = false;  // generators share an eigenvector (C-Fuchsian locus)
};

struct SolveOutcome {
  Err error = Err::None;
  std::string detail;
  double margins[3] = {0.0, 0.0, 0.0};
  double delta = 0.0;
  std::optional<RepresentationTriple> triple;

  bool ok() const { return error == Err::None; }
};

// Per-selection constants of the trace-equation linear system.  The three
// feasibility margins are affine in (s,t):
//   margin1 = |v2|^2 = A2 s + B2 t + C2,
//   margin2 = |v3|^2 = A3 s + B3 t + C3,
//   margin3 = |v2|^2 + |v3|^2 - 1,
// obtained from  |v2|^2 detM = Im(a31 conj z),  |v3|^2 detM = -Im(a21 conj z),
// z = (b13/b23)(a21 s + a31 t) + k,  detM = Im(conj(a21) a31).
struct RegularSystem {
  cx a21, a31, b13, b23, k;
  double detM = 0.0;
  double A2 = 0, B2 = 0, C2 = 0, A3 = 0, B3 = 0, C3 = 0;
};

inline RegularSystem regular_system(const EigenvalueSelection& sel) {
  if (sel.tag != CaseTag::Regular)
    raise(Err::DegenerateInput, "regular_system needs a regular selection");
  RegularSystem sys;
  const cx a1 = sel.alpha(1), a2 = sel.alpha(2), a3 = sel.alpha(3);
  const cx b1 = sel.beta(1), b2 = sel.beta(2), b3 = sel.beta(3);
  sys.a21 = a2 - a1;
  sys.a31 = a3 - a1;
  sys.b13 = b1 - b3;
  sys.b23 = b2 - b3;
  sys.detM = std::imag(std::conj(sys.a21) * sys.a31);
  if (std::abs(sys.detM) < 1e-12)
    raise(Err::DegenerateClass, "detM vanishes (alpha not regular?)");
  sys.k = (sel.sum_gamma() - a1 * (b1 + b2 - b3) - b3 * (a2 + a3)) / sys.b23;
  const cx w = sys.b13 / sys.b23;
  sys.A2 = std::imag(sys.a31 * std::conj(w * sys.a21)) / sys.detM;
  sys.B2 = std::imag(sys.a31 * std::conj(w * sys.a31)) / sys.detM;
  sys.C2 = std::imag(sys.a31 * std::conj(sys.k)) / sys.detM;
  sys.A3 = -std::imag(sys.a21 * std::conj(w * sys.a21)) / sys.detM;
  sys.B3 = -std::imag(sys.a21 * std::conj(w * sys.a31)) / sys.detM;
  sys.C3 = -std::imag(sys.a21 * std::conj(sys.k)) / sys.detM;
  return sys;
}

struct C1Margins {
  double m1 = 0.0, m2 = 0.0, m3 = 0.0;  // |v2|^2, |v3|^2, |v2|^2 + |v3|^2 - 1
  bool all_positive() const { return m1 > 0.0 && m2 > 0.0 && m3 > 0.0; }
};

inline C1Margins c1_margins(const RegularSystem& sys, double s, double t) {
  C1Margins m;
  m.m1 = sys.A2 * s + sys.B2 * t + sys.C2;
  m.m2 = sys.A3 * s + sys.B3 * t + sys.C3;
  m.m3 = m.m1 + m.m2 - 1.0;
  return m;
}

inline C1Margins c1_margins(const EigenvalueSelection& sel, double s, double t) {
  return c1_margins(regular_system(sel), s, t);
}

// C2 discriminant at a C1-feasible point.
inline double c2_delta(const C1Margins& m, double s, double t) {
  const double P = 1.0 + s + t;
  const double lin = -t * m.m2 + P * m.m3 + s * m.m1;
  return 4.0 * m.m3 * m.m1 * s * P - lin * lin;
}

namespace detail {

inline void finish_triple(RepresentationTriple& rep, double residual_tol,
                          SolveOutcome& out) {
  const Mat3 I21 = rep.I2 * rep.I1;
  rep.I3 = su_inverse(I21);
  rep.trace_residual = std::abs(I21.trace() - rep.sel.sum_gamma());
  Mat3 shouldnt = rep.I3 * I21;
  shouldnt.m[0][0] -= 1.0; shouldnt.m[1][1] -= 1.0; shouldnt.m[2][2] -= 1.0;
  rep.identity_residual = shouldnt.max_abs();
  if (rep.trace_residual > residual_tol || rep.identity_residual > residual_tol) {
    out.error = Err::ResidualTooLarge;
    out.detail = "trace residual " + std::to_string(rep.trace_residual);
    return;
  }
  out.triple = rep;
}

// Orthonormal basis (va, vb) of the positive 2-plane u-perp for a real
// negative unit vector u; degenerates to (e2, e3) when u = e1.
inline std::pair<CVec3, CVec3> uperp_basis(const CVec3& u) {
  const double u1 = u[0].real(), u2 = u[1].real(), u3 = u[2].real();
  const double rho = std::hypot(u2, u3);
  if (rho < 1e-14)
    return {CVec3{0.0, 1.0, 0.0}, CVec3{0.0, 0.0, 1.0}};
  return {CVec3{0.0, u3 / rho, -u2 / rho},
          CVec3{rho, u1 * u2 / rho, u1 * u3 / rho}};
}

// Default direction in u-perp used as v for the special-point case before
// any quadrangle gauge search: (0, u3, -u2)/rho, or e2 when u = e1.
inline CVec3 default_uperp_direction(const CVec3& u) {
  return uperp_basis(u).first;
}

}  // namespace detail

// Solve the trace equation in the regular case at (s,t), s,t > 0.
inline SolveOutcome try_solve_regular(const EigenvalueSelection& sel,
                                      const CharVarPoint& pt,
                                      double residual_tol = 1e-8) {
  SolveOutcome out;
  if (sel.tag != CaseTag::Regular) {
    out.error = Err::DegenerateInput;
    out.detail = "selection is not regular";
    return out;
  }
  if (!(pt.s > 0.0) || !(pt.t > 0.0)) {
    out.error = Err::NonGenericBoundary;
    out.detail = "s = 0 or t = 0 lies on the non-generic stratum";
    return out;
  }
  const RegularSystem sys = regular_system(sel);
  const C1Margins m = c1_margins(sys, pt.s, pt.t);
  out.margins[0] = m.m1; out.margins[1] = m.m2; out.margins[2] = m.m3;
  if (!m.all_positive()) {
    out.error = Err::ConditionC1Violated;
    return out;
  }
  out.delta = c2_delta(m, pt.s, pt.t);
  if (out.delta < 0.0) {
    out.error = Err::DeltaNegative;
    return out;
  }
  const double s = pt.s, t = pt.t, P = 1.0 + s + t;
  const double v1 = std::sqrt(m.m3);
  const double sq = std::sqrt(out.delta);
  const double re_num2 = -t * m.m2 + P * m.m3 + s * m.m1;
  const double re_num3 = -s * m.m1 + P * m.m3 + t * m.m2;
  const double sign = pt.branch == Branch::Plus ? 1.0 : -1.0;
  const cx v2 = cx(re_num2, sign * sq) / (2.0 * v1 * std::sqrt(s * P));
  const cx v3 = cx(re_num3, -sign * sq) / (2.0 * v1 * std::sqrt(t * P));

  RepresentationTriple rep;
  rep.sel = sel;
  rep.point = pt;
  rep.u = {std::sqrt(P), std::sqrt(s), std::sqrt(t)};
  rep.v = {v1, v2, v3};
  rep.I1 = Mat3::diagonal(sel.alpha(1), sel.alpha(2), sel.alpha(3));
  rep.I2 = elliptic_from_axes(
      {rep.u, rep.v, herm_cross(rep.u, rep.v), sel.beta(1), sel.beta(2), sel.beta(3)});
  detail::finish_triple(rep, residual_tol, out);
  return out;
}

// Solve the rigid special-point case (I2 a rotation about a point).
inline SolveOutcome try_solve_special_point(const EigenvalueSelection& sel,
                                            double residual_tol = 1e-8) {
  SolveOutcome out;
  if (sel.tag != CaseTag::SpecialPoint) {
    out.error = Err::DegenerateInput;
    out.detail = "selection is not special-point";
    return out;
  }
  const cx a1 = sel.alpha(1), a2 = sel.alpha(2), a3 = sel.alpha(3);
  const cx b1 = sel.beta(1), b2 = sel.beta(2);
  const cx a21 = a2 - a1, a31 = a3 - a1, a13 = a1 - a3;
  const double detM = std::imag(std::conj(a21) * a31);
  if (std::abs(detM) < 1e-12) {
    out.error = Err::DegenerateClass;
    out.detail = "detM vanishes";
    return out;
  }
  const cx k = (sel.sum_gamma() - a1 * b1 - b2 * (a2 + a3)) / (b1 - b2);
  double u2sq = std::imag(a13 * std::conj(k)) / detM;
  double u3sq = std::imag(a21 * std::conj(k)) / detM;
  out.margins[0] = u2sq;
  out.margins[1] = u3sq;
  // Exact-zero coordinates arrive as O(1e-16) noise from the root-of-unity
  // evaluations; clamp the hairline band, reject genuine sign failures.
  if (u2sq < 0.0 && u2sq > -1e-12) u2sq = 0.0;
  if (u3sq < 0.0 && u3sq > -1e-12) u3sq = 0.0;
  if (u2sq < 0.0 || u3sq < 0.0) {
    out.error = Err::Infeasible;
    out.detail = "sign condition fails";
    return out;
  }
  RepresentationTriple rep;
  rep.sel = sel;
  rep.u = {std::sqrt(1.0 + u2sq + u3sq), std::sqrt(u2sq), std::sqrt(u3sq)};
  rep.v = detail::default_uperp_direction(rep.u);
  rep.I1 = Mat3::diagonal(a1, a2, a3);
  // I2 = beta2 Id + (beta1-beta2)/<u,u> |u><u|, <u,u> = -1.
  rep.I2 = b2 * Mat3::identity() + (-(b1 - b2)) * herm_outer(rep.u, rep.u);
  rep.c_plane = (u2sq == 0.0) || (u3sq == 0.0);
  detail::finish_triple(rep, residual_tol, out);
  return out;
}

// Solve the rigid special-line case (I2 a rotation about a complex geodesic).
inline SolveOutcome try_solve_special_line(const EigenvalueSelection& sel,
                                           double residual_tol = 1e-8) {
  SolveOutcome out;
  if (sel.tag != CaseTag::SpecialLine) {
    out.error = Err::DegenerateInput;
    out.detail = "selection is not special-line";
    return out;
  }
  const cx a1 = sel.alpha(1), a2 = sel.alpha(2), a3 = sel.alpha(3);
  const cx b1 = sel.beta(1), b2 = sel.beta(2);
  const cx a21 = a2 - a1, a31 = a3 - a1, a13 = a1 - a3;
  const double detM = std::imag(std::conj(a21) * a31);
  if (std::abs(detM) < 1e-12) {
    out.error = Err::DegenerateClass;
    out.detail = "detM vanishes";
    return out;
  }
  const cx k = (sel.sum_gamma() - a1 * b2 - b1 * (a2 + a3)) / (b1 - b2);
  double v2sq = std::imag(a13 * std::conj(k)) / detM;
  double v3sq = std::imag(a21 * std::conj(k)) / detM;
  if (v2sq < 0.0 && v2sq > -1e-12) v2sq = 0.0;
  if (v3sq < 0.0 && v3sq > -1e-12) v3sq = 0.0;
  double v1sq = v2sq + v3sq - 1.0;
  if (v1sq < 0.0 && v1sq > -1e-12) v1sq = 0.0;
  out.margins[0] = v2sq;
  out.margins[1] = v3sq;
  out.margins[2] = v1sq;
  if (v2sq < 0.0 || v3sq < 0.0) {
    out.error = Err::Infeasible;
    out.detail = "sign condition fails";
    return out;
  }
  if (v1sq < 0.0) {
    out.error = Err::Infeasible;
    out.detail = "norm condition v2^2+v3^2 >= 1 fails";
    return out;
  }
  RepresentationTriple rep;
  rep.sel = sel;
  rep.v = {std::sqrt(v1sq), std::sqrt(v2sq), std::sqrt(v3sq)};
  // Canonical center: projection of the I1 center e1 onto v-perp.
  const double v1 = rep.v[0].real();
  rep.u = (1.0 / std::sqrt(1.0 + v1 * v1)) *
          (CVec3{1.0, 0.0, 0.0} + v1 * rep.v);
  rep.I1 = Mat3::diagonal(a1, a2, a3);
  // I2 = beta1 Id + (beta2-beta1)/<v,v> |v><v|, <v,v> = +1.
  rep.I2 = b1 * Mat3::identity() + (b2 - b1) * herm_outer(rep.v, rep.v);
  rep.c_plane = (v2sq == 0.0) || (v3sq == 0.0) || (v1sq == 0.0);
  detail::finish_triple(rep, residual_tol, out);
  return out;
}

// Throwing wrappers.
inline RepresentationTriple solve_regular(const EigenvalueSelection& sel,
                                          const CharVarPoint& pt,
                                          double residual_tol = 1e-8) {
  SolveOutcome out = try_solve_regular(sel, pt, residual_tol);
  if (!out.ok()) raise(out.error, out.detail);
  return *out.triple;
}

inline RepresentationTriple solve_special_point(const EigenvalueSelection& sel,
                                                double residual_tol = 1e-8) {
  SolveOutcome out = try_solve_special_point(sel, residual_tol);
  if (!out.ok()) raise(out.error, out.detail);
  return *out.triple;
}

inline RepresentationTriple solve_special_line(const EigenvalueSelection& sel,
                                               double residual_tol = 1e-8) {
  SolveOutcome out = try_solve_special_line(sel, residual_tol);
  if (!out.ok()) raise(out.error, out.detail);
  return *out.triple;
}

// Goldman discriminant of the commutator trace, G(s,t) = f(tr [I1, I2]).
inline double commutator_goldman(const RepresentationTriple& rep) {
  const Mat3 comm = rep.I1 * rep.I2 * su_inverse(rep.I1) * su_inverse(rep.I2);
  return goldman_discriminant(comm.trace());
}

// True when I1 and I2 share an eigenvector, i.e. the representation
// preserves a point or a complex line in projective space (C-plane /
// C-Fuchsian locus).  I1 is diagonal in our frame, so it suffices to test
// the coordinate axes against I2.
inline bool shares_coordinate_eigenvector(const Mat3& I2, double tol = 1e-9) {
  for (int j = 0; j < 3; ++j) {
    double off = 0.0, on = std::abs(I2.m[j][j]);
    for (int i = 0; i < 3; ++i)
      if (i != j) off = std::max(off, std::abs(I2.m[i][j]));
    if (off <= tol * std::max(on, 1.0)) return true;
  }
  return false;
}

}  // namespace turnover
