#pragma once

#include <cmath>
#include <string>

#include "turnover/quadrangle.hpp"
#include "turnover/rational.hpp"

namespace turnover {

namespace detail {

// Arg in (-pi, pi]: std::arg may return -pi when the imaginary part is -0.
inline double arg_halfopen(const cx& z) {
  double a = std::arg(z);
  if (a <= -std::acos(-1.0)) a = std::acos(-1.0);
  return a;
}

// Reduce mod 2 into (-1, 1].
inline double mod2_halfopen(double x) {
  double r = std::remainder(x, 2.0);
  if (r <= -1.0) r += 2.0;
  return r;
}

// Distance between x and y on the mod-2 circle.
inline double mod2_distance(double x, double y) {
  return std::abs(std::remainder(x - y, 2.0));
}

}  // namespace detail

// Holonomy of an oriented triangle of bisectors with pairwise ultraparallel
// vertex geodesics: the product of the reflections in the three middle
// slices, first the one of B[La,Lb].  It stabilizes La; the classification
// of its restriction to the La-disc is carried as data.
struct HolonomyData {
  Mat3 M;
  RestrictionReport restriction;
};

inline HolonomyData triangle_holonomy(const CVec3& qa, const CVec3& qb,
                                      const CVec3& qc,
                                      double tol = kDefaultTol) {
  const BisectorSegment ab = bisector_between(qa, qb, tol);
  const BisectorSegment bc = bisector_between(qb, qc, tol);
  const BisectorSegment ca = bisector_between(qc, qa, tol);
  HolonomyData h;
  h.M = reflection_in_middle_slice(ca) *
        (reflection_in_middle_slice(bc) * reflection_in_middle_slice(ab));
  h.restriction = classify_restriction(h.M, slice_at_foot(ab, Foot::One, tol), tol);
  return h;
}

// The integer f with [disc] = f [central fiber] in the homology of the
// orbibundle: a signed count of three cyclic-order terms built from the
// meridional transports of a boundary base point z1 of the C1-disc.
// base0 chooses the initial boundary angle of z1; the count is independent
// of it away from finitely many coincidence angles, which are retried.
inline int compute_f(const QuadrangleData& qd, const RepresentationTriple& rep,
                     double tol = kDefaultTol, cx base0 = cx(1.0, 0.0)) {
  if (!qd.side12 || !qd.side23)
    raise(Err::NotUltraparallel, "quadrangle sides are not defined");
  const HolonomyData I = triangle_holonomy(qd.p[0], qd.p[1], qd.p[3], tol);
  const HolonomyData J = triangle_holonomy(qd.p[2], qd.p[3], qd.p[1], tol);
  if (I.restriction.cls != RestrictionClass::Elliptic)
    raise(Err::NonEllipticHolonomy,
          "holonomy of the triangle (C1,C2,C4) is not elliptic");
  if (J.restriction.cls != RestrictionClass::Elliptic)
    raise(Err::NonEllipticHolonomy,
          "holonomy of the triangle (C3,C4,C2) is not elliptic");
  const Mat3 J_inv = su_inverse(J.M);
  const Mat3 I1_inv = su_inverse(rep.I1);
  const Slice S1 = make_slice(qd.c[0], qd.p[0], tol);
  const Slice S3 = make_slice(qd.c[2], qd.p[2], tol);
  const double pi = std::acos(-1.0);

  for (int j = 0; j < 14; ++j) {
    const cx theta0 = j == 0 ? base0 : base0 * std::polar(1.0, pi * j / 7.0);
    try {
      const CVec3 z1 = S1.c + theta0 * S1.d;
      const CVec3 z2 = meridional_transport(*qd.side12, z1, Foot::One, tol);
      const CVec3 z3 =
          meridional_transport(*qd.side23, rep.I2 * z2, Foot::One, tol);
      const CVec3 z3p = meridional_transport(*qd.side23, z2, Foot::One, tol);
      const cx t_z3p = theta_coordinate(S3, z3p, tol);
      const cx t_z3 = theta_coordinate(S3, z3, tol);
      const cx t_I3z3 = theta_coordinate(S3, rep.I3 * z3, tol);
      const cx t_Jinv = theta_coordinate(S3, J_inv * z3p, tol);
      const int o1 = cyclic_order_o(t_z3p, t_z3, t_I3z3);
      const int o2 = cyclic_order_o(t_z3p, t_I3z3, t_Jinv);
      const int o3 = cyclic_order_o(theta_coordinate(S1, z1, tol),
                                    theta_coordinate(S1, I1_inv * z1, tol),
                                    theta_coordinate(S1, I.M * z1, tol));
      return o1 + o2 - o3;
    } catch (const Error& e) {
      // Retry only on guards that depend on the chosen base point.
      if (e.code() != Err::IndeterminateOrder && e.code() != Err::NotOnSlice &&
          e.code() != Err::DegenerateInput)
        throw;
    }
  }
  raise(Err::IndeterminateOrder, "all base-point retries exhausted");
}

// Numeric Toledo invariant mod 2 via the six basepoint-change terms along
// the boundary curve of the equivariant disc:
//   tau = (2/pi) sum_j J_j,  J_j = (1/2) Arg(X_j) - pi/2,
// reduced into (-1, 1].
inline double toledo_mod2_numeric(const QuadrangleData& qd,
                                  const RepresentationTriple& rep,
                                  double tol = kDefaultTol) {
  if (!qd.side12 || !qd.side23)
    raise(Err::NotUltraparallel, "quadrangle sides are not defined");
  const CVec3& c1 = qd.c[0];
  const CVec3& c2 = qd.c[1];
  const CVec3& c3 = qd.c[2];
  const CVec3 c1p = normalize_negative(
      meridional_transport_interior(*qd.side12, c2, Foot::Two, tol), tol);
  const CVec3 c3p = normalize_negative(
      meridional_transport_interior(*qd.side23, c2, Foot::One, tol), tol);
  const Mat3 I1_inv = su_inverse(rep.I1);
  const CVec3 I3c3p = rep.I3 * c3p;
  const CVec3 I1invc2 = I1_inv * c2;
  const CVec3 I1invc1p = I1_inv * c1p;

  const auto ip = [&](const CVec3& x, const CVec3& y) {
    const cx v = herm(x, y);
    if (std::abs(v) < tol)
      raise(Err::NumericalInstability,
            "inner product in a Toledo term is too close to zero");
    return v;
  };
  const cx X1 = ip(c2, c3) * ip(c3, c3p) / ip(c2, c3p);
  const cx X2 = rep.sel.gamma_inv(1) * ip(c2, I3c3p) * ip(c3p, c3) / ip(c2, c3);
  const cx X3 = rep.sel.beta(1) * ip(c2, I1invc2) * ip(c2, c3p) / ip(c2, I3c3p);
  const cx X4 = ip(c2, I1invc1p) * ip(c1p, c2) / ip(c2, I1invc2);
  const cx X5 = rep.sel.alpha(1) * ip(c2, c1) * ip(c1, c1p) / ip(c2, I1invc1p);
  const cx X6 = ip(c2, c1p) * ip(c1p, c1) / ip(c2, c1);

  const double sum_args = detail::arg_halfopen(X1) + detail::arg_halfopen(X2) +
                          detail::arg_halfopen(X3) + detail::arg_halfopen(X4) +
                          detail::arg_halfopen(X5) + detail::arg_halfopen(X6);
  const double pi = std::acos(-1.0);
  // (2/pi) sum_j (Arg(X_j)/2 - pi/2) = sum_args/pi - 6; -6 drops mod 2.
  return detail::mod2_halfopen(sum_args / pi);
}

// Exact closed form of tau mod 2: Arg(alpha1 beta1 gamma1^-1)/pi as a
// rational multiple of 1, reduced into (-1, 1].
inline Rational toledo_mod2_closed(const EigenvalueSelection& sel) {
  const TurnoverSignature& g = sel.sig;
  const Rational theta = Rational(sel.a[0], 3 * g.n1) +
                         Rational(sel.b[0], 3 * g.n2) -
                         Rational(sel.g[0], 3 * g.n3);
  return (Rational(2) * theta).mod2_symmetric();
}

struct InvariantReport {
  TurnoverSignature sig;
  CaseTag tag = CaseTag::Regular;
  Branch branch = Branch::Plus;
  double s = 0.0, t = 0.0;
  Rational chi;
  int l1 = 0, l2 = 0, l3 = 0;
  int f = 0;
  Rational e, e_over_chi, tau, e_cor;
  Rational tau_mod2_closed_exact;
  double tau_mod2_closed = 0.0;
  double tau_mod2_numeric = 0.0;
  bool consistency = false;          // tau == tau_mod2_closed (mod 2), 1e-6
  bool consistency_numeric = false;  // numeric == closed (mod 2), 1e-6
};

inline InvariantReport invariant_report(const EigenvalueSelection& sel,
                                        const QuadrangleData& qd,
                                        const RepresentationTriple& rep,
                                        double tol = kDefaultTol) {
  InvariantReport r;
  r.sig = sel.sig;
  r.tag = sel.tag;
  r.branch = rep.point.branch;
  r.s = rep.point.s;
  r.t = rep.point.t;
  r.chi = sel.sig.chi();
  r.l1 = sel.l1;
  r.l2 = sel.l2;
  r.l3 = sel.l3;
  r.f = compute_f(qd, rep, tol);
  r.e = Rational(r.f) - Rational(r.l1, r.sig.n1) - Rational(r.l2, r.sig.n2) -
        Rational(r.l3, r.sig.n3);
  r.e_over_chi = r.e / r.chi;
  r.tau = Rational(2, 3) * (r.e + r.chi);
  r.tau_mod2_closed_exact = toledo_mod2_closed(sel);
  r.tau_mod2_closed = r.tau_mod2_closed_exact.to_double();
  r.tau_mod2_numeric = toledo_mod2_numeric(qd, rep, tol);
  r.consistency =
      detail::mod2_distance(r.tau.to_double(), r.tau_mod2_closed) < 1e-6;
  r.consistency_numeric =
      detail::mod2_distance(r.tau_mod2_numeric, r.tau_mod2_closed) < 1e-6;
  // Corrected Euler number: snap tau to the representative congruent to the
  // closed form and recompute e from it.
  const Rational k = (r.tau - r.tau_mod2_closed_exact) / Rational(2);
  const Rational tau_hat =
      r.tau_mod2_closed_exact + Rational(2) * Rational(k.round_nearest());
  r.e_cor = Rational(3, 2) * tau_hat - r.chi;
  return r;
}

}  // namespace turnover
