#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "turnover/bisector.hpp"
#include "turnover/charvar.hpp"

namespace turnover {

// Vertex data of the quadrangle of bisectors: the four complex geodesics
// C_j = P(p_j-perp) with marked centers c_j, where
//   I1 c1 = alpha1 c1, I1 p1 = alpha2 p1     (c1 = e1, p1 = e2),
//   I2 c2 = beta1 c2,  I2 p2 = beta2 p2,
//   I3 c3 = gamma1^-1 c3, I3 p3 = gamma2^-1 p3,
//   c4 = I1^-1 c2, p4 = I1^-1 p2.
// The side bisector segments and the diagonal B[C2,C4] are only defined
// once the ultraparallelism conditions hold, hence optional.
struct QuadrangleData {
  CVec3 c[4], p[4];
  std::optional<BisectorSegment> side12, side23, side34, side41, diag24;
};

struct QuadrangleReport {
  // ta(p1,p2)-1, ta(p2,p3)-1, ta(p1,p3)-1, ta(p1,p4)-1
  double q1_margins[4] = {0, 0, 0, 0};
  double q1_diagonal_margin = 0.0;  // ta(p2,p4)-1
  bool q1 = false;
  double q2_margins[6] = {0, 0, 0, 0, 0, 0};
  bool q2 = false;
  double q31_margin = 0.0, q32_margin = 0.0;
  bool q31 = false, q32 = false;
  double q33_margins[2] = {0, 0};
  bool q33 = false;
  bool q33_boundary = false;  // some Q3.3 margin vanishes within 1e-12
  bool q4 = false;            // exact rotation-number condition
  bool pass = false;
  double min_slack = 0.0;  // smallest inequality margin encountered
};

inline QuadrangleData build_quadrangle(const RepresentationTriple& rep,
                                       double tol = kDefaultTol) {
  QuadrangleData d;
  d.c[0] = {1.0, 0.0, 0.0};
  d.p[0] = {0.0, 1.0, 0.0};
  d.c[1] = normalize_negative(rep.u, tol);
  d.p[1] = normalize_positive(rep.v, tol);
  d.c[2] = normalize_negative(
      eigenvector_for(rep.I3, rep.sel.gamma_inv(1), tol), tol);
  d.p[2] = normalize_positive(
      eigenvector_for(rep.I3, rep.sel.gamma_inv(2), tol), tol);
  const Mat3 I1_inv = su_inverse(rep.I1);
  d.c[3] = I1_inv * d.c[1];
  d.p[3] = I1_inv * d.p[1];

  const auto ultra = [&](const CVec3& a, const CVec3& b) {
    return tance(a, b) > 1.0;
  };
  if (ultra(d.p[0], d.p[1]) && ultra(d.p[1], d.p[2]) &&
      ultra(d.p[0], d.p[2]) && ultra(d.p[0], d.p[3]) &&
      ultra(d.p[1], d.p[3])) {
    d.side12 = bisector_between(d.p[0], d.p[1], tol);
    d.side23 = bisector_between(d.p[1], d.p[2], tol);
    d.side34 = bisector_between(d.p[2], d.p[3], tol);
    d.side41 = bisector_between(d.p[3], d.p[0], tol);
    d.diag24 = bisector_between(d.p[1], d.p[3], tol);
  }
  return d;
}

namespace detail {

// Transversal counterclockwise test for an isoceles triangle of bisectors
// with side parameters (t, s, t): t = sqrt ta of the two equal sides,
// s = sqrt ta of the base, eps = sigma/|sigma| for the cyclic product of
// the three pairings.  Returns the three margins.
inline void q2_triangle(double t2, double ssq, double e0, double e1,
                        double* margins) {
  const double s = std::sqrt(ssq);
  margins[0] = 1.0 + 2.0 * t2 * s * e0 - (e0 * e0 * t2 + ssq + t2);
  margins[1] = 1.0 + 2.0 * t2 * s * e0 - (e0 * e0 * ssq + 2.0 * t2);
  margins[2] = -e1;
}

}  // namespace detail

inline QuadrangleReport check_quadrangle(const QuadrangleData& d,
                                         const EigenvalueSelection& sel) {
  QuadrangleReport r;
  const CVec3 &p1 = d.p[0], &p2 = d.p[1], &p3 = d.p[2], &p4 = d.p[3];
  r.q1_margins[0] = tance(p1, p2) - 1.0;
  r.q1_margins[1] = tance(p2, p3) - 1.0;
  r.q1_margins[2] = tance(p1, p3) - 1.0;
  r.q1_margins[3] = tance(p1, p4) - 1.0;
  r.q1_diagonal_margin = tance(p2, p4) - 1.0;
  r.min_slack = std::min({r.q1_margins[0], r.q1_margins[1], r.q1_margins[2],
                          r.q1_margins[3], r.q1_diagonal_margin});
  r.q1 = r.min_slack > 0.0;
  r.q4 = q4_exact(sel);
  if (!r.q1) return r;

  // Q2: both triangles of bisectors transversal and counterclockwise.
  const double t2 = tance(p1, p2);       // t^2
  const double tp2 = tance(p2, p3);      // t'^2
  const double ssq = tance(p2, p4);      // s^2
  const cx sigma = herm(p1, p2) * herm(p2, p4) * herm(p4, p1);
  const cx sigmap = herm(p2, p3) * herm(p3, p4) * herm(p4, p2);
  const cx eps = sigma / std::abs(sigma);
  const cx epsp = sigmap / std::abs(sigmap);
  detail::q2_triangle(t2, ssq, eps.real(), eps.imag(), r.q2_margins);
  detail::q2_triangle(tp2, ssq, epsp.real(), epsp.imag(), r.q2_margins + 3);
  r.q2 = *std::min_element(r.q2_margins, r.q2_margins + 6) > 0.0;

  // Q3.1 / Q3.2: transversality of adjacent sides of the two triangles.
  const auto transversal = [](const CVec3& a, const CVec3& b, const CVec3& c) {
    // |Re(<a,c><b,b>/(<a,b><b,c>)) - 1| < sqrt(1-1/ta(b,c)) sqrt(1-1/ta(b,a))
    const cx ratio = herm(a, c) * herm(b, b) / (herm(a, b) * herm(b, c));
    const double lhs = std::abs(ratio.real() - 1.0);
    const double rhs = std::sqrt(1.0 - 1.0 / tance(b, c)) *
                       std::sqrt(1.0 - 1.0 / tance(b, a));
    return rhs - lhs;
  };
  r.q31_margin = transversal(p3, p2, p1);
  r.q32_margin = transversal(p1, p4, p3);
  r.q31 = r.q31_margin > 0.0;
  r.q32 = r.q32_margin > 0.0;

  // Q3.3: c3 lies in the closed sector at C1 of the first triangle.
  const CVec3& c3 = d.c[2];
  r.q33_margins[0] = std::imag(herm(p1, c3) * herm(c3, p2) / herm(p1, p2));
  r.q33_margins[1] = std::imag(herm(p4, c3) * herm(c3, p1) / herm(p4, p1));
  r.q33 = r.q33_margins[0] >= 0.0 && r.q33_margins[1] >= 0.0;
  r.q33_boundary = std::abs(r.q33_margins[0]) <= 1e-12 ||
                   std::abs(r.q33_margins[1]) <= 1e-12;

  r.min_slack = std::min({r.min_slack, r.q2_margins[0], r.q2_margins[1],
                          r.q2_margins[2], r.q2_margins[3], r.q2_margins[4],
                          r.q2_margins[5], r.q31_margin, r.q32_margin,
                          r.q33_margins[0], r.q33_margins[1]});
  r.pass = r.q1 && r.q2 && r.q31 && r.q32 && r.q33 && r.q4;
  return r;
}

struct QuadrangleOutcome {
  Err error = Err::None;
  std::string detail;
  std::optional<QuadrangleData> data;
  QuadrangleReport report;

  bool ok() const { return error == Err::None; }
  bool pass() const { return ok() && report.pass; }
};

inline QuadrangleOutcome try_quadrangle(const RepresentationTriple& rep,
                                        double tol = kDefaultTol) {
  QuadrangleOutcome out;
  try {
    out.data = build_quadrangle(rep, tol);
    out.report = check_quadrangle(*out.data, rep.sel);
  } catch (const Error& e) {
    out.error = e.code();
    out.detail = e.what();
    out.data.reset();
  }
  return out;
}

// The special-point solution leaves the positive spectral direction of I2
// free inside u-perp.  Scan a deterministic grid of gauges
//   v(phi, psi) = cos(phi) v_a + sin(phi) e^{i psi} v_b
// over an orthonormal basis (v_a, v_b) of u-perp and return the first gauge
// whose quadrangle passes; otherwise the gauge with the largest min slack.
struct SpecialPointQuadrangle {
  bool found = false;
  RepresentationTriple rep;  // rep.v holds the selected gauge
  QuadrangleOutcome outcome;
};

inline SpecialPointQuadrangle special_point_quadrangle(
    const RepresentationTriple& rep_in, double tol = kDefaultTol) {
  SpecialPointQuadrangle result;
  result.rep = rep_in;
  const auto [va, vb] = detail::uperp_basis(rep_in.u);
  const double pi = std::acos(-1.0);
  bool have_best = false, best_ok = false;
  double best_slack = 0.0;
  for (int i = 0; i <= 16; ++i) {
    const double phi = i * pi / 32.0;
    const int psi_count = (i == 0 || i == 16) ? 1 : 32;  // endpoints: psi moot
    for (int j = 0; j < psi_count; ++j) {
      const double psi = j * pi / 16.0;
      RepresentationTriple cand = rep_in;
      cand.v = std::cos(phi) * va +
               (std::sin(phi) * std::polar(1.0, psi)) * vb;
      QuadrangleOutcome out = try_quadrangle(cand, tol);
      if (out.pass()) {
        result.found = true;
        result.rep = cand;
        result.outcome = out;
        return result;
      }
      const bool better =
          !have_best ||
          (out.ok() && (!best_ok || out.report.min_slack > best_slack));
      if (better) {
        have_best = true;
        best_ok = out.ok();
        if (out.ok()) best_slack = out.report.min_slack;
        result.rep = cand;
        result.outcome = out;
      }
    }
  }
  return result;
}

}  // namespace turnover
