#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "turnover/hermitian.hpp"
#include "turnover/slice.hpp"

namespace turnover {

// Dense 3x3 complex matrix.  Elements of SU(2,1) satisfy M* J M = J with
// J = diag(-1,1,1) and det M = 1; their inverses are J M* J.
struct Mat3 {
  cx m[3][3]{};

  static Mat3 identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
  }

  static Mat3 diagonal(cx a, cx b, cx c) {
    Mat3 r;
    r.m[0][0] = a; r.m[1][1] = b; r.m[2][2] = c;
    return r;
  }

  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
    return r;
  }

  friend CVec3 operator*(const Mat3& a, const CVec3& x) {
    CVec3 r;
    for (int i = 0; i < 3; ++i)
      r[i] = a.m[i][0] * x[0] + a.m[i][1] * x[1] + a.m[i][2] * x[2];
    return r;
  }

  friend Mat3 operator*(cx s, const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = s * a.m[i][j];
    return r;
  }

  friend Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
    return r;
  }

  friend Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
    return r;
  }

  cx trace() const { return m[0][0] + m[1][1] + m[2][2]; }

  cx det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }

  double max_abs() const {
    double r = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(m[i][j]));
    return r;
  }
};

// Rank-one map x -> <x,a> b as a matrix: b * (J conj(a))^T.
inline Mat3 herm_outer(const CVec3& b, const CVec3& a) {
  const cx ja[3] = {-std::conj(a[0]), std::conj(a[1]), std::conj(a[2])};
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = b[i] * ja[j];
  return r;
}

// Conjugate-transpose followed by J-conjugation: for M in SU(2,1) this is
// the inverse, since M* J M = J  =>  M^{-1} = J M* J.
inline Mat3 su_inverse(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = ((i == 0) != (j == 0)) ? -1.0 : 1.0;
      r.m[i][j] = s * std::conj(a.m[j][i]);
    }
  return r;
}

// max |(M* J M - J)_{ij}|: unitarity residual with respect to the form.
inline double su_form_residual(const Mat3& a) {
  Mat3 g = su_inverse(a) * a;  // should be the identity when M* J M = J
  g.m[0][0] -= 1.0; g.m[1][1] -= 1.0; g.m[2][2] -= 1.0;
  return g.max_abs();
}

inline double su_det_residual(const Mat3& a) { return std::abs(a.det() - cx(1.0)); }

// Spectral presentation of an elliptic isometry: pairwise orthogonal fixed
// points c (negative), p, q (positive) with unit eigenvalues e1, e2, e3 of
// product 1.
struct SpectralData {
  CVec3 c, p, q;
  cx e1, e2, e3;
};

// x -> (e1-e3) <x,c>/<c,c> c + (e2-e3) <x,p>/<p,p> p + e3 x.
// Closed form for the elliptic isometry with the given spectral data.
inline Mat3 elliptic_from_axes(const SpectralData& d, double tol = kDefaultTol) {
  const double cc = herm(d.c, d.c).real();
  const double pp = herm(d.p, d.p).real();
  const double qq = herm(d.q, d.q).real();
  const double sc = norm(d.c), sp = norm(d.p), sq = norm(d.q);
  if (!(cc < -tol * sc * sc) || !(pp > tol * sp * sp) || !(qq > tol * sq * sq))
    raise(Err::DegenerateInput, "elliptic_from_axes: axis signs are not (-,+,+)");
  if (std::abs(herm(d.c, d.p)) > 1e3 * tol * sc * sp ||
      std::abs(herm(d.c, d.q)) > 1e3 * tol * sc * sq ||
      std::abs(herm(d.p, d.q)) > 1e3 * tol * sp * sq)
    raise(Err::DegenerateInput, "elliptic_from_axes: axes are not orthogonal");
  if (std::abs(std::abs(d.e1) - 1.0) > 1e-12 || std::abs(std::abs(d.e2) - 1.0) > 1e-12 ||
      std::abs(std::abs(d.e3) - 1.0) > 1e-12 || std::abs(d.e1 * d.e2 * d.e3 - cx(1.0)) > 1e-12)
    raise(Err::DegenerateInput, "elliptic_from_axes: eigenvalues not unit with product 1");
  Mat3 r = d.e3 * Mat3::identity();
  r = r + ((d.e1 - d.e3) / cc) * herm_outer(d.c, d.c);
  r = r + ((d.e2 - d.e3) / pp) * herm_outer(d.p, d.p);
  return r;
}

// Reflection in the complex geodesic polar to p: x -> -x + 2 <x,p>/<p,p> p.
inline Mat3 reflection_in(const CVec3& p, double tol = kDefaultTol) {
  const double pp = herm(p, p).real();
  if (!(pp > tol * norm2(p)))
    raise(Err::DegenerateInput, "reflection_in: polar point is not positive");
  return (2.0 / pp) * herm_outer(p, p) - Mat3::identity();
}

// Kernel vector of (M - lambda I) by closed-form row cross products; the
// cross of two rows lies in the kernel because its dot with each row is a
// repeated-row determinant.  Falls back across all row pairs; an all-zero
// cross signals a >=2-dimensional eigenspace (rank <= 1).
inline CVec3 eigenvector_for(const Mat3& M, cx lambda, double tol = kDefaultTol) {
  Mat3 A = M;
  A.m[0][0] -= lambda; A.m[1][1] -= lambda; A.m[2][2] -= lambda;
  const CVec3 rows[3] = {{A.m[0][0], A.m[0][1], A.m[0][2]},
                         {A.m[1][0], A.m[1][1], A.m[1][2]},
                         {A.m[2][0], A.m[2][1], A.m[2][2]}};
  auto cross_bilinear = [](const CVec3& a, const CVec3& b) {
    return CVec3{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                 a[0] * b[1] - a[1] * b[0]};
  };
  CVec3 best{};
  double best_n = -1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      CVec3 c = cross_bilinear(rows[i], rows[j]);
      double n = norm2(c);
      if (n > best_n) { best_n = n; best = c; }
    }
  const double row_scale = std::max({norm2(rows[0]), norm2(rows[1]), norm2(rows[2]),
                                     tol * tol});
  if (best_n <= 1e-20 * row_scale * row_scale) {
    // All 2x2 minors vanish: rank(M - lambda I) <= 1.
    if (A.max_abs() <= 1e3 * tol * std::max(M.max_abs(), 1.0))
      raise(Err::RepeatedEigenvalueAmbiguity, "eigenspace is all of C^3");
    raise(Err::RepeatedEigenvalueAmbiguity, "eigenspace is 2-dimensional");
  }
  CVec3 v = (1.0 / norm(best)) * best;
  double residual = norm(A * v);
  if (residual > 1e-8)
    raise(Err::NotAnEigenvalue, "residual " + std::to_string(residual));
  return v;
}

// Goldman's discriminant f(z) = |z|^4 - 8 Re(z^3) + 18 |z|^2 - 27.
// Negative exactly when an SU(2,1) element of trace z is regular elliptic.
inline double goldman_discriminant(cx z) {
  const double n = std::norm(z);
  return n * n - 8.0 * (z * z * z).real() + 18.0 * n - 27.0;
}

enum class RestrictionClass { Elliptic, Parabolic, Hyperbolic };

struct RestrictionReport {
  RestrictionClass cls;
  double margin;        // |trace| - 2 of the det-normalized 2x2 restriction
  cx trace;             // det-normalized restriction trace (sign up to sqrt branch)
  cx fixed_w[2];        // disc coordinates of the two fixed points on the slice
};

// Restrict M to the slice's 2-dimensional subspace span{c,d}, normalize to
// determinant 1 and classify by |trace|: elliptic < 2 - tol, hyperbolic
// > 2 + tol, parabolic in between.
inline RestrictionReport classify_restriction(const Mat3& M, const Slice& s,
                                              double tol = kDefaultTol) {
  CVec3 mq = M * s.q;
  cx proj = herm(mq, s.q) / herm(s.q, s.q).real();
  if (norm(mq - proj * s.q) > 1e3 * tol * norm(mq))
    raise(Err::NotStable, "matrix does not stabilize the slice polar");
  // 2x2 restriction in the basis (c, d), using <c,c> = -1, <d,d> = 1.
  const CVec3 mc = M * s.c, md = M * s.d;
  const cx a = -herm(mc, s.c), bp = herm(mc, s.d);
  const cx ap = -herm(md, s.c), b = herm(md, s.d);
  const cx det = a * b - ap * bp;
  if (std::abs(det) < tol)
    raise(Err::NotStable, "restriction is singular");
  const cx root = std::sqrt(det);
  const cx tr = (a + b) / root;
  const double abs_tr = std::abs(tr);
  RestrictionReport rep;
  rep.trace = tr;
  rep.margin = abs_tr - 2.0;
  if (abs_tr < 2.0 - tol) rep.cls = RestrictionClass::Elliptic;
  else if (abs_tr > 2.0 + tol) rep.cls = RestrictionClass::Hyperbolic;
  else rep.cls = RestrictionClass::Parabolic;
  // Fixed points on the slice: eigenvectors (x, y) of [[a, ap], [bp, b]]
  // give fixed disc coordinates w = y/x (infinite w maps to the polar-side
  // fixed point; encode it as a large sentinel only if x ~ 0).
  const cx half_diff = 0.5 * (a - b);
  const cx disc = std::sqrt(half_diff * half_diff + ap * bp);
  for (int k = 0; k < 2; ++k) {
    const cx lam = 0.5 * (a + b) + (k == 0 ? disc : -disc);
    // (a - lam) x + ap y = 0
    cx x = ap, y = lam - a;
    if (std::abs(x) < 1e-14 && std::abs(y) < 1e-14) { x = lam - b; y = bp; }
    rep.fixed_w[k] = (std::abs(x) > 1e-300) ? y / x : cx(1e300, 0.0);
  }
  return rep;
}

}  // namespace turnover
