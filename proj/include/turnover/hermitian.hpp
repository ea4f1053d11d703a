#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "turnover/errors.hpp"

namespace turnover {

using cx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

// Vector in C^3, carrying the Hermitian form of signature (-,+,+):
//   <x,y> = -x1*conj(y1) + x2*conj(y2) + x3*conj(y3)
// (linear in the first argument, conjugate-linear in the second).
// The complex hyperbolic plane is the projectivized negative cone.
struct CVec3 {
  cx v[3]{};

  constexpr CVec3() = default;
  constexpr CVec3(cx a, cx b, cx c) : v{a, b, c} {}

  cx& operator[](int i) { return v[i]; }
  const cx& operator[](int i) const { return v[i]; }

  friend CVec3 operator+(const CVec3& a, const CVec3& b) {
    return {a.v[0] + b.v[0], a.v[1] + b.v[1], a.v[2] + b.v[2]};
  }
  friend CVec3 operator-(const CVec3& a, const CVec3& b) {
    return {a.v[0] - b.v[0], a.v[1] - b.v[1], a.v[2] - b.v[2]};
  }
  friend CVec3 operator*(cx s, const CVec3& a) {
    return {s * a.v[0], s * a.v[1], s * a.v[2]};
  }
  friend CVec3 operator*(const CVec3& a, cx s) { return s * a; }
  CVec3 operator-() const { return {-v[0], -v[1], -v[2]}; }
};

// Hermitian product, signature (-,+,+).
inline cx herm(const CVec3& x, const CVec3& y) {
  return -x[0] * std::conj(y[0]) + x[1] * std::conj(y[1]) + x[2] * std::conj(y[2]);
}

// Euclidean squared norm, used only for scale-relative tolerances.
inline double norm2(const CVec3& x) {
  return std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]);
}

inline double norm(const CVec3& x) { return std::sqrt(norm2(x)); }

enum class SignClass { Negative, Isotropic, Positive };

// Sign of <x,x> with an isotropy band relative to the Euclidean scale of x.
inline SignClass sign_class(const CVec3& x, double tol = kDefaultTol) {
  double scale = norm2(x);
  if (scale == 0.0) raise(Err::DegenerateInput, "sign_class of the zero vector");
  double self = herm(x, x).real();
  if (self > tol * scale) return SignClass::Positive;
  if (self < -tol * scale) return SignClass::Negative;
  return SignClass::Isotropic;
}

// Tance invariant ta(p,q) = <p,q><q,p> / (<p,p><q,q>).  Real by construction;
// > 1 characterizes ultraparallel complex geodesics when p, q are their
// (positive) polar points.
inline double tance(const CVec3& p, const CVec3& q, double tol = kDefaultTol) {
  double pp = herm(p, p).real();
  double qq = herm(q, q).real();
  if (std::abs(pp) <= tol * norm2(p) || std::abs(qq) <= tol * norm2(q))
    raise(Err::DegenerateInput, "tance of an isotropic vector");
  return std::norm(herm(p, q)) / (pp * qq);
}

// Vector Hermitian-orthogonal to both a and b: the bilinear cross product of
// J*conj(a) and J*conj(b) with J = diag(-1,1,1).  <result, a> = <result, b> = 0.
inline CVec3 herm_cross(const CVec3& a, const CVec3& b) {
  const cx a1 = -std::conj(a[0]), a2 = std::conj(a[1]), a3 = std::conj(a[2]);
  const cx b1 = -std::conj(b[0]), b2 = std::conj(b[1]), b3 = std::conj(b[2]);
  return {a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1};
}

// Rescale x so that <x,x> = -1 (x must be of negative type).
inline CVec3 normalize_negative(const CVec3& x, double tol = kDefaultTol) {
  double self = herm(x, x).real();
  if (!(self < -tol * norm2(x)))
    raise(Err::DegenerateInput, "normalize_negative on a non-negative vector");
  return (1.0 / std::sqrt(-self)) * x;
}

// Rescale x so that <x,x> = +1 (x must be of positive type).
inline CVec3 normalize_positive(const CVec3& x, double tol = kDefaultTol) {
  double self = herm(x, x).real();
  if (!(self > tol * norm2(x)))
    raise(Err::DegenerateInput, "normalize_positive on a non-positive vector");
  return (1.0 / std::sqrt(self)) * x;
}

}  // namespace turnover
