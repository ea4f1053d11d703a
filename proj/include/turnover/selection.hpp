#pragma once

#include <array>
#include <numbers>
#include <string>
#include <vector>

#include "turnover/errors.hpp"
#include "turnover/hermitian.hpp"
#include "turnover/rational.hpp"

namespace turnover {

// Cone orders (n1, n2, n3) of a hyperbolic turnover: a sphere with three
// cone points, hyperbolic iff 1/n1 + 1/n2 + 1/n3 < 1.
struct TurnoverSignature {
  int n1 = 0, n2 = 0, n3 = 0;

  int n(int j) const { return j == 1 ? n1 : (j == 2 ? n2 : n3); }

  Rational chi() const {
    return Rational(-1) + Rational(1, n1) + Rational(1, n2) + Rational(1, n3);
  }

  std::string str() const {
    return std::to_string(n1) + "," + std::to_string(n2) + "," + std::to_string(n3);
  }
};

inline TurnoverSignature make_signature(int n1, int n2, int n3) {
  if (n1 < 2 || n2 < 2 || n3 < 2)
    raise(Err::DegenerateInput, "cone orders must be >= 2");
  TurnoverSignature sig{n1, n2, n3};
  if (!(sig.chi() < Rational(0)))
    raise(Err::DegenerateInput,
          "signature (" + sig.str() + ") is not hyperbolic: 1/n1+1/n2+1/n3 >= 1");
  return sig;
}

enum class CaseTag { Regular, SpecialPoint, SpecialLine };

constexpr std::string_view to_string(CaseTag t) {
  switch (t) {
    case CaseTag::Regular: return "regular";
    case CaseTag::SpecialPoint: return "special-point";
    case CaseTag::SpecialLine: return "special-line";
  }
  return "?";
}

enum class Branch { Plus, Minus };

constexpr std::string_view to_string(Branch b) {
  return b == Branch::Plus ? "plus" : "minus";
}

// Conjugacy-class data for the generator triple (I1, I2, I3) in SU(2,1).
// The eigenvalue triples are held exactly as integer exponents:
//   alpha_j = exp(2 pi i a[j] / (3 n1)),   eigenvalues of I1,
//   beta_j  = exp(2 pi i b[j] / (3 n2)),   eigenvalues of I2,
//   gamma_j = exp(2 pi i g[j] / (3 n3)),   I3 has eigenvalues gamma_j^{-1}.
// Index 1 always tags the eigenvalue on the negative fixed direction.
//
// The rotation numbers l_j describe how each generator rotates the disc of
// its own fixed slice: the acting ratio (third eigenvalue over the eigenvalue
// on the fixed negative direction) is exp(2 pi i l_j/n_j) for every j.  For
// I1 and I2 that ratio reads directly off the stored triples,
//   alpha3/alpha1 = exp(2 pi i l1/n1),  beta3/beta1 = exp(2 pi i l2/n2),
// while I3 acts through the inverse eigenvalues, so
//   gamma3/gamma1 = exp(-2 pi i l3/n3).
// The angle conditions pin the remaining ratios exactly:
//   alpha2/alpha1 = exp(-2 pi i/n1),    beta2/beta1 = exp(-2 pi i/n2),
//   (gamma2/gamma1)^{-1} = exp(-2 pi i/n3).
// Product-one fixes each exponent triple up to a scalar cube root of unity;
// the canonical lift takes the smallest exponent with a1 (resp. b1, g1) in
// [0, n).  Case tags:
//   Regular:      all three triples pairwise distinct
//                 (l1 in [1,n1-2], l2 in [1,n2-2], l3 in [1,n3-2]);
//   SpecialPoint: beta2 = beta3 (l2 = n2-1 forced), I2 rotates about a point;
//   SpecialLine:  beta1 = beta3 (l2 = 0 forced), I2 rotates about a complex
//                 geodesic. alpha and gamma stay regular in both special cases.
struct EigenvalueSelection {
  TurnoverSignature sig;
  CaseTag tag = CaseTag::Regular;
  int l1 = 0, l2 = 0, l3 = 0;
  std::array<int, 3> a{}, b{}, g{};  // exponents over 3*n1, 3*n2, 3*n3

  cx alpha(int j) const { return root_of_unity(a[j - 1], 3 * sig.n1); }
  cx beta(int j) const { return root_of_unity(b[j - 1], 3 * sig.n2); }
  cx gamma(int j) const { return root_of_unity(g[j - 1], 3 * sig.n3); }
  cx gamma_inv(int j) const { return root_of_unity(-g[j - 1], 3 * sig.n3); }

  cx sum_gamma() const { return gamma(1) + gamma(2) + gamma(3); }

  std::string str() const {
    return "(" + sig.str() + ")|" + std::string(to_string(tag)) + "|l=(" +
           std::to_string(l1) + "," + std::to_string(l2) + "," + std::to_string(l3) + ")";
  }

  static cx root_of_unity(long long num, long long den) {
    const double angle = 2.0 * std::numbers::pi *
                         static_cast<double>(((num % den) + den) % den) /
                         static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
  }
};

namespace detail {

inline int mod(int value, int modulus) {
  int r = value % modulus;
  return r < 0 ? r + modulus : r;
}

// Exponent triple (x1, x2, x3) over 3n with x2 - x1 = dir2 * 3,
// x3 - x1 = dir3 * 3l and x1 + x2 + x3 = 0 (mod 3n), canonical lift x1 in [0, n).
inline std::array<int, 3> exponent_triple(int n, int l, int step2, int step3) {
  // 3*x1 + 3*step2 + 3*step3*l = 0 (mod 3n)  =>  x1 = -(step2 + step3*l) mod n.
  const int base = mod(-(step2 + step3 * l), n);
  return {base, mod(base + 3 * step2, 3 * n), mod(base + 3 * step3 * l, 3 * n)};
}

}  // namespace detail

// Build the selection for given case and rotation numbers; validates ranges.
inline EigenvalueSelection make_selection(const TurnoverSignature& sig, CaseTag tag,
                                          int l1, int l2, int l3) {
  auto bad = [&](const std::string& what) {
    raise(Err::DegenerateInput, "selection (" + std::to_string(l1) + "," +
                                    std::to_string(l2) + "," + std::to_string(l3) +
                                    ") for (" + sig.str() + "): " + what);
  };
  if (l1 < 1 || l1 > sig.n1 - 2) bad("l1 must lie in [1, n1-2] (alpha regular)");
  if (l3 < 1 || l3 > sig.n3 - 2) bad("l3 must lie in [1, n3-2] (gamma regular)");
  switch (tag) {
    case CaseTag::Regular:
      if (l2 < 1 || l2 > sig.n2 - 2) bad("l2 must lie in [1, n2-2] (beta regular)");
      break;
    case CaseTag::SpecialPoint:
      if (l2 != sig.n2 - 1) bad("special-point forces l2 = n2-1 (beta2 = beta3)");
      break;
    case CaseTag::SpecialLine:
      if (l2 != 0) bad("special-line forces l2 = 0 (beta1 = beta3)");
      break;
  }
  EigenvalueSelection sel;
  sel.sig = sig;
  sel.tag = tag;
  sel.l1 = l1; sel.l2 = l2; sel.l3 = l3;
  // alpha: a2 = a1 - 3, a3 = a1 + 3 l1;  gamma: g2 = g1 + 3, g3 = g1 - 3 l3.
  sel.a = detail::exponent_triple(sig.n1, l1, -1, +1);
  sel.b = detail::exponent_triple(sig.n2, l2, -1, +1);
  sel.g = detail::exponent_triple(sig.n3, l3, +1, -1);
  return sel;
}

// All selections of a case, ordered lexicographically by (l1, l2, l3).
inline std::vector<EigenvalueSelection> enumerate_selections(
    const TurnoverSignature& sig, CaseTag tag) {
  std::vector<EigenvalueSelection> out;
  const int l2_lo = tag == CaseTag::Regular ? 1
                    : tag == CaseTag::SpecialPoint ? sig.n2 - 1 : 0;
  const int l2_hi = tag == CaseTag::Regular ? sig.n2 - 2 : l2_lo;
  for (int l1 = 1; l1 <= sig.n1 - 2; ++l1)
    for (int l2 = l2_lo; l2 <= l2_hi; ++l2)
      for (int l3 = 1; l3 <= sig.n3 - 2; ++l3)
        out.push_back(make_selection(sig, tag, l1, l2, l3));
  if (out.empty())
    raise(Err::EmptyEnumeration, "no " + std::string(to_string(tag)) +
                                     " selections for (" + sig.str() + ")");
  return out;
}

// The rotation numbers are part of the selection's exact data.
inline std::array<int, 3> rotation_numbers(const EigenvalueSelection& sel) {
  return {sel.l1, sel.l2, sel.l3};
}

// Exact check of the angle conditions on the exponents:
//   a2-a1 = -3 (mod 3n1), b2-b1 = -3 (mod 3n2), g2-g1 = +3 (mod 3n3).
inline bool q4_exact(const EigenvalueSelection& sel) {
  using detail::mod;
  return mod(sel.a[1] - sel.a[0] + 3, 3 * sel.sig.n1) == 0 &&
         mod(sel.b[1] - sel.b[0] + 3, 3 * sel.sig.n2) == 0 &&
         mod(sel.g[1] - sel.g[0] - 3, 3 * sel.sig.n3) == 0;
}

}  // namespace turnover
