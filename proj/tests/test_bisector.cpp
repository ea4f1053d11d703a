#include <catch2/catch_amalgamated.hpp>

#include <turnover/bisector.hpp>

#include <cmath>
#include <utility>

using namespace turnover;

namespace {
const CVec3 e1{cx(1), cx(0), cx(0)};
const CVec3 e2{cx(0), cx(1), cx(0)};
const CVec3 e3{cx(0), cx(0), cx(1)};
const double r2 = std::sqrt(2.0);

// Projectively equal iff all 2x2 minors of the pair vanish; unlike a
// pairing-based test this also works for null vectors (boundary points).
bool projectively_equal(const CVec3& x, const CVec3& y, double tol = 1e-12) {
  const cx m1 = x[1] * y[2] - x[2] * y[1];
  const cx m2 = x[2] * y[0] - x[0] * y[2];
  const cx m3 = x[0] * y[1] - x[1] * y[0];
  const double minors = std::sqrt(std::norm(m1) + std::norm(m2) + std::norm(m3));
  return minors < tol * std::sqrt(norm2(x) * norm2(y));
}

// A generic ultraparallel pair of slice polars: conjugate the standard pair
// (e2, sinh(1) e1 + cosh(1) e2) by a form-preserving map (a product of two
// complex reflections), so ultraparallelism is guaranteed and the entries
// are fully complex.
std::pair<CVec3, CVec3> generic_ultraparallel(const CVec3& v_a, const CVec3& v_b) {
  const Mat3 T = reflection_in(normalize_positive(v_a)) *
                 reflection_in(normalize_positive(v_b));
  return {T * CVec3{cx(0), cx(1), cx(0)},
          T * CVec3{cx(std::sinh(1.0)), cx(std::cosh(1.0)), cx(0)}};
}
}  // namespace

TEST_CASE("bisector between ultraparallel complex geodesics: benchmark") {
  const BisectorSegment seg = bisector_between(e2, CVec3{cx(1), cx(r2), cx(0)});
  CHECK(projectively_equal(seg.p, e3));
  CHECK(projectively_equal(seg.c1, e1));
  CHECK(projectively_equal(seg.c2, CVec3{cx(r2), cx(1), cx(0)}));
  CHECK(projectively_equal(seg.m, CVec3{cx(1.0 + r2), cx(1), cx(0)}));
  // normalization and gauge: feet are unit negative with real negative pairing
  CHECK(std::abs(herm(seg.c1, seg.c1) - cx(-1)) < 1e-14);
  CHECK(std::abs(herm(seg.c2, seg.c2) - cx(-1)) < 1e-14);
  const cx g = herm(seg.c1, seg.c2);
  CHECK(std::abs(g.imag()) < 1e-14);
  CHECK(g.real() < 0.0);
  // the midpoint is equidistant from the feet
  CHECK(std::abs(tance(seg.m, seg.c1) - tance(seg.m, seg.c2)) < 1e-13);
}

TEST_CASE("bisector rejects degenerate and non-ultraparallel input") {
  CHECK_THROWS_AS(bisector_between(e2, e2), Error);
  try {
    (void)bisector_between(e2, e3);
    FAIL("expected NotUltraparallel");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotUltraparallel);
  }
}

TEST_CASE("meridional transport benchmark") {
  const BisectorSegment seg = bisector_between(e2, CVec3{cx(1), cx(r2), cx(0)});
  // boundary point of C1 at theta = 1 maps to the matching boundary point of C2
  const CVec3 z{cx(1), cx(0), cx(1)};
  const CVec3 w = meridional_transport(seg, z, Foot::One);
  CHECK(projectively_equal(w, CVec3{cx(r2), cx(1), cx(1)}));
  // the meridional parameter is preserved: c1 + i p -> c2 + i p
  const CVec3 zi = seg.c1 + cx(0, 1) * seg.p;
  const CVec3 wi = meridional_transport(seg, zi, Foot::One);
  CHECK(norm(wi - (seg.c2 + cx(0, 1) * seg.p)) < 1e-13);
}

TEST_CASE("meridional transport rejects interior and off-slice points") {
  const BisectorSegment seg = bisector_between(e2, CVec3{cx(1), cx(r2), cx(0)});
  try {
    (void)meridional_transport(seg, seg.c1 + cx(0.5) * seg.p, Foot::One);
    FAIL("expected NotOnSlice for an interior point");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotOnSlice);
  }
  CHECK_THROWS_AS(meridional_transport(seg, e2, Foot::One), Error);
}

TEST_CASE("interior meridional transport moves equidistant points") {
  const BisectorSegment seg = bisector_between(e2, CVec3{cx(1), cx(r2), cx(0)});
  const CVec3 z = seg.c1 + cx(0.3, 0.2) * seg.p;
  const CVec3 w = meridional_transport_interior(seg, z, Foot::One);
  CHECK(norm(w - (seg.c2 + cx(0.3, 0.2) * seg.p)) < 1e-13);
  // the foot itself maps to the other foot
  const CVec3 f = meridional_transport_interior(seg, seg.c1, Foot::One);
  CHECK(projectively_equal(f, seg.c2));
}

TEST_CASE("transport is an involution between the feet slices") {
  const auto [q1, q2] = generic_ultraparallel(CVec3{cx(0.3, 0.4), cx(1.1), cx(0.2, -0.5)},
                                              CVec3{cx(-0.2), cx(0.9, 0.3), cx(1.0)});
  const BisectorSegment seg = bisector_between(q1, q2);
  const CVec3 z = seg.c1 + std::polar(1.0, 0.77) * seg.p;
  const CVec3 there = meridional_transport(seg, z, Foot::One);
  const CVec3 back = meridional_transport(seg, there, Foot::Two);
  double scale = norm(back) / norm(z);
  CHECK(norm(back - scale * z) < 1e-10 * norm(back));
}

TEST_CASE("reflection in the middle slice swaps the feet") {
  const auto [q1, q2] = generic_ultraparallel(CVec3{cx(0.1), cx(1.2), cx(0.4, 0.3)},
                                              CVec3{cx(0.3, -0.2), cx(0.5), cx(1.3)});
  const BisectorSegment seg = bisector_between(q1, q2);
  const Mat3 R = reflection_in_middle_slice(seg);
  CHECK(projectively_equal(R * seg.c1, seg.c2));
  CHECK(projectively_equal(R * seg.c2, seg.c1));
  // the spine polar is preserved projectively (negated vector)
  CHECK(norm(R * seg.p + seg.p) < 1e-12);
  // the midpoint is fixed projectively; R acts as minus the identity on the
  // spine, so the vector itself is negated
  CHECK(norm(R * seg.m + seg.m) < 1e-12);
  CHECK((R * R - Mat3::identity()).max_abs() < 1e-12);
  // reflecting transports meridians: R maps z on C1's circle to C2's circle
  const CVec3 z = seg.c1 + std::polar(1.0, 2.1) * seg.p;
  const CVec3 Rz = R * z;
  CHECK(std::abs(herm(Rz, seg.q2)) < 1e-12);  // lands on the C2 slice span
}

TEST_CASE("foot access and per-foot slices") {
  const BisectorSegment seg = bisector_between(e2, CVec3{cx(1), cx(r2), cx(0)});
  CHECK(norm(foot(seg, Foot::One) - seg.c1) == 0.0);
  CHECK(norm(foot(seg, Foot::Two) - seg.c2) == 0.0);
  const Slice s1 = slice_at_foot(seg, Foot::One);
  CHECK(projectively_equal(s1.c, seg.c1));
  CHECK(projectively_equal(s1.q, seg.q1));
  // theta of a boundary point through the slice gauge has unit modulus
  const CVec3 z = seg.c1 + std::polar(1.0, 0.4) * seg.p;
  CHECK(std::abs(std::abs(theta_coordinate(s1, z)) - 1.0) < 1e-12);
}

TEST_CASE("transport accepts any representative scale of the input point") {
  const BisectorSegment seg = bisector_between(e2, CVec3{cx(1), cx(r2), cx(0)});
  const CVec3 z{cx(1), cx(0), cx(1)};
  const CVec3 w1 = meridional_transport(seg, z, Foot::One);
  const CVec3 w2 = meridional_transport(seg, cx(0.3, -1.7) * z, Foot::One);
  CHECK(projectively_equal(w1, w2));
}
