#include <catch2/catch_amalgamated.hpp>

#include <turnover/hermitian.hpp>

#include <cmath>

using namespace turnover;

namespace {
const CVec3 e1{cx(1), cx(0), cx(0)};
const CVec3 e2{cx(0), cx(1), cx(0)};
const CVec3 e3{cx(0), cx(0), cx(1)};
}  // namespace

TEST_CASE("herm is the (-,+,+) form, linear first, conjugate-linear second") {
  CHECK(herm(e1, e1) == cx(-1));
  CHECK(herm(CVec3{cx(1), cx(1), cx(0)}, e2) == cx(1));
  CHECK(herm(CVec3{cx(1), cx(0, 1), cx(0)}, e1) == cx(-1));
  // linearity in the first slot
  const CVec3 x{cx(0.3, 0.1), cx(-1, 2), cx(0.5)};
  const CVec3 y{cx(1, -1), cx(2), cx(0, 3)};
  const cx lambda(0.7, -1.3);
  CHECK(std::abs(herm(lambda * x, y) - lambda * herm(x, y)) < 1e-15);
  CHECK(std::abs(herm(x, lambda * y) - std::conj(lambda) * herm(x, y)) < 1e-15);
  // hermitian symmetry
  CHECK(std::abs(herm(x, y) - std::conj(herm(y, x))) < 1e-15);
}

TEST_CASE("sign_class buckets vectors by the form") {
  CHECK(sign_class(e1) == SignClass::Negative);
  CHECK(sign_class(e2) == SignClass::Positive);
  CHECK(sign_class(CVec3{cx(1), cx(1), cx(0)}) == SignClass::Isotropic);
}

TEST_CASE("tance oracle values") {
  CHECK(std::abs(tance(e1, e1) - 1.0) < 1e-15);
  const CVec3 q{cx(std::sqrt(2.0)), cx(1), cx(0)};
  CHECK(std::abs(tance(e1, q) - 2.0) < 1e-14);
  CHECK(std::abs(tance(e2, e3) - 0.0) < 1e-15);
}

TEST_CASE("tance rejects isotropic input") {
  const CVec3 null_vec{cx(1), cx(1), cx(0)};
  CHECK_THROWS_AS(tance(null_vec, e1), Error);
  try {
    tance(e1, null_vec);
    FAIL("expected DegenerateInput");
  } catch (const Error& e) {
    CHECK(e.code() == Err::DegenerateInput);
  }
}

TEST_CASE("herm_cross is orthogonal to both arguments") {
  // basis cases
  const CVec3 w12 = herm_cross(e1, e2);
  CHECK(std::abs(herm(w12, e1)) < 1e-15);
  CHECK(std::abs(herm(w12, e2)) < 1e-15);
  CHECK(std::abs(w12[0]) < 1e-15);
  CHECK(std::abs(w12[1]) < 1e-15);
  CHECK(std::abs(w12[2]) > 0.5);  // proportional to e3

  const CVec3 w23 = herm_cross(e2, e3);
  CHECK(std::abs(w23[1]) < 1e-15);
  CHECK(std::abs(w23[2]) < 1e-15);
  CHECK(std::abs(w23[0]) > 0.5);  // proportional to e1

  const CVec3 a{cx(1), cx(1), cx(1)};
  const CVec3 b{cx(1), cx(0, 1), cx(0)};
  const CVec3 w = herm_cross(a, b);
  CHECK(std::abs(herm(w, a)) < 1e-12);
  CHECK(std::abs(herm(w, b)) < 1e-12);
}

TEST_CASE("normalization to unit norm of the correct sign") {
  const CVec3 n = normalize_negative(CVec3{cx(2, 1), cx(1), cx(0.5)});
  CHECK(std::abs(herm(n, n) - cx(-1)) < 1e-14);
  const CVec3 p = normalize_positive(CVec3{cx(0.3), cx(2), cx(1, -1)});
  CHECK(std::abs(herm(p, p) - cx(1)) < 1e-14);
  CHECK_THROWS_AS(normalize_negative(e2), Error);
  CHECK_THROWS_AS(normalize_positive(e1), Error);
  CHECK_THROWS_AS(normalize_positive(CVec3{cx(1), cx(1), cx(0)}), Error);
}

TEST_CASE("vector arithmetic") {
  const CVec3 x{cx(1), cx(2), cx(3)};
  const CVec3 y{cx(0, 1), cx(-1), cx(2)};
  const CVec3 s = x + y;
  CHECK(s[0] == cx(1, 1));
  CHECK((x - y)[1] == cx(3));
  CHECK((cx(0, 2) * x)[2] == cx(0, 6));
  CHECK((-x)[0] == cx(-1));
  CHECK(norm2(x) == 14.0);
}
