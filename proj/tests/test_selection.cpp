#include <catch2/catch_amalgamated.hpp>

#include <turnover/selection.hpp>

#include <cmath>
#include <numbers>

using namespace turnover;

namespace {
cx unit(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }
}  // namespace

TEST_CASE("make_signature enforces hyperbolicity") {
  CHECK_THROWS_AS(make_signature(2, 2, 2), Error);
  CHECK_THROWS_AS(make_signature(4, 2, 4), Error);  // chi = 0 exactly
  CHECK_THROWS_AS(make_signature(3, 3, 3), Error);  // chi = 0 exactly
  CHECK_THROWS_AS(make_signature(1, 5, 5), Error);
  const TurnoverSignature ok = make_signature(4, 2, 5);
  CHECK(ok.chi() == Rational(-1, 20));
  CHECK(make_signature(3, 3, 4).chi() == Rational(-1, 12));
}

TEST_CASE("regular enumeration for (3,3,4)") {
  const auto sels = enumerate_selections(make_signature(3, 3, 4), CaseTag::Regular);
  REQUIRE(sels.size() == 2);
  CHECK(sels[0].l1 == 1); CHECK(sels[0].l2 == 1); CHECK(sels[0].l3 == 1);
  CHECK(sels[1].l1 == 1); CHECK(sels[1].l2 == 1); CHECK(sels[1].l3 == 2);
}

TEST_CASE("eigenvalue triples have product one and unit modulus") {
  const auto sel = make_selection(make_signature(5, 4, 7), CaseTag::Regular, 2, 1, 3);
  for (int j = 1; j <= 3; ++j) {
    CHECK(std::abs(std::abs(sel.alpha(j)) - 1.0) < 1e-15);
    CHECK(std::abs(std::abs(sel.beta(j)) - 1.0) < 1e-15);
    CHECK(std::abs(std::abs(sel.gamma(j)) - 1.0) < 1e-15);
  }
  CHECK(std::abs(sel.alpha(1) * sel.alpha(2) * sel.alpha(3) - cx(1)) < 1e-14);
  CHECK(std::abs(sel.beta(1) * sel.beta(2) * sel.beta(3) - cx(1)) < 1e-14);
  CHECK(std::abs(sel.gamma(1) * sel.gamma(2) * sel.gamma(3) - cx(1)) < 1e-14);
  CHECK(std::abs(sel.gamma_inv(2) * sel.gamma(2) - cx(1)) < 1e-14);
}

TEST_CASE("rotation numbers encode the acting eigenvalue ratios") {
  const TurnoverSignature sig = make_signature(5, 6, 7);
  const auto sel = make_selection(sig, CaseTag::Regular, 2, 3, 4);
  // I1 and I2 act by the stored ratios directly.
  CHECK(std::abs(sel.alpha(3) / sel.alpha(1) - unit(2.0 / 5.0)) < 1e-14);
  CHECK(std::abs(sel.alpha(2) / sel.alpha(1) - unit(-1.0 / 5.0)) < 1e-14);
  CHECK(std::abs(sel.beta(3) / sel.beta(1) - unit(3.0 / 6.0)) < 1e-14);
  CHECK(std::abs(sel.beta(2) / sel.beta(1) - unit(-1.0 / 6.0)) < 1e-14);
  // I3 acts through the inverse eigenvalues, so the stored ratio is inverted.
  CHECK(std::abs(sel.gamma(3) / sel.gamma(1) - unit(-4.0 / 7.0)) < 1e-14);
  CHECK(std::abs(sel.gamma(2) / sel.gamma(1) - unit(1.0 / 7.0)) < 1e-14);
  const auto l = rotation_numbers(sel);
  CHECK(l[0] == 2); CHECK(l[1] == 3); CHECK(l[2] == 4);
}

TEST_CASE("angle condition holds exactly for every enumerated selection") {
  for (CaseTag tag : {CaseTag::Regular, CaseTag::SpecialPoint, CaseTag::SpecialLine})
    for (const auto& sel : enumerate_selections(make_signature(4, 5, 6), tag))
      CHECK(q4_exact(sel));
}

TEST_CASE("special cases pin the beta triple") {
  const TurnoverSignature sig = make_signature(5, 4, 6);
  const auto sp = enumerate_selections(sig, CaseTag::SpecialPoint);
  for (const auto& sel : sp) {
    CHECK(sel.l2 == 3);  // n2 - 1
    CHECK(std::abs(sel.beta(2) - sel.beta(3)) < 1e-14);
    CHECK(std::abs(sel.beta(1) - sel.beta(3)) > 0.1);
  }
  const auto sl = enumerate_selections(sig, CaseTag::SpecialLine);
  for (const auto& sel : sl) {
    CHECK(sel.l2 == 0);
    CHECK(std::abs(sel.beta(1) - sel.beta(3)) < 1e-14);
    CHECK(std::abs(sel.beta(1) - sel.beta(2)) > 0.1);
  }
  CHECK(sp.size() == 3 * 4);   // l1 in [1,3], l3 in [1,4]
  CHECK(sl.size() == 3 * 4);
}

TEST_CASE("selection validation rejects out-of-range rotation numbers") {
  const TurnoverSignature sig = make_signature(3, 3, 4);
  CHECK_THROWS_AS(make_selection(sig, CaseTag::Regular, 0, 1, 1), Error);
  CHECK_THROWS_AS(make_selection(sig, CaseTag::Regular, 1, 2, 1), Error);
  CHECK_THROWS_AS(make_selection(sig, CaseTag::Regular, 1, 1, 3), Error);
  CHECK_THROWS_AS(make_selection(sig, CaseTag::SpecialPoint, 1, 1, 1), Error);
  CHECK_THROWS_AS(make_selection(sig, CaseTag::SpecialLine, 1, 1, 1), Error);
  CHECK_NOTHROW(make_selection(sig, CaseTag::SpecialPoint, 1, 2, 1));
  CHECK_NOTHROW(make_selection(sig, CaseTag::SpecialLine, 1, 0, 1));
}

TEST_CASE("enumeration is empty only when the ranges are empty") {
  // n2 = 2 leaves no regular l2; the special cases still exist.
  const TurnoverSignature sig = make_signature(4, 2, 5);
  CHECK_THROWS_AS(enumerate_selections(sig, CaseTag::Regular), Error);
  try {
    (void)enumerate_selections(sig, CaseTag::Regular);
    FAIL("expected EmptyEnumeration");
  } catch (const Error& e) {
    CHECK(e.code() == Err::EmptyEnumeration);
  }
  CHECK(enumerate_selections(sig, CaseTag::SpecialPoint).size() == 2 * 3);
  CHECK(enumerate_selections(sig, CaseTag::SpecialLine).size() == 2 * 3);
}

TEST_CASE("enumeration order is lexicographic in (l1, l2, l3)") {
  const auto sels = enumerate_selections(make_signature(5, 5, 5), CaseTag::Regular);
  REQUIRE(sels.size() == 27);
  for (size_t i = 1; i < sels.size(); ++i) {
    const auto a = std::tuple(sels[i - 1].l1, sels[i - 1].l2, sels[i - 1].l3);
    const auto b = std::tuple(sels[i].l1, sels[i].l2, sels[i].l3);
    CHECK(a < b);
  }
}

TEST_CASE("sum of gamma matches the explicit eigenvalues") {
  const auto sel = make_selection(make_signature(3, 3, 4), CaseTag::Regular, 1, 1, 1);
  CHECK(std::abs(sel.sum_gamma() - (sel.gamma(1) + sel.gamma(2) + sel.gamma(3))) < 1e-15);
  // the (3,3,4) benchmark selection has gamma = (1, i, -i)
  CHECK(std::abs(sel.gamma(1) - cx(1)) < 1e-14);
  CHECK(std::abs(sel.gamma(2) - cx(0, 1)) < 1e-14);
  CHECK(std::abs(sel.gamma(3) - cx(0, -1)) < 1e-14);
}
