#include <doctest.h>

#include "helpers.hpp"
#include "hermflow/error.hpp"
#include "hermflow/solenoidal.hpp"

using namespace testing;

TEST_CASE("kernel dimensions") {
  const auto p1 = OperatorParams::make(1, 3);
  const std::vector<std::size_t> expect{3, 8, 15, 24};
  for (int kk = 0; kk <= 3; ++kk) {
    const auto b = divfree_kernel(kk, p1);
    CHECK(b.fields.size() == expect[static_cast<std::size_t>(kk)]);
    CHECK(b.source == BasisSource::Kernel);
    CHECK(linearly_independent(b.fields));
    for (const auto& v : b.fields) {
      CHECK(divergence(v).is_zero());
      CHECK(components_in_level(v, kk, p1));
    }
    CHECK(b.gram.is_positive_definite());
  }
  const auto p2 = OperatorParams::make(2, 3);
  for (int kk = 0; kk <= 3; ++kk)
    for (const auto& v : divfree_kernel(kk, p2).fields) CHECK(divergence(v).is_zero());
}

TEST_CASE("fixture catalogue") {
  CHECK(fixture(1, 0).size() == 1);
  CHECK(fixture(1, 1).size() == 3);
  CHECK(fixture(1, 2).size() == 8);
  CHECK_FALSE(has_fixture(1, 3));
  CHECK_THROWS_AS(fixture(1, 3), ValidationError);
  CHECK_THROWS_AS(fixture(3, 1), ValidationError);
  for (int m = 1; m <= 2; ++m) {
    const auto params = OperatorParams::make(m, 3);
    for (int kk = 0; kk <= 4; ++kk) {
      if (!has_fixture(m, kk)) continue;
      const auto b = fixture_basis(m, kk);
      CAPTURE(m);
      CAPTURE(kk);
      CHECK(linearly_independent(b.fields));
      CHECK(b.gram.is_symmetric());
      CHECK(b.gram.is_positive_definite());
      CHECK(b.gram * weighted_dual(b) == RationalMatrix::identity(b.fields.size()));
      for (const auto& v : b.fields) {
        CHECK(components_in_level(v, kk, params));
        CHECK(shift_check(v, kk, params));
        CHECK(divergence(v).is_zero());
      }
    }
  }
}

TEST_CASE("corrected level-2 field") {
  const auto v26 = fixture(1, 2)[5];
  CHECK(v26 == vec(-(y(1) * y(3)), y(2) * y(3), y(1) * y(1) - y(2) * y(2)));
  // The variant with a sign flipped on the first component is not solenoidal.
  const auto printed = vec(y(1) * y(3), y(2) * y(3), y(1) * y(1) - y(2) * y(2));
  CHECK(divergence(printed) == y(3) * Rational(2));
  CHECK(divergence(vec(k(0), y(2) * y(3), y(1) * y(1) - y(2) * y(2))) == y(3));
}

TEST_CASE("level-2 Gram matrix") {
  const auto g = fixture_basis(1, 2).gram;
  RationalMatrix expect(8, 8);
  const int diag[8] = {24, 24, 24, 8, 8, 24, 24, 24};
  for (std::size_t i = 0; i < 8; ++i) expect(i, i) = diag[i];
  auto sym = [&](std::size_t i, std::size_t j, int v) { expect(i, j) = expect(j, i) = v; };
  sym(0, 7, -8);
  sym(1, 6, 8);
  sym(2, 5, -8);
  sym(3, 4, -4);
  CHECK(g == expect);
  const auto g1 = fixture_basis(1, 1).gram;
  for (std::size_t i = 0; i < g1.rows(); ++i) CHECK(g1(i, i) == 4);
}

TEST_CASE("weighted divergence for m = 1") {
  const auto p1 = OperatorParams::make(1, 3);
  for (int kk = 0; kk <= 2; ++kk)
    for (const auto& v : fixture(1, kk)) {
      // div v = 0 leaves -y.v/2, which vanishes exactly when v is tangent to spheres.
      CHECK(weighted_divergence(v) == dot_position(v) * make_rational(-1, 2));
    }
  CHECK(weighted_divergence(vec(k(0), -y(3), y(2))).is_zero());
  CHECK(dual_weight(3, p1) == 8);
  CHECK(dual_weight(3, OperatorParams::make(2, 3)) == 1);
}

TEST_CASE("dual pairing is symmetric and positive") {
  for (int m = 1; m <= 2; ++m) {
    const auto params = OperatorParams::make(m, 3);
    const auto b = divfree_kernel(2, params);
    for (std::size_t i = 0; i < b.fields.size(); ++i) {
      CHECK(dual_pairing(b.fields[i], b.fields[i], params) > 0);
      for (std::size_t j = 0; j < i; ++j)
        CHECK(dual_pairing(b.fields[i], b.fields[j], params) ==
              dual_pairing(b.fields[j], b.fields[i], params));
    }
  }
}

TEST_CASE("singular Gram is reported") {
  const auto params = OperatorParams::make(1, 3);
  SolenoidalBasis b;
  b.level = 0;
  b.params = params;
  b.fields = {vec(k(1), k(0), k(0)), vec(k(2), k(0), k(0))};
  b.gram = gram_matrix(b.fields, params);
  CHECK_FALSE(linearly_independent(b.fields));
  CHECK_THROWS_AS(weighted_dual(b), ValidationError);
}
