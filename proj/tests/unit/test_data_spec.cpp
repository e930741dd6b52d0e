#include <doctest.h>

#include <cmath>

#include "data_spec.hpp"
#include "helpers.hpp"
#include "hermflow/error.hpp"
#include "hermflow/expansion.hpp"

using namespace testing;
using hermflow::cli::parse_field;
using hermflow::cli::parse_rational;
using hermflow::cli::spec_level;

TEST_CASE("rational literals") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-1/2") == make_rational(-1, 2));
  CHECK(parse_rational("0.25") == make_rational(1, 4));
  CHECK(parse_rational("1e-2") == make_rational(1, 100));
  CHECK(parse_rational("2.5E1") == 25);
  CHECK(parse_rational("+.5") == make_rational(1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), ValidationError);
}

TEST_CASE("field specs") {
  const auto b = standard_basis(1, 3);
  CHECK(parse_field("fixture:1:0", b) == fixture(1, 1)[0]);
  CHECK(parse_field("1/2*fixture:2:3-fixture:1:1", b) ==
        fixture(1, 2)[3] * make_rational(1, 2) - fixture(1, 1)[1]);
  const auto p3 = vec(y(1) * (y(2) * y(2) - y(3) * y(3)), y(2) * (y(3) * y(3) - y(1) * y(1)),
                      y(3) * (y(1) * y(1) - y(2) * y(2)));
  CHECK(parse_field("toroidal:1:1:1", b) == p3);
  CHECK(divergence(parse_field("kernel:3:4", b)).is_zero());
  CHECK(parse_field("harmonic:1:0", b) == harmonic_gradients(1, b.params)[0]);
  CHECK(spec_level("fixture:1:0+1/2*toroidal:1:1:1") == 3);
  CHECK(spec_level("generic:1e-2") == 0);

  // generic data has the requested coefficient norm.
  const auto g = expand(parse_field("generic:1e-2", b), std::make_shared<const LeveledBasis>(b));
  double norm = 0;
  for (double c : g.coeffs) norm += c * c;
  CHECK(std::sqrt(norm) == doctest::Approx(1e-2).epsilon(1e-14));

  CHECK_THROWS_AS(parse_field("fixture:1:9", b), ValidationError);
  CHECK_THROWS_AS(parse_field("fixture:x:0", b), ValidationError);
  CHECK_THROWS_AS(parse_field("vortex:1:0", b), ValidationError);
  CHECK_THROWS_AS(parse_field("", b), ValidationError);
}
