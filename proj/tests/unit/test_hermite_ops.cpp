#include <doctest.h>

#include "helpers.hpp"
#include "hermflow/error.hpp"
#include "hermflow/hermite_ops.hpp"
#include "hermflow/serialize.hpp"

using namespace testing;

namespace {

std::vector<MultiIndex> all_indices(int max_order) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= max_order; ++k)
    for (const auto& b : multi_indices_of_order(k, 3)) out.push_back(b);
  return out;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(OperatorParams::make(0, 3), ValidationError);
  CHECK_THROWS_AS(OperatorParams::make(1, 0), ValidationError);
  CHECK(OperatorParams::make(2, 3).eigenvalue(4) == -1);
  CHECK(OperatorParams::make(1, 3).eigenvalue(3) == make_rational(-3, 2));
}

TEST_CASE("worked eigenfunctions") {
  const auto p1 = OperatorParams::make(1, 3);
  const auto e = eigenfunction(mi(2, 0, 0), p1);
  CHECK(e.psi_star == y(1) * y(1) - k(2));
  CHECK(e.lambda == -1);
  CHECK(e.norm_sq == 2);
  CHECK(apply_B_star(e.psi_star, p1) == k(2) - y(1) * y(1));

  const auto p2 = OperatorParams::make(2, 3);
  const auto e2 = eigenfunction(mi(0, 4, 0), p2);
  CHECK(e2.psi_star == Polynomial::monomial(mi(0, 4, 0)) + k(24));
  CHECK(apply_B_star(e2.psi_star, p2) == -Polynomial::monomial(mi(0, 4, 0)) - k(24));
  CHECK(eigenfunction(mi(0, 0, 0), p2).psi_star == k(1));
}

TEST_CASE("weighted operator on small polynomials") {
  const auto p1 = OperatorParams::make(1, 3);
  CHECK(apply_B_weighted(k(1), p1).is_zero());
  CHECK(apply_B_weighted(-y(3), p1) == y(3) * make_rational(1, 2));
  CHECK(apply_B_weighted(y(1) * y(2), p1) == -(y(1) * y(2)));
  CHECK_THROWS_AS(apply_B_weighted(k(1), OperatorParams::make(2, 3)), ValidationError);
}

TEST_CASE("eigen relations through order 6") {
  for (int m = 1; m <= 3; ++m) {
    const auto params = OperatorParams::make(m, 3);
    for (const auto& beta : all_indices(6)) {
      const auto e = eigenfunction(beta, params);
      CAPTURE(m);
      CAPTURE(beta.to_string());
      CHECK(apply_B_star(e.psi_star, params) == e.psi_star * e.lambda);
      CHECK(e.lambda == make_rational(-beta.order(), 2 * m));
      CHECK(e.psi_star.leading_term().first == beta);
      CHECK(e.psi_star.homogeneous_part(beta.order()) == Polynomial::monomial(beta));
      if (m == 1) {
        // The weighted operator has the same spectrum on p F.
        CHECK(apply_B_weighted(e.psi_star, params) == e.psi_star * e.lambda);
      }
    }
  }
}

TEST_CASE("biorthogonality through order 5") {
  for (int m = 1; m <= 3; ++m) {
    const auto params = OperatorParams::make(m, 3);
    const auto idx = all_indices(5);
    for (const auto& a : idx) {
      const auto e = eigenfunction(a, params);
      for (const auto& b : idx) {
        const Rational expect = a == b ? Rational(a.factorial()) : Rational(0);
        if (pairing(e.psi_star, b, params) != expect) {
          FAIL("m=" << m << " a=" << a.to_string() << " b=" << b.to_string());
        }
      }
    }
  }
}

TEST_CASE("level enumeration") {
  const auto params = OperatorParams::make(1, 3);
  CHECK(level_enumerate(5, params).size() == 21);
  const auto lvl = level_enumerate(2, params);
  REQUIRE(lvl.size() == 6);
  CHECK(lvl.front().beta == mi(2, 0, 0));
  CHECK(lvl.back().beta == mi(0, 0, 2));
  CHECK(level_enumerate(0, params).front().psi_star == k(1));
}

TEST_CASE("derivative shift") {
  const auto p1 = OperatorParams::make(1, 3);
  CHECK(eigenfunction(mi(2, 0, 0), p1).psi_star.derive(mi(1, 0, 0)) == y(1) * Rational(2));
  const auto p2 = OperatorParams::make(2, 3);
  CHECK(eigenfunction(mi(0, 4, 0), p2).psi_star.derive(mi(0, 2, 0)) ==
        Polynomial::monomial(mi(0, 2, 0), 12));
  for (int m = 1; m <= 3; ++m) {
    const auto params = OperatorParams::make(m, 3);
    for (const auto& beta : all_indices(5))
      for (const auto& gamma : all_indices(2))
        if (gamma.divides(beta)) CHECK(derivative_shift_check(beta, gamma, params));
  }
}

TEST_CASE("coordinates in the eigenbasis") {
  const auto params = OperatorParams::make(1, 3);
  // y1^2 = psi*_(2,0,0) + 2 psi*_0
  const auto c = hermite_coordinates(y(1) * y(1), params);
  CHECK(c.at(mi(2, 0, 0)) == 1);
  CHECK(c.at(mi(0, 0, 0)) == 2);
  CHECK(c.size() == 2);
  const auto lc = level_coordinates(eigenfunction(mi(1, 1, 0), params).psi_star * Rational(3), 2, params);
  REQUIRE(lc.has_value());
  CHECK((*lc)[1] == 3);
  CHECK_FALSE(level_coordinates(y(1) * y(1), 2, params).has_value());
  const auto p2 = OperatorParams::make(2, 3);
  for (const auto& beta : all_indices(4)) {
    auto sum = Polynomial(3);
    for (const auto& [b, a] : hermite_coordinates(Polynomial::monomial(beta), p2))
      sum += eigenfunction(b, p2).psi_star * a;
    CHECK(sum == Polynomial::monomial(beta));
  }
}

TEST_CASE("eigenpair JSON round trip") {
  const auto e = eigenfunction(mi(2, 1, 1), OperatorParams::make(2, 3));
  const auto back = eigenpair_from_json(Json::parse(to_json(e).dump()));
  CHECK(back.beta == e.beta);
  CHECK(back.lambda == e.lambda);
  CHECK(back.psi_star == e.psi_star);
  CHECK(back.norm_sq == e.norm_sq);
}
