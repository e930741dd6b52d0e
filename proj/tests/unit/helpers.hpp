#pragma once

#include <random>

#include "hermflow/polynomial.hpp"

namespace testing {

using namespace hermflow;

inline Polynomial y(int i) { return Polynomial::variable(3, i - 1); }
inline Polynomial k(long v) { return Polynomial::constant(3, v); }
inline MultiIndex mi(int a, int b, int c) { return MultiIndex({a, b, c}); }
inline VectorPolyField vec(Polynomial a, Polynomial b, Polynomial c) {
  return VectorPolyField({std::move(a), std::move(b), std::move(c)});
}

/// Random polynomial in 3 variables with small integer/rational coefficients.
inline Polynomial random_poly(std::mt19937& rng, int max_degree, int terms) {
  std::uniform_int_distribution<int> deg(0, max_degree), coef(-5, 5), den(1, 3);
  Polynomial p(3);
  for (int t = 0; t < terms; ++t) {
    const int d = deg(rng);
    std::uniform_int_distribution<int> split(0, d);
    const int a = split(rng);
    std::uniform_int_distribution<int> split2(0, d - a);
    const int b = split2(rng);
    p.add_term(mi(a, b, d - a - b), make_rational(coef(rng), den(rng)));
  }
  return p;
}

}  // namespace testing
