#include "hermflow/kernel_moment.hpp"

#include "hermflow/error.hpp"

namespace hermflow {

Rational kernel_moment(const MultiIndex& beta, int m) {
  if (m < 1) throw ValidationError("kernel order m must be >= 1");
  if (!beta.all_even()) return 0;
  const int order = beta.order();
  if (order % (2 * m) != 0) return 0;
  const int j = order / (2 * m);
  Integer num = beta.factorial() * factorial(static_cast<unsigned>(m * j));
  Integer den = factorial(static_cast<unsigned>(j));
  for (int e : beta.entries()) den *= factorial(static_cast<unsigned>(e / 2));
  Rational out = make_rational(num, den);
  if (((m + 1) * j) % 2 != 0) out = -out;
  return out;
}

Rational kernel_expectation(const Polynomial& p, int m) {
  Rational sum = 0;
  for (const auto& [beta, c] : p.terms()) {
    Rational mom = kernel_moment(beta, m);
    if (mom != 0) sum += c * mom;
  }
  return sum;
}

}  // namespace hermflow
