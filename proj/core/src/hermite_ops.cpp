#include "hermflow/hermite_ops.hpp"

#include "hermflow/error.hpp"
#include "hermflow/kernel_moment.hpp"

namespace hermflow {

OperatorParams OperatorParams::make(int m, int N) {
  if (m < 1) throw ValidationError("operator order m must be >= 1");
  if (N < 1) throw ValidationError("space dimension N must be >= 1");
  return OperatorParams{m, N};
}

Rational OperatorParams::eigenvalue(int level) const {
  return make_rational(-level, 2L * m);
}

namespace {

void require_dim(const Polynomial& p, const OperatorParams& params) {
  if (p.dim() != params.N) throw ValidationError("polynomial dimension does not match N");
}

}  // namespace

Polynomial apply_B_star(const Polynomial& p, const OperatorParams& params) {
  require_dim(p, params);
  // (-1)^{m+1} Delta^m = -(-Delta)^m
  Polynomial out = -neg_laplacian_power(p, params.m);
  out -= p.euler() * make_rational(1, 2L * params.m);
  return out;
}

Polynomial apply_B_weighted(const Polynomial& p, const OperatorParams& params) {
  require_dim(p, params);
  if (params.m != 1)
    throw ValidationError("weighted form of B is only available for m = 1 (Gaussian kernel)");
  const int n = params.N;
  const Rational half = make_rational(1, 2);
  // grad(pF) = g F with g_i = D_i p - y_i p / 2
  std::vector<Polynomial> g;
  for (int i = 0; i < n; ++i) g.push_back(p.partial(i) - p.times_variable(i) * half);
  // Delta(pF) = div(g F) = sum_i (D_i g_i - y_i g_i / 2) F
  Polynomial out(n);
  for (int i = 0; i < n; ++i) {
    out += g[static_cast<std::size_t>(i)].partial(i);
    out -= g[static_cast<std::size_t>(i)].times_variable(i) * half;
  }
  // + (1/2) y . grad(pF) + (N/2) p F
  for (int i = 0; i < n; ++i) out += g[static_cast<std::size_t>(i)].times_variable(i) * half;
  out += p * make_rational(n, 2);
  return out;
}

EigenPair eigenfunction(const MultiIndex& beta, const OperatorParams& params) {
  if (beta.dim() != params.N) throw ValidationError("multi-index dimension does not match N");
  const Polynomial mono = Polynomial::monomial(beta);
  Polynomial psi = mono;
  Polynomial power = mono;  // (-Delta)^{mj} y^beta
  const int jmax = beta.order() / (2 * params.m);
  for (int j = 1; j <= jmax; ++j) {
    power = neg_laplacian_power(power, params.m);
    psi += power * make_rational(Integer(1), factorial(static_cast<unsigned>(j)));
  }
  return EigenPair{beta, params.eigenvalue(beta.order()), std::move(psi),
                   Rational(beta.factorial())};
}

std::vector<EigenPair> level_enumerate(int k, const OperatorParams& params) {
  std::vector<EigenPair> out;
  for (const auto& beta : multi_indices_of_order(k, params.N))
    out.push_back(eigenfunction(beta, params));
  return out;
}

Rational pairing(const Polynomial& psi_a, const MultiIndex& beta_b, const OperatorParams& params) {
  require_dim(psi_a, params);
  return kernel_expectation(psi_a.derive(beta_b), params.m);
}

std::map<MultiIndex, Rational> hermite_coordinates(const Polynomial& p,
                                                   const OperatorParams& params) {
  require_dim(p, params);
  // psi*_alpha = y^alpha + (terms of degree < |alpha|), so peeling the
  // graded-lex leading term terminates.
  std::map<MultiIndex, Rational> coords;
  Polynomial rest = p;
  while (!rest.is_zero()) {
    auto [alpha, c] = rest.leading_term();
    coords.emplace(alpha, c);
    rest -= eigenfunction(alpha, params).psi_star * c;
  }
  return coords;
}

std::optional<std::vector<Rational>> level_coordinates(const Polynomial& p, int k,
                                                       const OperatorParams& params) {
  const auto coords = hermite_coordinates(p, params);
  for (const auto& [alpha, c] : coords)
    if (alpha.order() != k) return std::nullopt;
  std::vector<Rational> out;
  for (const auto& alpha : multi_indices_of_order(k, params.N)) {
    auto it = coords.find(alpha);
    out.push_back(it == coords.end() ? Rational(0) : it->second);
  }
  return out;
}

bool derivative_shift_check(const MultiIndex& beta, const MultiIndex& gamma,
                            const OperatorParams& params) {
  if (gamma.order() > beta.order())
    throw ValidationError("derivative order exceeds eigenfunction order");
  const Polynomial d = eigenfunction(beta, params).psi_star.derive(gamma);
  return level_coordinates(d, beta.order() - gamma.order(), params).has_value();
}

}  // namespace hermflow
