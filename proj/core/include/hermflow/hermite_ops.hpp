#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hermflow/multi_index.hpp"
#include "hermflow/polynomial.hpp"
#include "hermflow/rational.hpp"

namespace hermflow {

/// Parameters of the operator pair
///
///   B* = (-1)^{m+1} Delta^m - (1/2m) y . grad
///   B  = (-1)^{m+1} Delta^m + (1/2m) y . grad + (N/2m) I
///
/// m is the half-order of the diffusion, N the space dimension. Level k has
/// eigenvalue -k/(2m) for both operators.
///
/// The function spaces behind B and B* carry an exponential weight with a
/// free exponent a in (0, 2 d0); nothing computed here depends on it.
struct OperatorParams {
  int m = 1;
  int N = 3;

  /// Throws ValidationError unless m >= 1 and N >= 1.
  static OperatorParams make(int m, int N);

  Rational eigenvalue(int level) const;

  friend bool operator==(const OperatorParams&, const OperatorParams&) = default;
};

/// Unnormalized polynomial eigenfunction psi*_beta of B* together with its
/// eigenvalue and the squared normalization beta! that pairs it with
/// psi_beta = (-1)^{|beta|} D^beta F.
struct EigenPair {
  MultiIndex beta;
  Rational lambda;
  Polynomial psi_star;
  Rational norm_sq;
};

Polynomial apply_B_star(const Polynomial& p, const OperatorParams& params);

/// For m = 1: the polynomial q with B(p F) = q F, F the Gaussian kernel.
/// Evaluated with the product rule D_i(qF) = (D_i q - y_i q / 2) F, which is
/// independent of apply_B_star. Throws ValidationError for m >= 2.
Polynomial apply_B_weighted(const Polynomial& p, const OperatorParams& params);

/// psi*_beta = sum_{j=0}^{floor(|beta|/2m)} (1/j!) (-Delta)^{mj} y^beta
EigenPair eigenfunction(const MultiIndex& beta, const OperatorParams& params);

/// Every eigenpair of level k, in level order (see multi_indices_of_order).
std::vector<EigenPair> level_enumerate(int k, const OperatorParams& params);

/// <psi*_A, psi_B> with psi_B = (-1)^{|B|} D^B F, computed exactly by moving
/// the derivatives onto psi*_A:  int (D^B psi*_A) F dy.
Rational pairing(const Polynomial& psi_a, const MultiIndex& beta_b, const OperatorParams& params);

/// Coordinates of p in the level-k eigenbasis {psi*_alpha : |alpha| = k}
/// (level order), or nullopt if p is not in that span.
std::optional<std::vector<Rational>> level_coordinates(const Polynomial& p, int k,
                                                       const OperatorParams& params);

/// Full expansion p = sum_beta a_beta psi*_beta over all levels.
std::map<MultiIndex, Rational> hermite_coordinates(const Polynomial& p, const OperatorParams& params);

/// True iff D^gamma psi*_beta lies in the span of level |beta| - |gamma|.
bool derivative_shift_check(const MultiIndex& beta, const MultiIndex& gamma,
                            const OperatorParams& params);

}  // namespace hermflow
