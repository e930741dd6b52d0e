#pragma once

#include <vector>

#include "hermflow/expansion.hpp"

namespace hermflow {

struct SemigroupOptions {
  GridSpec spec = GridSpec{20, 64, false};
  bool project_data = true;   // Leray-project the sampled data first
  std::vector<double> taus = uniform_taus(3.0, 12);

  /// Defaults for order m. The m = 2 kernel decays only like
  /// exp(-0.24 |y|^{4/3}), so its box is wider.
  static SemigroupOptions for_order(int m);
};

struct SemigroupResult {
  CoefficientTrajectory trajectory;
  /// Relative spectral divergence of the data before projection.
  double data_divergence = 0;
  /// max |data| on the outer faces of the box over max |data|.
  double boundary_magnitude = 0;
  /// Largest relative deviation of c_i(tau) / c_i(0) from exp(rate tau) over
  /// indices whose initial coefficient is at least 1e-6 of the largest.
  double max_rate_error = 0;
  std::vector<std::size_t> tracked;
};

/// Evolves the data dual(v) (v F for m = 1) from t = -1 with the Fourier
/// multiplier exp(-|xi|^{2m} (t + 1)), rescales with s = (-t)^{1/(2m)},
///   u^(y) = s^{2m-1} u(s y),  tau = -ln(-t),
/// evaluating u off-grid by a separable scaled DFT, and extracts basis
/// coefficients by pairing u^ with the duals on the same grid.
SemigroupResult semigroup_verify(const VectorPolyField& data, std::shared_ptr<const LeveledBasis> basis,
                                 const SemigroupOptions& opt = {});

/// Same, for data already sampled on opt.spec.
SemigroupResult semigroup_verify(const GridVectorField& data, std::shared_ptr<const LeveledBasis> basis,
                                 const SemigroupOptions& opt = {});

/// Componentwise semigroup solution rescaled to time tau, sampled on spec.
GridVectorField rescaled_solution(const GridVectorField& data, int m, double tau);

}  // namespace hermflow
