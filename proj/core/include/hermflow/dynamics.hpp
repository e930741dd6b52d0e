#pragma once

#include <vector>

#include "hermflow/expansion.hpp"

namespace hermflow {

struct GalerkinOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  double initial_step = 1e-3;
  double min_step = 1e-12;      // below this the run is truncated
  double blowup_norm = 1e6;     // |c| above this truncates the run
};

struct GalerkinResult {
  CoefficientTrajectory trajectory;
  /// max over output taus of |c(tau) - e^{mu tau} c(0) - int_0^tau e^{mu(tau-s)} Q(c(s)) ds|
  double duhamel_residual = 0;
  std::size_t steps = 0;
};

/// Integrates dc_b/dtau = mu_b c_b + sum_{a,g} d(a,g,b) c_a c_g, with
/// mu_b the level rate, by Dormand-Prince 5(4) with dense output. The
/// Duhamel integral is accumulated step by step with 8-point Gauss-Legendre
/// on the dense output.
GalerkinResult nse_galerkin(const Expansion& e0, const InteractionTensor& tensor,
                            const std::vector<double>& taus, const GalerkinOptions& opt = {});

}  // namespace hermflow
