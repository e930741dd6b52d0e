#pragma once

#include "hermflow/multi_index.hpp"
#include "hermflow/polynomial.hpp"
#include "hermflow/rational.hpp"

namespace hermflow {

/// Exact moment  int y^beta F(y) dy  of the rescaled fundamental-solution
/// kernel of  d/dt + (-Delta)^m  in R^N.
///
/// From F^(xi) = exp(-|xi|^{2m}) the moments are i^{|beta|} D^beta F^(0).
/// Only multi-indices with all entries even and |beta| = 2mj contribute:
///
///   M_beta = (-1)^{(m+1) j} beta! (mj)! / (j! prod_i (beta_i/2)!)
///
/// For m = 1 this is the Gaussian moment prod_i (beta_i - 1)!! 2^{beta_i/2}
/// (variance 2 per coordinate). For m >= 2 moments can be negative because
/// F changes sign.
Rational kernel_moment(const MultiIndex& beta, int m);

/// int p(y) F(y) dy, i.e. the linear extension of kernel_moment.
Rational kernel_expectation(const Polynomial& p, int m);

}  // namespace hermflow
