#pragma once

#include <cstddef>
#include <vector>

#include "hermflow/grid.hpp"
#include "hermflow/solenoidal.hpp"

namespace hermflow {

/// Leray projection by the Fourier symbol I - xi xi^T / |xi|^2. The zero
/// mode passes through; Nyquist components of xi are treated as zero, so
/// pure-Nyquist modes also pass through.
GridVectorField project(const GridVectorField& u);

/// Spectral divergence (Nyquist derivatives zeroed).
std::vector<double> spectral_divergence(const GridVectorField& u);

/// sqrt(h^3 sum div^2) / |u|, 0 for a zero field.
double relative_divergence(const GridVectorField& u);

/// (u . grad) u by spectral differentiation and pointwise products; the
/// 2/3 rule is applied to input and product when spec.dealias is set.
/// Suited to smooth, decaying fields.
GridVectorField convection(const GridVectorField& u);

/// (v . grad) v formed exactly, then sampled with sample_periodic. This is
/// the route for polynomial fields, whose periodic samples are not smooth.
GridVectorField convection(const VectorPolyField& v, const GridSpec& spec);

/// Truncated Galerkin basis: solenoidal fields for levels 0..K.
struct LeveledBasis {
  OperatorParams params;
  std::vector<SolenoidalBasis> levels;
  std::vector<RationalMatrix> gram_inverse;  // per level

  static LeveledBasis from_levels(std::vector<SolenoidalBasis> levels);

  std::size_t size() const;
  int max_level() const { return static_cast<int>(levels.size()) - 1; }
  /// Global index -> (level, index within level).
  std::pair<int, std::size_t> locate(std::size_t global) const;
  std::size_t offset(int level) const;
  const VectorPolyField& field(std::size_t global) const;
  int level_of(std::size_t global) const { return locate(global).first; }
};

/// Default basis: level 0 = the three constant unit fields (kernel), levels
/// with fixtures use them, other levels use reduced_kernel.
LeveledBasis standard_basis(int m, int K);

struct TensorOptions {
  bool refine_n = true;      // compare with n * 3/2 (rounded to even)
  bool double_L = true;      // compare with 2L at the same spacing
  double flag_tolerance = 1e-6;
  unsigned workers = 0;      // 0: all hardware threads
};

/// d(alpha, gamma, beta) = -<P (v*_alpha . grad) v*_gamma, dual_beta>
/// after the level Gram inverse, dense over the basis. Harmonic gradients
/// count as gradients at every level k >= 1; the level-0 (constant) part of
/// the product is not projected.
struct InteractionTensor {
  std::size_t size = 0;
  GridSpec spec;
  std::vector<double> values;
  std::vector<double> errors;  // |refined - base| summed over refinements
  std::vector<int> levels;     // level of each basis index
  double max_error = 0;
  std::size_t flagged = 0;     // entries with error above flag_tolerance

  std::size_t index(std::size_t a, std::size_t g, std::size_t b) const { return (a * size + g) * size + b; }
  double operator()(std::size_t a, std::size_t g, std::size_t b) const { return values[index(a, g, b)]; }

  static InteractionTensor zero(const LeveledBasis& basis);
};

/// Entries for the requested (alpha, gamma) pairs only (others stay zero).
InteractionTensor interaction_tensor(const LeveledBasis& basis, const GridSpec& spec,
                                     const TensorOptions& opt = {},
                                     const std::vector<std::pair<std::size_t, std::size_t>>* pairs = nullptr);

Json to_json(const InteractionTensor& t);

}  // namespace hermflow
