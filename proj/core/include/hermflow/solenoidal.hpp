#pragma once

#include <string>
#include <vector>

#include "hermflow/hermite_ops.hpp"
#include "hermflow/polynomial.hpp"
#include "hermflow/rational.hpp"

namespace hermflow {

enum class BasisSource { Fixture, Kernel };

std::string to_string(BasisSource s);

/// Divergence-free vector fields whose components all lie in the level-k
/// eigenspace of B*, plus their Gram matrix under dual_pairing.
struct SolenoidalBasis {
  int level = 0;
  OperatorParams params;
  std::vector<VectorPolyField> fields;
  BasisSource source = BasisSource::Fixture;
  RationalMatrix gram;
};

/// Catalogued explicit fields: m = 1 for k in {0,1,2}, m = 2 for k in 0..4.
/// Throws ValidationError for anything else.
std::vector<VectorPolyField> fixture(int m, int k);
bool has_fixture(int m, int k);

/// fixture(m, k) wrapped as a basis (N = 3) with its Gram matrix.
SolenoidalBasis fixture_basis(int m, int k);

/// Exact nullspace of div on (Phi*_k)^N. Unknowns are ordered component
/// first, then level order; one basis field per free unknown.
SolenoidalBasis divfree_kernel(int k, const OperatorParams& params);

/// grad h for a basis of the harmonic polynomials h homogeneous of degree
/// k + 1 (2k + 3 fields for N = 3). These are solenoidal and lie in level k,
/// but they are also gradients, so the Leray projection cannot see them.
std::vector<VectorPolyField> harmonic_gradients(int k, const OperatorParams& params);

/// Subspace of divfree_kernel(k) orthogonal under dual_pairing to
/// harmonic_gradients(k); k(k+2) fields for N = 3 and k >= 1. For k = 0 the
/// constant fields are returned unchanged.
SolenoidalBasis reduced_kernel(int k, const OperatorParams& params);

/// True iff every component of v lies in the level-k eigenspace.
bool components_in_level(const VectorPolyField& v, int k, const OperatorParams& params);

/// True iff div v lies in the level-(k-1) eigenspace (vacuously true for div v = 0).
bool shift_check(const VectorPolyField& v, int k, const OperatorParams& params);

/// Dual function of a polynomial field. With v* = sum_c sum_beta b_{c,beta}
/// psi*_beta e_c the dual is sum b_{c,beta} w_beta psi_beta e_c, where
/// psi_beta = (-1)^{|beta|} D^beta F and w_beta = 2^{|beta|} for m = 1
/// (making the dual exactly v* F) and 1 otherwise. dual_pairing(a, b) is
/// <a, dual(b)>, symmetric and positive definite.
Rational dual_pairing(const VectorPolyField& a, const VectorPolyField& b, const OperatorParams& params);

/// Dual weight w_beta for a multi-index of order `order`.
Rational dual_weight(int order, const OperatorParams& params);

RationalMatrix gram_matrix(const std::vector<VectorPolyField>& fields, const OperatorParams& params);

/// Inverse of the Gram matrix. A singular Gram raises ValidationError listing
/// the indices of a dependent subset of fields.
RationalMatrix weighted_dual(const SolenoidalBasis& basis);

/// For m = 1: polynomial q with div(v F) = q F, i.e. div v - (1/2) y . v.
Polynomial weighted_divergence(const VectorPolyField& v);

/// Fields linearly independent over Q (rank of the coefficient matrix).
bool linearly_independent(const std::vector<VectorPolyField>& fields);

}  // namespace hermflow
