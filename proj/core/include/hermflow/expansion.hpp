#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hermflow/leray.hpp"

namespace hermflow {

enum class Model { Stokes, Nse, Burnett };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

/// Decay rate of a level-k coefficient: lambda_k - (2m-1)/(2m), i.e.
/// -(1+k)/2 for Stokes/NSE and -(3+k)/4 for Burnett.
Rational level_rate(int k, int m);

/// Which side of the duality a grid field lives on.
///  Polynomial: u ~ sum c v*   (coefficients from pairing with the duals)
///  Weighted:   u ~ sum c dual(v*)   (coefficients from pairing with v*)
enum class Side { Polynomial, Weighted };

struct Expansion {
  Model model = Model::Stokes;
  std::shared_ptr<const LeveledBasis> basis;
  std::vector<double> coeffs;
  std::optional<std::vector<Rational>> exact;
  double tau = 0;
  double residual = 0;

  int m() const { return basis->params.m; }
};

/// Exact rational coefficients of p in the basis (levels above K ignored);
/// residual is sqrt(dual_pairing(r, r)) for the remainder r.
Expansion expand(const VectorPolyField& p, std::shared_ptr<const LeveledBasis> basis,
                 Model model = Model::Stokes);

/// Grid-quadrature coefficients. The residual is the grid norm of the
/// remainder, with a Gaussian weight exp(-|y|^2/4) on the polynomial side.
Expansion expand(const GridVectorField& u, std::shared_ptr<const LeveledBasis> basis, Side side,
                 Model model = Model::Stokes);

/// sum c_i v*_i as floating polynomials.
std::array<NumericPolynomial, 3> numeric_field(const Expansion& e);

/// c_i(tau) = c_i(0) exp(rate(level_i) tau), exact in tau.
Expansion stokes_flow(const Expansion& e0, double tau);
Expansion burnett_flow(const Expansion& e0, double tau);

struct CoefficientTrajectory {
  Model model = Model::Stokes;
  std::shared_ptr<const LeveledBasis> basis;
  std::vector<double> taus;
  std::vector<std::vector<double>> coeffs;  // coeffs[t][i]
  bool truncated = false;
  std::string diagnostic;

  Expansion state(std::size_t t) const;
  std::size_t size() const { return taus.size(); }
};

/// Exact Stokes or Burnett flow sampled at `taus`.
CoefficientTrajectory linear_trajectory(const Expansion& e0, const std::vector<double>& taus);

/// CSV: header "tau,L<level>:<index>,...", one row per tau.
std::string trajectory_csv(const CoefficientTrajectory& traj);

std::vector<double> uniform_taus(double tau_end, std::size_t steps);

}  // namespace hermflow
