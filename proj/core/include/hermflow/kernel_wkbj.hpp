#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hermflow/rational.hpp"

namespace hermflow {

/// Envelope constants of the kernel of d_t + (-Delta)^m for m >= 2:
///   F(y) ~ |y|^{-delta0} exp(a |y|^alpha),  a = -d0 + i b0.
struct WkbjConstants {
  int m = 2;
  int N = 3;
  Rational alpha;  // 2m / (2m - 1)
  std::complex<double> a;
  double d0 = 0;
  double b0 = 0;
  Rational delta0;  // (m(2N - 1) - N) / (2m - 1)
  double root_residual = 0;  // |(-1)^m (alpha a)^{2m-1} - 1/(2m)|
};

/// Throws ValidationError for m < 2 (the m = 1 kernel is Gaussian).
WkbjConstants wkbj_constants(int m, int N);

struct KernelOptions {
  double rel_tol = 1e-13;        // per panel, relative to max(panel, its share of int exp(-s^{2m}) s ds)
  double cutoff_exponent = 60;   // integrate s up to S with S^{2m} = cutoff_exponent
  double max_panel_error = 1e-9; // ConvergenceError above this
};

/// F(r) for N = 3 via the radial sine transform
///   F(r) = 1/(2 pi^2 r) int_0^S exp(-s^{2m}) s sin(s r) ds,
/// split at the zeros of sin(s r). The tail beyond S is below
/// S exp(-cutoff_exponent) and is dropped.
double kernel_value(double r, int m, const KernelOptions& opt = {});

struct KernelTable {
  int m = 1;
  int N = 3;
  std::vector<double> radii;
  std::vector<double> values;
  double mass_error = 0;  // |4 pi int r^2 F dr - 1|, NaN if not computed
};

/// Evaluates F at each radius (N must be 3) and fills mass_error from
/// kernel_mass. Radii must be non-negative and increasing.
KernelTable kernel_values(int m, int N, std::span<const double> radii, const KernelOptions& opt = {});

/// Uniform radial grid r_i = r0 + i h, i < count.
std::vector<double> radial_grid(double r0, double h, std::size_t count);

/// 4 pi int_0^R r^2 F(r) dr with R past the point where F is negligible.
double kernel_mass(int m, const KernelOptions& opt = {});

/// (4 pi)^{-3/2} exp(-r^2 / 4)
double gaussian_kernel(double r);

struct EnvelopeFit {
  std::size_t extrema = 0;
  bool correction_term = false;  // whether an r^{-alpha} term was fitted
  double alpha_hat = 0;
  double d0_hat = 0;
  double delta0_hat = 0;
  double alpha_rel_error = 0;
  double d0_rel_error = 0;
  // Refit with alpha held at its analytic value.
  double d0_fixed_alpha = 0;
  double d0_fixed_alpha_rel_error = 0;
  double delta0_fixed_alpha = 0;
  double rms_residual = 0;
};

/// Fits log|F| at the local extrema of |F| with |F| in (1e-12, 1e-2) to
///   C - delta log r - d0 r^alpha + e r^{-alpha}
/// (alpha by bounded 1D minimization, the rest by linear least squares).
/// The e term is the first correction of the two-scale expansion; it is
/// omitted when fewer than 6 extrema are available. Throws ValidationError
/// for m < 2 or fewer than 4 extrema.
EnvelopeFit envelope_fit(const KernelTable& table, const WkbjConstants& constants);

/// Max over r in [r_lo, r_hi] of
///   |-(-Delta)^m F + (1/2m) r F' + (N/2m) F|
/// with radial derivatives by central differences on the (uniform) table.
/// Uses (Delta^m F)(r) = (r F)^{(2m)} / r, valid for N = 3.
double ode_residual(const KernelTable& table, double r_lo, double r_hi);

}  // namespace hermflow
