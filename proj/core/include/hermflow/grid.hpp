#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hermflow/kernel_wkbj.hpp"
#include "hermflow/polynomial.hpp"
#include "hermflow/serialize.hpp"

namespace hermflow {

/// Uniform periodic grid on [-L, L)^3 with n points per axis. Points are
/// y_j = -L + j h, h = 2L/n, stored row-major with y1 slowest.
struct GridSpec {
  double L = 8;
  int n = 64;
  bool dealias = true;

  /// Throws ValidationError unless L > 0 and n is even and >= 16.
  static GridSpec make(double L, int n, bool dealias = true);

  double h() const { return 2 * L / n; }
  double coordinate(int j) const { return -L + j * h(); }
  std::size_t points() const { return static_cast<std::size_t>(n) * n * n; }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n + j) * n + k;
  }
  double cell_volume() const { return h() * h() * h(); }
  /// Signed wavenumber index of FFT slot k: k for k <= n/2, k - n above.
  int wavenumber(int k) const { return k <= n / 2 ? k : k - n; }
  double xi(int k) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct GridVectorField {
  GridSpec spec;
  std::array<std::vector<double>, 3> data;

  explicit GridVectorField(const GridSpec& s);

  std::array<double, 3> means() const;
  /// sqrt(h^3 sum |u|^2)
  double norm() const;
  bool finite() const;

  GridVectorField& operator+=(const GridVectorField& o);
  GridVectorField& operator-=(const GridVectorField& o);
  GridVectorField& operator*=(double s);
  friend GridVectorField operator-(GridVectorField a, const GridVectorField& b) { return a -= b; }
  friend GridVectorField operator+(GridVectorField a, const GridVectorField& b) { return a += b; }
  friend GridVectorField operator*(GridVectorField a, double s) { return a *= s; }
};

/// h^3 sum_i u_i . v_i
double grid_inner(const GridVectorField& u, const GridVectorField& v);

enum class Weight { None, Kernel };

/// Samples v (N = 3) on the grid, optionally times the kernel F of order m.
/// m = 1 uses the exact Gaussian; m >= 2 interpolates `table`, which must
/// cover radius sqrt(3) L on a uniform grid (ValidationError otherwise).
GridVectorField sample(const VectorPolyField& v, const GridSpec& spec, Weight weight = Weight::None,
                       int m = 1, const KernelTable* table = nullptr);

/// Samples of the periodic extension of v (no weight). On the seam planes
/// y_i = -L the value is the mean over the images at +-L, which is what the
/// Fourier series of the periodized field converges to.
GridVectorField sample_periodic(const VectorPolyField& v, const GridSpec& spec);

/// Kernel table on [0, sqrt(3) L + margin] suitable for sample().
KernelTable kernel_table_for(const GridSpec& spec, int m, double step = 0.01);

/// Grid values of the real function whose Fourier transform
/// (f^(xi) = int f(y) e^{-i xi.y} dy) is `symbol`, by truncated Fourier
/// synthesis. Accurate when the symbol is negligible beyond the Nyquist
/// wavenumber pi n / (2L).
std::vector<double> fourier_synthesis(const GridSpec& spec,
                                      const std::function<std::complex<double>(double, double, double)>& symbol);

/// Grid samples of the dual of v (see dual_pairing): v F for m = 1, and the
/// Fourier synthesis of sum b_{c,beta} (-i xi)^beta exp(-|xi|^{2m}) for m >= 2.
GridVectorField sample_dual(const VectorPolyField& v, const GridSpec& spec, const OperatorParams& params);

/// Raw little-endian float64 dump, component-major then row-major, plus a
/// JSON sidecar describing the grid. Writes `<stem>.bin` and `<stem>.json`.
void write_grid(const GridVectorField& u, const std::string& stem);
GridVectorField read_grid(const std::string& stem);

}  // namespace hermflow
