#include "hermflow/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fft.hpp"
#include "hermflow/error.hpp"

namespace hermflow {

namespace {

using cplx = std::complex<double>;

// Row-major complex n x n x n work array.
struct Cube {
  int n;
  std::vector<cplx> v;
  explicit Cube(int n_) : n(n_), v(static_cast<std::size_t>(n_) * n_ * n_) {}
  cplx& operator()(int a, int b, int c) { return v[(static_cast<std::size_t>(a) * n + b) * n + c]; }
};

}  // namespace

SemigroupOptions SemigroupOptions::for_order(int m) {
  SemigroupOptions opt;
  if (m >= 2) opt.spec = GridSpec{28, 64, false};
  return opt;
}

GridVectorField rescaled_solution(const GridVectorField& data, int m, double tau) {
  const auto& spec = data.spec;
  const int n = spec.n;
  const int nh = n / 2 + 1;
  const double t = -std::exp(-tau);
  const double s = std::pow(-t, 1.0 / (2 * m));
  const double elapsed = t + 1;
  const double amp = std::pow(s, 2 * m - 1);

  // Evaluation matrix E[j][k] = e^{i xi_k (s y_j + L)} over half (axis 3) or
  // full (axes 1, 2) spectra; Nyquist columns are dropped.
  std::vector<cplx> full(static_cast<std::size_t>(n) * n), half(static_cast<std::size_t>(n) * nh);
  for (int j = 0; j < n; ++j) {
    const double x = s * spec.coordinate(j) + spec.L;
    for (int k = 0; k < n; ++k)
      full[static_cast<std::size_t>(j) * n + k] = (k == n / 2) ? 0.0 : std::polar(1.0, spec.xi(k) * x);
    for (int k = 0; k < nh; ++k) {
      const double w = (k == 0) ? 1.0 : (k == n / 2 ? 0.0 : 2.0);
      half[static_cast<std::size_t>(j) * nh + k] = w * std::polar(1.0, spec.xi(k) * x);
    }
  }

  detail::Fft3 fft(n);
  GridVectorField out(spec);
  const double norm = amp / static_cast<double>(spec.points());
  for (int comp = 0; comp < 3; ++comp) {
    std::copy(data.data[comp].begin(), data.data[comp].end(), fft.real().begin());
    fft.forward();
    auto S = fft.spectrum();
    // Evolve.
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < nh; ++c) {
          const double k2 = spec.xi(a) * spec.xi(a) + spec.xi(b) * spec.xi(b) + spec.xi(c) * spec.xi(c);
          S[(static_cast<std::size_t>(a) * n + b) * nh + c] *= std::exp(-std::pow(k2, m) * elapsed);
        }
    // Axis 3: (a, b, c) -> (a, b, l)
    Cube A(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const cplx* row = &S[(static_cast<std::size_t>(a) * n + b) * nh];
        for (int l = 0; l < n; ++l) {
          cplx acc = 0;
          const cplx* e = &half[static_cast<std::size_t>(l) * nh];
          for (int c = 0; c < nh; ++c) acc += row[c] * e[c];
          A(a, b, l) = acc;
        }
      }
    // Axis 2: (a, b, l) -> (a, j, l)
    Cube B(n);
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < n; ++j) {
        const cplx* e = &full[static_cast<std::size_t>(j) * n];
        for (int b = 0; b < n; ++b) {
          if (a == n / 2 || b == n / 2) continue;
          const cplx w = e[b];
          for (int l = 0; l < n; ++l) B(a, j, l) += w * A(a, b, l);
        }
      }
    // Axis 1: (a, j, l) -> (i, j, l), real part.
    auto& dst = out.data[comp];
    for (int i = 0; i < n; ++i) {
      const cplx* e = &full[static_cast<std::size_t>(i) * n];
      std::vector<cplx> plane(static_cast<std::size_t>(n) * n, 0.0);
      for (int a = 0; a < n; ++a) {
        const cplx w = e[a];
        if (w == 0.0) continue;
        for (std::size_t p = 0; p < plane.size(); ++p) plane[p] += w * B.v[static_cast<std::size_t>(a) * n * n + p];
      }
      for (std::size_t p = 0; p < plane.size(); ++p)
        dst[static_cast<std::size_t>(i) * n * n + p] = norm * plane[p].real();
    }
  }
  return out;
}

SemigroupResult semigroup_verify(const GridVectorField& data_in, std::shared_ptr<const LeveledBasis> basis,
                                 const SemigroupOptions& opt) {
  const int m = basis->params.m;
  if (m != 1 && m != 2) throw ValidationError("semigroup verification supports m = 1 and m = 2");
  const Model model = m == 1 ? Model::Stokes : Model::Burnett;
  if (opt.taus.empty() || opt.taus.front() != 0.0) throw ValidationError("taus must start at 0");
  for (double t : opt.taus)
    if (t < 0) throw ValidationError("taus must be non-negative (bounded data only)");

  SemigroupResult res;
  res.data_divergence = relative_divergence(data_in);
  const auto& spec = data_in.spec;
  double top = 0, edge = 0;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.n; ++j)
        for (int k = 0; k < spec.n; ++k) {
          const double v = std::abs(data_in.data[c][spec.index(i, j, k)]);
          top = std::max(top, v);
          if (i == 0 || j == 0 || k == 0 || i == spec.n - 1 || j == spec.n - 1 || k == spec.n - 1)
            edge = std::max(edge, v);
        }
  res.boundary_magnitude = top > 0 ? edge / top : 0;

  const GridVectorField data = opt.project_data ? project(data_in) : data_in;
  auto& traj = res.trajectory;
  traj.model = model;
  traj.basis = basis;
  if (res.boundary_magnitude > 1e-8) {
    traj.truncated = true;
    traj.diagnostic = "data does not decay inside the box; periodic images contaminate the evolution";
  }
  for (double tau : opt.taus) {
    const auto u = rescaled_solution(data, m, tau);
    const auto e = expand(u, basis, Side::Polynomial, model);
    traj.taus.push_back(tau);
    traj.coeffs.push_back(e.coeffs);
  }

  const auto& c0 = traj.coeffs.front();
  double cmax = 0;
  for (double c : c0) cmax = std::max(cmax, std::abs(c));
  for (std::size_t i = 0; i < c0.size(); ++i)
    if (cmax > 0 && std::abs(c0[i]) >= 1e-6 * cmax) res.tracked.push_back(i);
  for (std::size_t t = 0; t < traj.size(); ++t)
    for (std::size_t i : res.tracked) {
      const double rate = to_double(level_rate(basis->level_of(i), m));
      const double expected = std::exp(rate * traj.taus[t]);
      const double err = std::abs(traj.coeffs[t][i] / c0[i] - expected) / expected;
      res.max_rate_error = std::max(res.max_rate_error, err);
    }
  return res;
}

SemigroupResult semigroup_verify(const VectorPolyField& data, std::shared_ptr<const LeveledBasis> basis,
                                 const SemigroupOptions& opt) {
  const auto sampled = sample_dual(data, opt.spec, basis->params);
  return semigroup_verify(sampled, std::move(basis), opt);
}

}  // namespace hermflow
