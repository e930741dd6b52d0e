#include "hermflow/dynamics.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>

#include "hermflow/error.hpp"

namespace hermflow {

namespace {

using State = std::vector<double>;

struct Rhs {
  const std::vector<double>& mu;
  const InteractionTensor& d;
  std::vector<std::size_t> active;  // (a, g) pairs with a non-zero row, flattened

  Rhs(const std::vector<double>& mu_, const InteractionTensor& d_) : mu(mu_), d(d_) {
    const std::size_t n = d.size;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t g = 0; g < n; ++g)
        for (std::size_t b = 0; b < n; ++b)
          if (d.values[d.index(a, g, b)] != 0) {
            active.push_back(a * n + g);
            break;
          }
  }

  void quadratic(const State& c, State& q) const {
    const std::size_t n = d.size;
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t ag : active) {
      const double w = c[ag / n] * c[ag % n];
      if (w == 0) continue;
      const double* row = &d.values[ag * n];
      for (std::size_t b = 0; b < n; ++b) q[b] += row[b] * w;
    }
  }

  void operator()(const State& c, State& dc, double) const {
    quadratic(c, dc);
    for (std::size_t b = 0; b < c.size(); ++b) dc[b] += mu[b] * c[b];
  }
};

double max_abs(const State& x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

GalerkinResult nse_galerkin(const Expansion& e0, const InteractionTensor& tensor, const std::vector<double>& taus,
                            const GalerkinOptions& opt) {
  namespace ode = boost::numeric::odeint;
  if (e0.model != Model::Nse && e0.model != Model::Stokes)
    throw ValidationError("nse_galerkin needs an nse or stokes expansion");
  const std::size_t n = e0.coeffs.size();
  if (tensor.size != n) throw ValidationError("tensor size does not match the expansion basis");
  if (taus.empty() || taus.front() != 0.0) throw ValidationError("output taus must start at 0");
  if (!std::is_sorted(taus.begin(), taus.end())) throw ValidationError("output taus must be increasing");

  std::vector<double> mu(n);
  for (std::size_t i = 0; i < n; ++i) mu[i] = to_double(level_rate(e0.basis->level_of(i), e0.m()));
  const Rhs rhs(mu, tensor);

  GalerkinResult res;
  auto& traj = res.trajectory;
  traj.model = e0.model;
  traj.basis = e0.basis;

  const State c0 = e0.coeffs;
  State duhamel(n, 0.0);  // int_0^t e^{mu (t - s)} Q(c(s)) ds
  auto residual_at = [&](double t, const State& c) {
    double r = 0;
    for (std::size_t b = 0; b < n; ++b)
      r = std::max(r, std::abs(c[b] - std::exp(mu[b] * t) * c0[b] - duhamel[b]));
    return r;
  };

  auto stepper = ode::make_dense_output(opt.abs_tol, opt.rel_tol, ode::runge_kutta_dopri5<State>());
  stepper.initialize(c0, 0.0, opt.initial_step);
  traj.taus.push_back(0.0);
  traj.coeffs.push_back(c0);

  using GL = boost::math::quadrature::gauss<double, 8>;
  std::size_t next = 1;
  State x(n), q(n);
  // Integral over [t0, t1] of e^{mu (t1 - s)} Q(c(s)), optionally up to an interior t1.
  auto segment = [&](double t0, double t1, State& out) {
    std::fill(out.begin(), out.end(), 0.0);
    const double half = 0.5 * (t1 - t0), mid = 0.5 * (t0 + t1);
    for (std::size_t k = 0; k < GL::abscissa().size(); ++k) {
      for (int sgn : {-1, 1}) {
        if (GL::abscissa()[k] == 0 && sgn == 1) continue;  // a zero node is listed once
        const double s = mid + sgn * half * GL::abscissa()[k];
        stepper.calc_state(s, x);
        rhs.quadratic(x, q);
        for (std::size_t b = 0; b < n; ++b) out[b] += half * GL::weights()[k] * std::exp(mu[b] * (t1 - s)) * q[b];
      }
    }
  };

  State piece(n);
  while (next < taus.size()) {
    const auto [t0, t1] = stepper.do_step(rhs);
    ++res.steps;
    // Output points inside this step.
    while (next < taus.size() && taus[next] <= t1) {
      segment(t0, taus[next], piece);  // reuses x, so before the output state
      stepper.calc_state(taus[next], x);
      State at(n);
      for (std::size_t b = 0; b < n; ++b) at[b] = std::exp(mu[b] * (taus[next] - t0)) * duhamel[b] + piece[b];
      std::swap(duhamel, at);
      res.duhamel_residual = std::max(res.duhamel_residual, residual_at(taus[next], x));
      std::swap(duhamel, at);
      traj.taus.push_back(taus[next]);
      traj.coeffs.push_back(x);
      ++next;
    }
    segment(t0, t1, piece);
    for (std::size_t b = 0; b < n; ++b) duhamel[b] = std::exp(mu[b] * (t1 - t0)) * duhamel[b] + piece[b];

    const double dt = stepper.current_time_step();
    const double norm = max_abs(stepper.current_state());
    if (!std::isfinite(norm) || norm > opt.blowup_norm || dt < opt.min_step) {
      traj.truncated = true;
      traj.diagnostic = !std::isfinite(norm) || norm > opt.blowup_norm
                            ? "coefficients exceeded the blow-up bound"
                            : "step size fell below the minimum";
      break;
    }
  }
  return res;
}

}  // namespace hermflow
