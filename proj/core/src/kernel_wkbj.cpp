#include "hermflow/kernel_wkbj.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hermflow/error.hpp"

namespace hermflow {

using std::numbers::pi;

WkbjConstants wkbj_constants(int m, int N) {
  if (m < 2) throw ValidationError("WKBJ constants need m >= 2; the m = 1 kernel is Gaussian");
  if (N < 1) throw ValidationError("space dimension N must be >= 1");
  WkbjConstants c;
  c.m = m;
  c.N = N;
  c.alpha = make_rational(2L * m, 2L * m - 1);
  c.delta0 = make_rational(static_cast<long>(m) * (2L * N - 1) - N, 2L * m - 1);
  const double alpha = to_double(c.alpha);
  const double theta = pi / (2.0 * (2 * m - 1));
  const double scale = (2.0 * m - 1) / std::pow(2.0 * m, alpha);
  c.a = scale * std::complex<double>(-std::sin(theta), std::cos(theta));
  c.d0 = -c.a.real();
  c.b0 = c.a.imag();
  const std::complex<double> lhs = (m % 2 == 0 ? 1.0 : -1.0) * std::pow(alpha * c.a, 2 * m - 1);
  c.root_residual = std::abs(lhs - 1.0 / (2.0 * m));
  return c;
}

double gaussian_kernel(double r) { return std::pow(4 * pi, -1.5) * std::exp(-r * r / 4); }

namespace {

using boost::math::quadrature::gauss_kronrod;

// Bisects until the Kronrod error estimate is below rel_tol relative to the
// panel or to `floor`, whichever is larger.
double integrate_panel(const auto& f, double a, double b, double floor, const KernelOptions& opt, int depth = 0) {
  double err = 0;
  const double v = gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &err);
  if (err <= opt.rel_tol * std::max(std::abs(v), floor)) return v;
  if (depth == 12) {
    if (err > opt.max_panel_error) throw ConvergenceError("kernel quadrature did not converge", err);
    return v;
  }
  const double mid = 0.5 * (a + b);
  return integrate_panel(f, a, mid, 0.5 * floor, opt, depth + 1) +
         integrate_panel(f, mid, b, 0.5 * floor, opt, depth + 1);
}

}  // namespace

double kernel_value(double r, int m, const KernelOptions& opt) {
  if (m < 1) throw ValidationError("operator order m must be >= 1");
  if (r < 0) throw ValidationError("radius must be non-negative");
  const int p = 2 * m;
  const double s_max = std::pow(opt.cutoff_exponent, 1.0 / p);
  const double norm = 1.0 / (2 * pi * pi);
  if (r == 0) return norm * boost::math::tgamma(3.0 / p) / p;
  // int_0^inf exp(-s^p) s ds; bounds the integral of |integrand| over all panels.
  const double l1 = boost::math::tgamma(2.0 / p) / p;
  if (r < 1) {
    auto f = [&](double s) { return std::exp(-std::pow(s, p)) * s * std::sin(s * r) / r; };
    return norm * integrate_panel(f, 0.0, s_max, l1, opt);
  }
  auto f = [&](double s) { return std::exp(-std::pow(s, p)) * s * std::sin(s * r); };
  const double step = pi / r;
  // A sliver left over at s_max is merged into the last panel; on its own it
  // would drive the adaptive rule to full depth.
  auto panels = static_cast<int>(s_max / step);
  if (s_max - panels * step > 1e-3 * step || panels == 0) ++panels;
  double sum = 0;
  for (int i = 0; i < panels; ++i)
    sum += integrate_panel(f, i * step, i + 1 == panels ? s_max : (i + 1) * step, l1 / panels, opt);
  return norm * sum / r;
}

std::vector<double> radial_grid(double r0, double h, std::size_t count) {
  std::vector<double> r(count);
  for (std::size_t i = 0; i < count; ++i) r[i] = r0 + static_cast<double>(i) * h;
  return r;
}

double kernel_mass(int m, const KernelOptions& opt) {
  // Radius where the envelope has dropped below ~e^{-45}.
  double r_max = 14;
  if (m >= 2) {
    const auto c = wkbj_constants(m, 3);
    r_max = std::pow(45.0 / c.d0, 1.0 / to_double(c.alpha));
  }
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const double width = 0.25;
  double total = 0;
  for (double a = 0; a < r_max; a += width) {
    total += Rule::integrate([&](double r) { return r * r * kernel_value(r, m, opt); }, a, a + width);
  }
  return 4 * pi * total;
}

KernelTable kernel_values(int m, int N, std::span<const double> radii, const KernelOptions& opt) {
  if (N != 3) throw ValidationError("kernel evaluation supports N = 3 only");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < 0) throw ValidationError("radii must be non-negative");
    if (i > 0 && radii[i] <= radii[i - 1]) throw ValidationError("radii must be increasing");
  }
  KernelTable t;
  t.m = m;
  t.N = N;
  t.radii.assign(radii.begin(), radii.end());
  t.values.reserve(radii.size());
  for (double r : radii) t.values.push_back(kernel_value(r, m, opt));
  t.mass_error = std::abs(kernel_mass(m, opt) - 1.0);
  return t;
}

namespace {

struct Extremum {
  double r;
  double log_abs;
};

std::vector<Extremum> envelope_extrema(const KernelTable& t) {
  std::vector<Extremum> out;
  const auto& r = t.radii;
  const auto& f = t.values;
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    const double a0 = std::abs(f[i - 1]), a1 = std::abs(f[i]), a2 = std::abs(f[i + 1]);
    if (!(a1 >= a0 && a1 >= a2) || a1 <= 1e-12 || a1 >= 1e-2 || a0 == 0 || a2 == 0) continue;
    // vertex of the parabola through log|F| at the three samples
    const double y0 = std::log(a0), y1 = std::log(a1), y2 = std::log(a2);
    const double curv = y0 - 2 * y1 + y2;
    const double d = curv != 0 ? (y0 - y2) / (2 * curv) : 0.0;
    const double h = 0.5 * (r[i + 1] - r[i - 1]);
    out.push_back({r[i] + d * h, y1 - 0.25 * (y0 - y2) * d});
  }
  return out;
}

struct LinearFit {
  Eigen::VectorXd coef;  // C, delta, d0[, e]
  double sse;
};

LinearFit fit_fixed_alpha(const std::vector<Extremum>& ext, double alpha, bool correction) {
  const auto n = static_cast<Eigen::Index>(ext.size());
  Eigen::MatrixXd x(n, correction ? 4 : 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = ext[static_cast<std::size_t>(i)].r;
    x(i, 0) = 1;
    x(i, 1) = -std::log(r);
    x(i, 2) = -std::pow(r, alpha);
    if (correction) x(i, 3) = std::pow(r, -alpha);
    y(i) = ext[static_cast<std::size_t>(i)].log_abs;
  }
  Eigen::VectorXd c = x.colPivHouseholderQr().solve(y);
  return {c, (x * c - y).squaredNorm()};
}

}  // namespace

EnvelopeFit envelope_fit(const KernelTable& table, const WkbjConstants& constants) {
  if (table.m < 2) throw ValidationError("envelope fit needs m >= 2");
  const auto ext = envelope_extrema(table);
  if (ext.size() < 4)
    throw ValidationError("only " + std::to_string(ext.size()) +
                          " envelope extrema resolved; extend the radius or refine the grid");
  EnvelopeFit fit;
  fit.extrema = ext.size();
  fit.correction_term = ext.size() >= 6;

  const auto best = boost::math::tools::brent_find_minima(
      [&](double a) { return fit_fixed_alpha(ext, a, fit.correction_term).sse; }, 1.05, 1.95, 40);
  const auto free_fit = fit_fixed_alpha(ext, best.first, fit.correction_term);
  const double alpha = to_double(constants.alpha);
  fit.alpha_hat = best.first;
  fit.delta0_hat = free_fit.coef(1);
  fit.d0_hat = free_fit.coef(2);
  fit.alpha_rel_error = std::abs(fit.alpha_hat - alpha) / alpha;
  fit.d0_rel_error = std::abs(fit.d0_hat - constants.d0) / constants.d0;
  fit.rms_residual = std::sqrt(free_fit.sse / static_cast<double>(ext.size()));

  const auto fixed = fit_fixed_alpha(ext, alpha, fit.correction_term);
  fit.d0_fixed_alpha = fixed.coef(2);
  fit.delta0_fixed_alpha = fixed.coef(1);
  fit.d0_fixed_alpha_rel_error = std::abs(fit.d0_fixed_alpha - constants.d0) / constants.d0;
  return fit;
}

namespace {

// Fornberg's recursion: weights of the derivative of order `order` at 0 for
// nodes x.
std::vector<double> fd_weights(int order, const std::vector<double>& x) {
  const std::size_t n = x.size();
  const auto mo = static_cast<std::size_t>(order);
  std::vector<std::vector<double>> c(n, std::vector<double>(mo + 1, 0.0));
  double c1 = 1, c4 = x[0];
  c[0][0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, mo);
    double c2 = 1;
    const double c5 = c4;
    c4 = x[i];
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][mo];
  return w;
}

}  // namespace

double ode_residual(const KernelTable& table, double r_lo, double r_hi) {
  const auto& r = table.radii;
  const auto& f = table.values;
  if (r.size() < 3) throw ValidationError("kernel table too short for finite differences");
  const double h = r[1] - r[0];
  for (std::size_t i = 2; i < r.size(); ++i)
    if (std::abs((r[i] - r[i - 1]) - h) > 1e-9 * h)
      throw ValidationError("ode residual needs a uniform radial grid");

  const int m = table.m;
  const int order = 2 * m;
  const int half = m + 4;
  std::vector<double> nodes;
  for (int k = -half; k <= half; ++k) nodes.push_back(k * h);
  const auto w_high = fd_weights(order, nodes);
  const auto w_one = fd_weights(1, nodes);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // (-1)^m
  const double inv2m = 1.0 / (2.0 * m);

  double worst = 0;
  bool any = false;
  for (std::size_t i = static_cast<std::size_t>(half); i + static_cast<std::size_t>(half) < r.size(); ++i) {
    if (r[i] < r_lo - 1e-12 || r[i] > r_hi + 1e-12) continue;
    double g_high = 0, df = 0;
    for (int k = -half; k <= half; ++k) {
      const std::size_t j = i + static_cast<std::size_t>(k + half) - static_cast<std::size_t>(half);
      g_high += w_high[static_cast<std::size_t>(k + half)] * r[j] * f[j];
      df += w_one[static_cast<std::size_t>(k + half)] * f[j];
    }
    const double lap_m = g_high / r[i];
    const double res = -sign * lap_m + inv2m * r[i] * df + table.N * inv2m * f[i];
    worst = std::max(worst, std::abs(res));
    any = true;
  }
  if (!any) throw ValidationError("residual window has no interior table points");
  return worst;
}

}  // namespace hermflow
