// Runs the acceptance criteria at their full tolerances and wall-clock
// budgets. One line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hermflow/classify.hpp"
#include "hermflow/diagnostic.hpp"
#include "hermflow/dynamics.hpp"
#include "hermflow/expansion.hpp"
#include "hermflow/hermite_ops.hpp"
#include "hermflow/kernel_wkbj.hpp"
#include "hermflow/leray.hpp"
#include "hermflow/nodal.hpp"
#include "hermflow/resonance.hpp"
#include "hermflow/semigroup.hpp"
#include "hermflow/solenoidal.hpp"

using namespace hermflow;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED(" << what << ")";
    }
  }
};

Polynomial y(int i) { return Polynomial::variable(3, i - 1); }
Polynomial c(long v) { return Polynomial::constant(3, v); }
VectorPolyField vec(Polynomial a, Polynomial b, Polynomial d) {
  return VectorPolyField({std::move(a), std::move(b), std::move(d)});
}

std::vector<MultiIndex> indices_up_to(int order) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= order; ++k)
    for (const auto& b : multi_indices_of_order(k, 3)) out.push_back(b);
  return out;
}

void spectrum(Outcome& o) {
  const auto params = OperatorParams::make(1, 3);
  for (int k = 0; k <= 10; ++k) {
    const auto n = level_enumerate(k, params).size();
    o.require(n == static_cast<std::size_t>((k + 1) * (k + 2) / 2), "count at k=" + std::to_string(k));
  }
  o.detail << "levels 0..10 counted";
}

void eigen_relations(Outcome& o) {
  std::size_t checked = 0;
  for (int m = 1; m <= 3; ++m) {
    const auto params = OperatorParams::make(m, 3);
    for (const auto& beta : indices_up_to(5)) {
      const auto e = eigenfunction(beta, params);
      const bool ok = apply_B_star(e.psi_star, params) == e.psi_star * make_rational(-beta.order(), 2 * m);
      o.require(ok, "m=" + std::to_string(m) + " beta=" + beta.to_string());
      ++checked;
    }
  }
  o.detail << checked << " exact identities";
}

void biorthonormality(Outcome& o) {
  std::size_t checked = 0;
  for (int m = 1; m <= 2; ++m) {
    const auto params = OperatorParams::make(m, 3);
    const auto idx = indices_up_to(4);
    for (const auto& b : idx) {
      const auto psi = eigenfunction(b, params).psi_star;
      for (const auto& g : idx) {
        const Rational expect = b == g ? Rational(b.factorial()) : Rational(0);
        if (pairing(psi, g, params) != expect)
          o.require(false, "m=" + std::to_string(m) + " " + b.to_string() + "," + g.to_string());
        ++checked;
      }
    }
  }
  o.detail << checked << " pairings";
}

void fixtures(Outcome& o) {
  std::size_t fields = 0;
  for (int m = 1; m <= 2; ++m) {
    const auto params = OperatorParams::make(m, 3);
    for (int k = 0; k <= 4; ++k) {
      if (!has_fixture(m, k)) continue;
      for (const auto& v : fixture(m, k)) {
        const std::string tag = "m=" + std::to_string(m) + " k=" + std::to_string(k);
        o.require(divergence(v).is_zero(), "div " + tag);
        o.require(components_in_level(v, k, params), "level " + tag);
        ++fields;
      }
    }
  }
  const auto n1 = fixture(1, 1).size(), n2 = fixture(1, 2).size();
  o.require(n1 == 1 * (1 + 2) && n2 == 2 * (2 + 2), "counts");
  o.detail << fields << " fields; m=1 counts " << n1 << "," << n2;
}

void wkbj(Outcome& o) {
  const auto w = wkbj_constants(2, 3);
  const double d0 = 3 * std::pow(2.0, -11.0 / 3), b0 = std::pow(3.0, 1.5) * std::pow(2.0, -11.0 / 3);
  o.require(w.alpha == make_rational(4, 3), "alpha");
  o.require(w.delta0 == make_rational(7, 3), "delta0");
  o.require(std::abs(w.d0 - d0) <= 1e-12, "d0 closed form");
  o.require(std::abs(w.b0 - b0) <= 1e-12, "b0 closed form");

  const auto table = kernel_values(2, 3, radial_grid(0.5, 0.02, 2226));
  const auto fit = envelope_fit(table, w);
  o.require(fit.d0_rel_error <= 0.02, "d0 fit");
  o.require(fit.alpha_rel_error <= 0.01, "alpha fit");
  o.require(table.mass_error <= 1e-6, "mass");
  o.detail << "d0 err " << fit.d0_rel_error << ", alpha err " << fit.alpha_rel_error << " (" << fit.extrema
           << " extrema), mass err " << table.mass_error;
}

void projector(Outcome& o) {
  const auto spec = GridSpec::make(8, 64);
  // A generic smooth decaying field with a gradient part.
  const auto u = sample(vec(y(1) * y(2), y(3) - y(1), y(1) * y(1)), spec, Weight::Kernel, 1);
  const auto pu = project(u);
  const double idem = (project(pu) - pu).norm() / pu.norm();
  const double div = relative_divergence(pu);
  o.require(idem <= 1e-10, "idempotence");
  o.require(div <= 1e-8, "divergence");

  const auto basis = standard_basis(1, 2);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t off = basis.offset(1);
  for (std::size_t i = 0; i < basis.levels[1].fields.size(); ++i) pairs.emplace_back(off + i, off + i);
  const auto t = interaction_tensor(basis, spec, TensorOptions{false, false, 1e-6}, &pairs);
  double worst = 0;
  for (const auto& [a, g] : pairs)
    for (std::size_t b = 0; b < t.size; ++b) worst = std::max(worst, std::abs(t(a, g, b)));
  o.require(worst <= 1e-8, "rotation self-interaction");
  o.detail << "idempotence " << idem << ", div " << div << ", self-interaction " << worst;
}

void semigroup_case(Outcome& o, int m, int K, const std::vector<std::pair<std::string, VectorPolyField>>& data) {
  const auto basis = std::make_shared<const LeveledBasis>(standard_basis(m, K));
  for (const auto& [name, v] : data) {
    const auto r = semigroup_verify(v, basis, SemigroupOptions::for_order(m));
    o.require(!r.trajectory.truncated, name + " truncated");
    o.require(r.max_rate_error <= 1e-3, name + " rate");
    o.detail << name << " err " << r.max_rate_error << "; ";
  }
}

void stokes_semigroup(Outcome& o) {
  semigroup_case(o, 1, 2, {{"v11", fixture(1, 1)[0]}, {"v24", fixture(1, 2)[3]}});
}

void burnett_semigroup(Outcome& o) {
  semigroup_case(o, 2, 1, {{"level0", fixture(2, 0)[0]}, {"level1", fixture(2, 1)[0]}});
}

void nodal_convergence(Outcome& o) {
  const auto basis = std::make_shared<const LeveledBasis>(standard_basis(1, 3));
  const auto v11 = fixture(1, 1)[0];
  // y x grad(y1 y2 y3): a level-3 rotation field.
  const auto p3 = vec(y(1) * (y(2) * y(2) - y(3) * y(3)), y(2) * (y(3) * y(3) - y(1) * y(1)),
                      y(3) * (y(1) * y(1) - y(2) * y(2)));
  const auto data = v11 + p3 * make_rational(1, 2);
  const auto e0 = expand(data, basis);
  o.require(e0.residual == 0, "data outside basis");

  const NodalGrid grid{2, 0.05};
  const auto plane = nodal_extract(expand(v11, basis), grid)[1];
  const auto taus = uniform_taus(4, 8);
  std::vector<double> dist;
  for (double tau : taus) {
    const auto cloud = nodal_extract(stokes_flow(e0, tau), grid)[1];
    const auto h = nodal_compare(cloud, plane, grid.R);
    dist.push_back(h.defined ? h.distance : std::nan(""));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < dist.size(); ++i) decreasing = decreasing && dist[i] < dist[i - 1];
  o.require(decreasing, "monotone decrease");
  o.require(dist.back() < 0.05, "final distance");

  const auto report = detect_resonance(linear_trajectory(e0, taus));
  const auto verdict = unique_continuation_diagnostic(report, dist);
  o.require(verdict.verdict == Verdict::Pass, "diagnostic " + to_string(verdict.verdict));
  o.detail << "distance " << dist.front() << " -> " << dist.back() << ", verdict " << to_string(verdict.verdict);
}

void zero_classification(Outcome& o) {
  std::size_t cases = 0;
  for (const auto& sigma : indices_up_to(4)) {
    if (sigma.order() == 0) continue;
    for (int K = 1; K <= 4; ++K) {
      const Sampler u = [&](const std::array<double, 3>& x, double t) {
        double p = 1;
        for (int i = 0; i < 3; ++i) p *= std::pow(x[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(i)]);
        return p - std::pow(-t, K);
      };
      const auto z = classify_zero(u);
      const bool ok = z.status == ZeroStatus::Ok && z.M == sigma.order() && z.K == K &&
                      z.gamma == make_rational(K, sigma.order());
      o.require(ok, "sigma=" + sigma.to_string() + " K=" + std::to_string(K));
      ++cases;
    }
  }
  o.detail << cases << " fields";
}

void galerkin(Outcome& o) {
  const auto basis = std::make_shared<const LeveledBasis>(standard_basis(1, 2));
  const auto n = basis->size();
  Expansion e0;
  e0.basis = basis;
  e0.model = Model::Nse;
  e0.coeffs.resize(n);
  // Deterministic generic data, |c| = 1e-2.
  double norm = 0;
  for (std::size_t i = 0; i < n; ++i) {
    e0.coeffs[i] = std::sin(1.7 * static_cast<double>(i) + 0.3);
    norm += e0.coeffs[i] * e0.coeffs[i];
  }
  for (auto& v : e0.coeffs) v *= 1e-2 / std::sqrt(norm);

  const auto taus = uniform_taus(3, 30);
  const auto zero = nse_galerkin(e0, InteractionTensor::zero(*basis), taus);
  const auto exact = linear_trajectory(e0, taus);
  double lin = 0;
  for (std::size_t t = 0; t < taus.size(); ++t)
    for (std::size_t i = 0; i < n; ++i)
      lin = std::max(lin, std::abs(zero.trajectory.coeffs[t][i] - exact.coeffs[t][i]));
  o.require(lin <= 1e-9, "zero tensor vs Stokes");

  const auto tensor = interaction_tensor(*basis, GridSpec::make(8, 32), TensorOptions{false, false, 1e-6});
  const auto run = nse_galerkin(e0, tensor, taus);
  o.require(!run.trajectory.truncated, "truncated");
  o.require(run.duhamel_residual <= 1e-6, "Duhamel residual");
  o.detail << "linear gap " << lin << ", Duhamel residual " << run.duhamel_residual << " (" << n << " modes)";
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, "spectrum multiplicity", 1, spectrum},
      {2, "eigen relations", 10, eigen_relations},
      {3, "bi-orthonormality", 30, biorthonormality},
      {4, "solenoidal fixtures", 5, fixtures},
      {5, "WKBJ constants and kernel", 120, wkbj},
      {6, "Leray projector", 120, projector},
      {7, "Stokes semigroup cross-check", 120, stokes_semigroup},
      {8, "Burnett semigroup cross-check", 120, burnett_semigroup},
      {9, "nodal convergence", 120, nodal_convergence},
      {10, "zero classification", 10, zero_classification},
      {11, "Galerkin consistency", 60, galerkin},
  };
  int failures = 0;
  for (const auto& c : all) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& ex) {
      o.require(false, std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs <= c.budget_s, "over time budget");
    if (!o.pass) ++failures;
    std::printf("%s %2d %-30s %8.2fs / %4.0fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
  return failures == 0 ? 0 : 1;
}
