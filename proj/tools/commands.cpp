#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <random>

#include "data_spec.hpp"
#include "hermflow/classify.hpp"
#include "hermflow/diagnostic.hpp"
#include "hermflow/dynamics.hpp"
#include "hermflow/error.hpp"
#include "hermflow/expansion.hpp"
#include "hermflow/hermite_ops.hpp"
#include "hermflow/kernel_wkbj.hpp"
#include "hermflow/leray.hpp"
#include "hermflow/nodal.hpp"
#include "hermflow/resonance.hpp"
#include "hermflow/semigroup.hpp"
#include "hermflow/solenoidal.hpp"

namespace hermflow::cli {

void Context::write(const std::string& name, const std::string& content) {
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw ValidationError("cannot write " + path.string());
  artifacts.push_back(path.string());
}

namespace {

std::vector<MultiIndex> indices_up_to(int order, int dim) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= order; ++k)
    for (const auto& b : multi_indices_of_order(k, dim)) out.push_back(b);
  return out;
}

long binomial(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Model parse_model(const std::string& s) { return model_from_string(s); }

int model_order(Model model) { return model == Model::Burnett ? 2 : 1; }

std::shared_ptr<const LeveledBasis> make_basis(int m, int K) {
  return std::make_shared<const LeveledBasis>(standard_basis(m, K));
}

Expansion exact_expansion(const std::string& spec, const std::shared_ptr<const LeveledBasis>& basis, Model model) {
  const auto v = parse_field(spec, *basis);
  auto e = expand(v, basis, model);
  if (e.residual != 0)
    throw ValidationError("data has a part outside the basis (residual " + format_double(e.residual) +
                          "); raise --K or drop gradient terms");
  return e;
}

double max_abs(double a, double b) { return std::max(a, std::abs(b)); }

// ---------------------------------------------------------------- basis

Command basis_command(CLI::App& app) {
  struct Opts {
    int m = 1;
    int level = 0;
    std::string source;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("basis", "Solenoidal basis of one eigen-level with its Gram matrix");
  sub->add_option("--m", o->m, "Operator order")->check(CLI::Range(1, 8));
  sub->add_option("--level", o->level, "Eigen-level k")->required()->check(CLI::Range(0, 12));
  sub->add_option("--source", o->source, "fixture | kernel | reduced (default: fixture where catalogued)")
      ->check(CLI::IsMember({"fixture", "kernel", "reduced"}));
  return {sub, [o](Context& ctx) {
            const auto params = OperatorParams::make(o->m, 3);
            std::string source = o->source;
            if (source.empty()) source = has_fixture(o->m, o->level) ? "fixture" : "reduced";
            const auto basis = source == "fixture" ? fixture_basis(o->m, o->level)
                               : source == "kernel" ? divfree_kernel(o->level, params)
                                                    : reduced_kernel(o->level, params);
            Json fields = Json::array();
            for (const auto& f : basis.fields) fields.push_back(to_json(f));
            const bool pd = basis.gram.rows() == 0 || basis.gram.is_positive_definite();
            ctx.write("basis_m" + std::to_string(o->m) + "_k" + std::to_string(o->level) + ".json",
                      Json{{"schema", "hermflow/1"},
                           {"kind", "solenoidal_basis"},
                           {"m", o->m},
                           {"N", 3},
                           {"level", o->level},
                           {"source", source},
                           {"fields", fields},
                           {"gram", to_json(basis.gram)}});
            return Json{{"ok", pd},
                        {"m", o->m},
                        {"level", o->level},
                        {"source", source},
                        {"count", basis.fields.size()},
                        {"gram_positive_definite", pd}};
          }};
}

// ---------------------------------------------------------------- eig-check

Command eig_check_command(CLI::App& app) {
  struct Opts {
    std::vector<int> m{1};
    int max_level = 5;
    int N = 3;
    int samples = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("eig-check", "Level counts and exact eigen-relations of the polynomial eigenfunctions");
  sub->add_option("--m", o->m, "Operator orders")->check(CLI::Range(1, 8));
  sub->add_option("--max-level", o->max_level, "Highest level checked")->check(CLI::Range(0, 12));
  sub->add_option("--N", o->N, "Dimension")->check(CLI::Range(1, 4));
  sub->add_option("--samples", o->samples, "Random level combinations checked per level (uses --seed)")
      ->check(CLI::NonNegativeNumber);
  return {sub, [o](Context& ctx) {
            std::mt19937_64 rng(ctx.seed);
            std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
            Json rows = Json::array();
            std::size_t checked = 0, failures = 0;
            for (int m : o->m) {
              const auto params = OperatorParams::make(m, o->N);
              for (int k = 0; k <= o->max_level; ++k) {
                const auto level = level_enumerate(k, params);
                const long expected = binomial(k + o->N - 1, o->N - 1);
                const Rational lambda = make_rational(-k, 2 * m);
                std::size_t bad = 0;
                for (const auto& e : level)
                  if (e.lambda != lambda || apply_B_star(e.psi_star, params) != e.psi_star * lambda) ++bad;
                for (int s = 0; s < o->samples; ++s) {
                  Polynomial p(o->N);
                  for (const auto& e : level) p += e.psi_star * make_rational(num(rng), den(rng));
                  if (apply_B_star(p, params) != p * lambda) ++bad;
                }
                const bool count_ok = static_cast<long>(level.size()) == expected;
                checked += level.size() + static_cast<std::size_t>(o->samples) + 1;
                failures += bad + (count_ok ? 0 : 1);
                rows.push_back(Json{{"m", m},
                                    {"level", k},
                                    {"count", level.size()},
                                    {"expected_count", expected},
                                    {"eigen_failures", bad}});
              }
            }
            ctx.write("eig_check.json", Json{{"schema", "hermflow/1"}, {"kind", "eig_check"}, {"rows", rows}});
            return Json{{"ok", failures == 0}, {"checked", checked}, {"failures", failures}};
          }};
}

// ---------------------------------------------------------------- biortho

Command biortho_command(CLI::App& app) {
  struct Opts {
    std::vector<int> m{1, 2};
    int max_level = 4;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("biortho", "Exact pairing of eigenfunctions against monomial indices");
  sub->add_option("--m", o->m, "Operator orders")->check(CLI::Range(1, 8));
  sub->add_option("--max-level", o->max_level, "Highest order of both indices")->check(CLI::Range(0, 8));
  return {sub, [o](Context& ctx) {
            Json rows = Json::array();
            std::size_t checked = 0, failures = 0;
            for (int m : o->m) {
              const auto params = OperatorParams::make(m, 3);
              const auto idx = indices_up_to(o->max_level, 3);
              Json bad = Json::array();
              for (const auto& b : idx) {
                const auto psi = eigenfunction(b, params).psi_star;
                for (const auto& g : idx) {
                  const Rational expect = b == g ? Rational(b.factorial()) : Rational(0);
                  ++checked;
                  if (pairing(psi, g, params) != expect) {
                    ++failures;
                    bad.push_back(Json{{"beta", to_json(b)}, {"gamma", to_json(g)}});
                  }
                }
              }
              rows.push_back(Json{{"m", m}, {"indices", idx.size()}, {"failures", bad}});
            }
            ctx.write("biortho.json", Json{{"schema", "hermflow/1"}, {"kind", "biortho"}, {"rows", rows}});
            return Json{{"ok", failures == 0}, {"checked", checked}, {"failures", failures}};
          }};
}

// ---------------------------------------------------------------- solenoidal

Command solenoidal_command(CLI::App& app) {
  struct Opts {
    std::vector<int> m{1, 2};
    int max_level = 4;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("solenoidal", "Fixture checks and solenoidal kernel dimensions per level");
  sub->add_option("--m", o->m, "Operator orders")->check(CLI::Range(1, 8));
  sub->add_option("--max-level", o->max_level, "Highest level")->check(CLI::Range(0, 8));
  return {sub, [o](Context& ctx) {
            Json rows = Json::array();
            bool ok = true;
            for (int m : o->m) {
              const auto params = OperatorParams::make(m, 3);
              for (int k = 0; k <= o->max_level; ++k) {
                Json row{{"m", m}, {"level", k}};
                if (has_fixture(m, k)) {
                  const auto fields = fixture(m, k);
                  bool div = true, lvl = true;
                  for (const auto& v : fields) {
                    div = div && divergence(v).is_zero();
                    lvl = lvl && components_in_level(v, k, params);
                  }
                  row["fixtures"] = fields.size();
                  row["fixtures_divergence_free"] = div;
                  row["fixtures_in_level"] = lvl;
                  ok = ok && div && lvl;
                  if (m == 1 && k >= 1) {
                    const bool match = static_cast<int>(fields.size()) == k * (k + 2);
                    row["fixture_count_matches"] = match;
                    ok = ok && match;
                  }
                }
                const auto kernel = divfree_kernel(k, params).fields.size();
                const auto reduced = reduced_kernel(k, params).fields.size();
                row["kernel_dim"] = kernel;
                row["harmonic_gradients"] = harmonic_gradients(k, params).size();
                row["reduced_dim"] = reduced;
                if (k >= 1) {
                  row["expected_reduced_dim"] = k * (k + 2);
                  ok = ok && static_cast<int>(reduced) == k * (k + 2);
                }
                rows.push_back(row);
              }
            }
            ctx.write("solenoidal.json", Json{{"schema", "hermflow/1"}, {"kind", "solenoidal"}, {"rows", rows}});
            return Json{{"ok", ok}, {"levels", rows}};
          }};
}

// ---------------------------------------------------------------- kernel

Command kernel_command(CLI::App& app) {
  struct Opts {
    int m = 2;
    int N = 3;
    double r0 = 0;
    double h = 0.05;
    std::size_t count = 201;
    double rel_tol = KernelOptions{}.rel_tol;
    double mass_tol = 1e-6;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("kernel", "Tabulate the rescaled fundamental-solution kernel F(r)");
  sub->add_option("--m", o->m, "Operator order")->check(CLI::Range(1, 4));
  sub->add_option("--N", o->N, "Dimension (3 only)")->check(CLI::Range(3, 3));
  sub->add_option("--r0", o->r0, "First radius")->check(CLI::NonNegativeNumber);
  sub->add_option("--step", o->h, "Radial step")->check(CLI::PositiveNumber);
  sub->add_option("--count", o->count, "Number of radii")->check(CLI::Range(1, 1000000));
  sub->add_option("--rel-tol", o->rel_tol, "Quadrature tolerance per panel")->check(CLI::PositiveNumber);
  sub->add_option("--mass-tol", o->mass_tol, "Allowed |mass - 1|")->check(CLI::PositiveNumber);
  return {sub, [o](Context& ctx) {
            KernelOptions kopt;
            kopt.rel_tol = o->rel_tol;
            const auto table = kernel_values(o->m, o->N, radial_grid(o->r0, o->h, o->count), kopt);
            std::string csv = "r,F\n";
            for (std::size_t i = 0; i < table.radii.size(); ++i)
              csv += format_double(table.radii[i]) + "," + format_double(table.values[i]) + "\n";
            ctx.write("kernel_m" + std::to_string(o->m) + ".csv", csv);
            Json s{{"ok", table.mass_error <= o->mass_tol}, {"m", o->m}, {"count", table.radii.size()},
                   {"mass_error", table.mass_error}};
            const double margin = (2 * o->m + 1) * o->h;
            const double lo = std::max(table.radii.front() + margin, 0.5);
            const double hi = table.radii.back() - margin;
            if (lo < hi) s["ode_residual"] = ode_residual(table, lo, hi);
            return s;
          }};
}

// ---------------------------------------------------------------- wkbj

Command wkbj_command(CLI::App& app) {
  struct Opts {
    int m = 2;
    int N = 3;
    bool fit = false;
    double r0 = 0.5;
    double h = 0.02;
    std::size_t count = 2226;
    double d0_tol = 0.02;
    double alpha_tol = 0.01;
    double mass_tol = 1e-6;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("wkbj", "Kernel envelope constants, optionally checked against a numerical fit");
  sub->add_option("--m", o->m, "Operator order (>= 2)")->check(CLI::Range(2, 8));
  sub->add_option("--N", o->N, "Dimension")->check(CLI::Range(1, 8));
  sub->add_flag("--fit", o->fit, "Fit the envelope of the tabulated kernel (N = 3)");
  sub->add_option("--r0", o->r0, "Fit table: first radius")->check(CLI::NonNegativeNumber);
  sub->add_option("--step", o->h, "Fit table: radial step")->check(CLI::PositiveNumber);
  sub->add_option("--count", o->count, "Fit table: number of radii")->check(CLI::Range(1, 1000000));
  sub->add_option("--d0-tol", o->d0_tol, "Allowed relative error of the fitted d0")->check(CLI::PositiveNumber);
  sub->add_option("--alpha-tol", o->alpha_tol, "Allowed relative error of the fitted alpha")
      ->check(CLI::PositiveNumber);
  sub->add_option("--mass-tol", o->mass_tol, "Allowed |mass - 1|")->check(CLI::PositiveNumber);
  return {sub, [o](Context& ctx) {
            const auto w = wkbj_constants(o->m, o->N);
            Json constants{{"m", w.m},
                           {"N", w.N},
                           {"alpha", to_json(w.alpha)},
                           {"a", Json{{"re", w.a.real()}, {"im", w.a.imag()}}},
                           {"d0", w.d0},
                           {"b0", w.b0},
                           {"delta0", to_json(w.delta0)},
                           {"root_residual", w.root_residual}};
            bool ok = w.root_residual <= 1e-12;
            Json s{{"constants", constants}};
            if (o->m == 2 && o->N == 3) {
              const double d0 = 3 * std::pow(2.0, -11.0 / 3), b0 = std::pow(3.0, 1.5) * std::pow(2.0, -11.0 / 3);
              const Json cf{{"d0_error", std::abs(w.d0 - d0)},
                            {"b0_error", std::abs(w.b0 - b0)},
                            {"alpha_exact", w.alpha == make_rational(4, 3)},
                            {"delta0_exact", w.delta0 == make_rational(7, 3)}};
              ok = ok && cf["d0_error"].get<double>() <= 1e-12 && cf["b0_error"].get<double>() <= 1e-12 &&
                   cf["alpha_exact"].get<bool>() && cf["delta0_exact"].get<bool>();
              s["closed_form"] = cf;
            }
            if (o->fit) {
              const auto table = kernel_values(o->m, o->N, radial_grid(o->r0, o->h, o->count));
              const auto f = envelope_fit(table, w);
              s["fit"] = Json{{"extrema", f.extrema},
                              {"correction_term", f.correction_term},
                              {"alpha_hat", f.alpha_hat},
                              {"alpha_rel_error", f.alpha_rel_error},
                              {"d0_hat", f.d0_hat},
                              {"d0_rel_error", f.d0_rel_error},
                              {"delta0_hat", f.delta0_hat},
                              {"d0_fixed_alpha", f.d0_fixed_alpha},
                              {"d0_fixed_alpha_rel_error", f.d0_fixed_alpha_rel_error},
                              {"rms_residual", f.rms_residual},
                              {"mass_error", table.mass_error}};
              ok = ok && f.d0_rel_error <= o->d0_tol && f.alpha_rel_error <= o->alpha_tol &&
                   table.mass_error <= o->mass_tol;
            }
            s["ok"] = ok;
            Json artifact{{"schema", "hermflow/1"}, {"kind", "wkbj"}};
            artifact.update(s);
            ctx.write("wkbj_m" + std::to_string(o->m) + "_N" + std::to_string(o->N) + ".json", artifact);
            return s;
          }};
}

// ---------------------------------------------------------------- d-tensor

Command tensor_command(CLI::App& app) {
  struct Opts {
    int m = 1;
    int K = 1;
    double L = 8;
    int n = 64;
    std::string pairs = "all";
    bool refine = false;
    bool projector_check = false;
    double flag_tol = 1e-6;
    double self_tol = 1e-8;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("d-tensor", "Quadratic interaction tensor of the truncated basis");
  sub->add_option("--m", o->m, "Operator order")->check(CLI::Range(1, 2));
  sub->add_option("--K", o->K, "Highest level")->check(CLI::Range(0, 6));
  sub->add_option("--L", o->L, "Box half-width")->check(CLI::PositiveNumber);
  sub->add_option("--n", o->n, "Points per side (even)")->check(CLI::Range(4, 512));
  sub->add_option("--pairs", o->pairs, "all | self (only d(a, a, .))")->check(CLI::IsMember({"all", "self"}));
  sub->add_flag("--refine", o->refine, "Estimate errors against n*3/2 and a doubled box");
  sub->add_flag("--projector-check", o->projector_check, "Also check idempotence and divergence of the projector");
  sub->add_option("--flag-tol", o->flag_tol, "Error above which entries are flagged")->check(CLI::PositiveNumber);
  sub->add_option("--self-tol", o->self_tol, "Allowed rotation self-interaction (m = 1)")
      ->check(CLI::PositiveNumber);
  return {sub, [o](Context& ctx) {
            const auto spec = GridSpec::make(o->L, o->n);
            const auto basis = standard_basis(o->m, o->K);
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (std::size_t a = 0; a < basis.size(); ++a)
              for (std::size_t g = 0; g < basis.size(); ++g)
                if (o->pairs == "all" || a == g) pairs.emplace_back(a, g);
            const auto t = interaction_tensor(basis, spec, TensorOptions{o->refine, o->refine, o->flag_tol, ctx.threads},
                                              &pairs);
            ctx.write("tensor_m" + std::to_string(o->m) + "_K" + std::to_string(o->K) + ".json", to_json(t));
            Json s{{"size", t.size}, {"pairs", pairs.size()}, {"L", spec.L}, {"n", spec.n}};
            bool ok = true;
            if (o->refine) {
              s["max_error"] = t.max_error;
              s["flagged"] = t.flagged;
              ok = t.flagged == 0;
            }
            if (o->m == 1 && o->K >= 1) {
              double worst = 0;
              for (std::size_t a = basis.offset(1); a < basis.offset(1) + basis.levels[1].fields.size(); ++a)
                for (std::size_t b = 0; b < t.size; ++b) worst = max_abs(worst, t(a, a, b));
              s["rotation_self_interaction"] = worst;
              ok = ok && worst <= o->self_tol;
            }
            if (o->projector_check) {
              const auto y = [](int i) { return Polynomial::variable(3, i - 1); };
              const VectorPolyField v({y(1) * y(2), y(3) - y(1), y(1) * y(1)});
              const auto pu = project(sample(v, spec, Weight::Kernel, o->m));
              const double idem = (project(pu) - pu).norm() / pu.norm();
              const double div = relative_divergence(pu);
              s["idempotence"] = idem;
              s["divergence"] = div;
              ok = ok && idem <= 1e-10 && div <= 1e-8;
            }
            s["ok"] = ok;
            return s;
          }};
}

// ---------------------------------------------------------------- evolve

Command evolve_command(CLI::App& app) {
  struct Opts {
    std::string model = "stokes";
    std::string data;
    std::optional<int> K;
    double tau = 3;
    std::size_t steps = 30;
    double L = 8;
    int n = 32;
    bool zero_tensor = false;
    double rel_tol = GalerkinOptions{}.rel_tol;
    double duhamel_tol = 1e-6;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("evolve", "Coefficient trajectory of the rescaled flow");
  sub->add_option("--model", o->model, "stokes | burnett | nse")->check(CLI::IsMember({"stokes", "burnett", "nse"}));
  sub->add_option("--data", o->data, "Initial field, e.g. fixture:1:0 or 1/2*fixture:1:0+toroidal:1:1:1")
      ->required();
  sub->add_option("--K", o->K, "Highest basis level (default: highest level in --data, at least 1; nse at least 3)")
      ->check(CLI::Range(0, 6));
  sub->add_option("--tau", o->tau, "Final rescaled time")->check(CLI::PositiveNumber);
  sub->add_option("--steps", o->steps, "Output intervals")->check(CLI::Range(1, 100000));
  sub->add_option("--L", o->L, "nse: tensor box half-width")->check(CLI::PositiveNumber);
  sub->add_option("--n", o->n, "nse: tensor grid points per side")->check(CLI::Range(4, 512));
  sub->add_flag("--zero-tensor", o->zero_tensor, "nse: drop the quadratic term");
  sub->add_option("--rel-tol", o->rel_tol, "nse: integrator relative tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--duhamel-tol", o->duhamel_tol, "nse: allowed Duhamel residual")->check(CLI::PositiveNumber);
  return {sub, [o](Context& ctx) {
            const Model model = parse_model(o->model);
            const int K = o->K.value_or(std::max(model == Model::Nse ? 3 : 1, spec_level(o->data)));
            const auto basis = make_basis(model_order(model), K);
            const auto e0 = exact_expansion(o->data, basis, model);
            const auto taus = uniform_taus(o->tau, o->steps);
            const auto linear = linear_trajectory(e0, taus);
            Json s{{"model", o->model}, {"K", K}, {"modes", basis->size()}};
            bool ok = true;
            CoefficientTrajectory traj = linear;
            if (model == Model::Nse) {
              const auto tensor =
                  o->zero_tensor ? InteractionTensor::zero(*basis)
                                 : interaction_tensor(*basis, GridSpec::make(o->L, o->n),
                                                      TensorOptions{false, false, 1e-6, ctx.threads});
              GalerkinOptions gopt;
              gopt.rel_tol = o->rel_tol;
              const auto run = nse_galerkin(e0, tensor, taus, gopt);
              // The integrator on the zero tensor must reproduce the exact linear flow.
              const auto lin = o->zero_tensor ? run : nse_galerkin(e0, InteractionTensor::zero(*basis), taus, gopt);
              double gap = 0, zero_gap = 0;
              for (std::size_t t = 0; t < run.trajectory.size(); ++t)
                for (std::size_t i = 0; i < basis->size(); ++i) {
                  gap = max_abs(gap, run.trajectory.coeffs[t][i] - linear.coeffs[t][i]);
                  zero_gap = max_abs(zero_gap, lin.trajectory.coeffs[t][i] - linear.coeffs[t][i]);
                }
              s["duhamel_residual"] = run.duhamel_residual;
              s["steps"] = run.steps;
              s["linear_gap"] = gap;
              s["zero_tensor_gap"] = zero_gap;
              s["truncated"] = run.trajectory.truncated;
              if (run.trajectory.truncated) s["diagnostic"] = run.trajectory.diagnostic;
              ok = !run.trajectory.truncated && run.duhamel_residual <= o->duhamel_tol && zero_gap <= 1e-9;
              traj = run.trajectory;
            } else {
              // Log-slopes over the whole window against the level rates.
              Json rates = Json::array();
              double worst = 0;
              for (std::size_t i = 0; i < basis->size(); ++i) {
                const double c0 = traj.coeffs.front()[i], c1 = traj.coeffs.back()[i];
                if (c0 == 0) continue;
                const double slope = std::log(std::abs(c1 / c0)) / (taus.back() - taus.front());
                const double expect = to_double(level_rate(basis->level_of(i), basis->params.m));
                worst = max_abs(worst, slope - expect);
                rates.push_back(Json{{"index", i}, {"level", basis->level_of(i)}, {"slope", slope}, {"expected", expect}});
              }
              s["rates"] = rates;
              s["max_rate_deviation"] = worst;
              ok = worst <= 1e-9;
            }
            ctx.write("trajectory_" + o->model + ".csv", trajectory_csv(traj));
            s["ok"] = ok;
            return s;
          }};
}

// ---------------------------------------------------------------- nodal

Command nodal_command(CLI::App& app) {
  struct Opts {
    std::string model = "stokes";
    std::string data;
    std::string reference;
    std::optional<int> K;
    int component = 0;
    double R = 2;
    double cell = 0.05;
    double tau = 4;
    std::size_t steps = 8;
    double final_tol = 0.05;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("nodal", "Zero sets along a linear flow against the dominant Hermite field");
  sub->add_option("--model", o->model, "stokes | burnett")->check(CLI::IsMember({"stokes", "burnett"}));
  sub->add_option("--data", o->data, "Initial field")->required();
  sub->add_option("--reference", o->reference, "Reference field (default: dominant part of the data)");
  sub->add_option("--K", o->K, "Highest basis level (default: highest level in --data)")->check(CLI::Range(0, 6));
  sub->add_option("--component", o->component, "Component 1..3, 0 = first with a non-empty reference zero set")
      ->check(CLI::Range(0, 3));
  sub->add_option("--R", o->R, "Ball radius")->check(CLI::PositiveNumber);
  sub->add_option("--cell", o->cell, "Lattice cell")->check(CLI::PositiveNumber);
  sub->add_option("--tau", o->tau, "Final rescaled time")->check(CLI::PositiveNumber);
  sub->add_option("--steps", o->steps, "Output intervals")->check(CLI::Range(1, 10000));
  sub->add_option("--final-tol", o->final_tol, "Allowed final Hausdorff distance")->check(CLI::PositiveNumber);
  return {sub, [o](Context& ctx) {
            const Model model = parse_model(o->model);
            int K = o->K.value_or(std::max(1, spec_level(o->data)));
            if (!o->reference.empty()) K = std::max(K, spec_level(o->reference));
            const auto basis = make_basis(model_order(model), K);
            const auto e0 = exact_expansion(o->data, basis, model);
            const auto traj = linear_trajectory(e0, uniform_taus(o->tau, o->steps));
            const auto report = detect_resonance(traj);

            Expansion ref = e0;
            if (!o->reference.empty()) {
              ref = exact_expansion(o->reference, basis, model);
            } else {
              std::vector<double> dominant(e0.coeffs.size(), 0.0);
              for (auto i : report.dominant) dominant[i] = e0.coeffs[i];
              ref.coeffs = dominant;
              ref.exact.reset();
            }
            const NodalGrid grid{o->R, o->cell};
            const auto ref_clouds = nodal_extract(ref, grid);
            int comp = o->component - 1;
            if (comp < 0)
              for (int c = 0; c < 3 && comp < 0; ++c)
                if (!ref_clouds[static_cast<std::size_t>(c)].points.empty()) comp = c;

            std::vector<double> dist;
            std::string csv = "tau,distance\n";
            NodalCloud last;
            if (comp >= 0) {
              const auto& target = ref_clouds[static_cast<std::size_t>(comp)];
              ctx.write("nodal_reference.csv", cloud_csv(target));
              for (std::size_t t = 0; t < traj.size(); ++t) {
                last = nodal_extract(traj.state(t), grid)[static_cast<std::size_t>(comp)];
                const auto h = nodal_compare(last, target, grid.R);
                dist.push_back(h.defined ? h.distance : std::numeric_limits<double>::quiet_NaN());
                csv += format_double(traj.taus[t]) + "," + format_double(dist.back()) + "\n";
              }
              ctx.write("nodal_final.csv", cloud_csv(last));
            }
            ctx.write("nodal_distances.csv", csv);
            const auto verdict = unique_continuation_diagnostic(report, dist, ContinuationOptions{o->cell, o->final_tol});
            Json d = Json::array();
            for (double x : dist) d.push_back(std::isnan(x) ? Json(nullptr) : Json(x));
            return Json{{"ok", verdict.verdict != Verdict::Inconsistent},
                        {"component", comp + 1},
                        {"distances", d},
                        {"resonance", to_json(report)},
                        {"diagnostic", to_json(verdict)}};
          }};
}

// ---------------------------------------------------------------- classify

Command classify_command(CLI::App& app) {
  struct Opts {
    std::vector<int> sigma;
    int K = 1;
    bool sweep = false;
    ClassifyOptions opt;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("classify", "Vanishing orders of x^sigma - (-t)^K near the origin");
  sub->add_option("--sigma", o->sigma, "Spatial exponents (three integers)")->expected(3)->check(CLI::Range(0, 8));
  sub->add_option("--K", o->K, "Temporal exponent")->check(CLI::Range(1, 8));
  sub->add_flag("--sweep", o->sweep, "All 1 <= |sigma| <= max-order and 1 <= K <= max-order");
  sub->add_option("--max-order", o->opt.max_order, "Order bound")->check(CLI::Range(1, 8));
  sub->add_option("--hx", o->opt.h, "Spatial stencil spacing")->check(CLI::PositiveNumber);
  sub->add_option("--ht", o->opt.ht, "Temporal stencil spacing")->check(CLI::PositiveNumber);
  sub->add_option("--threshold", o->opt.threshold, "Relative coefficient threshold")->check(CLI::PositiveNumber);
  return {sub, [o](Context& ctx) {
            std::vector<std::pair<MultiIndex, int>> cases;
            if (o->sweep) {
              for (const auto& s : indices_up_to(o->opt.max_order, 3))
                if (s.order() > 0)
                  for (int K = 1; K <= o->opt.max_order; ++K) cases.emplace_back(s, K);
            } else {
              if (o->sigma.size() != 3) throw ValidationError("give --sigma a b c or --sweep");
              cases.emplace_back(MultiIndex(o->sigma), o->K);
            }
            Json rows = Json::array();
            std::size_t failures = 0;
            for (const auto& [sigma, K] : cases) {
              const Sampler u = [&sigma, K](const std::array<double, 3>& x, double t) {
                double p = 1;
                for (std::size_t i = 0; i < 3; ++i) p *= std::pow(x[i], sigma[i]);
                return p - std::pow(-t, K);
              };
              const auto z = classify_zero(u, o->opt);
              const bool ok = z.status == ZeroStatus::Ok && z.M == sigma.order() && z.K == K &&
                              z.gamma == make_rational(K, sigma.order());
              if (!ok) ++failures;
              Json row = to_json(z);
              row["sigma"] = to_json(sigma);
              row["expected_K"] = K;
              row["match"] = ok;
              rows.push_back(row);
            }
            ctx.write("classify.json", Json{{"schema", "hermflow/1"}, {"kind", "classify"}, {"rows", rows}});
            Json s{{"ok", failures == 0}, {"cases", cases.size()}, {"failures", failures}};
            if (cases.size() == 1) s["result"] = rows[0];
            return s;
          }};
}

// ---------------------------------------------------------------- verify

Command verify_command(CLI::App& app) {
  struct Opts {
    int m = 1;
    std::optional<int> K;
    std::vector<std::string> data;
    std::optional<double> L;
    std::optional<int> n;
    double tau = 3;
    std::size_t steps = 12;
    bool no_project = false;
    double tol = 1e-3;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("verify", "Grid semigroup evolution against the predicted coefficient decay");
  sub->add_option("--m", o->m, "Operator order")->check(CLI::Range(1, 2));
  sub->add_option("--K", o->K, "Highest basis level (default: highest level in --data, at least 1)")
      ->check(CLI::Range(0, 4));
  sub->add_option("--data", o->data, "One or more initial fields")->required();
  sub->add_option("--L", o->L, "Box half-width (default 20 for m = 1, 28 for m = 2)")->check(CLI::PositiveNumber);
  sub->add_option("--n", o->n, "Points per side (default 64)")->check(CLI::Range(4, 512));
  sub->add_option("--tau", o->tau, "Final rescaled time")->check(CLI::PositiveNumber);
  sub->add_option("--steps", o->steps, "Output intervals")->check(CLI::Range(1, 10000));
  sub->add_flag("--no-project", o->no_project, "Use the sampled data without Leray projection");
  sub->add_option("--tol", o->tol, "Allowed relative rate error")->check(CLI::PositiveNumber);
  return {sub, [o](Context& ctx) {
            int K = 1;
            for (const auto& d : o->data) K = std::max(K, spec_level(d));
            K = o->K.value_or(K);
            const auto basis = make_basis(o->m, K);
            auto opt = SemigroupOptions::for_order(o->m);
            opt.spec = GridSpec::make(o->L.value_or(opt.spec.L), o->n.value_or(opt.spec.n), false);
            opt.taus = uniform_taus(o->tau, o->steps);
            opt.project_data = !o->no_project;
            Json results = Json::array();
            bool ok = true;
            for (std::size_t i = 0; i < o->data.size(); ++i) {
              const auto r = semigroup_verify(parse_field(o->data[i], *basis), basis, opt);
              ctx.write("verify_" + std::to_string(i) + ".csv", trajectory_csv(r.trajectory));
              const bool pass = !r.trajectory.truncated && r.max_rate_error <= o->tol;
              ok = ok && pass;
              Json row{{"data", o->data[i]},
                       {"max_rate_error", r.max_rate_error},
                       {"tracked", r.tracked},
                       {"boundary_magnitude", r.boundary_magnitude},
                       {"data_divergence", r.data_divergence},
                       {"truncated", r.trajectory.truncated},
                       {"pass", pass}};
              if (r.trajectory.truncated) row["diagnostic"] = r.trajectory.diagnostic;
              results.push_back(row);
            }
            return Json{{"ok", ok}, {"m", o->m}, {"K", K}, {"L", opt.spec.L}, {"n", opt.spec.n}, {"results", results}};
          }};
}

}  // namespace

std::vector<Command> register_commands(CLI::App& app) {
  return {basis_command(app),  eig_check_command(app), biortho_command(app),  solenoidal_command(app),
          kernel_command(app), wkbj_command(app),      tensor_command(app),   evolve_command(app),
          nodal_command(app),  classify_command(app),  verify_command(app)};
}

}  // namespace hermflow::cli
