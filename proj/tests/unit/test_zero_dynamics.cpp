#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "helpers.hpp"
#include "hermflow/classify.hpp"
#include "hermflow/diagnostic.hpp"
#include "hermflow/dynamics.hpp"
#include "hermflow/error.hpp"
#include "hermflow/expansion.hpp"
#include "hermflow/nodal.hpp"
#include "hermflow/resonance.hpp"
#include "hermflow/semigroup.hpp"

using namespace testing;

namespace {

std::shared_ptr<const LeveledBasis> basis_for(int m, int K) {
  return std::make_shared<const LeveledBasis>(standard_basis(m, K));
}

Expansion single(const std::shared_ptr<const LeveledBasis>& b, std::size_t i, Model model = Model::Stokes) {
  Expansion e;
  e.model = model;
  e.basis = b;
  e.coeffs.assign(b->size(), 0.0);
  e.coeffs[i] = 1;
  return e;
}

}  // namespace

TEST_CASE("level rates") {
  CHECK(level_rate(0, 1) == make_rational(-1, 2));
  CHECK(level_rate(1, 1) == -1);
  CHECK(level_rate(4, 1) == make_rational(-5, 2));
  CHECK(level_rate(0, 2) == make_rational(-3, 4));
  CHECK(level_rate(1, 2) == -1);
  CHECK(model_from_string("burnett") == Model::Burnett);
  CHECK_THROWS_AS(model_from_string("euler"), ValidationError);
}

TEST_CASE("exact flows") {
  const auto b1 = basis_for(1, 2);
  CHECK(stokes_flow(single(b1, 3), 0).coeffs[3] == 1.0);
  CHECK(stokes_flow(single(b1, 3), 1).coeffs[3] == doctest::Approx(0.36787944117144233).epsilon(1e-15));
  CHECK(stokes_flow(single(b1, 6), 2).coeffs[6] == doctest::Approx(0.049787068367863944).epsilon(1e-15));
  const auto b2 = basis_for(2, 1);
  CHECK(burnett_flow(single(b2, 0, Model::Burnett), 4).coeffs[0] ==
        doctest::Approx(0.049787068367863944).epsilon(1e-15));
  CHECK(burnett_flow(single(b2, 3, Model::Burnett), 4).coeffs[3] ==
        doctest::Approx(0.01831563888873418).epsilon(1e-15));
  // Extracted log-slopes equal the level rates exactly through level 4.
  const auto b = basis_for(1, 4);
  Expansion e = single(b, 0);
  for (auto& c : e.coeffs) c = 1;
  const auto traj = linear_trajectory(e, uniform_taus(2, 4));
  for (std::size_t i = 0; i < b->size(); ++i) {
    const double slope = std::log(traj.coeffs.back()[i] / traj.coeffs.front()[i]) / 2;
    CHECK(slope == doctest::Approx(to_double(level_rate(b->level_of(i), 1))).epsilon(1e-14));
  }
}

TEST_CASE("exact expansion round trip") {
  const auto b = basis_for(1, 3);
  std::vector<Rational> want(b->size());
  auto v = VectorPolyField::zero(3);
  for (std::size_t i = 0; i < b->size(); ++i) {
    want[i] = make_rational(static_cast<long>(i % 5) - 2, static_cast<long>(i % 3) + 1);
    v += b->field(i) * want[i];
  }
  const auto e = expand(v, b);
  REQUIRE(e.exact.has_value());
  CHECK(*e.exact == want);
  CHECK(e.residual == 0);
  // A pure harmonic gradient lies outside the basis.
  CHECK(expand(harmonic_gradients(1, b->params)[0], b).residual > 0);
}

TEST_CASE("grid expansion recovers coefficients on both sides") {
  const auto b = basis_for(1, 2);
  const auto spec = GridSpec::make(10, 48);
  const auto v = fixture(1, 1)[0] + fixture(1, 2)[3] * make_rational(1, 2);
  const auto weighted = expand(sample_dual(v, spec, b->params), b, Side::Weighted);
  const auto poly = expand(sample(v, spec), b, Side::Polynomial);
  for (std::size_t i = 0; i < b->size(); ++i) {
    const double want = i == 3 ? 1.0 : (i == b->offset(2) + 3 ? 0.5 : 0.0);
    CAPTURE(i);
    CHECK(std::abs(weighted.coeffs[i] - want) < 1e-8);
    CHECK(std::abs(poly.coeffs[i] - want) < 1e-8);
  }
}

TEST_CASE("trajectory CSV") {
  const auto b = basis_for(1, 1);
  const auto csv = trajectory_csv(linear_trajectory(single(b, 3), uniform_taus(1, 2)));
  CHECK(csv.rfind("tau,L0:0,L0:1,L0:2,L1:0,L1:1,L1:2\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("Galerkin integration") {
  const auto b = basis_for(1, 2);
  Expansion e0 = single(b, 0, Model::Nse);
  for (std::size_t i = 0; i < b->size(); ++i) e0.coeffs[i] = 1e-2 * std::cos(0.9 * static_cast<double>(i));
  const auto taus = uniform_taus(2, 8);
  const auto lin = nse_galerkin(e0, InteractionTensor::zero(*b), taus);
  const auto exact = linear_trajectory(e0, taus);
  for (std::size_t t = 0; t < taus.size(); ++t)
    for (std::size_t i = 0; i < b->size(); ++i)
      CHECK(std::abs(lin.trajectory.coeffs[t][i] - exact.coeffs[t][i]) <= 1e-9);

  const auto tensor = interaction_tensor(*b, GridSpec::make(8, 32), TensorOptions{false, false, 1e-6});
  // A single rotation does not interact with itself.
  const auto rot = nse_galerkin(single(b, 3, Model::Nse), tensor, taus);
  const auto rot_exact = linear_trajectory(single(b, 3, Model::Nse), taus);
  for (std::size_t t = 0; t < taus.size(); ++t)
    for (std::size_t i = 0; i < b->size(); ++i)
      CHECK(std::abs(rot.trajectory.coeffs[t][i] - rot_exact.coeffs[t][i]) <= 1e-8);

  const auto run = nse_galerkin(e0, tensor, taus);
  CHECK(run.duhamel_residual <= 1e-6);
  double diff = 0;
  for (std::size_t i = 0; i < b->size(); ++i)
    diff = std::max(diff, std::abs(run.trajectory.coeffs.back()[i] - exact.coeffs.back()[i]));
  CHECK(diff > 1e-8);  // the quadratic term is felt

  // Large data blows up and the run is truncated, not thrown.
  Expansion big = e0;
  for (auto& c : big.coeffs) c *= 1e4;
  const auto blown = nse_galerkin(big, tensor, uniform_taus(50, 10), GalerkinOptions{1e-9, 1e-14, 1e-3, 1e-12, 1e3});
  CHECK(blown.trajectory.truncated);
  CHECK_FALSE(blown.trajectory.diagnostic.empty());
  CHECK_THROWS_AS(nse_galerkin(e0, tensor, {1.0, 2.0}), ValidationError);
}

TEST_CASE("resonance detection") {
  const auto b = basis_for(1, 2);
  const auto taus = uniform_taus(6, 12);
  const auto l1 = detect_resonance(linear_trajectory(single(b, 4), taus));
  CHECK(l1.status == ResonanceStatus::Resonant);
  CHECK(l1.level == 1);
  CHECK(l1.fitted_rate == doctest::Approx(-1).epsilon(1e-12));

  Expansion mixed = single(b, 4);
  mixed.coeffs[b->offset(2) + 1] = 5;  // larger but faster
  const auto rm = detect_resonance(linear_trajectory(mixed, taus));
  CHECK(rm.status == ResonanceStatus::Resonant);
  CHECK(rm.level == 1);
  // Rescaling subdominant levels does not move the dominant set.
  mixed.coeffs[b->offset(2) + 1] = 5e3;
  CHECK(detect_resonance(linear_trajectory(mixed, taus)).dominant == rm.dominant);

  Expansion with0 = single(b, 4);
  with0.coeffs[1] = 1e-3;
  CHECK(detect_resonance(linear_trajectory(with0, taus)).status == ResonanceStatus::NonDegenerate);

  const auto short_window = detect_resonance(linear_trajectory(single(b, 4), uniform_taus(1, 4)));
  CHECK(short_window.status == ResonanceStatus::Inconclusive);

  CoefficientTrajectory off = linear_trajectory(single(b, 4), taus);
  for (std::size_t t = 0; t < off.size(); ++t) off.coeffs[t][4] = std::exp(-0.5 * off.taus[t]);
  CHECK(detect_resonance(off).status == ResonanceStatus::NotResonant);
  CHECK(to_json(l1)["status"] == "resonant");
}

TEST_CASE("nodal sets") {
  const auto b = basis_for(1, 2);
  const NodalGrid grid{2, 0.05};
  const auto v11 = nodal_extract(single(b, 3), grid);
  CHECK(v11[0].identically_zero);
  REQUIRE_FALSE(v11[1].points.empty());
  for (const auto& p : v11[1].points) CHECK(std::abs(p[2]) < 1e-9);

  const auto v21 = nodal_extract(single(b, b->offset(2)), grid);
  for (const auto& p : v21[0].points) CHECK(std::abs(p[1] * p[1] + p[2] * p[2] - 4) < 0.01);

  const auto constant = nodal_extract([](const Point3&) { return 1.0; }, grid);
  CHECK(constant.points.empty());
  CHECK_FALSE(constant.identically_zero);

  const auto shifted = nodal_extract([](const Point3& p) { return p[2] - 0.1; }, grid);
  CHECK(nodal_compare(v11[1], v11[1], 2).distance == 0.0);
  const auto h = nodal_compare(v11[1], shifted, 2);
  CHECK(h.defined);
  CHECK(h.distance == doctest::Approx(0.1).epsilon(0.05));
  CHECK_FALSE(nodal_compare(v11[1], constant, 2).defined);
  CHECK(cloud_csv(shifted).rfind("x,y,z\n", 0) == 0);
}

TEST_CASE("zero classification") {
  const auto a = classify_zero([](const std::array<double, 3>& x, double t) { return x[0] * x[1] - t * t; });
  CHECK(a.status == ZeroStatus::Ok);
  CHECK(a.M == 2);
  CHECK(a.K == 2);
  CHECK(a.gamma == 1);

  const auto c = classify_zero([](const std::array<double, 3>& x, double t) { return x[0] * x[0] * x[0] + t; });
  CHECK(c.M == 3);
  CHECK(c.K == 1);
  CHECK(c.gamma == make_rational(1, 3));
  CHECK(c.rescaled_variable == "x/(-t)^{1/3}");

  // Heat evolution of -y3 F from t = -1: u = -x3 G(x, 2 + t) / (2 + t).
  const auto heat = classify_zero([](const std::array<double, 3>& x, double t) {
    const double s = 2 + t;
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return -x[2] * std::pow(4 * std::numbers::pi * s, -1.5) * std::exp(-r2 / (4 * s)) / s;
  });
  CHECK(heat.M == 1);
  CHECK(heat.status == ZeroStatus::TemporalOrderExceedsBound);

  CHECK(classify_zero([](const std::array<double, 3>&, double) { return 1.0; }).status == ZeroStatus::NotAZero);
  CHECK(classify_zero([](const std::array<double, 3>& x, double) { return std::pow(x[0], 6); }).status ==
        ZeroStatus::BothExceedBound);
  CHECK(to_json(a)["gamma"]["num"] == "1");
}

TEST_CASE("semigroup verification on a small grid") {
  SemigroupOptions opt;
  opt.spec = GridSpec{16, 48, false};
  opt.taus = uniform_taus(2, 2);
  const auto r = semigroup_verify(fixture(1, 1)[1], basis_for(1, 1), opt);
  CHECK(r.max_rate_error <= 1e-3);
  CHECK(r.tracked == std::vector<std::size_t>{4});
  CHECK(r.boundary_magnitude < 1e-8);
  // Unprojected data with a gradient part is reported, not silently used.
  const auto g = semigroup_verify(harmonic_gradients(1, OperatorParams::make(1, 3))[0] + fixture(1, 1)[1],
                                  basis_for(1, 1), opt);
  CHECK(g.data_divergence > 1e-3);
  CHECK(g.max_rate_error <= 1e-3);
}

TEST_CASE("continuation diagnostic") {
  ResonanceReport resonant;
  resonant.status = ResonanceStatus::Resonant;
  resonant.dominant = {3};
  CHECK(unique_continuation_diagnostic(resonant, {0.5, 0.2, 0.01}).verdict == Verdict::Pass);
  CHECK(unique_continuation_diagnostic(resonant, {0.5, 0.4, 0.3}).verdict == Verdict::Inconsistent);
  CHECK(unique_continuation_diagnostic(resonant, {0.1, 0.4, 0.01}).verdict == Verdict::Inconsistent);
  ResonanceReport empty;
  CHECK(unique_continuation_diagnostic(empty, {}).verdict == Verdict::Vacuous);
  ResonanceReport other = resonant;
  other.status = ResonanceStatus::NotResonant;
  CHECK(unique_continuation_diagnostic(other, {0.0}).verdict == Verdict::NotApplicable);
  CHECK(to_json(unique_continuation_diagnostic(resonant, {0.0}))["verdict"] == "PASS");
}
