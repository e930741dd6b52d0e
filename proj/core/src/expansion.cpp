#include "hermflow/expansion.hpp"

#include <cmath>
#include <sstream>

#include "hermflow/error.hpp"

namespace hermflow {

std::string to_string(Model m) {
  switch (m) {
    case Model::Stokes: return "stokes";
    case Model::Nse: return "nse";
    case Model::Burnett: return "burnett";
  }
  return "?";
}

Model model_from_string(const std::string& s) {
  if (s == "stokes") return Model::Stokes;
  if (s == "nse") return Model::Nse;
  if (s == "burnett") return Model::Burnett;
  throw ValidationError("unknown model '" + s + "' (expected stokes|nse|burnett)");
}

Rational level_rate(int k, int m) {
  return make_rational(-k, 2L * m) - make_rational(2L * m - 1, 2L * m);
}

namespace {

void check_model(Model model, const LeveledBasis& b) {
  if (model == Model::Burnett && b.params.m != 2) throw ValidationError("burnett model needs an m = 2 basis");
  if (model != Model::Burnett && b.params.m != 1) throw ValidationError("stokes/nse models need an m = 1 basis");
}

template <typename T>
std::vector<T> per_level_solve(const LeveledBasis& b, const std::vector<T>& raw,
                               const std::vector<std::vector<T>>& ginv) {
  std::vector<T> c(raw.size(), T(0));
  for (std::size_t k = 0; k < b.levels.size(); ++k) {
    const std::size_t off = b.offset(static_cast<int>(k));
    const std::size_t len = b.levels[k].fields.size();
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = 0; j < len; ++j) c[off + i] += ginv[k][i * len + j] * raw[off + j];
  }
  return c;
}

}  // namespace

Expansion expand(const VectorPolyField& p, std::shared_ptr<const LeveledBasis> basis, Model model) {
  check_model(model, *basis);
  const auto& params = basis->params;
  const std::size_t nb = basis->size();
  std::vector<Rational> raw(nb);
  for (std::size_t i = 0; i < nb; ++i) raw[i] = dual_pairing(basis->field(i), p, params);
  std::vector<std::vector<Rational>> ginv;
  for (const auto& g : basis->gram_inverse) {
    std::vector<Rational> flat;
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c) flat.push_back(g(r, c));
    ginv.push_back(std::move(flat));
  }
  auto c = per_level_solve(*basis, raw, ginv);

  VectorPolyField rest = p;
  for (std::size_t i = 0; i < nb; ++i)
    if (c[i] != 0) rest -= basis->field(i) * c[i];

  Expansion e;
  e.model = model;
  e.basis = std::move(basis);
  for (const auto& q : c) e.coeffs.push_back(to_double(q));
  e.residual = std::sqrt(to_double(dual_pairing(rest, rest, params)));
  e.exact = std::move(c);
  return e;
}

Expansion expand(const GridVectorField& u, std::shared_ptr<const LeveledBasis> basis, Side side, Model model) {
  check_model(model, *basis);
  const auto& spec = u.spec;
  const std::size_t nb = basis->size();
  std::vector<GridVectorField> probe, synth;
  for (std::size_t i = 0; i < nb; ++i) {
    auto poly = sample(basis->field(i), spec);
    auto dual = sample_dual(basis->field(i), spec, basis->params);
    if (side == Side::Polynomial) {
      probe.push_back(std::move(dual));
      synth.push_back(std::move(poly));
    } else {
      probe.push_back(std::move(poly));
      synth.push_back(std::move(dual));
    }
  }
  std::vector<double> raw(nb);
  for (std::size_t i = 0; i < nb; ++i) raw[i] = grid_inner(u, probe[i]);
  std::vector<std::vector<double>> ginv;
  for (const auto& g : basis->gram_inverse) ginv.push_back(g.to_doubles());

  Expansion e;
  e.model = model;
  e.coeffs = per_level_solve(*basis, raw, ginv);

  GridVectorField rest = u;
  for (std::size_t i = 0; i < nb; ++i) rest -= synth[i] * e.coeffs[i];
  if (side == Side::Polynomial) {
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.n; ++j)
        for (int k = 0; k < spec.n; ++k) {
          const double y1 = spec.coordinate(i), y2 = spec.coordinate(j), y3 = spec.coordinate(k);
          const double w = std::exp(-(y1 * y1 + y2 * y2 + y3 * y3) / 8);  // sqrt of exp(-|y|^2/4)
          for (auto& d : rest.data) d[spec.index(i, j, k)] *= w;
        }
  }
  e.residual = rest.norm();
  e.basis = std::move(basis);
  return e;
}

std::array<NumericPolynomial, 3> numeric_field(const Expansion& e) {
  std::array<NumericPolynomial, 3> out;
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
    if (e.coeffs[i] == 0) continue;
    const auto& f = e.basis->field(i);
    for (int c = 0; c < 3; ++c) out[c].accumulate(f[c], e.coeffs[i]);
  }
  return out;
}

namespace {

Expansion linear_flow(const Expansion& e0, double tau, Model expected) {
  if (e0.model != expected)
    throw ValidationError("expansion model is " + to_string(e0.model) + ", expected " + to_string(expected));
  Expansion e = e0;
  e.exact.reset();
  e.tau = e0.tau + tau;
  for (std::size_t i = 0; i < e.coeffs.size(); ++i)
    e.coeffs[i] *= std::exp(to_double(level_rate(e0.basis->level_of(i), e0.m())) * tau);
  return e;
}

}  // namespace

Expansion stokes_flow(const Expansion& e0, double tau) { return linear_flow(e0, tau, Model::Stokes); }
Expansion burnett_flow(const Expansion& e0, double tau) { return linear_flow(e0, tau, Model::Burnett); }

Expansion CoefficientTrajectory::state(std::size_t t) const {
  Expansion e;
  e.model = model;
  e.basis = basis;
  e.coeffs = coeffs.at(t);
  e.tau = taus.at(t);
  return e;
}

CoefficientTrajectory linear_trajectory(const Expansion& e0, const std::vector<double>& taus) {
  CoefficientTrajectory traj;
  traj.model = e0.model;
  traj.basis = e0.basis;
  traj.taus = taus;
  for (double t : taus) {
    const auto e = e0.model == Model::Burnett ? burnett_flow(e0, t) : linear_flow(e0, t, e0.model);
    traj.coeffs.push_back(e.coeffs);
  }
  return traj;
}

std::string trajectory_csv(const CoefficientTrajectory& traj) {
  std::ostringstream out;
  out << "tau";
  for (std::size_t i = 0; i < traj.basis->size(); ++i) {
    const auto [k, j] = traj.basis->locate(i);
    out << ",L" << k << ':' << j;
  }
  out << '\n';
  for (std::size_t t = 0; t < traj.size(); ++t) {
    out << format_double(traj.taus[t]);
    for (double c : traj.coeffs[t]) out << ',' << format_double(c);
    out << '\n';
  }
  return out.str();
}

std::vector<double> uniform_taus(double tau_end, std::size_t steps) {
  if (steps == 0) throw ValidationError("need at least one tau step");
  std::vector<double> t(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) t[i] = tau_end * static_cast<double>(i) / static_cast<double>(steps);
  return t;
}

}  // namespace hermflow
