#include "hermflow/solenoidal.hpp"

#include <map>
#include <sstream>

#include "hermflow/error.hpp"

namespace hermflow {

std::string to_string(BasisSource s) { return s == BasisSource::Fixture ? "fixture" : "kernel"; }

namespace {

constexpr int kDim = 3;

Polynomial y(int i) { return Polynomial::variable(kDim, i - 1); }
Polynomial c(long v) { return Polynomial::constant(kDim, v); }

VectorPolyField vec(Polynomial a, Polynomial b, Polynomial d) {
  return VectorPolyField({std::move(a), std::move(b), std::move(d)});
}

std::vector<VectorPolyField> fixtures_m1(int k) {
  const auto y1 = y(1), y2 = y(2), y3 = y(3);
  switch (k) {
    case 0:
      return {vec(c(1), c(1), c(1))};
    case 1:
      return {vec(c(0), -y3, y2), vec(y3, c(0), -y1), vec(-y2, y1, c(0))};
    case 2:
      return {
          vec(c(4) - y2 * y2 - y3 * y3, y1 * y2, -(y1 * y3)),
          vec(y1 * y2, c(4) - y1 * y1 - y3 * y3, -(y2 * y3)),
          vec(y1 * y3, -(y2 * y3), c(4) - y1 * y1 - y2 * y2),
          vec(c(0), y1 * y3, -(y1 * y2)),
          vec(-(y2 * y3), c(0), y2 * y1),
          // first component -y1 y3; the -y2 y3 variant has divergence y3
          vec(-(y1 * y3), y2 * y3, y1 * y1 - y2 * y2),
          vec(y1 * y2, y3 * y3 - y1 * y1, -(y2 * y3)),
          vec(y2 * y2 - y3 * y3, -(y1 * y2), y1 * y3),
      };
    default:
      throw ValidationError("no m=1 fixture at level " + std::to_string(k));
  }
}

std::vector<VectorPolyField> fixtures_m2(int k) {
  const auto y1 = y(1), y2 = y(2), y3 = y(3);
  switch (k) {
    case 0:
      return {vec(c(1), c(1), c(1))};
    case 1:
      return {vec(y2, -y3, y2), vec(y3, y3, -y1), vec(-y2, y1, y1)};
    case 2:
      return {vec(-(y1 * y1) - y3 * y3, y1 * y2, y1 * y3),
              vec(y1 * y2, -(y2 * y2) - y3 * y3, y2 * y3)};
    case 3:
      return {vec(y2 * y2 * y2, y3 * y3 * y3, y1 * y1 * y1),
              vec(y1 * y2 * y2, y2 * y1 * y1, -(y3 * (y1 * y1 + y2 * y2)))};
    case 4: {
      auto q = [](const Polynomial& v) { return v * v * v * v; };
      auto cube = [](const Polynomial& v) { return v * v * v; };
      return {vec(q(y2) + c(24), q(y3) + c(24), q(y1) + c(24)),
              vec(y1 * cube(y2), y2 * cube(y1), -(y3 * (cube(y1) + cube(y2))))};
    }
    default:
      throw ValidationError("no m=2 fixture at level " + std::to_string(k));
  }
}

// Coefficient vector of the fields over the union of their monomials.
RationalMatrix coefficient_matrix(const std::vector<VectorPolyField>& fields) {
  std::map<std::pair<int, MultiIndex>, std::size_t> slot;
  for (const auto& f : fields)
    for (int comp = 0; comp < f.dim(); ++comp)
      for (const auto& [beta, coef] : f[comp].terms()) slot.emplace(std::make_pair(comp, beta), 0);
  std::size_t idx = 0;
  for (auto& [key, s] : slot) s = idx++;
  RationalMatrix a(slot.size(), fields.size());
  for (std::size_t j = 0; j < fields.size(); ++j)
    for (int comp = 0; comp < fields[j].dim(); ++comp)
      for (const auto& [beta, coef] : fields[j][comp].terms())
        a(slot.at({comp, beta}), j) = coef;
  return a;
}

}  // namespace

bool has_fixture(int m, int k) { return (m == 1 && k >= 0 && k <= 2) || (m == 2 && k >= 0 && k <= 4); }

std::vector<VectorPolyField> fixture(int m, int k) {
  if (m == 1) return fixtures_m1(k);
  if (m == 2) return fixtures_m2(k);
  throw ValidationError("no fixtures catalogued for m=" + std::to_string(m));
}

SolenoidalBasis fixture_basis(int m, int k) {
  SolenoidalBasis b;
  b.level = k;
  b.params = OperatorParams::make(m, kDim);
  b.fields = fixture(m, k);
  b.source = BasisSource::Fixture;
  b.gram = gram_matrix(b.fields, b.params);
  return b;
}

SolenoidalBasis divfree_kernel(int k, const OperatorParams& params) {
  if (k < 0) throw ValidationError("level must be >= 0");
  const int n = params.N;
  const auto level = level_enumerate(k, params);
  // Columns: psi*_alpha e_c, c major. Rows: monomials of the divergence.
  std::vector<Polynomial> divs;
  for (int comp = 0; comp < n; ++comp)
    for (const auto& e : level) divs.push_back(e.psi_star.partial(comp));
  std::map<MultiIndex, std::size_t> row;
  for (const auto& d : divs)
    for (const auto& [beta, coef] : d.terms()) row.emplace(beta, 0);
  std::size_t r = 0;
  for (auto& [beta, s] : row) s = r++;
  RationalMatrix a(row.size(), divs.size());
  for (std::size_t j = 0; j < divs.size(); ++j)
    for (const auto& [beta, coef] : divs[j].terms()) a(row.at(beta), j) = coef;

  std::vector<std::vector<Rational>> null;
  if (row.empty()) {
    for (std::size_t j = 0; j < divs.size(); ++j) {
      std::vector<Rational> e(divs.size(), Rational(0));
      e[j] = 1;
      null.push_back(std::move(e));
    }
  } else {
    null = a.nullspace();
  }

  SolenoidalBasis b;
  b.level = k;
  b.params = params;
  b.source = BasisSource::Kernel;
  const std::size_t per = level.size();
  for (const auto& vecc : null) {
    std::vector<Polynomial> comps(static_cast<std::size_t>(n), Polynomial(n));
    for (std::size_t j = 0; j < vecc.size(); ++j)
      if (vecc[j] != 0) comps[j / per] += level[j % per].psi_star * vecc[j];
    b.fields.emplace_back(std::move(comps));
  }
  b.gram = gram_matrix(b.fields, params);
  return b;
}

std::vector<VectorPolyField> harmonic_gradients(int k, const OperatorParams& params) {
  if (k < 0) throw ValidationError("level must be >= 0");
  const int n = params.N;
  const auto cols = multi_indices_of_order(k + 1, n);
  std::vector<Polynomial> lap;
  for (const auto& beta : cols) lap.push_back(laplacian(Polynomial::monomial(beta)));
  std::vector<std::vector<Rational>> null;
  if (k + 1 < 2) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      std::vector<Rational> e(cols.size(), Rational(0));
      e[j] = 1;
      null.push_back(std::move(e));
    }
  } else {
    const auto rows = multi_indices_of_order(k - 1, n);
    std::map<MultiIndex, std::size_t> row;
    for (std::size_t i = 0; i < rows.size(); ++i) row.emplace(rows[i], i);
    RationalMatrix a(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [beta, coef] : lap[j].terms()) a(row.at(beta), j) = coef;
    null = a.nullspace();
  }
  std::vector<VectorPolyField> out;
  for (const auto& v : null) {
    Polynomial h(n);
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) h.add_term(cols[j], v[j]);
    out.push_back(gradient(h));
  }
  return out;
}

SolenoidalBasis reduced_kernel(int k, const OperatorParams& params) {
  auto full = divfree_kernel(k, params);
  if (k == 0) return full;
  const auto grads = harmonic_gradients(k, params);
  RationalMatrix a(grads.size(), full.fields.size());
  for (std::size_t i = 0; i < grads.size(); ++i)
    for (std::size_t j = 0; j < full.fields.size(); ++j) a(i, j) = dual_pairing(grads[i], full.fields[j], params);
  SolenoidalBasis b;
  b.level = k;
  b.params = params;
  b.source = BasisSource::Kernel;
  for (const auto& x : a.nullspace()) {
    auto v = VectorPolyField::zero(params.N);
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0) v += full.fields[j] * x[j];
    b.fields.push_back(std::move(v));
  }
  b.gram = gram_matrix(b.fields, params);
  return b;
}

bool components_in_level(const VectorPolyField& v, int k, const OperatorParams& params) {
  for (const auto& comp : v.components())
    if (!level_coordinates(comp, k, params)) return false;
  return true;
}

bool shift_check(const VectorPolyField& v, int k, const OperatorParams& params) {
  const Polynomial d = divergence(v);
  if (d.is_zero()) return true;
  if (k == 0) return false;
  return level_coordinates(d, k - 1, params).has_value();
}

Rational dual_weight(int order, const OperatorParams& params) {
  if (params.m != 1) return Rational(1);
  Integer w;
  mpz_ui_pow_ui(w.get_mpz_t(), 2, static_cast<unsigned long>(order));
  return Rational(w);
}

Rational dual_pairing(const VectorPolyField& a, const VectorPolyField& b, const OperatorParams& params) {
  if (a.dim() != b.dim()) throw ValidationError("field dimensions differ");
  Rational total = 0;
  for (int comp = 0; comp < a.dim(); ++comp) {
    if (a[comp].is_zero() || b[comp].is_zero()) continue;
    for (const auto& [beta, coef] : hermite_coordinates(b[comp], params))
      total += coef * dual_weight(beta.order(), params) * pairing(a[comp], beta, params);
  }
  return total;
}

RationalMatrix gram_matrix(const std::vector<VectorPolyField>& fields, const OperatorParams& params) {
  const std::size_t n = fields.size();
  RationalMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = dual_pairing(fields[i], fields[j], params);
  return g;
}

RationalMatrix weighted_dual(const SolenoidalBasis& basis) {
  const auto& g = basis.gram;
  if (g.rows() == 0) return g;
  if (g.rank() == g.rows()) return g.inverse();
  const auto null = g.nullspace();
  std::ostringstream msg;
  msg << "singular Gram matrix at level " << basis.level << "; dependent fields:";
  for (std::size_t j = 0; j < null.front().size(); ++j)
    if (null.front()[j] != 0) msg << ' ' << j;
  throw ValidationError(msg.str());
}

Polynomial weighted_divergence(const VectorPolyField& v) {
  return divergence(v) - dot_position(v) * make_rational(1, 2);
}

bool linearly_independent(const std::vector<VectorPolyField>& fields) {
  if (fields.empty()) return true;
  return coefficient_matrix(fields).rank() == fields.size();
}

}  // namespace hermflow
