#include "hermflow/leray.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <thread>

#include "fft.hpp"
#include "hermflow/error.hpp"

namespace hermflow {

namespace {

using cplx = std::complex<double>;
using Spectrum = std::vector<cplx>;

std::array<Spectrum, 3> forward3(const GridVectorField& u, detail::Fft3& fft) {
  std::array<Spectrum, 3> out;
  for (int c = 0; c < 3; ++c) {
    std::copy(u.data[c].begin(), u.data[c].end(), fft.real().begin());
    fft.forward();
    auto s = fft.spectrum();
    out[c].assign(s.begin(), s.end());
  }
  return out;
}

std::vector<double> backward1(const Spectrum& s, detail::Fft3& fft) {
  std::copy(s.begin(), s.end(), fft.spectrum().begin());
  fft.backward();
  auto r = fft.real();
  const double scale = 1.0 / static_cast<double>(r.size());
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i] * scale;
  return out;
}

// Wavevector of a half-spectrum slot with Nyquist components zeroed.
std::array<double, 3> effective_xi(const GridSpec& spec, int a, int b, int c) {
  const int nyq = spec.n / 2;
  auto comp = [&](int k) { return std::abs(spec.wavenumber(k)) == nyq ? 0.0 : spec.xi(k); };
  return {comp(a), comp(b), comp(c)};
}

template <typename F>
void for_each_mode(const GridSpec& spec, F&& f) {
  const int n = spec.n;
  const int nh = n / 2 + 1;
  std::size_t idx = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < nh; ++c, ++idx) f(idx, a, b, c);
}

void project_mode(const std::array<double, 3>& xi, std::array<cplx, 3>& v) {
  const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  if (k2 == 0) return;
  const cplx dot = (xi[0] * v[0] + xi[1] * v[1] + xi[2] * v[2]) / k2;
  for (int d = 0; d < 3; ++d) v[d] -= xi[d] * dot;
}

bool outside_two_thirds(const GridSpec& spec, int a, int b, int c) {
  const double cut = spec.n / 3.0;
  return std::abs(spec.wavenumber(a)) > cut || std::abs(spec.wavenumber(b)) > cut ||
         std::abs(spec.wavenumber(c)) > cut;
}

}  // namespace

GridVectorField project(const GridVectorField& u) {
  detail::Fft3 fft(u.spec.n);
  auto s = forward3(u, fft);
  for_each_mode(u.spec, [&](std::size_t i, int a, int b, int c) {
    std::array<cplx, 3> v{s[0][i], s[1][i], s[2][i]};
    project_mode(effective_xi(u.spec, a, b, c), v);
    for (int d = 0; d < 3; ++d) s[d][i] = v[d];
  });
  GridVectorField out(u.spec);
  for (int d = 0; d < 3; ++d) out.data[d] = backward1(s[d], fft);
  return out;
}

std::vector<double> spectral_divergence(const GridVectorField& u) {
  detail::Fft3 fft(u.spec.n);
  auto s = forward3(u, fft);
  Spectrum div(s[0].size());
  for_each_mode(u.spec, [&](std::size_t i, int a, int b, int c) {
    const auto xi = effective_xi(u.spec, a, b, c);
    div[i] = cplx(0, 1) * (xi[0] * s[0][i] + xi[1] * s[1][i] + xi[2] * s[2][i]);
  });
  return backward1(div, fft);
}

double relative_divergence(const GridVectorField& u) {
  const double un = u.norm();
  if (un == 0) return 0;
  const auto div = spectral_divergence(u);
  double s = 0;
  for (double v : div) s += v * v;
  return std::sqrt(s * u.spec.cell_volume()) / un;
}

GridVectorField convection(const GridVectorField& u) {
  const auto& spec = u.spec;
  detail::Fft3 fft(spec.n);
  auto s = forward3(u, fft);
  if (spec.dealias)
    for_each_mode(spec, [&](std::size_t i, int a, int b, int c) {
      if (outside_two_thirds(spec, a, b, c))
        for (auto& comp : s) comp[i] = 0;
    });
  std::array<std::vector<double>, 3> vel;
  for (int d = 0; d < 3; ++d) vel[d] = backward1(s[d], fft);

  GridVectorField out(spec);
  Spectrum deriv(s[0].size());
  for (int i = 0; i < 3; ++i) {
    auto& acc = out.data[i];
    for (int j = 0; j < 3; ++j) {
      for_each_mode(spec, [&](std::size_t m, int a, int b, int c) {
        deriv[m] = cplx(0, effective_xi(spec, a, b, c)[static_cast<std::size_t>(j)]) * s[i][m];
      });
      const auto dj = backward1(deriv, fft);
      for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += vel[j][p] * dj[p];
    }
  }
  if (spec.dealias) {
    auto ps = forward3(out, fft);
    for_each_mode(spec, [&](std::size_t i, int a, int b, int c) {
      if (outside_two_thirds(spec, a, b, c))
        for (auto& comp : ps) comp[i] = 0;
    });
    for (int d = 0; d < 3; ++d) out.data[d] = backward1(ps[d], fft);
  }
  return out;
}

GridVectorField convection(const VectorPolyField& v, const GridSpec& spec) {
  return sample_periodic(advect(v, v), spec);
}

LeveledBasis LeveledBasis::from_levels(std::vector<SolenoidalBasis> levels) {
  if (levels.empty()) throw ValidationError("basis needs at least one level");
  LeveledBasis b;
  b.params = levels.front().params;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k].level != static_cast<int>(k)) throw ValidationError("basis levels must be 0..K in order");
    if (!(levels[k].params == b.params)) throw ValidationError("basis levels disagree on (m, N)");
    b.gram_inverse.push_back(weighted_dual(levels[k]));
  }
  b.levels = std::move(levels);
  return b;
}

std::size_t LeveledBasis::size() const {
  std::size_t s = 0;
  for (const auto& l : levels) s += l.fields.size();
  return s;
}

std::size_t LeveledBasis::offset(int level) const {
  std::size_t s = 0;
  for (int k = 0; k < level; ++k) s += levels[static_cast<std::size_t>(k)].fields.size();
  return s;
}

std::pair<int, std::size_t> LeveledBasis::locate(std::size_t global) const {
  std::size_t g = global;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (g < levels[k].fields.size()) return {static_cast<int>(k), g};
    g -= levels[k].fields.size();
  }
  throw ValidationError("basis index out of range");
}

const VectorPolyField& LeveledBasis::field(std::size_t global) const {
  const auto [k, i] = locate(global);
  return levels[static_cast<std::size_t>(k)].fields[i];
}

LeveledBasis standard_basis(int m, int K) {
  if (K < 0) throw ValidationError("truncation level must be >= 0");
  const auto params = OperatorParams::make(m, 3);
  std::vector<SolenoidalBasis> levels;
  for (int k = 0; k <= K; ++k) {
    if (k > 0 && has_fixture(m, k))
      levels.push_back(fixture_basis(m, k));
    else
      levels.push_back(reduced_kernel(k, params));
  }
  return LeveledBasis::from_levels(std::move(levels));
}

InteractionTensor InteractionTensor::zero(const LeveledBasis& basis) {
  InteractionTensor t;
  t.size = basis.size();
  t.values.assign(t.size * t.size * t.size, 0.0);
  t.errors.assign(t.values.size(), 0.0);
  for (std::size_t i = 0; i < t.size; ++i) t.levels.push_back(basis.level_of(i));
  return t;
}

namespace {

// Half-spectrum slots where the duals are not negligible, with their
// Parseval multiplicity (1 on the c = 0 and c = n/2 planes, 2 elsewhere).
struct ModeSet {
  std::vector<std::size_t> slot;
  std::vector<double> mult;
  std::vector<std::array<double, 3>> xi;
};

ModeSet dual_modes(const GridSpec& spec, int m) {
  const double xi_cut = std::pow(50.0, 1.0 / (2 * m)) + 1.0;
  ModeSet ms;
  for_each_mode(spec, [&](std::size_t i, int a, int b, int c) {
    const double x = spec.xi(a), y = spec.xi(b), z = spec.xi(c);
    if (x * x + y * y + z * z > xi_cut * xi_cut) return;
    ms.slot.push_back(i);
    ms.mult.push_back((c == 0 || c == spec.n / 2) ? 1.0 : 2.0);
    ms.xi.push_back(effective_xi(spec, a, b, c));
  });
  return ms;
}

// Everything a level needs for coefficient extraction. The periodic
// projection of a polynomial product is exact only up to gradients of
// functions harmonic inside the box, whose Taylor terms are harmonic
// gradients level by level. Pairing against those as well and keeping only
// the basis part of the least-squares solution removes them. Level 0 is not
// projected: the constant part of a field is left as it is.
struct LevelDuals {
  std::size_t offset = 0;
  std::size_t count = 0;
  bool project = true;
  std::vector<VectorPolyField> fields;  // basis fields, then harmonic gradients
  std::vector<double> solve;            // count x fields.size(), row-major
};

std::vector<LevelDuals> level_duals(const LeveledBasis& basis) {
  std::vector<LevelDuals> out;
  for (int k = 0; k <= basis.max_level(); ++k) {
    const auto& lvl = basis.levels[static_cast<std::size_t>(k)];
    LevelDuals d;
    d.offset = basis.offset(k);
    d.count = lvl.fields.size();
    d.project = k > 0;
    d.fields = lvl.fields;
    if (d.project)
      for (auto& g : harmonic_gradients(k, basis.params)) d.fields.push_back(std::move(g));
    const auto g = gram_matrix(d.fields, basis.params);
    if (g.rank() != g.rows())
      throw ValidationError("level " + std::to_string(k) +
                            " basis is not independent of the harmonic gradients; use reduced_kernel");
    const auto inv = g.inverse().to_doubles();
    d.solve.assign(inv.begin(), inv.begin() + static_cast<std::ptrdiff_t>(d.count * d.fields.size()));
    out.push_back(std::move(d));
  }
  return out;
}

std::size_t resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// d(a, g, .) for the requested pairs.
std::vector<double> tensor_values(const LeveledBasis& basis, const std::vector<LevelDuals>& levels,
                                  const GridSpec& spec,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& pairs, unsigned workers) {
  const std::size_t nb = basis.size();
  detail::Fft3 fft(spec.n);
  const auto modes = dual_modes(spec, basis.params.m);
  const std::size_t nm = modes.slot.size();

  using DualSpectrum = std::array<std::vector<cplx>, 3>;
  std::vector<std::vector<DualSpectrum>> duals(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k)
    for (const auto& f : levels[k].fields) {
      const auto s = forward3(sample_dual(f, spec, basis.params), fft);
      DualSpectrum ds;
      for (int c = 0; c < 3; ++c) {
        ds[c].resize(nm);
        for (std::size_t i = 0; i < nm; ++i) ds[c][i] = s[c][modes.slot[i]];
      }
      duals[k].push_back(std::move(ds));
    }
  // Parseval: h^3 sum f g = (h^3 / n^3) sum_k f^_k conj(g^_k)
  const double scale = spec.cell_volume() / static_cast<double>(spec.points());

  std::vector<double> values(nb * nb * nb, 0.0);
  // Each pair writes its own slice of values, so the result does not depend
  // on how pairs are spread over workers.
  auto work = [&](std::atomic<std::size_t>& next, detail::Fft3& local) {
    std::vector<std::array<cplx, 3>> raw(nm), pw(nm);
    std::vector<double> pairing;
    for (std::size_t p = next++; p < pairs.size(); p = next++) {
      const auto [a, g] = pairs[p];
      const VectorPolyField w = advect(basis.field(a), basis.field(g));
      if (w.is_zero()) continue;
      const auto s = forward3(sample_periodic(w, spec), local);
      for (std::size_t i = 0; i < nm; ++i) {
        raw[i] = {s[0][modes.slot[i]], s[1][modes.slot[i]], s[2][modes.slot[i]]};
        pw[i] = raw[i];
        project_mode(modes.xi[i], pw[i]);
      }
      for (std::size_t k = 0; k < levels.size(); ++k) {
        const auto& lv = levels[k];
        const auto& field = lv.project ? pw : raw;
        pairing.assign(lv.fields.size(), 0.0);
        for (std::size_t j = 0; j < lv.fields.size(); ++j) {
          double acc = 0;
          for (std::size_t i = 0; i < nm; ++i) {
            cplx t = 0;
            for (int c = 0; c < 3; ++c) t += field[i][c] * std::conj(duals[k][j][c][i]);
            acc += modes.mult[i] * t.real();
          }
          pairing[j] = acc * scale;
        }
        for (std::size_t r = 0; r < lv.count; ++r) {
          double v = 0;
          for (std::size_t j = 0; j < lv.fields.size(); ++j) v += lv.solve[r * lv.fields.size() + j] * pairing[j];
          values[(a * nb + g) * nb + lv.offset + r] = -v;
        }
      }
    }
  };
  std::atomic<std::size_t> next{0};
  const std::size_t extra = std::min(resolve_workers(workers), std::max<std::size_t>(pairs.size(), 1)) - 1;
  if (extra == 0) {
    work(next, fft);
  } else {
    std::vector<std::exception_ptr> errors(extra + 1);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < extra; ++w)
        pool.emplace_back([&, w] {
          try {
            detail::Fft3 local(spec.n);
            work(next, local);
          } catch (...) {
            errors[w] = std::current_exception();
            next = pairs.size();
          }
        });
      try {
        work(next, fft);
      } catch (...) {
        errors[extra] = std::current_exception();
        next = pairs.size();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return values;
}

}  // namespace

InteractionTensor interaction_tensor(const LeveledBasis& basis, const GridSpec& spec, const TensorOptions& opt,
                                     const std::vector<std::pair<std::size_t, std::size_t>>* pairs) {
  if (basis.params.N != 3) throw ValidationError("interaction tensor needs N = 3");
  InteractionTensor t = InteractionTensor::zero(basis);
  t.spec = spec;
  const std::size_t nb = basis.size();
  std::vector<std::pair<std::size_t, std::size_t>> all;
  if (pairs == nullptr) {
    for (std::size_t a = 0; a < nb; ++a)
      for (std::size_t g = 0; g < nb; ++g) all.emplace_back(a, g);
    pairs = &all;
  }
  for (const auto& [a, g] : *pairs)
    if (a >= nb || g >= nb) throw ValidationError("tensor pair index out of range");

  const auto levels = level_duals(basis);
  t.values = tensor_values(basis, levels, spec, *pairs, opt.workers);
  auto accumulate_error = [&](const GridSpec& other) {
    const auto d = tensor_values(basis, levels, other, *pairs, opt.workers);
    for (std::size_t i = 0; i < d.size(); ++i) t.errors[i] += std::abs(d[i] - t.values[i]);
  };
  if (opt.refine_n) {
    int n2 = spec.n * 3 / 2;
    n2 += n2 % 2;
    accumulate_error(GridSpec::make(spec.L, n2, spec.dealias));
  }
  if (opt.double_L) accumulate_error(GridSpec::make(2 * spec.L, 2 * spec.n, spec.dealias));
  for (double e : t.errors) {
    t.max_error = std::max(t.max_error, e);
    if (e > opt.flag_tolerance) ++t.flagged;
  }
  return t;
}

Json to_json(const InteractionTensor& t) {
  Json entries = Json::array();
  for (std::size_t a = 0; a < t.size; ++a)
    for (std::size_t g = 0; g < t.size; ++g)
      for (std::size_t b = 0; b < t.size; ++b) {
        const auto i = t.index(a, g, b);
        if (t.values[i] == 0 && t.errors[i] == 0) continue;
        entries.push_back(Json{{"alpha", a}, {"gamma", g}, {"beta", b}, {"value", t.values[i]}, {"error", t.errors[i]}});
      }
  return Json{{"schema", "hermflow/1"},
              {"kind", "interaction_tensor"},
              {"size", t.size},
              {"levels", t.levels},
              {"L", t.spec.L},
              {"n", t.spec.n},
              {"max_error", t.max_error},
              {"flagged", t.flagged},
              {"entries", std::move(entries)}};
}

}  // namespace hermflow
