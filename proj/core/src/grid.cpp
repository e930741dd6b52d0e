#include "hermflow/grid.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numbers>
#include <optional>

#include "fft.hpp"
#include "hermflow/error.hpp"
#include "hermflow/solenoidal.hpp"

namespace hermflow {

namespace detail {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft3::Fft3(int n)
    : n_(n),
      real_size_(static_cast<std::size_t>(n) * n * n),
      spec_size_(static_cast<std::size_t>(n) * n * (n / 2 + 1)) {
  std::lock_guard lock(planner_mutex());
  real_ = fftw_alloc_real(real_size_);
  spec_ = fftw_alloc_complex(spec_size_);
  fwd_ = fftw_plan_dft_r2c_3d(n, n, n, real_, spec_, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_c2r_3d(n, n, n, spec_, real_, FFTW_ESTIMATE);
}

Fft3::~Fft3() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(fwd_);
  fftw_destroy_plan(bwd_);
  fftw_free(real_);
  fftw_free(spec_);
}

void Fft3::forward() { fftw_execute(fwd_); }
void Fft3::backward() { fftw_execute(bwd_); }

}  // namespace detail

GridSpec GridSpec::make(double L, int n, bool dealias) {
  if (!(L > 0) || !std::isfinite(L)) throw ValidationError("grid half-width L must be positive");
  if (n < 16 || n % 2 != 0) throw ValidationError("grid size n must be even and >= 16");
  return GridSpec{L, n, dealias};
}

double GridSpec::xi(int k) const { return std::numbers::pi * wavenumber(k) / L; }

GridVectorField::GridVectorField(const GridSpec& s) : spec(s) {
  for (auto& d : data) d.assign(s.points(), 0.0);
}

std::array<double, 3> GridVectorField::means() const {
  std::array<double, 3> out{};
  for (int c = 0; c < 3; ++c) {
    double s = 0;
    for (double v : data[c]) s += v;
    out[c] = s / static_cast<double>(spec.points());
  }
  return out;
}

double GridVectorField::norm() const { return std::sqrt(grid_inner(*this, *this)); }

bool GridVectorField::finite() const {
  for (const auto& d : data)
    for (double v : d)
      if (!std::isfinite(v)) return false;
  return true;
}

GridVectorField& GridVectorField::operator+=(const GridVectorField& o) {
  if (!(spec == o.spec)) throw ValidationError("grid specs differ");
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < data[c].size(); ++i) data[c][i] += o.data[c][i];
  return *this;
}

GridVectorField& GridVectorField::operator-=(const GridVectorField& o) {
  if (!(spec == o.spec)) throw ValidationError("grid specs differ");
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < data[c].size(); ++i) data[c][i] -= o.data[c][i];
  return *this;
}

GridVectorField& GridVectorField::operator*=(double s) {
  for (auto& d : data)
    for (double& v : d) v *= s;
  return *this;
}

double grid_inner(const GridVectorField& u, const GridVectorField& v) {
  if (!(u.spec == v.spec)) throw ValidationError("grid specs differ");
  double s = 0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < u.data[c].size(); ++i) s += u.data[c][i] * v.data[c][i];
  return s * u.spec.cell_volume();
}

namespace {

// Four-point Lagrange interpolation on a uniform table starting at r = 0.
class RadialInterpolant {
 public:
  explicit RadialInterpolant(const KernelTable& t) : t_(t) {
    if (t.radii.size() < 4 || t.radii.front() != 0.0)
      throw ValidationError("kernel table must start at r = 0 with at least 4 points");
    h_ = t.radii[1] - t.radii[0];
    for (std::size_t i = 2; i < t.radii.size(); ++i)
      if (std::abs(t.radii[i] - t.radii[i - 1] - h_) > 1e-9 * h_)
        throw ValidationError("kernel table must be uniform for interpolation");
  }
  double max_radius() const { return t_.radii.back(); }
  double operator()(double r) const {
    const auto last = t_.radii.size() - 1;
    auto i = static_cast<std::size_t>(r / h_);
    if (i < 1) i = 1;
    if (i + 2 > last) i = last - 2;
    const double x = r / h_ - static_cast<double>(i);  // position relative to node i
    const double* f = &t_.values[i - 1];
    // nodes at -1, 0, 1, 2
    return f[0] * (-x * (x - 1) * (x - 2) / 6) + f[1] * ((x + 1) * (x - 1) * (x - 2) / 2) +
           f[2] * (-(x + 1) * x * (x - 2) / 2) + f[3] * ((x + 1) * x * (x - 1) / 6);
  }

 private:
  const KernelTable& t_;
  double h_ = 0;
};

}  // namespace

GridVectorField sample_periodic(const VectorPolyField& v, const GridSpec& spec) {
  GridVectorField out = sample(v, spec);
  const std::array<NumericPolynomial, 3> comps{NumericPolynomial(v[0]), NumericPolynomial(v[1]),
                                               NumericPolynomial(v[2])};
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.n; ++j)
      for (int k = 0; k < spec.n; ++k) {
        const std::array<int, 3> idx{i, j, k};
        int seams = 0;
        for (int d : idx) seams += d == 0;
        if (seams == 0) continue;
        std::array<double, 3> acc{};
        int images = 0;
        for (int mask = 0; mask < 8; ++mask) {
          std::array<double, 3> y{};
          bool skip = false;
          for (int d = 0; d < 3; ++d) {
            const bool flip = (mask >> d) & 1;
            if (flip && idx[d] != 0) skip = true;
            y[d] = flip ? spec.L : spec.coordinate(idx[d]);
          }
          if (skip) continue;
          ++images;
          for (int c = 0; c < 3; ++c) acc[c] += comps[c](y);
        }
        const auto p = spec.index(i, j, k);
        for (int c = 0; c < 3; ++c) out.data[c][p] = acc[c] / images;
      }
  return out;
}

KernelTable kernel_table_for(const GridSpec& spec, int m, double step) {
  const double r_max = std::sqrt(3.0) * spec.L + 4 * step;
  const auto count = static_cast<std::size_t>(std::ceil(r_max / step)) + 4;
  KernelTable t;
  t.m = m;
  t.N = 3;
  t.radii = radial_grid(0.0, step, count);
  t.values.reserve(count);
  for (double r : t.radii) t.values.push_back(kernel_value(r, m));
  t.mass_error = std::nan("");
  return t;
}

GridVectorField sample(const VectorPolyField& v, const GridSpec& spec, Weight weight, int m,
                       const KernelTable* table) {
  if (v.dim() != 3) throw ValidationError("grid sampling needs a 3-component field in 3 variables");
  std::function<double(double)> kernel;
  std::optional<RadialInterpolant> interp;
  if (weight == Weight::Kernel) {
    if (m == 1) {
      kernel = gaussian_kernel;
    } else {
      if (table == nullptr || table->m != m)
        throw ValidationError("kernel weight for m >= 2 needs a kernel table of the same m");
      interp.emplace(*table);
      if (interp->max_radius() < std::sqrt(3.0) * spec.L)
        throw ValidationError("kernel table does not cover the grid diagonal");
      kernel = [&](double r) { return (*interp)(r); };
    }
  }
  GridVectorField out(spec);
  std::array<NumericPolynomial, 3> comps{NumericPolynomial(v[0]), NumericPolynomial(v[1]),
                                         NumericPolynomial(v[2])};
  std::array<double, 3> y{};
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.n; ++j)
      for (int k = 0; k < spec.n; ++k) {
        y = {spec.coordinate(i), spec.coordinate(j), spec.coordinate(k)};
        const double w = kernel ? kernel(std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2])) : 1.0;
        const auto idx = spec.index(i, j, k);
        for (int c = 0; c < 3; ++c)
          out.data[c][idx] = comps[c].is_zero() ? 0.0 : w * comps[c](y);
      }
  return out;
}

std::vector<double> fourier_synthesis(
    const GridSpec& spec, const std::function<std::complex<double>(double, double, double)>& symbol) {
  const int n = spec.n;
  const int nh = n / 2 + 1;
  detail::Fft3 fft(n);
  auto s = fft.spectrum();
  const double norm = 1.0 / (8 * spec.L * spec.L * spec.L);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < nh; ++c) {
        // e^{i xi y_j} = (-1)^k e^{2 pi i j k / n} since y_j = -L + j h
        const int parity = (spec.wavenumber(a) + spec.wavenumber(b) + spec.wavenumber(c)) & 1;
        const double sign = parity ? -1.0 : 1.0;
        s[(static_cast<std::size_t>(a) * n + b) * nh + c] =
            sign * norm * symbol(spec.xi(a), spec.xi(b), spec.xi(c));
      }
  fft.backward();
  auto r = fft.real();
  return {r.begin(), r.end()};
}

GridVectorField sample_dual(const VectorPolyField& v, const GridSpec& spec, const OperatorParams& params) {
  if (params.m == 1) return sample(v, spec, Weight::Kernel, 1);
  if (v.dim() != 3) throw ValidationError("grid sampling needs a 3-component field in 3 variables");
  GridVectorField out(spec);
  const int m2 = 2 * params.m;
  for (int comp = 0; comp < 3; ++comp) {
    if (v[comp].is_zero()) continue;
    std::vector<std::pair<std::vector<int>, double>> terms;
    for (const auto& [beta, coef] : hermite_coordinates(v[comp], params))
      terms.emplace_back(beta.entries(), to_double(coef * dual_weight(beta.order(), params)));
    out.data[comp] = fourier_synthesis(spec, [&](double x1, double x2, double x3) {
      const std::array<std::complex<double>, 3> mi{std::complex<double>(0, -x1),
                                                   std::complex<double>(0, -x2),
                                                   std::complex<double>(0, -x3)};
      std::complex<double> poly = 0;
      for (const auto& [pw, coef] : terms) {
        std::complex<double> t = coef;
        for (int d = 0; d < 3; ++d)
          for (int e = 0; e < pw[d]; ++e) t *= mi[d];
        poly += t;
      }
      const double r2 = x1 * x1 + x2 * x2 + x3 * x3;
      return poly * std::exp(-std::pow(r2, m2 / 2.0));
    });
  }
  return out;
}

void write_grid(const GridVectorField& u, const std::string& stem) {
  static_assert(std::endian::native == std::endian::little, "grid dump assumes little-endian");
  std::ofstream bin(stem + ".bin", std::ios::binary);
  if (!bin) throw Error("cannot open " + stem + ".bin for writing");
  for (const auto& d : u.data)
    bin.write(reinterpret_cast<const char*>(d.data()), static_cast<std::streamsize>(d.size() * sizeof(double)));
  Json side{{"schema", "hermflow/1"},
            {"kind", "grid_vector_field"},
            {"L", u.spec.L},
            {"n", u.spec.n},
            {"dealias", u.spec.dealias},
            {"components", 3},
            {"dtype", "float64-le"},
            {"layout", "component-major, row-major (y1 slowest)"}};
  std::ofstream js(stem + ".json");
  if (!js) throw Error("cannot open " + stem + ".json for writing");
  js << side.dump(2) << '\n';
}

GridVectorField read_grid(const std::string& stem) {
  std::ifstream js(stem + ".json");
  if (!js) throw ValidationError("cannot open " + stem + ".json");
  const Json side = Json::parse(js);
  GridVectorField u(GridSpec::make(side.at("L").get<double>(), side.at("n").get<int>(),
                                   side.at("dealias").get<bool>()));
  std::ifstream bin(stem + ".bin", std::ios::binary);
  if (!bin) throw ValidationError("cannot open " + stem + ".bin");
  for (auto& d : u.data)
    if (!bin.read(reinterpret_cast<char*>(d.data()), static_cast<std::streamsize>(d.size() * sizeof(double))))
      throw ValidationError("grid dump is truncated");
  return u;
}

}  // namespace hermflow
