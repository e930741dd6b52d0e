#include "hermflow/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "hermflow/error.hpp"

namespace hermflow {

namespace {
constexpr int kHalo = 2;
}  // namespace

NodalCloud nodal_extract(const std::function<double(const Point3&)>& f, const NodalGrid& grid) {
  if (!(grid.R > 0) || !(grid.cell > 0)) throw ValidationError("nodal grid needs R > 0 and cell > 0");
  // The lattice reaches kHalo cells past R so the halo shell is covered.
  const int n = static_cast<int>(std::llround(2 * grid.R / grid.cell)) + 1 + 2 * kHalo;
  const double lo = -grid.R - kHalo * grid.cell;
  auto coord = [&](int i) { return lo + i * grid.cell; };
  auto at = [&](int i, int j, int k) {
    return (static_cast<std::size_t>(i) * n + j) * static_cast<std::size_t>(n) + k;
  };
  std::vector<double> v(static_cast<std::size_t>(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) v[at(i, j, k)] = f({coord(i), coord(j), coord(k)});

  NodalCloud out;
  const double r2 = grid.R * grid.R * (1 + 1e-12);
  const double outer = grid.R + kHalo * grid.cell;
  auto keep = [&](const Point3& p) {
    const double q = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    if (q <= r2)
      out.points.push_back(p);
    else if (q <= outer * outer)
      out.halo.push_back(p);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double a = v[at(i, j, k)];
        const Point3 p{coord(i), coord(j), coord(k)};
        if (a == 0) {
          keep(p);
          continue;
        }
        const int idx[3] = {i, j, k};
        for (int d = 0; d < 3; ++d) {
          if (idx[d] + 1 >= n) continue;
          const double b = v[at(i + (d == 0), j + (d == 1), k + (d == 2))];
          if (b == 0 || (a > 0) == (b > 0)) continue;
          Point3 q = p;
          q[static_cast<std::size_t>(d)] += grid.cell * a / (a - b);
          keep(q);
        }
      }
  return out;
}

std::array<NodalCloud, 3> nodal_extract(const Expansion& e, const NodalGrid& grid) {
  const auto field = numeric_field(e);
  std::array<NodalCloud, 3> out;
  for (int c = 0; c < 3; ++c) {
    if (field[c].is_zero()) {
      out[c].identically_zero = true;
      continue;
    }
    out[c] = nodal_extract([&](const Point3& p) { return field[c](p); }, grid);
  }
  return out;
}

namespace {

class BinIndex {
 public:
  BinIndex(const std::vector<Point3>& pts, double size) : pts_(pts), size_(size) {
    for (std::size_t i = 0; i < pts.size(); ++i) bins_[key(cell_of(pts[i]))].push_back(i);
  }

  double nearest(const Point3& p) const {
    const auto c = cell_of(p);
    double best = std::numeric_limits<double>::infinity();
    for (int ring = 0;; ++ring) {
      // Everything outside ring r is at least r * size away.
      if (std::isfinite(best) && (ring - 1) * size_ > std::sqrt(best)) break;
      if (ring > max_ring_) break;
      for (int a = -ring; a <= ring; ++a)
        for (int b = -ring; b <= ring; ++b)
          for (int d = -ring; d <= ring; ++d) {
            if (std::max({std::abs(a), std::abs(b), std::abs(d)}) != ring) continue;
            auto it = bins_.find(key({c[0] + a, c[1] + b, c[2] + d}));
            if (it == bins_.end()) continue;
            for (std::size_t i : it->second) {
              const auto& q = pts_[i];
              const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
              best = std::min(best, dx * dx + dy * dy + dz * dz);
            }
          }
    }
    return std::sqrt(best);
  }

  void set_max_ring(int r) { max_ring_ = r; }

 private:
  std::array<long, 3> cell_of(const Point3& p) const {
    return {static_cast<long>(std::floor(p[0] / size_)), static_cast<long>(std::floor(p[1] / size_)),
            static_cast<long>(std::floor(p[2] / size_))};
  }
  static long long key(const std::array<long, 3>& c) {
    return ((static_cast<long long>(c[0]) + (1 << 20)) << 42) ^ ((static_cast<long long>(c[1]) + (1 << 20)) << 21) ^
           (static_cast<long long>(c[2]) + (1 << 20));
  }

  const std::vector<Point3>& pts_;
  double size_;
  int max_ring_ = 1 << 20;
  std::unordered_map<long long, std::vector<std::size_t>> bins_;
};

double directed(const std::vector<Point3>& from, const BinIndex& to) {
  double d = 0;
  for (const auto& p : from) d = std::max(d, to.nearest(p));
  return d;
}

}  // namespace

HausdorffResult nodal_compare(const NodalCloud& a, const NodalCloud& b, double R) {
  HausdorffResult res;
  if (a.points.empty() || b.points.empty()) return res;
  const double size = std::max(R / 32, 1e-6);
  // Targets include the halo: a zero set leaving the ball near the sphere
  // would otherwise look up to a cell further away than it is.
  auto targets = [](const NodalCloud& c) {
    auto t = c.points;
    t.insert(t.end(), c.halo.begin(), c.halo.end());
    return t;
  };
  const auto ta = targets(a), tb = targets(b);
  BinIndex ia(ta, size), ib(tb, size);
  const int rings = static_cast<int>(std::ceil(4 * R / size)) + 2;
  ia.set_max_ring(rings);
  ib.set_max_ring(rings);
  res.defined = true;
  res.distance = std::max(directed(a.points, ib), directed(b.points, ia));
  return res;
}

std::string cloud_csv(const NodalCloud& c) {
  std::ostringstream out;
  out << "x,y,z\n";
  for (const auto& p : c.points)
    out << format_double(p[0]) << ',' << format_double(p[1]) << ',' << format_double(p[2]) << '\n';
  return out.str();
}

}  // namespace hermflow
