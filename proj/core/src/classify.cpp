#include "hermflow/classify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hermflow/error.hpp"
#include "hermflow/multi_index.hpp"

namespace hermflow {

std::string to_string(ZeroStatus s) {
  switch (s) {
    case ZeroStatus::Ok: return "ok";
    case ZeroStatus::NotAZero: return "not-a-zero";
    case ZeroStatus::SpatialOrderExceedsBound: return "spatial-order-exceeds-bound";
    case ZeroStatus::TemporalOrderExceedsBound: return "temporal-order-exceeds-bound";
    case ZeroStatus::BothExceedBound: return "order-exceeds-bound";
  }
  return "?";
}

namespace {

// Lowest order whose coefficients, normalized by the largest one of the fit,
// exceed the threshold; -1 if the fit is round-off relative to `scale`.
int lowest_order(const std::vector<int>& orders, const Eigen::VectorXd& coef, int bound, double threshold,
                 double scale) {
  const double top = coef.cwiseAbs().maxCoeff();
  if (top <= 1e-10 * scale) return -1;
  int best = bound + 1;
  for (Eigen::Index i = 0; i < coef.size(); ++i)
    if (std::abs(coef(i)) / top > threshold) best = std::min(best, orders[static_cast<std::size_t>(i)]);
  return best;
}

}  // namespace

ZeroType classify_zero(const Sampler& u, const ClassifyOptions& opt) {
  if (opt.max_order < 1) throw ValidationError("max_order must be >= 1");
  if (!(opt.h > 0) || !(opt.ht > 0)) throw ValidationError("stencil spacings must be positive");
  const int degree = opt.max_order + 2;

  // Spatial fit in scaled coordinates s = x / h, so coefficients are a_beta h^|beta|.
  std::vector<MultiIndex> monos;
  std::vector<int> orders;
  for (int d = 0; d <= degree; ++d)
    for (const auto& b : multi_indices_of_order(d, 3)) {
      monos.push_back(b);
      orders.push_back(d);
    }
  const int P = 2;
  std::vector<std::array<int, 3>> nodes;
  for (int a = -P; a <= P; ++a)
    for (int b = -P; b <= P; ++b)
      for (int c = -P; c <= P; ++c) nodes.push_back({a, b, c});
  // Enough nodes for the basis: (2P+1)^3 = 125 >= C(degree + 3, 3) up to degree 6;
  // extend the stencil for larger degrees.
  int reach = P;
  while (nodes.size() < monos.size() * 3 / 2) {
    ++reach;
    nodes.clear();
    for (int a = -reach; a <= reach; ++a)
      for (int b = -reach; b <= reach; ++b)
        for (int c = -reach; c <= reach; ++c) nodes.push_back({a, b, c});
  }
  Eigen::MatrixXd X(static_cast<Eigen::Index>(nodes.size()), static_cast<Eigen::Index>(monos.size()));
  Eigen::VectorXd y(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    for (std::size_t j = 0; j < monos.size(); ++j) {
      double v = 1;
      for (int d = 0; d < 3; ++d) v *= std::pow(static_cast<double>(nodes[r][d]), monos[j][static_cast<std::size_t>(d)]);
      X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = v;
    }
    y(static_cast<Eigen::Index>(r)) =
        u({nodes[r][0] * opt.h, nodes[r][1] * opt.h, nodes[r][2] * opt.h}, 0.0);
  }
  const Eigen::VectorXd cs = X.colPivHouseholderQr().solve(y);

  // Temporal fit in s = -t / ht at x = 0.
  const int tn = degree + 4;
  Eigen::MatrixXd T(tn, degree + 1);
  Eigen::VectorXd ty(tn);
  std::vector<int> torders;
  for (int d = 0; d <= degree; ++d) torders.push_back(d);
  for (int r = 0; r < tn; ++r) {
    for (int d = 0; d <= degree; ++d) T(r, d) = std::pow(static_cast<double>(r), d);
    ty(r) = u({0, 0, 0}, -r * opt.ht);
  }
  const Eigen::VectorXd ct = T.colPivHouseholderQr().solve(ty);

  ZeroType z;
  // u(0, 0) itself must vanish relative to the field's scale near the point.
  const double scale = std::max(cs.cwiseAbs().maxCoeff(), ct.cwiseAbs().maxCoeff());
  if (scale > 0 && std::abs(cs(0)) / scale > opt.threshold) {
    z.status = ZeroStatus::NotAZero;
    return z;
  }
  int M = lowest_order(orders, cs, opt.max_order, opt.threshold, scale);
  int K = lowest_order(torders, ct, opt.max_order, opt.threshold, scale);
  const bool m_over = M < 0 || M > opt.max_order;
  const bool k_over = K < 0 || K > opt.max_order;
  z.M = m_over ? 0 : M;
  z.K = k_over ? 0 : K;
  if (m_over && k_over)
    z.status = ZeroStatus::BothExceedBound;
  else if (m_over)
    z.status = ZeroStatus::SpatialOrderExceedsBound;
  else if (k_over)
    z.status = ZeroStatus::TemporalOrderExceedsBound;
  if (z.status == ZeroStatus::Ok) {
    z.gamma = make_rational(z.K, z.M);
    z.rescaled_variable = "x/(-t)^{" + to_string(z.gamma) + "}";
  }
  return z;
}

Json to_json(const ZeroType& z) {
  Json j{{"schema", "hermflow/1"}, {"kind", "zero_type"}, {"status", to_string(z.status)}};
  j["M"] = z.M > 0 ? Json(z.M) : Json(nullptr);
  j["K"] = z.K > 0 ? Json(z.K) : Json(nullptr);
  if (z.status == ZeroStatus::Ok) {
    j["gamma"] = to_json(z.gamma);
    j["rescaled_variable"] = z.rescaled_variable;
  }
  return j;
}

}  // namespace hermflow
