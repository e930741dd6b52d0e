#pragma once

#include <array>
#include <functional>
#include <string>

#include "hermflow/rational.hpp"
#include "hermflow/serialize.hpp"

namespace hermflow {

/// Scalar field u(x, t) near (0, 0), with t <= 0.
using Sampler = std::function<double(const std::array<double, 3>&, double)>;

struct ClassifyOptions {
  int max_order = 4;
  double h = 0.1;         // spatial stencil spacing
  double ht = 0.01;       // temporal stencil spacing (one-sided, t <= 0)
  double threshold = 1e-7;  // on coefficients normalized by the largest one
};

enum class ZeroStatus { Ok, NotAZero, SpatialOrderExceedsBound, TemporalOrderExceedsBound, BothExceedBound };

std::string to_string(ZeroStatus s);

struct ZeroType {
  ZeroStatus status = ZeroStatus::Ok;
  int M = 0;  // spatial vanishing order, 0 if above the bound
  int K = 0;  // temporal vanishing order, 0 if above the bound
  Rational gamma;  // K / M when both are known
  std::string rescaled_variable;  // "x/(-t)^{gamma}"
};

/// Vanishing orders from least-squares Taylor fits: total degree
/// max_order + 2 on the spatial stencil h {-2..2}^3 at t = 0, and on the
/// temporal stencil t = -j ht at x = 0. The order is the lowest degree whose
/// scaled coefficients exceed the threshold.
ZeroType classify_zero(const Sampler& u, const ClassifyOptions& opt = {});

Json to_json(const ZeroType& z);

}  // namespace hermflow
