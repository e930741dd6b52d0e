#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "hermflow/expansion.hpp"

namespace hermflow {

using Point3 = std::array<double, 3>;

struct NodalGrid {
  double R = 2;       // ball radius; nodes cover [-R, R]^3
  double cell = 0.05;
};

struct NodalCloud {
  std::vector<Point3> points;
  /// Zero-set points in the shell R < |y| <= R + 2 cell. Not part of the
  /// cloud; nodal_compare uses them as nearest-neighbour targets only.
  std::vector<Point3> halo;
  bool identically_zero = false;
};

/// Zero set of a scalar function on the node lattice -R + i cell: sign
/// changes along cell edges are located by linear interpolation, nodes where
/// the value is exactly zero are included once. Points outside |y| <= R
/// are dropped.
NodalCloud nodal_extract(const std::function<double(const Point3&)>& f, const NodalGrid& grid);

/// One cloud per component of sum c v*. A component whose polynomial is
/// identically zero gives an empty cloud with identically_zero set.
std::array<NodalCloud, 3> nodal_extract(const Expansion& e, const NodalGrid& grid);

struct HausdorffResult {
  bool defined = false;  // false if either cloud is empty
  double distance = 0;
};

/// Symmetric Hausdorff distance between the in-ball points of a and b (halo
/// points serve as targets), nearest neighbours by spatial binning.
HausdorffResult nodal_compare(const NodalCloud& a, const NodalCloud& b, double R);

/// CSV with header x,y,z.
std::string cloud_csv(const NodalCloud& c);

}  // namespace hermflow
