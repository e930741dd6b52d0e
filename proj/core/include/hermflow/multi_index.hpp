#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "hermflow/rational.hpp"

namespace hermflow {

/// Multi-index beta = (beta_1, ..., beta_N) with non-negative entries.
///
/// Ordering is graded lexicographic: first by total order |beta|, then
/// lexicographically with the first entry most significant. Under this order
/// y1 > y2 > y3 among linear monomials, and y^beta is the leading monomial of
/// every polynomial whose top-degree part contains it with the largest index.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);

  static MultiIndex zero(int dim);
  static MultiIndex unit(int dim, int axis);

  int dim() const { return static_cast<int>(entries_.size()); }
  int order() const { return order_; }
  int operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

  MultiIndex operator+(const MultiIndex& other) const;

  /// True when every entry of *this is <= the matching entry of `other`.
  bool divides(const MultiIndex& other) const;
  bool all_even() const;

  /// beta! = prod beta_i!
  Integer factorial() const;

  std::string to_string() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.entries_ == b.entries_;
  }
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::vector<int> entries_;
  int order_ = 0;
};

/// All multi-indices of the given order in `dim` variables, listed in
/// decreasing graded-lex order (so (1,0,0) precedes (0,1,0)). This is the
/// canonical "level order" used to index eigenfunctions and basis vectors.
std::vector<MultiIndex> multi_indices_of_order(int order, int dim);

/// C(order + dim - 1, dim - 1).
Integer level_dimension(int order, int dim);

}  // namespace hermflow
