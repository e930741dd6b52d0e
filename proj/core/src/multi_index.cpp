#include "hermflow/multi_index.hpp"

#include <numeric>
#include <sstream>
#include <utility>

#include "hermflow/error.hpp"

namespace hermflow {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < 0) throw ValidationError("multi-index entries must be non-negative");
  order_ = std::accumulate(entries_.begin(), entries_.end(), 0);
}

MultiIndex MultiIndex::zero(int dim) {
  if (dim < 1) throw ValidationError("multi-index dimension must be >= 1");
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0));
}

MultiIndex MultiIndex::unit(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw ValidationError("unit multi-index axis out of range");
  std::vector<int> e(static_cast<std::size_t>(dim), 0);
  e[static_cast<std::size_t>(axis)] = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (dim() != other.dim()) throw ValidationError("multi-index dimension mismatch");
  std::vector<int> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.entries_[i];
  return MultiIndex(std::move(e));
}

bool MultiIndex::divides(const MultiIndex& other) const {
  if (dim() != other.dim()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] > other.entries_[i]) return false;
  return true;
}

bool MultiIndex::all_even() const {
  for (int e : entries_)
    if (e % 2 != 0) return false;
  return true;
}

Integer MultiIndex::factorial() const {
  Integer out = 1;
  for (int e : entries_) out *= hermflow::factorial(static_cast<unsigned>(e));
  return out;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) os << (i ? "," : "") << entries_[i];
  os << ')';
  return os.str();
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.order_ <=> b.order_; c != 0) return c;
  return a.entries_ <=> b.entries_;
}

namespace {

void fill(int remaining, std::size_t pos, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[pos] = v;
    fill(remaining - v, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_order(int order, int dim) {
  if (order < 0) throw ValidationError("multi-index order must be >= 0");
  if (dim < 1) throw ValidationError("multi-index dimension must be >= 1");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(dim), 0);
  fill(order, 0, cur, out);
  return out;
}

Integer level_dimension(int order, int dim) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(order + dim - 1),
               static_cast<unsigned long>(dim - 1));
  return out;
}

}  // namespace hermflow
