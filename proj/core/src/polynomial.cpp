#include "hermflow/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "hermflow/error.hpp"

namespace hermflow {

namespace {

void require_same_dim(int a, int b) {
  if (a != b) throw ValidationError("polynomial dimension mismatch");
}

template <typename T>
T power(T base, int e) {
  T out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

Polynomial::Polynomial(int dim) : dim_(dim) {
  if (dim < 1) throw ValidationError("polynomial dimension must be >= 1");
}

Polynomial Polynomial::constant(int dim, const Rational& c) {
  Polynomial p(dim);
  p.add_term(MultiIndex::zero(dim), c);
  return p;
}

Polynomial Polynomial::monomial(const MultiIndex& beta, const Rational& c) {
  Polynomial p(beta.dim());
  p.add_term(beta, c);
  return p;
}

Polynomial Polynomial::variable(int dim, int axis) {
  return monomial(MultiIndex::unit(dim, axis));
}

int Polynomial::degree() const {
  if (terms_.empty()) return kZeroDegree;
  // Graded order: the largest key has the largest total order.
  return terms_.rbegin()->first.order();
}

Rational Polynomial::coefficient(const MultiIndex& beta) const {
  auto it = terms_.find(beta);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const MultiIndex& beta, const Rational& c) {
  require_same_dim(dim_, beta.dim());
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(beta, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

std::pair<MultiIndex, Rational> Polynomial::leading_term() const {
  if (terms_.empty()) throw ValidationError("leading term of the zero polynomial");
  return *terms_.rbegin();
}

Polynomial Polynomial::homogeneous_part(int k) const {
  Polynomial out(dim_);
  for (const auto& [beta, c] : terms_)
    if (beta.order() == k) out.terms_.emplace_hint(out.terms_.end(), beta, c);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  require_same_dim(dim_, rhs.dim_);
  for (const auto& [beta, c] : rhs.terms_) add_term(beta, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  require_same_dim(dim_, rhs.dim_);
  for (const auto& [beta, c] : rhs.terms_) add_term(beta, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_dim(a.dim_, b.dim_);
  Polynomial out(a.dim_);
  for (const auto& [ba, ca] : a.terms_)
    for (const auto& [bb, cb] : b.terms_) out.add_term(ba + bb, ca * cb);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [beta, c] : terms_) c *= s;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [beta, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::derive(const MultiIndex& gamma) const {
  require_same_dim(dim_, gamma.dim());
  Polynomial out(dim_);
  for (const auto& [beta, c] : terms_) {
    if (!gamma.divides(beta)) continue;
    std::vector<int> e = beta.entries();
    Integer f = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < gamma[i]; ++k) f *= e[i]--;
    out.add_term(MultiIndex(std::move(e)), c * f);
  }
  return out;
}

Polynomial Polynomial::partial(int axis) const { return derive(MultiIndex::unit(dim_, axis)); }

Polynomial Polynomial::euler() const {
  Polynomial out(dim_);
  for (const auto& [beta, c] : terms_)
    if (beta.order() != 0) out.terms_.emplace(beta, c * beta.order());
  return out;
}

Polynomial Polynomial::times_variable(int axis) const {
  Polynomial out(dim_);
  const MultiIndex e = MultiIndex::unit(dim_, axis);
  for (const auto& [beta, c] : terms_) out.terms_.emplace(beta + e, c);
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> y) const {
  if (static_cast<int>(y.size()) != dim_) throw ValidationError("evaluation point dimension mismatch");
  Rational sum = 0;
  for (const auto& [beta, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < dim_; ++i) t *= power(y[static_cast<std::size_t>(i)], beta[static_cast<std::size_t>(i)]);
    sum += t;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != dim_) throw ValidationError("evaluation point dimension mismatch");
  double sum = 0.0;
  for (const auto& [beta, c] : terms_) {
    double t = c.get_d();
    for (int i = 0; i < dim_; ++i) t *= power(y[static_cast<std::size_t>(i)], beta[static_cast<std::size_t>(i)]);
    sum += t;
  }
  return sum;
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithOp op) {
  require_same_dim(a.dim(), b.dim());
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Scale:
      if (b.degree() > 0) throw ValidationError("scale factor must be a constant polynomial");
      return a * b.coefficient(MultiIndex::zero(b.dim()));
  }
  throw ValidationError("unknown arithmetic operation");
}

Polynomial laplacian(const Polynomial& p) {
  Polynomial out(p.dim());
  for (int i = 0; i < p.dim(); ++i) {
    std::vector<int> two(static_cast<std::size_t>(p.dim()), 0);
    two[static_cast<std::size_t>(i)] = 2;
    out += p.derive(MultiIndex(std::move(two)));
  }
  return out;
}

Polynomial neg_laplacian_power(const Polynomial& p, int j) {
  if (j < 0) throw ValidationError("Laplacian power must be >= 0");
  Polynomial out = p;
  for (int i = 0; i < j; ++i) out = -laplacian(out);
  return out;
}

VectorPolyField::VectorPolyField(std::vector<Polynomial> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw ValidationError("vector field needs at least one component");
  for (const auto& c : components_)
    if (c.dim() != dim()) throw ValidationError("vector field component dimension mismatch");
}

VectorPolyField VectorPolyField::zero(int dim) {
  return VectorPolyField(std::vector<Polynomial>(static_cast<std::size_t>(dim), Polynomial(dim)));
}

bool VectorPolyField::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Polynomial& p) { return p.is_zero(); });
}

int VectorPolyField::degree() const {
  int d = Polynomial::kZeroDegree;
  for (const auto& c : components_) d = std::max(d, c.degree());
  return d;
}

VectorPolyField& VectorPolyField::operator+=(const VectorPolyField& rhs) {
  if (dim() != rhs.dim()) throw ValidationError("vector field dimension mismatch");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += rhs.components_[i];
  return *this;
}

VectorPolyField& VectorPolyField::operator-=(const VectorPolyField& rhs) {
  if (dim() != rhs.dim()) throw ValidationError("vector field dimension mismatch");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= rhs.components_[i];
  return *this;
}

VectorPolyField& VectorPolyField::operator*=(const Rational& s) {
  for (auto& c : components_) c *= s;
  return *this;
}

std::vector<double> VectorPolyField::evaluate(std::span<const double> y) const {
  std::vector<double> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.evaluate(y));
  return out;
}

VectorPolyField gradient(const Polynomial& p) {
  std::vector<Polynomial> comps;
  for (int i = 0; i < p.dim(); ++i) comps.push_back(p.partial(i));
  return VectorPolyField(std::move(comps));
}

Polynomial divergence(const VectorPolyField& v) {
  Polynomial out(v.dim());
  for (int i = 0; i < v.dim(); ++i) out += v[i].partial(i);
  return out;
}

Polynomial dot(const VectorPolyField& a, const VectorPolyField& b) {
  if (a.dim() != b.dim()) throw ValidationError("vector field dimension mismatch");
  Polynomial out(a.dim());
  for (int i = 0; i < a.dim(); ++i) out += a[i] * b[i];
  return out;
}

Polynomial dot_position(const VectorPolyField& v) {
  Polynomial out(v.dim());
  for (int i = 0; i < v.dim(); ++i) out += v[i].times_variable(i);
  return out;
}

VectorPolyField advect(const VectorPolyField& a, const VectorPolyField& b) {
  if (a.dim() != b.dim()) throw ValidationError("vector field dimension mismatch");
  std::vector<Polynomial> comps;
  for (int c = 0; c < b.dim(); ++c) {
    Polynomial s(a.dim());
    for (int j = 0; j < a.dim(); ++j) s += a[j] * b[c].partial(j);
    comps.push_back(std::move(s));
  }
  return VectorPolyField(std::move(comps));
}

NumericPolynomial::NumericPolynomial(const Polynomial& p, double scale) { accumulate(p, scale); }

void NumericPolynomial::accumulate(const Polynomial& p, double scale) {
  for (const auto& [beta, c] : p.terms()) merged_[beta] += scale * c.get_d();
  rebuild();
}

void NumericPolynomial::rebuild() {
  terms_.clear();
  for (const auto& [beta, c] : merged_)
    if (c != 0.0) terms_.push_back({beta.entries(), c});
}

double NumericPolynomial::operator()(std::span<const double> y) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (std::size_t i = 0; i < t.powers.size(); ++i)
      for (int k = 0; k < t.powers[i]; ++k) v *= y[i];
    sum += v;
  }
  return sum;
}

}  // namespace hermflow
