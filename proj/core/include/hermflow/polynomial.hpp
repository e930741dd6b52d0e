#pragma once

#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "hermflow/multi_index.hpp"
#include "hermflow/rational.hpp"

namespace hermflow {

/// Exact multivariate polynomial over Q in `dim` variables y_1..y_N.
///
/// Terms are kept sparse and graded-lex ordered; zero coefficients are never
/// stored, so the empty map is the zero polynomial.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Rational>;

  /// Degree reported for the zero polynomial.
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  explicit Polynomial(int dim);

  static Polynomial constant(int dim, const Rational& c);
  static Polynomial monomial(const MultiIndex& beta, const Rational& c = 1);
  /// y_{axis+1}
  static Polynomial variable(int dim, int axis);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  Rational coefficient(const MultiIndex& beta) const;
  /// Adds c * y^beta, dropping the term if it cancels.
  void add_term(const MultiIndex& beta, const Rational& c);

  /// Largest graded-lex term. Requires a non-zero polynomial.
  std::pair<MultiIndex, Rational> leading_term() const;

  /// Terms of total degree exactly k.
  Polynomial homogeneous_part(int k) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// D^gamma p.
  Polynomial derive(const MultiIndex& gamma) const;
  /// d p / d y_{axis+1}
  Polynomial partial(int axis) const;
  /// y . grad p; maps y^beta to |beta| y^beta.
  Polynomial euler() const;
  /// y_{axis+1} * p
  Polynomial times_variable(int axis) const;

  Rational evaluate(std::span<const Rational> y) const;
  double evaluate(std::span<const double> y) const;

 private:
  int dim_;
  Terms terms_;
};

enum class ArithOp { Add, Sub, Mul, Scale };

/// Dispatching form of the ring operations. For Scale, `b` must be a constant
/// polynomial and the result is a * b(0).
Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithOp op);

Polynomial laplacian(const Polynomial& p);
/// (-Delta)^j p by iterated Laplacian with sign (-1)^j.
Polynomial neg_laplacian_power(const Polynomial& p, int j);

/// Vector field of N polynomials, each in N variables.
class VectorPolyField {
 public:
  explicit VectorPolyField(std::vector<Polynomial> components);
  static VectorPolyField zero(int dim);

  int dim() const { return static_cast<int>(components_.size()); }
  const Polynomial& operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }
  const std::vector<Polynomial>& components() const { return components_; }

  bool is_zero() const;
  int degree() const;

  VectorPolyField& operator+=(const VectorPolyField& rhs);
  VectorPolyField& operator-=(const VectorPolyField& rhs);
  VectorPolyField& operator*=(const Rational& s);
  friend VectorPolyField operator+(VectorPolyField a, const VectorPolyField& b) { return a += b; }
  friend VectorPolyField operator-(VectorPolyField a, const VectorPolyField& b) { return a -= b; }
  friend VectorPolyField operator*(VectorPolyField a, const Rational& s) { return a *= s; }
  friend VectorPolyField operator*(const Rational& s, VectorPolyField a) { return a *= s; }
  friend bool operator==(const VectorPolyField&, const VectorPolyField&) = default;

  std::vector<double> evaluate(std::span<const double> y) const;

 private:
  std::vector<Polynomial> components_;
};

VectorPolyField gradient(const Polynomial& p);
Polynomial divergence(const VectorPolyField& v);
/// sum_i a_i b_i
Polynomial dot(const VectorPolyField& a, const VectorPolyField& b);
/// y . v
Polynomial dot_position(const VectorPolyField& v);
/// (a . grad) b, componentwise.
VectorPolyField advect(const VectorPolyField& a, const VectorPolyField& b);

/// Polynomial with floating coefficients for fast repeated evaluation.
class NumericPolynomial {
 public:
  NumericPolynomial() = default;
  explicit NumericPolynomial(const Polynomial& p, double scale = 1.0);

  void accumulate(const Polynomial& p, double scale);
  double operator()(std::span<const double> y) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  struct Term {
    std::vector<int> powers;
    double coeff;
  };
  std::map<MultiIndex, double> merged_;
  std::vector<Term> terms_;
  void rebuild();
};

}  // namespace hermflow
