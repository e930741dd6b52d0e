#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace hermflow {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws ValidationError when den == 0.
Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

Integer factorial(unsigned n);

inline double to_double(const Rational& q) { return q.get_d(); }
std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

/// Dense matrix over the rationals. Row-major; sized at construction.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  bool operator==(const RationalMatrix& other) const = default;

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalMatrix transpose() const;
  bool is_symmetric() const;

  /// Reduced row-echelon form. `pivots` receives the pivot column of every
  /// non-zero row, smallest column first.
  RationalMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  std::size_t rank() const;

  /// Basis of the right nullspace, one vector per free column in increasing
  /// column order; each has a 1 at its free column.
  std::vector<std::vector<Rational>> nullspace() const;

  /// Throws ValidationError if singular.
  RationalMatrix inverse() const;

  /// Leading principal minors all positive (Sylvester). Square only.
  bool is_positive_definite() const;

  std::vector<double> to_doubles() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace hermflow
