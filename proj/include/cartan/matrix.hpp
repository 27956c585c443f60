#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "cartan/ring.hpp"

namespace cartan {

/// Dense matrix over a finite commutative ring, row-major storage.
class Matrix {
 public:
  Matrix(RingPtr ring, std::size_t rows, std::size_t cols);

  static Matrix identity(RingPtr ring, std::size_t n);
  static Matrix from_rows(RingPtr ring,
                          const std::vector<std::vector<RElem>>& rows);
  // Convenience for literals in tests: entries go through from_int.
  static Matrix from_ints(RingPtr ring,
                          std::initializer_list<std::initializer_list<std::int64_t>> rows);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  RElem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const RElem& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<RElem>& data() const { return data_; }

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<RElem> data_;
};

Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix neg(const Matrix& a);
Matrix mul(const Matrix& a, const Matrix& b);
Matrix scalar_mul(RElem c, const Matrix& a);
Matrix transpose(const Matrix& a);
Matrix commutator(const Matrix& a, const Matrix& b);  // ab - ba
Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix mat_pow(const Matrix& a, std::uint64_t e);

RElem trace(const Matrix& a);
// Tr(a*b) without forming the product.
RElem trace_of_product(const Matrix& a, const Matrix& b);

// Characteristic polynomial coefficients c_0..c_n (low-to-high, c_n = 1),
// computed division-free so it is valid over any commutative ring.
std::vector<RElem> char_poly(const Matrix& a);
RElem determinant(const Matrix& a);
// Inverse when the determinant is a unit, via the characteristic polynomial.
std::optional<Matrix> inverse(const Matrix& a);

}  // namespace cartan
