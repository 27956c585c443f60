#include "cartan/matrix.hpp"

#include <stdexcept>

namespace cartan {

namespace {

void require_same_ring(const Matrix& a, const Matrix& b) {
  if (a.ring().get() != b.ring().get() && !a.ring()->same_as(*b.ring()))
    throw std::invalid_argument("matrices live over different rings");
}

}  // namespace

Matrix::Matrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols) {
  if (!ring_) throw std::invalid_argument("matrix requires a ring");
}

Matrix Matrix::identity(RingPtr ring, std::size_t n) {
  Matrix m(std::move(ring), n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = m.ring_->one();
  return m;
}

Matrix Matrix::from_rows(RingPtr ring, const std::vector<std::vector<RElem>>& rows) {
  if (rows.empty() || rows[0].empty())
    throw std::invalid_argument("from_rows requires a non-empty grid");
  std::size_t cols = rows[0].size();
  Matrix m(std::move(ring), rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw std::invalid_argument("ragged row in from_rows");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_ints(RingPtr ring,
                         std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  if (rows.size() == 0 || rows.begin()->size() == 0)
    throw std::invalid_argument("from_ints requires a non-empty grid");
  std::size_t cols = rows.begin()->size();
  Matrix m(ring, rows.size(), cols);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw std::invalid_argument("ragged row in from_ints");
    std::size_t j = 0;
    for (std::int64_t v : row) m.at(i, j++) = ring->from_int(v);
    ++i;
  }
  return m;
}

bool Matrix::is_zero() const {
  for (const RElem& e : data_)
    if (e.code != 0) return false;
  return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (a.ring_.get() != b.ring_.get() && !a.ring_->same_as(*b.ring_)) return false;
  return a.data_ == b.data_;
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("dimension mismatch in add");
  const Ring& R = *a.ring();
  Matrix out(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out.at(i, j) = R.add(a.at(i, j), b.at(i, j));
  return out;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("dimension mismatch in sub");
  const Ring& R = *a.ring();
  Matrix out(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out.at(i, j) = R.sub(a.at(i, j), b.at(i, j));
  return out;
}

Matrix neg(const Matrix& a) {
  const Ring& R = *a.ring();
  Matrix out(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = R.neg(a.at(i, j));
  return out;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  if (a.cols() != b.rows())
    throw std::invalid_argument("dimension mismatch in mul");
  const Ring& R = *a.ring();
  Matrix out(a.ring(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      RElem aik = a.at(i, k);
      if (aik.code == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out.at(i, j) = R.add(out.at(i, j), R.mul(aik, b.at(k, j)));
    }
  return out;
}

Matrix scalar_mul(RElem c, const Matrix& a) {
  const Ring& R = *a.ring();
  Matrix out(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = R.mul(c, a.at(i, j));
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.ring(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(j, i) = a.at(i, j);
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  return sub(mul(a, b), mul(b, a));
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  const Ring& R = *a.ring();
  Matrix out(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      RElem f = a.at(i1, j1);
      if (f.code == 0) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          out.at(i1 * b.rows() + i2, j1 * b.cols() + j2) = R.mul(f, b.at(i2, j2));
    }
  return out;
}

Matrix mat_pow(const Matrix& a, std::uint64_t e) {
  if (!a.is_square()) throw std::invalid_argument("mat_pow requires a square matrix");
  Matrix acc = Matrix::identity(a.ring(), a.rows());
  Matrix base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

RElem trace(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("trace requires a square matrix");
  const Ring& R = *a.ring();
  RElem t = R.zero();
  for (std::size_t i = 0; i < a.rows(); ++i) t = R.add(t, a.at(i, i));
  return t;
}

RElem trace_of_product(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw std::invalid_argument("dimension mismatch in trace_of_product");
  const Ring& R = *a.ring();
  RElem t = R.zero();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      t = R.add(t, R.mul(a.at(i, k), b.at(k, i)));
  return t;
}

std::vector<RElem> char_poly(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("char_poly requires a square matrix");
  const Ring& R = *a.ring();
  std::size_t n = a.rows();
  if (n == 0) return {R.one()};

  // Berkowitz iteration: v picks up one coefficient per leading principal
  // submatrix, using only ring additions and multiplications.
  std::vector<RElem> v{R.one()};
  for (std::size_t r = 1; r <= n; ++r) {
    std::vector<RElem> col(r + 1, R.zero());
    col[0] = R.one();
    col[1] = R.neg(a.at(r - 1, r - 1));
    if (r >= 2) {
      std::vector<RElem> w(r - 1);
      for (std::size_t i = 0; i < r - 1; ++i) w[i] = a.at(i, r - 1);
      for (std::size_t k = 2; k <= r; ++k) {
        RElem dot = R.zero();
        for (std::size_t i = 0; i < r - 1; ++i)
          dot = R.add(dot, R.mul(a.at(r - 1, i), w[i]));
        col[k] = R.neg(dot);
        if (k < r) {
          std::vector<RElem> nw(r - 1, R.zero());
          for (std::size_t i = 0; i < r - 1; ++i)
            for (std::size_t j = 0; j < r - 1; ++j)
              nw[i] = R.add(nw[i], R.mul(a.at(i, j), w[j]));
          w = std::move(nw);
        }
      }
    }
    std::vector<RElem> nv(r + 1, R.zero());
    for (std::size_t i = 0; i <= r; ++i)
      for (std::size_t j = 0; j < r && j <= i; ++j)
        nv[i] = R.add(nv[i], R.mul(col[i - j], v[j]));
    v = std::move(nv);
  }
  // v[k] is the coefficient of t^{n-k} in det(tI - A); flip to low-to-high.
  std::vector<RElem> coeffs(n + 1);
  for (std::size_t k = 0; k <= n; ++k) coeffs[k] = v[n - k];
  return coeffs;
}

RElem determinant(const Matrix& a) {
  const Ring& R = *a.ring();
  std::vector<RElem> cp = char_poly(a);
  // det(tI - A) evaluated at 0 is (-1)^n det(A).
  RElem c0 = cp[0];
  return (a.rows() % 2 == 0) ? c0 : R.neg(c0);
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse requires a square matrix");
  const Ring& R = *a.ring();
  std::size_t n = a.rows();
  if (n == 0) return Matrix(a.ring(), 0, 0);
  std::vector<RElem> cp = char_poly(a);
  auto c0_inv = R.inverse(cp[0]);
  if (!c0_inv) return std::nullopt;
  // From the Cayley-Hamilton identity:
  //   A^{-1} = -c0^{-1} (A^{n-1} + c_{n-1} A^{n-2} + ... + c_1 I).
  Matrix acc(a.ring(), n, n);
  for (std::size_t i = 0; i < n; ++i) acc.at(i, i) = cp[n];  // cp[n] = 1
  for (std::size_t k = n - 1; k >= 1; --k) {
    acc = mul(acc, a);
    for (std::size_t i = 0; i < n; ++i) acc.at(i, i) = R.add(acc.at(i, i), cp[k]);
  }
  return scalar_mul(R.neg(*c0_inv), acc);
}

}  // namespace cartan
