#pragma once

// Dense square matrices over an exact or floating complex scalar.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "pdsx/error.hpp"
#include "pdsx/scalar.hpp"

namespace pdsx {

template <class S>
class Matrix {
 public:
  using Traits = ScalarTraits<S>;

  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, Traits::zero()) {}
  Matrix(std::initializer_list<std::initializer_list<S>> rows) : Matrix(rows.size()) {
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
      std::size_t c = 0;
      for (const auto& v : row) (*this)(r, c++) = v;
      ++r;
    }
  }

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = Traits::one();
    return m;
  }
  static Matrix zero(std::size_t dim) { return Matrix(dim); }

  std::size_t dim() const { return dim_; }
  S& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  Matrix adjoint() const {
    Matrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) m(c, r) = Traits::conj((*this)(r, c));
    return m;
  }

  // Max-absolute-entry norm.
  double max_abs() const {
    double best = 0.0;
    for (const auto& v : data_) best = std::max(best, Traits::magnitude(v));
    return best;
  }
  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const S& v) { return Traits::is_zero(v); });
  }

  Matrix& operator+=(const Matrix& o) {
    same_dim(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    same_dim(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const S& s) { return a *= s; }
  friend Matrix operator*(const S& s, Matrix a) { return a *= s; }

  // Skips zero entries of the left factor; most matrices here are sparse.
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.same_dim(b);
    Matrix m(a.dim_);
    for (std::size_t r = 0; r < a.dim_; ++r) {
      for (std::size_t k = 0; k < a.dim_; ++k) {
        const S& x = a(r, k);
        if (Traits::is_zero(x)) continue;
        for (std::size_t c = 0; c < a.dim_; ++c) {
          const S& y = b(k, c);
          if (Traits::is_zero(y)) continue;
          m(r, c) += x * y;
        }
      }
    }
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.dim_ == b.dim_ && a.data_ == b.data_; }

 private:
  void same_dim(const Matrix& o) const {
    if (o.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "matrix dimension mismatch");
  }

  std::size_t dim_ = 0;
  std::vector<S> data_;
};

using ExactMatrix = Matrix<Gaussian>;
using FloatMatrix = Matrix<Complex>;

// ||M - N||_max, or exactly zero/nonzero in exact mode.
template <class S>
double residual(const Matrix<S>& m, const Matrix<S>& n) {
  return (m - n).max_abs();
}

// True when the difference is within tol; exact matrices ignore tol.
template <class S>
bool within(const Matrix<S>& diff, double tol) {
  if constexpr (ScalarTraits<S>::exact) {
    return diff.is_zero();
  } else {
    return diff.max_abs() <= tol;
  }
}

template <class S>
bool is_partial_isometry(const Matrix<S>& m, double tol = 0.0) {
  return within(m * m.adjoint() * m - m, tol);
}

template <class S>
Matrix<Complex> to_float(const Matrix<S>& m) {
  Matrix<Complex> out(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) {
      if constexpr (ScalarTraits<S>::exact) {
        out(r, c) = m(r, c).to_complex();
      } else {
        out(r, c) = m(r, c);
      }
    }
  return out;
}

}  // namespace pdsx
