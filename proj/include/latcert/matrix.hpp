#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

#include "latcert/poly.hpp"

namespace latcert {

/// Dense exact matrix over Z or Q, row-major.
template <typename T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, T(0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimension");
  }
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  Mat operator+(const Mat& o) const {
    check_same_shape(o);
    Mat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
  }
  Mat operator-(const Mat& o) const {
    check_same_shape(o);
    Mat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
  }
  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Mat: shape mismatch in product");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& v = (*this)(i, k);
        if (v == 0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }
  Mat operator*(const T& s) const {
    Mat r = *this;
    for (auto& v : r.a_) v *= s;
    return r;
  }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (v != 0) return false;
    return true;
  }

  Mat submatrix(int r0, int c0, int nrows, int ncols) const {
    Mat r(nrows, ncols);
    for (int i = 0; i < nrows; ++i)
      for (int j = 0; j < ncols; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }

  void set_block(int r0, int c0, const Mat& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  void swap_cols(int i, int j) {
    for (int r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  void swap_rows(int i, int j) {
    for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

 private:
  void check_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat: shape mismatch");
  }
  int rows_, cols_;
  std::vector<T> a_;
};

using IntMatrix = Mat<Int>;
using RatMatrix = Mat<Rat>;

IntMatrix companion_matrix(const IntPoly& f);  // monic f, deg >= 1
// direct sum of h copies of companion(f)
IntMatrix block_companion(const IntPoly& f, int h);
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);

RatMatrix to_rat(const IntMatrix& m);
// clears denominators: returns (D, B) with m = B / D, D > 0 minimal
std::pair<Int, IntMatrix> clear_denominators(const RatMatrix& m);

// Fraction-free Bareiss determinant.
Int det(const IntMatrix& m);
Rat det(const RatMatrix& m);

// Exact inverse over Q; throws if singular.
RatMatrix inverse(const RatMatrix& m);
inline RatMatrix inverse(const IntMatrix& m) { return inverse(to_rat(m)); }

// Characteristic polynomial det(x I - M), exact, via fraction-free
// determinant evaluation at integer points and interpolation.
IntPoly charpoly(const IntMatrix& m);
std::vector<Rat> charpoly(const RatMatrix& m);

// f(M) for integral f
IntMatrix eval_poly(const IntPoly& f, const IntMatrix& m);

struct HnfResult {
  IntMatrix H;          // H = M * U, column-style Hermite normal form
  IntMatrix U;          // unimodular
  int rank = 0;         // number of nonzero columns (pivot count)
};

// Column-style HNF: pivots positive, each pivot row has zeros left of the
// pivot column and entries right of the pivot reduced into [0, pivot).
// Zero columns, if any, end up leftmost.
HnfResult hnf(const IntMatrix& m);

struct SnfResult {
  IntMatrix D;  // diagonal, d1 | d2 | ..., nonnegative
  IntMatrix U;  // unimodular, U * M * V = D
  IntMatrix V;
};

SnfResult snf(const IntMatrix& m);

// Z-basis of the right kernel {x : M x = 0}, as matrix columns.
IntMatrix kernel(const IntMatrix& m);

bool is_unimodular(const IntMatrix& m);

}  // namespace latcert
