#ifndef HAMLIE_LINALG_HPP
#define HAMLIE_LINALG_HPP

#include "hamlie/scalar.hpp"

#include <optional>
#include <vector>

namespace hamlie {

/// Dense matrix over the exact working field. Row-major.
class Mat {
public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static Mat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Mat transposed() const;
  Mat operator*(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

private:
  std::size_t rows_, cols_;
  std::vector<Scalar> a_;
};

/// In-place reduced row echelon form with deterministic pivoting (first
/// nonzero entry top-down per column). Returns pivot columns.
std::vector<std::size_t> rref(Mat& m);

std::size_t rank(Mat m);

/// Solves A x = b exactly. Returns nullopt when inconsistent; free variables
/// are set to zero, so the result is deterministic.
std::optional<std::vector<Scalar>> solve(const Mat& a, const std::vector<Scalar>& b);

/// Basis of the right nullspace { x : A x = 0 }, deterministic order.
std::vector<std::vector<Scalar>> nullspace(const Mat& a);

/// Exact inverse; throws on singular input.
Mat inverse(const Mat& a);

/// ---- Integer lattice tools (over mpz) ----

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;

/// Row-style Hermite normal form of the lattice spanned by the rows.
/// Zero rows are dropped; pivots are positive and entries above a pivot are
/// reduced modulo it.
ZMat hnf_rows(ZMat m);

/// Basis of the integer kernel { n in Z^k : n A = 0 } for an integer matrix
/// with k rows (n is a row vector).
ZMat z_left_kernel(const ZMat& a);

} // namespace hamlie

#endif
