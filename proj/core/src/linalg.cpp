#include "hamlie/linalg.hpp"

namespace hamlie {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Mat p(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& x = at(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) p.at(r, c) += x * o.at(k, c);
    }
  return p;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  Mat d(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) d.a_[i] = a_[i] - o.a_[i];
  return d;
}

std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m.at(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(row, c));
    Scalar inv = m.at(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col).is_zero()) continue;
      Scalar f = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(Mat m) { return rref(m).size(); }

std::optional<std::vector<Scalar>> solve(const Mat& a, const std::vector<Scalar>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs size mismatch");
  Mat aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols()) = b[r];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<Scalar> x(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, a.cols());
  return x;
}

std::vector<std::vector<Scalar>> nullspace(const Mat& a) {
  Mat m = a;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free_col = 0; free_col < a.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Scalar> v(a.cols());
    v[free_col] = Scalar(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m.at(i, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

Mat inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = a.rows();
  Mat aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, n + r) = Scalar(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
  Mat inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
  return inv;
}

namespace {

void row_axpy(ZVec& target, const ZVec& src, const mpz_class& f) {
  for (std::size_t i = 0; i < target.size(); ++i) target[i] += f * src[i];
}

} // namespace

ZMat hnf_rows(ZMat m) {
  if (m.empty()) return m;
  std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    // Euclidean elimination below `row` in this column.
    while (true) {
      std::size_t best = row;
      bool any = false;
      for (std::size_t r = row; r < m.size(); ++r) {
        if (sgn(m[r][col]) == 0) continue;
        if (!any || ::cmp(abs(m[r][col]), abs(m[best][col])) < 0 || sgn(m[best][col]) == 0) {
          best = r;
          any = true;
        }
      }
      if (!any) break;
      std::swap(m[row], m[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < m.size(); ++r) {
        if (sgn(m[r][col]) == 0) continue;
        mpz_class q = m[r][col] / m[row][col];  // truncated division is fine for descent
        row_axpy(m[r], m[row], -q);
        if (sgn(m[r][col]) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(m[row][col]) == 0) continue;
    if (sgn(m[row][col]) < 0)
      for (auto& x : m[row]) x = -x;
    // reduce entries above the pivot
    for (std::size_t r = 0; r < row; ++r) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), m[r][col].get_mpz_t(), m[row][col].get_mpz_t());
      if (sgn(q) != 0) row_axpy(m[r], m[row], -q);
    }
    ++row;
  }
  m.resize(row);
  return m;
}

ZMat z_left_kernel(const ZMat& a) {
  // HNF of [A | I]; rows whose A-part vanished give the kernel.
  if (a.empty()) return {};
  std::size_t k = a.size(), m = a[0].size();
  ZMat aug(k, ZVec(m + k));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < m; ++c) aug[r][c] = a[r][c];
    aug[r][m + r] = 1;
  }
  ZMat h = hnf_rows(std::move(aug));
  ZMat kernel;
  for (const auto& row : h) {
    bool zero = true;
    for (std::size_t c = 0; c < m; ++c)
      if (sgn(row[c]) != 0) {
        zero = false;
        break;
      }
    if (!zero) continue;
    kernel.emplace_back(row.begin() + m, row.end());
  }
  return kernel;
}

} // namespace hamlie
