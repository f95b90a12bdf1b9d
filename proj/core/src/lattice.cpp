#include "hamlie/lattice.hpp"

#include <stdexcept>

namespace hamlie {

GroupVector add(const GroupVector& a, const GroupVector& b) {
  GroupVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

GroupVector sub(const GroupVector& a, const GroupVector& b) {
  GroupVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

GroupVector negate(const GroupVector& a) {
  GroupVector r(a);
  for (auto& x : r) x = -x;
  return r;
}

GroupVector scale(const Scalar& c, const GroupVector& a) {
  GroupVector r(a);
  for (auto& x : r) x *= c;
  return r;
}

bool is_zero_vector(const GroupVector& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

// Each field coordinate contributes its rational and (for quadratic fields)
// its sqrt(d) part as separate rational rows, so basis coordinates can be
// solved for over the rationals.
std::vector<Scalar> Lattice::split_vector(const GroupVector& v) const {
  std::vector<Scalar> out;
  bool quad = field_.kind == Field::Kind::Quadratic;
  for (const auto& x : v) {
    out.emplace_back(x.rat_part());
    if (quad) out.emplace_back(x.irr_part());
  }
  return out;
}

Lattice Lattice::build(Shape shape, Field field, std::vector<GroupVector> basis) {
  return build_impl(std::move(shape), std::move(field), std::move(basis), true);
}

Lattice Lattice::build_unchecked(Shape shape, Field field, std::vector<GroupVector> basis) {
  return build_impl(std::move(shape), std::move(field), std::move(basis), false);
}

Lattice Lattice::build_impl(Shape shape, Field field, std::vector<GroupVector> basis,
                            bool validate) {
  Lattice L(shape, field);
  const int dim = shape.dim();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& g = basis[k];
    if (static_cast<int>(g.size()) != dim)
      throw std::invalid_argument("basis vector " + std::to_string(k + 1) + " has wrong length");
    for (const auto& c : g)
      if (!field.admits(c))
        throw std::invalid_argument("basis vector " + std::to_string(k + 1) +
                                    " has entries outside the field " + field.str());
    for (int p = 1; p <= dim; ++p)
      if (!shape.gamma_allowed(p) && !g[p - 1].is_zero())
        throw std::invalid_argument("basis vector " + std::to_string(k + 1) +
                                    " violates the coordinate constraint at index p=" +
                                    std::to_string(p));
  }
  L.basis_ = std::move(basis);

  // split matrix, columns indexed by basis vectors
  bool quad = field.kind == Field::Kind::Quadratic;
  std::size_t rows = static_cast<std::size_t>(dim) * (quad ? 2 : 1);
  L.split_ = Mat(rows, L.basis_.size());
  for (std::size_t j = 0; j < L.basis_.size(); ++j) {
    auto col = L.split_vector(L.basis_[j]);
    for (std::size_t r = 0; r < rows; ++r) L.split_.at(r, j) = col[r];
  }
  if (hamlie::rank(L.split_) != L.basis_.size())
    throw std::invalid_argument("dependent basis: vectors are not rationally independent");

  // precompute the row transform that solves split * x = b by one
  // matrix-vector product: rref([split | I]) yields T with T*split = [I; 0]
  {
    std::size_t r = L.split_.rows(), k = L.basis_.size();
    Mat aug(r, k + r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < k; ++j) aug.at(i, j) = L.split_.at(i, j);
      aug.at(i, k + i) = Scalar(1);
    }
    rref(aug);
    L.solver_ = Mat(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) L.solver_.at(i, j) = aug.at(i, k + j);
  }
  if (!validate) return L;

  // admissibility conditions
  for (int p : shape.I_range(1, 4))
    if (!L.contains(shape.sigma(p)))
      throw std::invalid_argument("sigma_" + std::to_string(p) + " is not in the lattice");
  for (int q : shape.I_range(5, 6))
    if (!L.contains(shape.epsilon(q)))
      throw std::invalid_argument("epsilon_" + std::to_string(q) + " is not in the lattice");
  for (int r = 1; r <= shape.dim(); ++r) {
    if (!shape.in_J(r, 1, 4)) continue;
    L.epsilon_multiple(r);  // throws when the line misses Gamma
  }
  return L;
}

std::optional<std::vector<Scalar>> Lattice::coordinates(const GroupVector& v) const {
  if (static_cast<int>(v.size()) != shape_.dim())
    throw std::invalid_argument("vector length mismatch");
  for (const auto& c : v)
    if (!field_.admits(c)) return std::nullopt;
  if (basis_.empty()) {
    if (is_zero_vector(v)) return std::vector<Scalar>{};
    return std::nullopt;
  }
  std::vector<Scalar> b = split_vector(v);
  std::size_t k = basis_.size();
  std::vector<Scalar> y(split_.rows());
  for (std::size_t i = 0; i < split_.rows(); ++i) {
    Scalar acc;
    for (std::size_t j = 0; j < split_.rows(); ++j) {
      if (b[j].is_zero()) continue;
      acc += solver_.at(i, j) * b[j];
    }
    y[i] = acc;
  }
  for (std::size_t i = k; i < y.size(); ++i)
    if (!y[i].is_zero()) return std::nullopt;  // outside the rational span
  y.resize(k);
  return y;
}

std::optional<std::vector<mpz_class>> Lattice::int_coordinates(const GroupVector& v) const {
  {
    std::lock_guard<std::mutex> lock(*cache_lock_);
    auto it = coord_cache_.find(v);
    if (it != coord_cache_.end()) return it->second;
  }
  std::optional<std::vector<mpz_class>> out;
  auto c = coordinates(v);
  if (c) {
    std::vector<mpz_class> ints;
    ints.reserve(c->size());
    bool ok = true;
    for (const auto& x : *c) {
      if (!x.is_integer()) {
        ok = false;
        break;
      }
      ints.push_back(x.as_integer());
    }
    if (ok) out = std::move(ints);
  }
  std::lock_guard<std::mutex> lock(*cache_lock_);
  if (coord_cache_.size() > 200000) coord_cache_.clear();  // unbounded growth guard
  return coord_cache_.emplace(v, std::move(out)).first->second;
}

bool Lattice::contains(const GroupVector& v) const { return int_coordinates(v).has_value(); }

Scalar Lattice::compute_epsilon_multiple(int r) const {
  // Integer combinations of the basis supported on coordinate r alone:
  // left-kernel of the constraint matrix over Z, conditions indexed by the
  // rational split of every coordinate except r.
  const int dim = shape_.dim();
  bool quad = field_.kind == Field::Kind::Quadratic;
  std::size_t k = basis_.size();
  if (k == 0) throw std::invalid_argument("F*eps_" + std::to_string(r) + " misses the lattice");

  // common denominator per basis vector entry; build integer matrix rows=basis
  std::vector<std::vector<mpq_class>> cond(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (int p = 1; p <= dim; ++p) {
      if (p == r) continue;
      cond[j].push_back(basis_[j][p - 1].rat_part());
      if (quad) cond[j].push_back(basis_[j][p - 1].irr_part());
    }
  }
  std::size_t m = cond.empty() ? 0 : cond[0].size();
  mpz_class lcm_all(1);
  for (const auto& row : cond)
    for (const auto& q : row) {
      mpz_class den = q.get_den();
      mpz_lcm(lcm_all.get_mpz_t(), lcm_all.get_mpz_t(), den.get_mpz_t());
    }
  ZMat a(k, ZVec(m));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t c = 0; c < m; ++c) {
      mpq_class scaled = cond[j][c] * lcm_all;
      a[j][c] = scaled.get_num();
    }

  ZMat kernel = z_left_kernel(a);
  if (kernel.empty())
    throw std::invalid_argument("F*eps_" + std::to_string(r) + " misses the lattice");
  ZMat h = hnf_rows(std::move(kernel));
  const ZVec& n = h.front();

  Scalar c;
  for (std::size_t j = 0; j < basis_.size(); ++j)
    c += Scalar(mpq_class(n[j])) * basis_[j][r - 1];
  // canonical sign: positive under the real embedding when available
  int s;
  try {
    s = c.real_sign();
  } catch (const std::domain_error&) {
    s = sgn(c.rat_part()) != 0 ? sgn(c.rat_part()) : sgn(c.irr_part());
  }
  if (s < 0) c = -c;
  return c;
}

Scalar Lattice::epsilon_multiple(int r) const {
  if (!shape_.in_J(r, 1, 4)) throw std::out_of_range("epsilon_multiple wants r in J_{1,4}");
  auto it = eps_mult_.find(r);
  if (it == eps_mult_.end()) it = eps_mult_.emplace(r, compute_epsilon_multiple(r)).first;
  return it->second;
}

GroupVector Lattice::lambda(int p) const {
  if (shape_.barred(p) || !shape_.in_I(p, 1, 4))
    throw std::out_of_range("lambda_p wants p in I_{1,4}");
  return scale(epsilon_multiple(shape_.bar(p)), shape_.epsilon(shape_.bar(p)));
}

Scalar Lattice::pi_component(int p, const GroupVector& alpha) const {
  int blk = shape_.block(p);
  if (shape_.barred(p) || blk > 6) throw std::out_of_range("pi component wants p in I_{1,6}");
  const Scalar& ap = alpha[p - 1];
  const Scalar& abar = alpha[shape_.bar(p) - 1];
  if (blk == 1 || blk == 3 || blk == 4) return ap - abar;
  if (blk == 2) return -abar;
  return -ap;  // blocks 5, 6
}

std::vector<Scalar> Lattice::pi(const GroupVector& alpha) const {
  if (!contains(alpha)) throw std::invalid_argument("pi: vector is not in the lattice");
  std::vector<Scalar> mu;
  mu.reserve(shape_.iota(6));
  for (int p = 1; p <= shape_.iota(6); ++p) mu.push_back(pi_component(p, alpha));
  return mu;
}

ZMat Lattice::pi_kernel_basis() const {
  // pi is linear on coordinates; express pi(g_j) and take the integer kernel.
  std::size_t k = basis_.size();
  if (k == 0) return {};
  int m = shape_.iota(6);
  bool quad = field_.kind == Field::Kind::Quadratic;
  std::vector<std::vector<mpq_class>> cond(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (int p = 1; p <= m; ++p) {
      Scalar v = pi_component(p, basis_[j]);
      cond[j].push_back(v.rat_part());
      if (quad) cond[j].push_back(v.irr_part());
    }
  }
  std::size_t cols = cond[0].size();
  mpz_class lcm_all(1);
  for (const auto& row : cond)
    for (const auto& q : row) {
      mpz_class den = q.get_den();
      mpz_lcm(lcm_all.get_mpz_t(), lcm_all.get_mpz_t(), den.get_mpz_t());
    }
  ZMat a(k, ZVec(cols));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t c = 0; c < cols; ++c) {
      mpq_class scaled = cond[j][c] * lcm_all;
      a[j][c] = scaled.get_num();
    }
  return z_left_kernel(a);
}

} // namespace hamlie
