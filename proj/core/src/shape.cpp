#include "hamlie/shape.hpp"

#include <stdexcept>
#include <string>

namespace hamlie {

Shape Shape::build(const std::array<int, 7>& l) {
  bool all_zero = true;
  for (int li : l) {
    if (li < 0) throw std::invalid_argument("shape entries must be nonnegative");
    if (li != 0) all_zero = false;
  }
  if (all_zero) throw std::invalid_argument("shape must not be all-zero");
  Shape s;
  s.l_ = l;
  s.iota_[0] = 0;
  for (int i = 1; i <= 7; ++i) s.iota_[i] = s.iota_[i - 1] + l[i - 1];

  s.sigma_.resize(2 * s.n());
  for (int p = 1; p <= s.n(); ++p) {
    GroupVector v(2 * s.n());
    int blk = s.block(p);
    if (blk == 1 || blk == 3 || blk == 4) {
      v[p - 1] = Scalar(1);
      v[s.bar(p) - 1] = Scalar(1);
    } else if (blk == 2) {
      v[p - 1] = Scalar(1);
    }
    s.sigma_[p - 1] = v;
    s.sigma_[s.bar(p) - 1] = v;  // sigma_{bar p} = sigma_p
  }
  return s;
}

std::size_t Shape::index(int p) const {
  if (p < 1 || p > dim()) throw std::out_of_range("index " + std::to_string(p) + " outside J");
  return static_cast<std::size_t>(p - 1);
}

int Shape::block(int p) const {
  int q = barred(p) ? bar(p) : p;
  index(q);
  for (int i = 1; i <= 7; ++i)
    if (q <= iota_[i]) return i;
  throw std::out_of_range("index outside J");
}

std::vector<int> Shape::I_range(int lo, int hi) const {
  std::vector<int> r;
  for (int p = iota_[lo - 1] + 1; p <= iota_[hi]; ++p) r.push_back(p);
  return r;
}

std::vector<int> Shape::Ibar_range(int lo, int hi) const {
  std::vector<int> r;
  for (int p = iota_[lo - 1] + 1; p <= iota_[hi]; ++p) r.push_back(bar(p));
  return r;
}

int Shape::eta(int q) const {
  if (!in_J(q, 1, 4)) throw std::out_of_range("eta defined on J_{1,4} only");
  if (!barred(q)) return 1;
  int blk = block(q);
  return blk == 2 ? 0 : -1;
}

bool Shape::t_allowed(int p) const {
  index(p);
  int blk = block(p);
  if (blk == 1) return false;                       // J_1
  if (barred(p) && (blk == 2 || blk == 3)) return false;  // Ibar_{2,3}
  if (!barred(p) && blk == 5) return false;         // I_5
  return true;
}

bool Shape::gamma_allowed(int p) const {
  index(p);
  int blk = block(p);
  if (blk == 7) return false;                       // J_7
  if (barred(p) && (blk == 5 || blk == 6)) return false;  // Ibar_{5,6}
  return true;
}

GroupVector Shape::epsilon(int p) const {
  GroupVector v(dim());
  v[index(p)] = Scalar(1);
  return v;
}

} // namespace hamlie
