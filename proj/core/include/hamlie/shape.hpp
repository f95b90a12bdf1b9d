#ifndef HAMLIE_SHAPE_HPP
#define HAMLIE_SHAPE_HPP

#include "hamlie/scalar.hpp"

#include <array>
#include <vector>

namespace hamlie {

/// Group exponent: length 2*iota7 sequence of field elements, interleaved as
/// (a_1, a_{1bar}, ..., a_{iota7}, a_{iota7 bar}) is NOT the storage order;
/// storage is plain position order 1..2*iota7 with bar(p) = p +- iota7.
using GroupVector = std::vector<Scalar>;

/// Polynomial exponent: length 2*iota7 sequence of nonnegative integers.
using MultiIndex = std::vector<int>;

/// The 7-tuple of block sizes together with all derived index combinatorics:
/// cumulative offsets iota_i, the pairing involution bar, the group shifts
/// sigma_p, and the sign table eta on J_{1,4}. Indices p are 1-based and run
/// over J = {1, ..., 2*iota7}; p <= iota7 is "unbarred", p > iota7 "barred".
class Shape {
public:
  static Shape build(const std::array<int, 7>& l);

  const std::array<int, 7>& l() const { return l_; }
  int iota(int i) const { return iota_.at(i); }
  int n() const { return iota_[7]; }          // iota7
  int dim() const { return 2 * iota_[7]; }    // |J|

  int bar(int p) const { return p <= n() ? p + n() : p - n(); }
  bool barred(int p) const { return p > n(); }
  /// Block number 1..7 of p (barred indices report their partner's block).
  int block(int p) const;

  bool in_I(int p, int lo, int hi) const {    // p in I_{lo,hi}
    return p >= iota_[lo - 1] + 1 && p <= iota_[hi];
  }
  bool in_J(int p, int lo, int hi) const {    // p in J_{lo,hi}
    int q = barred(p) ? bar(p) : p;
    return in_I(q, lo, hi);
  }
  std::vector<int> I_range(int lo, int hi) const;        // unbarred block run
  std::vector<int> Ibar_range(int lo, int hi) const;     // its barred partner

  const GroupVector& sigma(int p) const { return sigma_.at(index(p)); }
  /// eta_q for q in J_{1,4}: +1 on I_{1,4}; on barred indices -1 over
  /// I_1 u I_{3,4} partners and 0 over I_2 partners.
  int eta(int q) const;

  /// Down-grading slot allowed by the multi-index constraint: p not in
  /// J_1 u Ibar_{2,3} u I_5.
  bool t_allowed(int p) const;
  /// Group coordinate allowed to be nonzero: p not in Ibar_{5,6} u J_7.
  bool gamma_allowed(int p) const;

  GroupVector epsilon(int p) const;
  GroupVector zero_vector() const { return GroupVector(dim()); }
  MultiIndex zero_index() const { return MultiIndex(dim(), 0); }

  friend bool operator==(const Shape& a, const Shape& b) { return a.l_ == b.l_; }

private:
  std::array<int, 7> l_{};
  std::array<int, 8> iota_{};
  std::vector<GroupVector> sigma_;

  std::size_t index(int p) const;
};

} // namespace hamlie

#endif
