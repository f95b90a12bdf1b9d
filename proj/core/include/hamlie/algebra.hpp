#ifndef HAMLIE_ALGEBRA_HPP
#define HAMLIE_ALGEBRA_HPP

#include "hamlie/lattice.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>

namespace hamlie {

/// Basis monomial key (alpha, i). Ordered lexicographically by alpha (as a
/// tuple of scalars), then by i; this fixes the canonical term order used for
/// serialization.
struct MonoKey {
  GroupVector alpha;
  MultiIndex i;

  friend bool operator==(const MonoKey& a, const MonoKey& b) {
    return a.alpha == b.alpha && a.i == b.i;
  }
  friend bool operator<(const MonoKey& a, const MonoKey& b) {
    for (std::size_t k = 0; k < a.alpha.size(); ++k) {
      int c = a.alpha[k].cmp(b.alpha[k]);
      if (c != 0) return c < 0;
    }
    return a.i < b.i;
  }
};

class Element;

/// A Hamiltonian Lie algebra H(l, Gamma), or its enlargement H~ when
/// `extended` (the multi-index constraint is waived there). Immutable and
/// shared by the elements living in it.
class Algebra {
public:
  Algebra(Lattice lattice, bool extended = false)
      : lattice_(std::move(lattice)), extended_(extended) {}

  static std::shared_ptr<const Algebra> make(Lattice lattice, bool extended = false) {
    return std::make_shared<Algebra>(std::move(lattice), extended);
  }

  const Shape& shape() const { return lattice_.shape(); }
  const Lattice& lattice() const { return lattice_; }
  const Field& field() const { return lattice_.field(); }
  bool extended() const { return extended_; }

  bool valid_key(const MonoKey& k, std::string* why = nullptr) const;

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.lattice_ == b.lattice_ && a.extended_ == b.extended_;
  }

private:
  Lattice lattice_;
  bool extended_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Finite formal sum of basis monomials with nonzero exact coefficients.
/// All arithmetic prunes zero coefficients, so equality is map equality.
class Element {
public:
  Element() = default;
  explicit Element(AlgebraPtr alg) : alg_(std::move(alg)) {}

  static Element monomial(AlgebraPtr alg, GroupVector alpha, MultiIndex i, Scalar c = Scalar(1));
  static Element x(AlgebraPtr alg, GroupVector alpha, Scalar c = Scalar(1));
  static Element t(AlgebraPtr alg, int p, int power = 1);
  static Element one(AlgebraPtr alg);
  static Element zero(AlgebraPtr alg) { return Element(std::move(alg)); }

  const AlgebraPtr& algebra() const { return alg_; }
  const std::map<MonoKey, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_monomial() const { return terms_.size() == 1; }
  Scalar coeff(const MonoKey& k) const;

  void add_term(const MonoKey& k, const Scalar& c);   // validates the key

  Element operator-() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Scalar& c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Scalar& c, Element a) { return a *= c; }
  friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

  /// Reinterpret inside the enlarged algebra H~.
  Element to_extended() const;
  /// Reinterpret back in H; throws when a key violates the multi-index
  /// constraint.
  Element to_restricted() const;

private:
  AlgebraPtr alg_;
  std::map<MonoKey, Scalar> terms_;
};

void require_same_algebra(const Element& u, const Element& v);

/// Associative product: bilinear extension of exponent addition.
Element multiply(const Element& u, const Element& v);

/// The Lie bracket in closed structure-constant form. Works in both the
/// restricted and extended algebras; the summation ranges are the enlarged
/// ones, with the restricted-mode extra terms vanishing through the
/// structural zeros of the multi-index constraint.
Element bracket_structural(const Element& u, const Element& v);

/// The defining formulation: sum over p of x^{sigma_p} (d_p u d_pbar v -
/// d_pbar u d_p v) with mixed operators, evaluated through apply_operator and
/// multiply. Serves as the independent oracle for bracket_structural.
Element bracket_defining(const Element& u, const Element& v);

enum class OpKind { Grading, DownGrading, Mixed };

Element apply_operator(OpKind kind, int p, const Element& u);

struct MonomialStats {
  int level = 0;
  std::set<int> support;
};
MonomialStats monomial_stats(const Shape& shape, const MonoKey& key);

enum class SetName { H1, H2, H3, M };

bool set_membership(SetName which, const Element& u);
/// Membership in the eigen-slice M_mu.
bool in_M_mu(const Element& u, const std::vector<Scalar>& mu);
/// When every term of u is a pure group monomial with one common pi value,
/// returns it.
std::optional<std::vector<Scalar>> common_pi(const Element& u);

} // namespace hamlie

#endif
