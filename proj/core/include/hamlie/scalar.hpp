#ifndef HAMLIE_SCALAR_HPP
#define HAMLIE_SCALAR_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace hamlie {

/// Exact field element a + b*sqrt(d), with a, b rational and d a square-free
/// integer. d == 0 encodes a plain rational (then b == 0). Values with
/// different nonzero radicands cannot be combined.
class Scalar {
public:
  Scalar() : d_(0) {}
  Scalar(long n) : a_(n), d_(0) {}
  Scalar(const mpq_class& a) : a_(a), d_(0) { a_.canonicalize(); }
  Scalar(long num, long den);

  static Scalar sqrt_of(long d);                      // sqrt(d) itself
  static Scalar quadratic(mpq_class a, mpq_class b, long d);

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_one() const { return a_ == 1 && sgn(b_) == 0; }
  bool is_rational() const { return d_ == 0; }
  bool is_integer() const { return d_ == 0 && a_.get_den() == 1; }

  const mpq_class& rat_part() const { return a_; }
  const mpq_class& irr_part() const { return b_; }
  long radicand() const { return d_; }
  mpz_class as_integer() const;   // throws unless is_integer()

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.d_ == b.d_ && a.a_ == b.a_ && a.b_ == b.b_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Deterministic total order used for canonical term ordering.
  int cmp(const Scalar& o) const;
  friend bool operator<(const Scalar& a, const Scalar& b) { return a.cmp(b) < 0; }

  /// Sign under the real embedding (sqrt(d) > 0); requires d >= 0.
  int real_sign() const;

  /// Canonical text form: "p/q" or "p/q+r/s*sqrt(d)" (q, s > 0, reduced).
  std::string str() const;
  /// Compact form for pretty-printing: integers lose the "/1".
  std::string display() const;

private:
  mpq_class a_, b_;
  long d_;
  void merge_radicand(const Scalar& o);
  void normalize();
};

/// Exact n-th root within the field generated by the value itself, if one
/// exists. Chooses the positive root first (even n), then the
/// lexicographically smaller (a, b) pair.
bool nth_root(const Scalar& value, unsigned n, Scalar& out);

struct Field;
/// n-th root search in an ambient field (a rational radicand may have a
/// purely irrational square root there, e.g. sqrt(2) in Q(sqrt 2)).
bool nth_root_in(const Field& field, const Scalar& value, unsigned n, Scalar& out);

/// Ground field descriptor: rationals or a quadratic extension Q(sqrt(d)).
struct Field {
  enum class Kind { Rational, Quadratic };
  Kind kind = Kind::Rational;
  long d = 0;

  static Field rational() { return Field{}; }
  static Field quadratic(long d);

  bool admits(const Scalar& s) const {
    return s.is_rational() || (kind == Kind::Quadratic && s.radicand() == d);
  }
  std::string str() const;
  friend bool operator==(const Field& x, const Field& y) {
    return x.kind == y.kind && x.d == y.d;
  }
};

} // namespace hamlie

#endif
