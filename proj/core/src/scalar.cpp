#include "hamlie/scalar.hpp"

#include <cstdlib>

namespace hamlie {

Scalar::Scalar(long num, long den) : a_(num, den), d_(0) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  a_.canonicalize();
}

Scalar Scalar::sqrt_of(long d) { return quadratic(0, 1, d); }

Scalar Scalar::quadratic(mpq_class a, mpq_class b, long d) {
  Scalar s;
  a.canonicalize();
  b.canonicalize();
  s.a_ = a;
  s.b_ = b;
  s.d_ = d;
  s.normalize();
  if (s.d_ != 0 && (s.d_ == 1 || s.d_ == 0))
    throw std::invalid_argument("radicand must not be 0 or 1");
  return s;
}

mpz_class Scalar::as_integer() const {
  if (!is_integer()) throw std::domain_error("scalar is not an integer: " + str());
  return a_.get_num();
}

void Scalar::normalize() {
  if (sgn(b_) == 0) d_ = 0;
}

void Scalar::merge_radicand(const Scalar& o) {
  if (d_ == 0) {
    d_ = o.d_;
  } else if (o.d_ != 0 && o.d_ != d_) {
    throw std::invalid_argument("mixing sqrt(" + std::to_string(d_) + ") with sqrt(" +
                                std::to_string(o.d_) + ")");
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  merge_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  merge_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  merge_radicand(o);
  mpq_class a = a_ * o.a_ + mpq_class(d_) * b_ * o.b_;
  mpq_class b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  normalize();
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero scalar");
  if (d_ == 0) {
    Scalar r;
    r.a_ = 1 / a_;
    return r;
  }
  // (a + b sqrt(d))^-1 = (a - b sqrt(d)) / (a^2 - d b^2); the norm is nonzero
  // because d is not a rational square.
  mpq_class norm = a_ * a_ - mpq_class(d_) * b_ * b_;
  if (sgn(norm) == 0) throw std::domain_error("non-invertible quadratic scalar (d is a square?)");
  Scalar r;
  r.a_ = a_ / norm;
  r.b_ = -b_ / norm;
  r.d_ = d_;
  r.normalize();
  return r;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

int Scalar::cmp(const Scalar& o) const {
  int c = ::cmp(a_, o.a_);
  if (c != 0) return c;
  c = ::cmp(b_, o.b_);
  if (c != 0) return c;
  return d_ < o.d_ ? -1 : (d_ > o.d_ ? 1 : 0);
}

int Scalar::real_sign() const {
  if (d_ == 0) return sgn(a_);
  if (d_ < 0) throw std::domain_error("no real embedding for sqrt(" + std::to_string(d_) + ")");
  int sa = sgn(a_), sb = sgn(b_);
  if (sa == sb) return sa;
  if (sa == 0) return sb;
  if (sb == 0) return sa;
  // signs differ: compare a^2 with d b^2
  mpq_class lhs = a_ * a_, rhs = mpq_class(d_) * b_ * b_;
  int c = ::cmp(lhs, rhs);
  if (c == 0) return 0;
  return (c > 0) ? sa : sb;
}

std::string Scalar::str() const {
  std::string s = a_.get_num().get_str() + "/" + a_.get_den().get_str();
  if (d_ != 0) {
    mpq_class b = b_;
    std::string sign = "+";
    if (sgn(b) < 0) {
      sign = "-";
      b = -b;
    }
    s += sign + b.get_num().get_str() + "/" + b.get_den().get_str() + "*sqrt(" +
         std::to_string(d_) + ")";
  }
  return s;
}

std::string Scalar::display() const {
  auto rat = [](const mpq_class& q) {
    std::string t = q.get_num().get_str();
    if (q.get_den() != 1) t += "/" + q.get_den().get_str();
    return t;
  };
  if (d_ == 0) return rat(a_);
  std::string irr;
  mpq_class b = b_;
  std::string sign = sgn(b) < 0 ? "-" : "+";
  if (sgn(b) < 0) b = -b;
  if (b == 1)
    irr = "sqrt(" + std::to_string(d_) + ")";
  else
    irr = rat(b) + "*sqrt(" + std::to_string(d_) + ")";
  if (sgn(a_) == 0) return (sign == "-" ? "-" : "") + irr;
  return rat(a_) + sign + irr;
}

namespace {

// Exact n-th root of a rational, if it exists.
bool rational_nth_root(const mpq_class& q, unsigned n, mpq_class& out) {
  if (n == 0) return false;
  if (n == 1) {
    out = q;
    return true;
  }
  if (sgn(q) == 0) {
    out = 0;
    return true;
  }
  if (sgn(q) < 0 && n % 2 == 0) return false;
  mpz_class num = q.get_num(), den = q.get_den();
  bool neg = sgn(num) < 0;
  if (neg) num = -num;
  mpz_class rn, rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) == 0) return false;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n) == 0) return false;
  out = mpq_class(neg ? -rn : rn, rd);
  out.canonicalize();
  return true;
}

} // namespace

bool nth_root(const Scalar& value, unsigned n, Scalar& out) {
  if (n == 1) {
    out = value;
    return true;
  }
  if (value.is_rational()) {
    mpq_class r;
    if (!rational_nth_root(value.rat_part(), n, r)) return false;
    out = Scalar(r);
    return true;
  }
  if (n != 2) return false;  // higher roots of genuinely quadratic values are out of reach
  // Solve (u + v sqrt(d))^2 = a + b sqrt(d): u^2 + d v^2 = a, 2uv = b.
  const mpq_class &a = value.rat_part(), &b = value.irr_part();
  long d = value.radicand();
  // u^2 is a root of 4X^2 - 4aX + d b^2 = 0, i.e. X = (a +- sqrt(a^2 - d b^2)) / 2.
  mpq_class disc2 = a * a - mpq_class(d) * b * b;
  mpq_class sq;
  if (!rational_nth_root(disc2, 2, sq)) return false;
  if (sgn(sq) < 0) sq = -sq;
  for (int branch = 0; branch < 2; ++branch) {
    mpq_class usq = (branch == 0) ? mpq_class((a + sq) / 2) : mpq_class((a - sq) / 2);
    mpq_class u;
    if (!rational_nth_root(usq, 2, u)) continue;
    if (sgn(u) == 0) continue;
    if (sgn(u) < 0) u = -u;
    mpq_class v = b / (2 * u);
    for (int sign = 0; sign < 2; ++sign) {
      Scalar cand = Scalar::quadratic(sign == 0 ? u : -u, sign == 0 ? v : -v, d);
      if (cand * cand == value) {
        out = cand;
        return true;
      }
    }
  }
  return false;
}

bool nth_root_in(const Field& field, const Scalar& value, unsigned n, Scalar& out) {
  if (nth_root(value, n, out)) return true;
  if (field.kind != Field::Kind::Quadratic) return false;
  if (!value.is_rational()) return false;
  if (n != 2) return false;
  // try the purely irrational branch: (v sqrt(d))^2 = d v^2
  mpq_class vsq = value.rat_part() / field.d;
  mpq_class v;
  Scalar root;
  if (!nth_root(Scalar(vsq), 2, root)) return false;
  mpq_class r = root.rat_part();
  if (sgn(r) < 0) r = -r;
  if (sgn(r) == 0) return false;
  out = Scalar::quadratic(0, r, field.d);
  return true;
}

Field Field::quadratic(long d) {
  if (d == 0 || d == 1) throw std::invalid_argument("quadratic field needs square-free d != 0, 1");
  // reject obvious perfect squares
  if (d > 1) {
    mpz_class z(d), r;
    if (mpz_root(r.get_mpz_t(), z.get_mpz_t(), 2) != 0)
      throw std::invalid_argument("radicand " + std::to_string(d) + " is a perfect square");
  }
  Field f;
  f.kind = Kind::Quadratic;
  f.d = d;
  return f;
}

std::string Field::str() const {
  return kind == Kind::Rational ? "rational" : "quadratic:" + std::to_string(d);
}

} // namespace hamlie
