#include "doctest.h"
#include "hamlie/scalar.hpp"

using namespace hamlie;

TEST_CASE("rational arithmetic is exact") {
  Scalar a(1, 3), b(1, 6);
  CHECK(a + b == Scalar(1, 2));
  CHECK(a - b == Scalar(1, 6));
  CHECK(a * b == Scalar(1, 18));
  CHECK(a / b == Scalar(2));
  CHECK((a - a).is_zero());
  Scalar third(1, 3);
  Scalar sum;
  for (int i = 0; i < 3; ++i) sum += third;
  CHECK(sum.is_one());
}

TEST_CASE("quadratic field arithmetic") {
  Scalar r2 = Scalar::sqrt_of(2);
  CHECK(r2 * r2 == Scalar(2));
  Scalar v = Scalar(3) + Scalar(2) * r2;
  Scalar inv = v.inverse();
  CHECK(v * inv == Scalar(1));
  CHECK(inv == Scalar(3) - Scalar(2) * r2);  // norm of 3+2*sqrt(2) is 1
  CHECK_THROWS(Scalar::sqrt_of(2) + Scalar::sqrt_of(3));
  CHECK((r2 - r2).is_rational());
}

TEST_CASE("real sign of quadratic values") {
  Scalar r2 = Scalar::sqrt_of(2);
  CHECK((Scalar(1) + r2).real_sign() == 1);
  CHECK((Scalar(-2) + r2).real_sign() == -1);   // sqrt(2) < 2
  CHECK((Scalar(-1) + r2).real_sign() == 1);    // sqrt(2) > 1
  CHECK((Scalar(0) - r2).real_sign() == -1);
}

TEST_CASE("nth roots") {
  Scalar out;
  CHECK(nth_root(Scalar(9), 2, out));
  CHECK(out == Scalar(3));  // positive root first
  CHECK(nth_root(Scalar(-8), 3, out));
  CHECK(out == Scalar(-2));
  CHECK_FALSE(nth_root(Scalar(2), 2, out));
  CHECK_FALSE(nth_root(Scalar(-4), 2, out));
  CHECK(nth_root(Scalar(4, 9), 2, out));
  CHECK(out == Scalar(2, 3));

  Scalar r2 = Scalar::sqrt_of(2);
  Scalar target = (Scalar(1) + r2) * (Scalar(1) + r2);  // 3 + 2*sqrt(2)
  CHECK(nth_root(target, 2, out));
  CHECK(out * out == target);
  CHECK_FALSE(nth_root(r2, 2, out));  // sqrt(sqrt(2)) leaves the field
}

TEST_CASE("canonical strings") {
  CHECK(Scalar(3, 2).str() == "3/2");
  CHECK(Scalar(-3, -2).str() == "3/2");
  CHECK(Scalar(4, 2).str() == "2/1");
  CHECK(Scalar(4, 2).display() == "2");
  Scalar q = Scalar(1, 2) + Scalar(-3, 4) * Scalar::sqrt_of(5);
  CHECK(q.str() == "1/2-3/4*sqrt(5)");
  CHECK(q.display() == "1/2-3/4*sqrt(5)");
}

TEST_CASE("field descriptor") {
  Field q2 = Field::quadratic(2);
  CHECK(q2.admits(Scalar::sqrt_of(2)));
  CHECK(q2.admits(Scalar(5, 7)));
  CHECK_FALSE(q2.admits(Scalar::sqrt_of(3)));
  CHECK_FALSE(Field::rational().admits(Scalar::sqrt_of(2)));
  CHECK_THROWS(Field::quadratic(4));
  CHECK_THROWS(Field::quadratic(1));
}

TEST_CASE("deterministic ordering") {
  CHECK(Scalar(1, 2) < Scalar(2, 3));
  CHECK(Scalar(-1) < Scalar(0));
  Scalar a = Scalar(1) + Scalar(1) * Scalar::sqrt_of(2);
  Scalar b = Scalar(1) + Scalar(2) * Scalar::sqrt_of(2);
  CHECK(a < b);
}
