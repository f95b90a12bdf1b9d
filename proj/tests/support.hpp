#ifndef HAMLIE_TESTS_SUPPORT_HPP
#define HAMLIE_TESTS_SUPPORT_HPP

#include "hamlie/algebra.hpp"

#include <initializer_list>

namespace hamlie::testing {

/// Message of the exception thrown by f, or "" when nothing was thrown.
template <class F>
std::string thrown_message(F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

inline bool throws_with(const std::string& needle, const std::string& msg) {
  return msg.find(needle) != std::string::npos;
}

inline GroupVector gv(std::initializer_list<long> xs) {
  GroupVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline GroupVector gvq(std::initializer_list<std::pair<long, long>> xs) {
  GroupVector v;
  for (auto [n, d] : xs) v.emplace_back(n, d);
  return v;
}

inline MultiIndex mi(std::initializer_list<int> xs) { return MultiIndex(xs); }

inline AlgebraPtr make_f1() {
  Shape s = Shape::build({1, 0, 0, 0, 0, 0, 0});
  return Algebra::make(Lattice::build(s, Field::rational(), {gv({1, 0}), gv({0, 1})}));
}

inline AlgebraPtr make_f2() {
  Shape s = Shape::build({0, 0, 0, 0, 0, 0, 1});
  return Algebra::make(Lattice::build(s, Field::rational(), {}));
}

inline AlgebraPtr make_f3() {
  Shape s = Shape::build({0, 0, 0, 1, 0, 0, 0});
  return Algebra::make(Lattice::build(s, Field::rational(), {gv({1, 0}), gv({0, 1})}));
}

inline AlgebraPtr make_f4() {
  Shape s = Shape::build({0, 1, 0, 0, 0, 0, 0});
  return Algebra::make(Lattice::build(s, Field::rational(), {gv({1, 0}), gv({0, 1})}));
}

inline AlgebraPtr make_f5() {
  Shape s = Shape::build({0, 0, 0, 0, 1, 0, 0});
  return Algebra::make(Lattice::build(s, Field::rational(), {gv({1, 0})}));
}

inline AlgebraPtr make_f6() {
  Shape s = Shape::build({1, 0, 0, 0, 0, 0, 0});
  Field f = Field::quadratic(2);
  GroupVector g3{Scalar::sqrt_of(2), -Scalar::sqrt_of(2)};
  return Algebra::make(Lattice::build(s, f, {gv({1, 0}), gv({0, 1}), g3}));
}

inline std::vector<AlgebraPtr> all_fixtures() {
  return {make_f1(), make_f2(), make_f3(), make_f4(), make_f5(), make_f6()};
}

} // namespace hamlie::testing

#endif
