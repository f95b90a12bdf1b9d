#include "doctest.h"
#include "hamlie/lattice.hpp"
#include "support.hpp"

using namespace hamlie;
using namespace hamlie::testing;

TEST_CASE("shape derived data for (1,0,...,0)") {
  Shape s = Shape::build({1, 0, 0, 0, 0, 0, 0});
  CHECK(s.n() == 1);
  CHECK(s.dim() == 2);
  CHECK(s.bar(1) == 2);
  CHECK(s.bar(2) == 1);
  CHECK(s.sigma(1) == gv({1, 1}));
  CHECK(s.sigma(2) == gv({1, 1}));  // sigma_pbar = sigma_p
  CHECK(s.block(1) == 1);
  CHECK(s.block(2) == 1);
  CHECK(s.eta(1) == 1);
  CHECK(s.eta(2) == -1);
  CHECK_FALSE(s.t_allowed(1));
  CHECK_FALSE(s.t_allowed(2));
  CHECK(s.gamma_allowed(1));
  CHECK(s.gamma_allowed(2));
}

TEST_CASE("shape derived data for (0,...,0,1)") {
  Shape s = Shape::build({0, 0, 0, 0, 0, 0, 1});
  CHECK(s.I_range(7, 7) == std::vector<int>{1});
  CHECK(s.sigma(1) == gv({0, 0}));
  CHECK(s.t_allowed(1));
  CHECK(s.t_allowed(2));
  CHECK_FALSE(s.gamma_allowed(1));
  CHECK_FALSE(s.gamma_allowed(2));
}

TEST_CASE("shape derived data for (0,1,0,...,0)") {
  Shape s = Shape::build({0, 1, 0, 0, 0, 0, 0});
  CHECK(s.sigma(1) == gv({1, 0}));  // sigma = eps_1 on I_2
  CHECK(s.eta(2) == 0);             // eta_{bar 1} = 0 over I_2
  CHECK(s.t_allowed(1));            // I_2 carries t
  CHECK_FALSE(s.t_allowed(2));      // Ibar_2 does not
}

TEST_CASE("sigma and eta are consistent: sigma_q = eps_q - eta_qbar eps_qbar") {
  for (auto l : std::vector<std::array<int, 7>>{{2, 1, 1, 1, 0, 0, 0}, {1, 1, 1, 1, 1, 1, 1}}) {
    Shape s = Shape::build(l);
    for (int q : s.I_range(1, 4)) {
      GroupVector expect = s.epsilon(q);
      GroupVector corr = scale(Scalar(-s.eta(s.bar(q))), s.epsilon(s.bar(q)));
      CHECK(s.sigma(q) == add(expect, corr));
    }
    // bar is a fixed-point-free involution exchanging the halves
    for (int p = 1; p <= s.dim(); ++p) {
      CHECK(s.bar(p) != p);
      CHECK(s.bar(s.bar(p)) == p);
      CHECK(s.barred(s.bar(p)) == !s.barred(p));
    }
  }
}

TEST_CASE("all-zero shape is rejected") {
  CHECK_THROWS(Shape::build({0, 0, 0, 0, 0, 0, 0}));
}

TEST_CASE("lattice validation") {
  Shape s1 = Shape::build({1, 0, 0, 0, 0, 0, 0});
  CHECK_NOTHROW(Lattice::build(s1, Field::rational(), {gv({1, 0}), gv({0, 1})}));
  CHECK(throws_with("dependent basis", thrown_message([&] {
    Lattice::build(s1, Field::rational(), {gv({1, 1}), gv({2, 2})});
  })));
  // sigma_1 = (1,1) must be reachable
  CHECK(throws_with("sigma_1", thrown_message([&] {
    Lattice::build(s1, Field::rational(), {gv({1, 0}), gv({0, 2})});
  })));

  Shape s5 = Shape::build({0, 0, 0, 0, 1, 0, 0});
  CHECK_NOTHROW(Lattice::build(s5, Field::rational(), {gv({1, 0})}));
  // the barred I_5 coordinate is structurally zero
  CHECK(throws_with("p=2", thrown_message([&] {
    Lattice::build(s5, Field::rational(), {gv({0, 1})});
  })));
  // eps_1 itself must lie in the lattice for I_5
  CHECK(throws_with("epsilon_1", thrown_message([&] {
    Lattice::build(s5, Field::rational(), {gv({2, 0})});
  })));
}

TEST_CASE("lattice membership") {
  auto f1 = make_f1();
  const Lattice& L = f1->lattice();
  CHECK(L.contains(gv({1, 1})));
  CHECK_FALSE(L.contains(gvq({{1, 2}, {0, 1}})));

  Shape s = Shape::build({1, 0, 0, 0, 0, 0, 0});
  Lattice half = Lattice::build(s, Field::rational(), {gvq({{1, 2}, {1, 2}}), gv({1, -1})});
  CHECK_FALSE(half.contains(gv({1, 0})));
  CHECK(half.contains(gv({2, 0})));
  auto c = half.int_coordinates(gv({2, 0}));
  REQUIRE(c.has_value());
  CHECK((*c)[0] == 2);
  CHECK((*c)[1] == 1);
}

TEST_CASE("epsilon multiples and lambda probes") {
  auto f1 = make_f1();
  CHECK(f1->lattice().epsilon_multiple(2) == Scalar(1));
  CHECK(f1->lattice().lambda(1) == gv({0, 1}));

  Shape s = Shape::build({1, 0, 0, 0, 0, 0, 0});
  Lattice half = Lattice::build(s, Field::rational(), {gvq({{1, 2}, {1, 2}}), gv({1, -1})});
  CHECK(half.epsilon_multiple(1) == Scalar(2));
  Lattice diag = Lattice::build(s, Field::rational(), {gv({1, 1}), gv({1, -1})});
  CHECK(diag.epsilon_multiple(1) == Scalar(2));
  CHECK(diag.lambda(1) == gv({0, 2}));
}

TEST_CASE("pi map") {
  auto f1 = make_f1();
  CHECK(f1->lattice().pi(gv({2, 0})) == std::vector<Scalar>{Scalar(2)});
  for (int p : f1->shape().I_range(1, 4)) {
    auto v = f1->lattice().pi(f1->shape().sigma(p));
    for (const auto& x : v) CHECK(x.is_zero());
  }
  auto f5 = make_f5();
  CHECK(f5->lattice().pi(gv({3, 0})) == std::vector<Scalar>{Scalar(-3)});
  CHECK_THROWS(f1->lattice().pi(gvq({{1, 2}, {0, 1}})));

  // pi is additive on lattice points
  auto f3 = make_f3();
  GroupVector a = gv({2, -1}), b = gv({-3, 4});
  auto pa = f3->lattice().pi(a), pb = f3->lattice().pi(b), ps = f3->lattice().pi(add(a, b));
  for (std::size_t k = 0; k < ps.size(); ++k) CHECK(ps[k] == pa[k] + pb[k]);
}

TEST_CASE("quadratic-field fixture builds and probes") {
  auto f6 = make_f6();
  const Lattice& L = f6->lattice();
  CHECK(L.rank() == 3);
  CHECK(L.epsilon_multiple(1) == Scalar(1));
  CHECK(L.epsilon_multiple(2) == Scalar(1));
  GroupVector g3{Scalar::sqrt_of(2), -Scalar::sqrt_of(2)};
  CHECK(L.contains(g3));
  CHECK(L.contains(add(gv({1, 0}), g3)));
  GroupVector bad{Scalar::sqrt_of(2), Scalar::sqrt_of(2)};
  CHECK_FALSE(L.contains(bad));
  auto p = L.pi(g3);
  CHECK(p[0] == Scalar(2) * Scalar::sqrt_of(2));
}

TEST_CASE("pi kernel basis") {
  auto f1 = make_f1();
  ZMat k = f1->lattice().pi_kernel_basis();
  REQUIRE(k.size() == 1);
  // kernel of (n1 - n2) over the standard basis: spanned by (1,1)
  CHECK(k[0][0] == k[0][1]);
  CHECK(k[0][0] != 0);
}
