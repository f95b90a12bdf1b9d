#include "doctest.h"
#include "hamlie/isomorphisms.hpp"
#include "iso_support.hpp"

using namespace hamlie;
using namespace hamlie::testing;

TEST_CASE("tau on F1: matrix action, additivity, sigma preservation") {
  auto f1 = make_f1();
  const Shape& s = f1->shape();
  PreservingIso id = identity_iso(s);
  CHECK(apply_tau(s, id, gv({3, -2})) == gv({3, -2}));

  PreservingIso iso = identity_iso(s);
  iso.ab[1] = {Scalar(0), Scalar(-1)};  // A_1 = ((-1,0),(2,1))
  CHECK(apply_tau(s, iso, gv({1, 0})) == gv({-1, 0}));
  CHECK(apply_tau(s, iso, s.sigma(1)) == s.sigma(1));
  GroupVector a = gv({2, -1}), b = gv({-3, 5});
  CHECK(apply_tau(s, iso, add(a, b)) == add(apply_tau(s, iso, a), apply_tau(s, iso, b)));
}

TEST_CASE("A_p templates have determinant b_p") {
  Shape s = Shape::build({1, 1, 1, 1, 0, 0, 0});
  PreservingIso iso = identity_iso(s);
  for (int p : s.I_range(1, 4)) iso.ab[p] = {Scalar(2, 3), Scalar(-5, 2)};
  for (int p : s.I_range(1, 4)) {
    Mat a = a_matrix(s, iso, p);
    Scalar det = a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    CHECK(det == Scalar(-5, 2));
  }
}

TEST_CASE("validate_preserving") {
  auto f1 = make_f1();
  PreservingIso iso = identity_iso(f1->shape());
  CHECK(validate_preserving(iso, f1->lattice(), f1->lattice()).ok);

  iso.ab[1] = {Scalar(0), Scalar(-1)};
  CHECK(validate_preserving(iso, f1->lattice(), f1->lattice()).ok);

  iso.ab[1] = {Scalar(0), Scalar(1, 2)};
  auto rep = validate_preserving(iso, f1->lattice(), f1->lattice());
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.detail.empty());

  CHECK_THROWS(validate_preserving(identity_iso(make_f3()->shape()), make_f3()->lattice(),
                                   f1->lattice()));  // shape mismatch
}

TEST_CASE("decompose_tau recomposes and carries the tilde blocks") {
  auto alg = make_iso_fixture();
  const Shape& s = alg->shape();

  // identity decomposes into three identities
  auto idf = decompose_tau(s, identity_iso(s));
  CHECK(tau_matrix(s, idf.nu_part) == Mat::identity(s.dim()));
  CHECK(tau_matrix(s, idf.tau1) == Mat::identity(s.dim()));
  CHECK(tau_matrix(s, idf.tau2) == Mat::identity(s.dim()));

  // a pure B15 iso decomposes with tau2 = tilde(B15) in the I_5 column
  PreservingIso b15 = identity_iso(s);
  b15.B15.at(0, 0) = Scalar(3);
  auto f = decompose_tau(s, b15);
  CHECK(tau_matrix(s, f.nu_part) == Mat::identity(s.dim()));
  CHECK(tau_matrix(s, f.tau1) == Mat::identity(s.dim()));
  CHECK(f.tau2.B15.at(0, 0) == Scalar(3));

  // random isos recompose exactly: tau = tau2 then tau1 then nu
  Rng rng(4242);
  for (int trial = 0; trial < 5; ++trial) {
    auto r = random_preserving_iso(alg, rng);
    auto fac = decompose_tau(s, r.iso);
    Mat lhs = tau_matrix(s, r.iso);
    Mat rhs = tau_matrix(s, fac.tau2) * tau_matrix(s, fac.tau1) * tau_matrix(s, fac.nu_part);
    CHECK(lhs == rhs);
    // tau(sigma_p) = sigma_{nu(p)}
    for (int p : s.I_range(1, 4))
      CHECK(apply_tau(s, r.iso, s.sigma(p)) == s.sigma(r.iso.nu_of(p)));
  }
}

TEST_CASE("extend_character") {
  auto f1 = make_f1();
  Character chi = extend_character(f1->lattice(), {{1, Scalar(-1)}});
  CHECK(chi.values == std::vector<Scalar>{Scalar(-1), Scalar(1)});
  CHECK(character_eval(f1->lattice(), chi, f1->shape().sigma(1)) == Scalar(-1));

  Shape s = f1->shape();
  Lattice half = Lattice::build(s, Field::rational(), {gvq({{1, 2}, {1, 2}}), gv({1, -1})});
  Character chi9 = extend_character(half, {{1, Scalar(9)}});
  CHECK(chi9.values[0] == Scalar(3));  // positive root chosen first
  CHECK(chi9.values[1] == Scalar(1));
  CHECK(throws_with("not representable", thrown_message([&] {
    extend_character(half, {{1, Scalar(2)}});
  })));

  // over Q(sqrt(2)) the same system becomes solvable
  Lattice half2 = Lattice::build(s, Field::quadratic(2),
                                 {gvq({{1, 2}, {1, 2}}), gv({1, -1})});
  Character chi2 = extend_character(half2, {{1, Scalar(2)}});
  CHECK(character_eval(half2, chi2, s.sigma(1)) == Scalar(2));
}

TEST_CASE("theta on F1: the worked example") {
  auto f1 = make_f1();
  const Shape& s = f1->shape();
  PreservingIso iso = identity_iso(s);
  iso.ab[1] = {Scalar(0), Scalar(-1)};
  Character chi = extend_character(f1->lattice(), {{1, Scalar(-1)}});
  AlgebraMorphism theta = build_theta(iso, f1, f1, chi);

  CHECK(theta.apply(Element::x(f1, gv({1, 0}))) == -Element::x(f1, gv({-1, 0})));
  Element u = Element::x(f1, gv({1, 0})), v = Element::x(f1, gv({0, 1}));
  CHECK(theta.apply(bracket_structural(u, v)) ==
        bracket_structural(theta.apply(u), theta.apply(v)));
  auto rep = verify_morphism(theta, 60, 271828);
  CHECK_MESSAGE(rep.ok(), rep.str());

  // identity iso with trivial character gives the identity morphism
  AlgebraMorphism ident = build_theta(identity_iso(s), f1, f1,
                                      extend_character(f1->lattice(), {{1, Scalar(1)}}));
  Rng rng(5);
  SampleOptions opt;
  for (int k = 0; k < 20; ++k) {
    Element e = sample_element(f1, rng, opt);
    CHECK(ident.apply(e) == e);
  }
}

TEST_CASE("a scaling fake fails verify_morphism with a witness") {
  auto f1 = make_f1();
  AlgebraMorphism::Stage st;
  st.src = f1;
  st.tgt = f1;
  st.tau = Mat::identity(f1->shape().dim());
  for (std::size_t i = 0; i < st.tau.rows(); ++i) st.tau.at(i, i) = Scalar(2);  // alpha -> 2 alpha
  AlgebraMorphism fake({st});
  auto rep = verify_morphism(fake, 10, 1);
  CHECK_FALSE(rep.ok());
  CHECK(rep.counterexample.has_value());
}

TEST_CASE("case c on the (1,0,0,0,1,0,0) shape: the solved correction") {
  Shape s = Shape::build({1, 0, 0, 0, 1, 0, 0});
  std::vector<GroupVector> basis;
  for (int p = 1; p <= s.dim(); ++p)
    if (s.gamma_allowed(p)) basis.push_back(s.epsilon(p));
  auto src = Algebra::make(Lattice::build(s, Field::rational(), basis));

  PreservingIso iso = identity_iso(s);
  iso.B15.at(0, 0) = Scalar(2);  // tau: alpha*_5 picks up 2(alpha_1 - alpha_1bar)
  auto val = validate_preserving(iso, src->lattice(), src->lattice());
  CHECK(val.ok);  // integer B keeps the standard lattice
  Character chi{std::vector<Scalar>(basis.size(), Scalar(1))};
  AlgebraMorphism theta = build_theta(iso, src, src, chi);
  // theta(t_2bar) = t'_2bar + 2 x'^{-sigma_1} (the solved E-correction)
  int slot = s.bar(2);
  Element expect = Element::t(src, slot) + Scalar(2) * Element::x(src, negate(s.sigma(1)));
  CHECK(theta.apply(Element::t(src, slot)) == expect);
  auto rep = verify_morphism(theta, 80, 99);
  CHECK_MESSAGE(rep.ok(), rep.str());
}

TEST_CASE("case c solve reports contradictory data") {
  // deliberately broken: the target misses x^{-sigma_1}, so the required
  // corrections for t_2bar cannot be built and the eigenvalue relations
  // cannot close
  Shape s = Shape::build({1, 0, 0, 0, 1, 0, 0});
  std::vector<GroupVector> basis;
  for (int p = 1; p <= s.dim(); ++p)
    if (s.gamma_allowed(p)) basis.push_back(s.epsilon(p));
  auto src = Algebra::make(Lattice::build(s, Field::rational(), basis));
  PreservingIso c = identity_iso(s);
  c.B15.at(0, 0) = Scalar(1);
  auto tgt = Algebra::make(Lattice::build_unchecked(
      s, Field::rational(), {scale(Scalar(2), basis[0]), basis[1], scale(Scalar(2), basis[2])}));
  bool threw = false;
  try {
    solve_case_c(c, src, tgt);
  } catch (const std::domain_error&) {
    threw = true;
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("random validated isomorphisms pass the morphism law") {
  auto alg = make_iso_fixture();
  Rng rng(20240415);
  for (int trial = 0; trial < 2; ++trial) {
    auto r = random_preserving_iso(alg, rng);
    auto val = validate_preserving(r.iso, r.src->lattice(), r.tgt->lattice());
    REQUIRE_MESSAGE(val.ok, val.detail);
    AlgebraMorphism theta = build_theta(r.iso, r.src, r.tgt, r.chi);
    auto rep = verify_morphism(theta, 15, 1000 + trial);
    CHECK_MESSAGE(rep.ok(), rep.str());
  }
}

TEST_CASE("pi-compatibility: pi'(tau alpha) depends only on pi(alpha)") {
  auto alg = make_iso_fixture();
  Rng rng(606);
  auto r = random_preserving_iso(alg, rng);
  const Shape& s = alg->shape();
  SampleOptions opt;
  for (int k = 0; k < 30; ++k) {
    GroupVector a(s.dim()), b(s.dim());
    for (const auto& g : alg->lattice().basis()) {
      long c = rng.range(-2, 2);
      a = add(a, scale(Scalar(c), g));
      b = add(b, scale(Scalar(c), g));
    }
    // perturb b by a pi-kernel vector
    ZMat ker = alg->lattice().pi_kernel_basis();
    for (const auto& row : ker) {
      long c = rng.range(-1, 1);
      for (std::size_t j = 0; j < row.size(); ++j)
        b = add(b, scale(Scalar(mpq_class(row[j] * c)), alg->lattice().basis()[j]));
    }
    CHECK(alg->lattice().pi(a) == alg->lattice().pi(b));
    CHECK(r.tgt->lattice().pi(apply_tau(s, r.iso, a)) ==
          r.tgt->lattice().pi(apply_tau(s, r.iso, b)));
  }
}

TEST_CASE("case c with no unipotent part has zero corrections") {
  Shape s = Shape::build({1, 0, 0, 0, 1, 0, 0});
  std::vector<GroupVector> basis;
  for (int p = 1; p <= s.dim(); ++p)
    if (s.gamma_allowed(p)) basis.push_back(s.epsilon(p));
  auto src = Algebra::make(Lattice::build(s, Field::rational(), basis));
  auto sol = solve_case_c(identity_iso(s), src, src);
  for (std::size_t r = 0; r < sol.E1.rows(); ++r)
    for (std::size_t c = 0; c < sol.E1.cols(); ++c) CHECK(sol.E1.at(r, c).is_zero());
  CHECK(sol.E2 == Mat::identity(sol.E2.rows()));
  for (std::size_t r = 0; r < sol.E3.rows(); ++r)
    for (std::size_t c = 0; c < sol.E3.cols(); ++c) CHECK(sol.E3.at(r, c).is_zero());
  for (std::size_t r = 0; r < sol.E4.rows(); ++r)
    for (std::size_t c = 0; c < sol.E4.cols(); ++c) CHECK(sol.E4.at(r, c).is_zero());
  for (const auto& [p, img] : sol.t_images) CHECK(img == Element::t(src, p));
}
