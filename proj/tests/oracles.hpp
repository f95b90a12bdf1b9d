#ifndef HAMLIE_TESTS_ORACLES_HPP
#define HAMLIE_TESTS_ORACLES_HPP

// Independent reference implementations of the classical brackets, kept free
// of any kernel code so they can serve as oracles for the regression
// fixtures. Polynomial case: [f,g] = sum_i (d_{t_i} f d_{t_{l+i}} g -
// d_{t_{l+i}} f d_{t_i} g). Laurent case: [f,g] = sum_p (x_p x_pbar)^{-1}
// (d*_p f d*_pbar g - d*_pbar f d*_p g) with grading operators, written in
// the renormalized exponents where the prefactor adds (1,1) to the pair.

#include "hamlie/scalar.hpp"

#include <map>
#include <vector>

namespace hamlie::testing {

/// F[t_1..t_{2l}] with the classical Poisson bracket.
struct ClassicalPoly {
  int ell;  // pairs
  std::map<std::vector<int>, Scalar> terms;

  explicit ClassicalPoly(int l) : ell(l) {}

  static ClassicalPoly mono(int l, std::vector<int> e, Scalar c = Scalar(1)) {
    ClassicalPoly p(l);
    p.terms[std::move(e)] = c;
    return p;
  }

  void add(const std::vector<int>& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  ClassicalPoly dt(int i) const {  // 1-based slot in 1..2l
    ClassicalPoly r(ell);
    for (const auto& [e, c] : terms) {
      if (e[i - 1] == 0) continue;
      auto d = e;
      d[i - 1] -= 1;
      r.add(d, c * Scalar(e[i - 1]));
    }
    return r;
  }

  ClassicalPoly mul(const ClassicalPoly& o) const {
    ClassicalPoly r(ell);
    for (const auto& [e1, c1] : terms)
      for (const auto& [e2, c2] : o.terms) {
        auto e = e1;
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += e2[k];
        r.add(e, c1 * c2);
      }
    return r;
  }

  ClassicalPoly sub(const ClassicalPoly& o) const {
    ClassicalPoly r = *this;
    for (const auto& [e, c] : o.terms) r.add(e, -c);
    return r;
  }

  ClassicalPoly bracket(const ClassicalPoly& g) const {
    ClassicalPoly r(ell);
    for (int i = 1; i <= ell; ++i) {
      auto t1 = dt(i).mul(g.dt(ell + i));
      auto t2 = dt(ell + i).mul(g.dt(i));
      r = r.sub(t2.sub(t1));
    }
    return r;
  }
};

/// F[x_1^{+-1}, ..., x_{2l}^{+-1}] with the grading-operator bracket (the
/// renormalized form: the pair prefactor raises both paired exponents by 1).
struct LaurentPoly {
  int ell;
  std::map<std::vector<int>, Scalar> terms;

  explicit LaurentPoly(int l) : ell(l) {}

  static LaurentPoly mono(int l, std::vector<int> e, Scalar c = Scalar(1)) {
    LaurentPoly p(l);
    p.terms[std::move(e)] = c;
    return p;
  }

  void add(const std::vector<int>& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  LaurentPoly dstar(int p) const {
    LaurentPoly r(ell);
    for (const auto& [e, c] : terms) r.add(e, c * Scalar(e[p - 1]));
    return r;
  }

  LaurentPoly shift_pair(int p) const {  // multiply by x^{eps_p + eps_pbar}
    LaurentPoly r(ell);
    for (const auto& [e, c] : terms) {
      auto s = e;
      s[p - 1] += 1;
      s[ell + p - 1] += 1;
      r.add(s, c);
    }
    return r;
  }

  LaurentPoly mul(const LaurentPoly& o) const {
    LaurentPoly r(ell);
    for (const auto& [e1, c1] : terms)
      for (const auto& [e2, c2] : o.terms) {
        auto e = e1;
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += e2[k];
        r.add(e, c1 * c2);
      }
    return r;
  }

  LaurentPoly sub(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms) r.add(e, -c);
    return r;
  }

  LaurentPoly bracket(const LaurentPoly& g) const {
    LaurentPoly r(ell);
    for (int p = 1; p <= ell; ++p) {
      auto pos = dstar(p).mul(g.dstar(ell + p));
      auto neg = dstar(ell + p).mul(g.dstar(p));
      r = r.sub(neg.sub(pos).shift_pair(p));
    }
    return r;
  }
};

} // namespace hamlie::testing

#endif
