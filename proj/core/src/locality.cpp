#include "hamlie/locality.hpp"

#include "hamlie/linalg.hpp"

#include <stdexcept>

namespace hamlie {

std::string AdOrbitReport::str() const {
  std::string s = "span_dims=[";
  for (std::size_t k = 0; k < span_dims.size(); ++k)
    s += (k ? "," : "") + std::to_string(span_dims[k]);
  s += "]";
  if (nilpotent_at) s += " nilpotent_at=" + std::to_string(*nilpotent_at);
  return s;
}

AdOrbitReport ad_orbit(const Element& u, const Element& v, int max_power) {
  require_same_algebra(u, v);
  if (max_power < 1) throw std::invalid_argument("ad_orbit wants max_power >= 1");
  AdOrbitReport rep;
  rep.powers.push_back(v);
  Element cur = v;
  for (int n = 1; n <= max_power; ++n) {
    cur = bracket_structural(u, cur);
    rep.powers.push_back(cur);
    if (cur.is_zero() && !rep.nilpotent_at) {
      rep.nilpotent_at = n;
      break;
    }
  }
  // exact rank of the coefficient matrix over all keys seen so far
  std::map<MonoKey, std::size_t> cols;
  for (const auto& e : rep.powers)
    for (const auto& [k, c] : e.terms()) cols.try_emplace(k, cols.size());
  Mat m(rep.powers.size(), std::max<std::size_t>(cols.size(), 1));
  for (std::size_t r = 0; r < rep.powers.size(); ++r)
    for (const auto& [k, c] : rep.powers[r].terms()) m.at(r, cols[k]) = c;
  for (std::size_t n = 0; n < rep.powers.size(); ++n) {
    Mat prefix(n + 1, m.cols());
    for (std::size_t r = 0; r <= n; ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) prefix.at(r, c) = m.at(r, c);
    rep.span_dims.push_back(rank(std::move(prefix)));
  }
  return rep;
}

NilpotencyResult nilpotency_bound_check(const Element& u, const Element& v) {
  require_same_algebra(u, v);
  if (!set_membership(SetName::H2, u)) throw std::invalid_argument("u is not in H_2");
  if (!v.is_monomial()) throw std::invalid_argument("v must be a monomial");
  const Shape& s = u.algebra()->shape();
  const MonoKey& uk = u.terms().begin()->first;
  const MonoKey& vk = v.terms().begin()->first;
  auto usupp = monomial_stats(s, uk).support;

  NilpotencyResult res;
  res.m = 1;
  res.sharp_expected = true;
  for (int q = 1; q <= s.dim(); ++q) {
    bool barred56 = s.barred(q) && (s.block(q) == 5 || s.block(q) == 6);
    bool j7 = s.block(q) == 7;
    if (!barred56 && !j7) continue;
    if (usupp.count(q)) continue;
    res.m += vk.i[q - 1];
    // the leading reduction chain survives iff every counted slot has its
    // partner alive in supp(u)
    if (vk.i[q - 1] > 0 && !usupp.count(s.bar(q))) res.sharp_expected = false;
  }

  Element cur = v;
  for (long n = 1; n < res.m; ++n) cur = bracket_structural(u, cur);
  res.nonzero_at_m_minus_1 = !cur.is_zero();
  cur = bracket_structural(u, cur);
  res.zero_at_m = cur.is_zero();
  return res;
}

EigenReport eigen_membership(const Element& u, std::size_t h2_samples, std::uint64_t seed) {
  if (!u.algebra()) throw std::invalid_argument("operand without algebra");
  EigenReport rep;
  if (u.is_zero()) {
    rep.is_zero = true;
    rep.direct_check = true;
    return rep;
  }
  rep.mu = common_pi(u);

  const AlgebraPtr& alg = u.algebra();
  const Shape& s = alg->shape();
  std::vector<Element> tests;
  for (int p : s.I_range(1, 4)) tests.push_back(Element::x(alg, negate(s.sigma(p))));
  for (int q : s.I_range(5, 6)) tests.push_back(Element::t(alg, s.bar(q)));
  // targeted probes: for alive down-grading slots the separating elements
  // are x^{eps_pbar} (barred I_{5,6} slots) and t_pbar (J_7 slots)
  for (const auto& [k, c] : u.terms())
    for (int p = 1; p <= s.dim(); ++p) {
      if (k.i[p - 1] == 0) continue;
      int blk = s.block(p);
      if (s.barred(p) && (blk == 5 || blk == 6))
        tests.push_back(Element::x(alg, s.epsilon(s.bar(p))));
      else if (blk == 7)
        tests.push_back(Element::t(alg, s.bar(p)));
    }
  SampleOptions opt;
  for (std::size_t k = 0; k < h2_samples; ++k) {
    Rng rng = Rng::for_sample(seed, k);
    for (int tries = 0; tries < 32; ++tries) {
      Element h = sample_monomial(alg, rng, opt);
      if (set_membership(SetName::H2, h)) {
        tests.push_back(h);
        break;
      }
    }
  }
  rep.direct_check = true;
  for (const auto& h : tests) {
    Element br = bracket_structural(h, u);
    if (br.is_zero()) continue;
    // proportionality to u
    if (br.size() != u.size()) {
      rep.direct_check = false;
      break;
    }
    auto itb = br.terms().begin();
    auto itu = u.terms().begin();
    Scalar ratio = itb->second / itu->second;
    bool prop = true;
    for (; itb != br.terms().end(); ++itb, ++itu)
      if (!(itb->first == itu->first) || itb->second != ratio * itu->second) prop = false;
    if (!prop) {
      rep.direct_check = false;
      break;
    }
  }
  return rep;
}

std::pair<bool, bool> mf_mn_membership(const Element& u) {
  if (!set_membership(SetName::M, u))
    throw std::invalid_argument("MF/MN classification wants an element of M");
  const Shape& s = u.algebra()->shape();
  bool in_mn = true, in_mf = true;
  for (const auto& [k, c] : u.terms()) {
    bool flat = true;  // alpha vanishes on J_{1,4}
    for (int p = 1; p <= s.dim(); ++p)
      if (s.block(p) <= 4 && !k.alpha[p - 1].is_zero()) flat = false;
    if (flat) continue;
    in_mn = false;
    bool is_neg_sigma = false;
    for (int p : s.I_range(1, 4))
      if (k.alpha == negate(s.sigma(p))) is_neg_sigma = true;
    if (!is_neg_sigma) in_mf = false;
  }
  return {in_mf, in_mn};
}

CyclicProbeReport cyclic_probe(const GroupVector& alpha, const Element& u) {
  if (!u.algebra()) throw std::invalid_argument("operand without algebra");
  const AlgebraPtr& alg = u.algebra();
  const Shape& s = alg->shape();
  const Lattice& L = alg->lattice();
  auto pis = L.pi(alpha);
  for (const auto& x : pis)
    if (!x.is_zero()) throw std::invalid_argument("cyclic probe wants pi(alpha) = 0");
  auto mu = common_pi(u);
  if (!u.is_zero() && !mu) throw std::invalid_argument("cyclic probe wants u in some M_mu");

  CyclicProbeReport rep;
  rep.lhs = bracket_structural(Element::x(alg, alpha), u);
  rep.rhs = Element::zero(alg);
  if (mu) {
    for (int p : s.I_range(1, 4)) {
      Scalar w = -alpha[p - 1] * (*mu)[p - 1];
      if (w.is_zero()) continue;
      rep.rhs += w * multiply(Element::x(alg, add(s.sigma(p), alpha)), u);
    }
  }
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

Element growth_target(const AlgebraPtr& alg, const MonoKey& u_key, int p, int max_power) {
  const Shape& s = alg->shape();
  const Lattice& L = alg->lattice();
  if (s.barred(p) || s.block(p) > 4) throw std::out_of_range("growth recipe wants p in I_{1,4}");
  const Scalar gp = u_key.alpha[p - 1];
  const Scalar gpb = u_key.alpha[s.bar(p) - 1];
  if (gp.is_zero() && gpb.is_zero())
    throw std::invalid_argument("growth recipe wants activity at the chosen pair");
  // probe along eps_pbar when gamma_p is alive, else along eps_p; the m-th
  // chain coefficient is det(gamma, b axis)_p + m (gamma_p sigma_pbar -
  // gamma_pbar sigma_p)
  int axis = gp.is_zero() ? p : s.bar(p);
  Scalar e = L.epsilon_multiple(axis);
  Scalar base = gp.is_zero() ? -gpb : gp;
  Scalar slope = gp * s.sigma(p)[s.bar(p) - 1] - gpb * s.sigma(p)[p - 1];
  for (long height = 1; height <= 64; ++height) {
    for (int sign = 0; sign < 2; ++sign) {
      Scalar b = Scalar(sign == 0 ? height : -height) * e;
      bool ok = true;
      for (int m = 0; m <= max_power && ok; ++m)
        if ((base * b + Scalar(m) * slope).is_zero()) ok = false;
      if (ok) return Element::x(alg, scale(b, s.epsilon(axis)));
    }
  }
  throw std::domain_error("no admissible growth multiple found");
}

} // namespace hamlie
