#include "hamlie/algebra.hpp"

#include <stdexcept>

namespace hamlie {

bool Algebra::valid_key(const MonoKey& k, std::string* why) const {
  const Shape& s = shape();
  if (static_cast<int>(k.alpha.size()) != s.dim() || static_cast<int>(k.i.size()) != s.dim()) {
    if (why) *why = "key length mismatch";
    return false;
  }
  for (int p = 1; p <= s.dim(); ++p) {
    if (k.i[p - 1] < 0) {
      if (why) *why = "negative multi-index at p=" + std::to_string(p);
      return false;
    }
    if (!extended_ && !s.t_allowed(p) && k.i[p - 1] != 0) {
      if (why) *why = "multi-index constraint forbids t at p=" + std::to_string(p);
      return false;
    }
  }
  if (!lattice_.contains(k.alpha)) {
    if (why) *why = "group part is not a lattice point";
    return false;
  }
  return true;
}

Scalar Element::coeff(const MonoKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Scalar() : it->second;
}

void Element::add_term(const MonoKey& k, const Scalar& c) {
  if (!alg_) throw std::logic_error("element without algebra");
  if (c.is_zero()) return;
  std::string why;
  if (!alg_->valid_key(k, &why)) throw std::invalid_argument("invalid monomial: " + why);
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element Element::monomial(AlgebraPtr alg, GroupVector alpha, MultiIndex i, Scalar c) {
  Element e(std::move(alg));
  e.add_term(MonoKey{std::move(alpha), std::move(i)}, c);
  return e;
}

Element Element::x(AlgebraPtr alg, GroupVector alpha, Scalar c) {
  MultiIndex i(alg->shape().dim(), 0);
  return monomial(std::move(alg), std::move(alpha), std::move(i), c);
}

Element Element::t(AlgebraPtr alg, int p, int power) {
  const Shape& s = alg->shape();
  GroupVector a(s.dim());
  MultiIndex i(s.dim(), 0);
  i.at(p - 1) = power;
  return monomial(std::move(alg), std::move(a), std::move(i));
}

Element Element::one(AlgebraPtr alg) {
  const Shape& s = alg->shape();
  return monomial(std::move(alg), GroupVector(s.dim()), MultiIndex(s.dim(), 0));
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

Element& Element::operator+=(const Element& o) {
  if (!alg_) {
    *this = o;
    return *this;
  }
  if (!o.terms_.empty()) require_same_algebra(*this, o);
  for (const auto& [k, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Element& Element::operator-=(const Element& o) { return *this += -o; }

Element& Element::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

Element Element::to_extended() const {
  if (!alg_) throw std::logic_error("element without algebra");
  if (alg_->extended()) return *this;
  Element r(Algebra::make(alg_->lattice(), true));
  for (const auto& [k, c] : terms_) r.add_term(k, c);
  return r;
}

Element Element::to_restricted() const {
  if (!alg_) throw std::logic_error("element without algebra");
  if (!alg_->extended()) return *this;
  Element r(Algebra::make(alg_->lattice(), false));
  for (const auto& [k, c] : terms_) r.add_term(k, c);  // add_term re-validates
  return r;
}

void require_same_algebra(const Element& u, const Element& v) {
  if (!u.algebra() || !v.algebra()) throw std::invalid_argument("operand without algebra");
  if (u.algebra() == v.algebra()) return;
  if (!(*u.algebra() == *v.algebra()))
    throw std::invalid_argument("mixed-algebra operands");
}

Element multiply(const Element& u, const Element& v) {
  require_same_algebra(u, v);
  Element r(u.algebra());
  for (const auto& [ku, cu] : u.terms())
    for (const auto& [kv, cv] : v.terms()) {
      MonoKey k{add(ku.alpha, kv.alpha), ku.i};
      for (std::size_t p = 0; p < k.i.size(); ++p) k.i[p] += kv.i[p];
      r.add_term(k, cu * cv);
    }
  return r;
}

namespace {

// One structural bracket of basis monomials, accumulated into `out`.
void bracket_keys(const Shape& s, const MonoKey& a, const MonoKey& b, const Scalar& coef,
                  Element& out) {
  const GroupVector& al = a.alpha;
  const MultiIndex& ai = a.i;
  const GroupVector& bl = b.alpha;
  const MultiIndex& bi = b.i;
  const int n = s.n();

  auto emit = [&](int p, const Scalar& factor, bool dec_p, bool dec_pbar) {
    if (factor.is_zero()) return;
    MonoKey k{add(s.sigma(p), add(al, bl)), ai};
    for (std::size_t q = 0; q < k.i.size(); ++q) k.i[q] += bi[q];
    if (dec_p) k.i[p - 1] -= 1;
    if (dec_pbar) k.i[s.bar(p) - 1] -= 1;
    out.add_term(k, coef * factor);
  };

  for (int p = 1; p <= n; ++p) {
    const int pb = s.bar(p);
    const Scalar &ap = al[p - 1], &apb = al[pb - 1];
    const Scalar &bp = bl[p - 1], &bpb = bl[pb - 1];
    const int ip = ai[p - 1], ipb = ai[pb - 1];
    const int jp = bi[p - 1], jpb = bi[pb - 1];

    if (s.in_I(p, 1, 4)) {
      emit(p, ap * bpb - apb * bp, false, false);
      emit(p, Scalar(ip) * bpb - Scalar(jp) * apb, true, false);
    }
    if (s.in_I(p, 1, 6)) emit(p, ap * Scalar(jpb) - Scalar(ipb) * bp, false, true);
    emit(p, Scalar(ip) * Scalar(jpb) - Scalar(ipb) * Scalar(jp), true, true);
  }
}

} // namespace

Element bracket_structural(const Element& u, const Element& v) {
  require_same_algebra(u, v);
  Element r(u.algebra());
  for (const auto& [ku, cu] : u.terms())
    for (const auto& [kv, cv] : v.terms()) bracket_keys(u.algebra()->shape(), ku, kv, cu * cv, r);
  return r;
}

Element apply_operator(OpKind kind, int p, const Element& u) {
  if (!u.algebra()) throw std::invalid_argument("operand without algebra");
  const Shape& s = u.algebra()->shape();
  if (p < 1 || p > s.dim()) throw std::out_of_range("operator index outside J");
  Element r(u.algebra());
  for (const auto& [k, c] : u.terms()) {
    if (kind == OpKind::Grading || kind == OpKind::Mixed) {
      Scalar f = c * k.alpha[p - 1];
      if (!f.is_zero()) r.add_term(k, f);
    }
    if (kind == OpKind::DownGrading || kind == OpKind::Mixed) {
      int ip = k.i[p - 1];
      if (ip != 0) {
        MonoKey dk = k;
        dk.i[p - 1] -= 1;
        r.add_term(dk, c * Scalar(ip));
      }
    }
  }
  return r;
}

Element bracket_defining(const Element& u, const Element& v) {
  require_same_algebra(u, v);
  const AlgebraPtr& alg = u.algebra();
  const Shape& s = alg->shape();
  Element r(alg);
  for (int p = 1; p <= s.n(); ++p) {
    int pb = s.bar(p);
    Element du = apply_operator(OpKind::Mixed, p, u);
    Element dbu = apply_operator(OpKind::Mixed, pb, u);
    Element dv = apply_operator(OpKind::Mixed, p, v);
    Element dbv = apply_operator(OpKind::Mixed, pb, v);
    Element term = multiply(du, dbv) - multiply(dbu, dv);
    if (term.is_zero()) continue;
    r += multiply(Element::x(alg, s.sigma(p)), term);
  }
  return r;
}

MonomialStats monomial_stats(const Shape& shape, const MonoKey& key) {
  MonomialStats st;
  for (int p = 1; p <= shape.dim(); ++p) {
    st.level += key.i[p - 1];
    if (!key.alpha[p - 1].is_zero() || key.i[p - 1] != 0) st.support.insert(p);
  }
  return st;
}

namespace {

bool h2_key(const Shape& s, const MonoKey& k) {
  // alpha zero on J_{1,4}; i zero on J_{1,4} and Ibar_{5,6}; no i_p i_pbar
  // pair alive over J_7.
  for (int p = 1; p <= s.dim(); ++p) {
    int blk = s.block(p);
    if (blk <= 4 && !k.alpha[p - 1].is_zero()) return false;
    if (blk <= 4 && k.i[p - 1] != 0) return false;
    if ((blk == 5 || blk == 6) && s.barred(p) && k.i[p - 1] != 0) return false;
  }
  for (int p : s.I_range(7, 7))
    if (k.i[p - 1] != 0 && k.i[s.bar(p) - 1] != 0) return false;
  return true;
}

bool h3_key(const Shape& s, const MonoKey& k) {
  for (int p = 1; p <= s.dim(); ++p) {
    int blk = s.block(p);
    if (blk <= 4 && !k.alpha[p - 1].is_zero()) return false;
    if (blk <= 4 && k.i[p - 1] != 0) return false;
    if ((blk == 5 || blk == 6) && s.barred(p) && k.i[p - 1] != 0) return false;
  }
  return true;
}

bool pure_x_key(const MonoKey& k) {
  for (int ip : k.i)
    if (ip != 0) return false;
  return true;
}

} // namespace

bool set_membership(SetName which, const Element& u) {
  if (!u.algebra()) throw std::invalid_argument("operand without algebra");
  const Shape& s = u.algebra()->shape();
  switch (which) {
    case SetName::H1: {
      if (!u.is_monomial()) return false;
      const MonoKey& k = u.terms().begin()->first;
      if (pure_x_key(k)) {
        for (int p : s.I_range(1, 4))
          if (k.alpha == negate(s.sigma(p))) return true;
        return false;
      }
      if (!is_zero_vector(k.alpha)) return false;
      int nonzero = 0, where = 0;
      for (int p = 1; p <= s.dim(); ++p)
        if (k.i[p - 1] != 0) {
          nonzero += k.i[p - 1];
          where = p;
        }
      if (nonzero != 1) return false;
      return s.barred(where) && (s.block(where) == 5 || s.block(where) == 6);
    }
    case SetName::H2:
      return u.is_monomial() && h2_key(s, u.terms().begin()->first);
    case SetName::H3: {
      for (const auto& [k, c] : u.terms())
        if (!h3_key(s, k)) return false;
      return true;
    }
    case SetName::M: {
      for (const auto& [k, c] : u.terms())
        if (!pure_x_key(k)) return false;
      return true;
    }
  }
  return false;
}

bool in_M_mu(const Element& u, const std::vector<Scalar>& mu) {
  if (!set_membership(SetName::M, u)) return false;
  const Lattice& L = u.algebra()->lattice();
  for (const auto& [k, c] : u.terms())
    if (L.pi(k.alpha) != mu) return false;
  return true;
}

std::optional<std::vector<Scalar>> common_pi(const Element& u) {
  if (u.is_zero()) return std::nullopt;
  if (!set_membership(SetName::M, u)) return std::nullopt;
  const Lattice& L = u.algebra()->lattice();
  std::optional<std::vector<Scalar>> mu;
  for (const auto& [k, c] : u.terms()) {
    auto p = L.pi(k.alpha);
    if (!mu)
      mu = p;
    else if (*mu != p)
      return std::nullopt;
  }
  return mu;
}

} // namespace hamlie
