#include "hamlie/cohomology.hpp"

#include <algorithm>
#include <functional>

namespace hamlie {

bool Cocycle::Table::in_box(const MonoKey& k) const {
  return std::find(box.begin(), box.end(), k) != box.end();
}

namespace {

void require_sigma_carrier(const Shape& s) {
  if (s.n() != s.l()[0])
    throw std::invalid_argument("phi cocycles exist only when iota7 = l1");
}

Scalar eval_on_keys(const Cocycle& c, const AlgebraPtr& alg, const MonoKey& ku, const MonoKey& kv);

Scalar eval_phi_family(const Cocycle::Node& node, const AlgebraPtr& alg, const MonoKey& ku,
                       const MonoKey& kv) {
  const Shape& s = alg->shape();
  require_sigma_carrier(s);
  GroupVector sum = add(ku.alpha, kv.alpha);
  GroupVector sigma = sigma_total(s);
  if (auto* pp = std::get_if<Cocycle::PhiP>(&node)) {
    if (s.barred(pp->p) || s.block(pp->p) != 1) throw std::out_of_range("phi_p wants p in I_1");
    if (sum != sub(sigma, s.sigma(pp->p))) return Scalar();
    return ku.alpha[pp->p - 1];
  }
  if (auto* pq = std::get_if<Cocycle::PhiPPrime>(&node)) {
    if (s.barred(pq->p) || s.block(pq->p) != 1) throw std::out_of_range("phi'_p wants p in I_1");
    if (sum != sub(sigma, s.sigma(pq->p))) return Scalar();
    return ku.alpha[s.bar(pq->p) - 1];
  }
  const auto& pm = std::get<Cocycle::PhiMu>(node);
  if (sum != sigma) return Scalar();
  return hom_eval(alg->lattice(), pm.mu, ku.alpha);
}

Scalar eval_on_keys(const Cocycle& c, const AlgebraPtr& alg, const MonoKey& ku, const MonoKey& kv) {
  const auto& node = c.node();
  if (std::holds_alternative<Cocycle::PhiP>(node) ||
      std::holds_alternative<Cocycle::PhiPPrime>(node) ||
      std::holds_alternative<Cocycle::PhiMu>(node))
    return eval_phi_family(node, alg, ku, kv);
  if (auto* cb = std::get_if<Cocycle::Coboundary>(&node)) {
    Element br = bracket_structural(Element::monomial(alg, ku.alpha, ku.i),
                                    Element::monomial(alg, kv.alpha, kv.i));
    return cb->f(br);
  }
  if (auto* tb = std::get_if<Cocycle::Table>(&node)) {
    if (!tb->in_box(ku) || !tb->in_box(kv))
      throw std::out_of_range("table cocycle queried outside its box");
    auto it = tb->values.find({ku, kv});
    if (it != tb->values.end()) return it->second;
    it = tb->values.find({kv, ku});
    if (it != tb->values.end()) return -it->second;
    return Scalar();
  }
  const auto& combo = std::get<Cocycle::Combo>(node);
  Scalar s;
  for (const auto& [w, part] : combo.parts) s += w * eval_on_keys(part, alg, ku, kv);
  return s;
}

} // namespace

Scalar eval_cocycle(const Cocycle& c, const Element& u, const Element& v) {
  require_same_algebra(u, v);
  Scalar s;
  for (const auto& [ku, cu] : u.terms())
    for (const auto& [kv, cv] : v.terms()) s += cu * cv * eval_on_keys(c, u.algebra(), ku, kv);
  return s;
}

PropertyReport check_cocycle_laws(const AlgebraPtr& alg, const Cocycle& c, std::size_t samples,
                                  std::uint64_t seed) {
  PropertyReport rep;
  rep.name = "cocycle-laws";
  rep.samples = samples;
  SampleOptions opt;

  // Table cocycles can only be probed inside their box.
  const Cocycle::Table* tb = std::get_if<Cocycle::Table>(&c.node());
  auto draw = [&](Rng& rng) {
    if (tb && !tb->box.empty()) {
      const MonoKey& k = tb->box[static_cast<std::size_t>(
          rng.range(0, static_cast<long>(tb->box.size()) - 1))];
      return Element::monomial(alg, k.alpha, k.i, sample_scalar(alg->field(), rng, true));
    }
    return sample_monomial(alg, rng, opt);
  };

  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng = Rng::for_sample(seed, k);
    Element u = draw(rng), v = draw(rng), w = draw(rng);
    bool ok = true;
    if (!(eval_cocycle(c, u, v) + eval_cocycle(c, v, u)).is_zero()) ok = false;
    if (ok && !tb) {
      Scalar cyc = eval_cocycle(c, bracket_structural(u, v), w) +
                   eval_cocycle(c, bracket_structural(v, w), u) +
                   eval_cocycle(c, bracket_structural(w, u), v);
      if (!cyc.is_zero()) ok = false;
    }
    if (ok) {
      ++rep.passes;
    } else if (!rep.counterexample) {
      rep.counterexample = "sample " + std::to_string(k);
    }
  }
  return rep;
}

std::vector<MonoKey> enumerate_box(const Algebra& alg, long coord_bound, int max_level) {
  const Shape& s = alg.shape();
  const Lattice& L = alg.lattice();
  std::vector<GroupVector> alphas{GroupVector(s.dim())};
  for (const auto& g : L.basis()) {
    std::vector<GroupVector> next;
    for (const auto& a : alphas)
      for (long c = -coord_bound; c <= coord_bound; ++c)
        next.push_back(c == 0 ? a : add(a, scale(Scalar(c), g)));
    alphas = std::move(next);
  }
  std::vector<int> slots;
  for (int p = 1; p <= s.dim(); ++p)
    if (alg.extended() || s.t_allowed(p)) slots.push_back(p);
  std::vector<MultiIndex> indices{MultiIndex(s.dim(), 0)};
  for (int slot : slots) {
    std::vector<MultiIndex> next;
    for (const auto& i : indices) {
      int used = 0;
      for (int q : i) used += q;
      for (int v = 0; v + used <= max_level; ++v) {
        MultiIndex j = i;
        j[slot - 1] = v;
        next.push_back(std::move(j));
      }
    }
    indices = std::move(next);
  }
  std::vector<MonoKey> box;
  std::set<MonoKey> seen;
  for (const auto& a : alphas)
    for (const auto& i : indices) {
      MonoKey k{a, i};
      if (seen.insert(k).second) box.push_back(k);
    }
  return box;
}

std::string ReduceResult::str() const {
  if (missing_key) return "reduction blocked: " + *missing_key;
  return "pairs=" + std::to_string(pairs_checked) +
         " nonzero_residuals=" + std::to_string(nonzero_residuals);
}

ReduceResult reduce_cocycle(const AlgebraPtr& alg, const Cocycle& psi,
                            const std::vector<MonoKey>& box, int p) {
  const Shape& s = alg->shape();
  if (s.n() == s.l()[0])
    throw std::invalid_argument("reduction applies when iota7 != l1");
  if (s.barred(p) || s.block(p) == 1 || !s.t_allowed(p))
    throw std::invalid_argument("reduction index must be unbarred with a t-slot (blocks 2-4, 6, 7)");
  const int blk = s.block(p);
  const int pb = s.bar(p);
  Element tp = Element::t(alg, p);

  ReduceResult res;
  std::map<MonoKey, Scalar> memo;
  std::optional<std::string> blocked;

  // psi(t_p, x^{beta,j}), guarded for table cocycles with a too-small box
  auto psi_t = [&](const MonoKey& k) -> Scalar {
    try {
      return eval_cocycle(psi, tp, Element::monomial(alg, k.alpha, k.i));
    } catch (const std::out_of_range& e) {
      if (!blocked) blocked = std::string(e.what());
      return Scalar();
    }
  };

  // [t_p, x^{beta,j}] = beta_pbar x^{sigma_p+beta, j} + j_pbar x^{sigma_p+beta, j-eps_pbar}
  // for p in blocks 2-4 (the j term only when pbar carries a t-slot, i.e.
  // block 4); for blocks 6-7 it degenerates to j_pbar x^{beta, j-eps_pbar}.
  // Solving f([t_p, v]) = psi(t_p, v) for f at a target key drives the
  // recursion below; the nonzero-coordinate branch runs first.
  std::function<Scalar(const MonoKey&)> f_at = [&](const MonoKey& key) -> Scalar {
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Scalar value;
    if (blk == 6 || blk == 7) {
      MonoKey arg = key;
      arg.i[pb - 1] += 1;
      value = psi_t(arg) / Scalar(key.i[pb - 1] + 1);
    } else {
      GroupVector beta = sub(key.alpha, s.sigma(p));
      Scalar beta_bar = beta[pb - 1];
      if (!alg->lattice().contains(beta)) {
        value = Scalar();  // key unreachable through [t_p, .]
      } else if (!beta_bar.is_zero()) {
        Scalar rhs = psi_t(MonoKey{beta, key.i});
        if (blk == 4 && key.i[pb - 1] > 0) {
          MonoKey below = key;
          below.i[pb - 1] -= 1;
          rhs -= Scalar(key.i[pb - 1]) * f_at(below);
        }
        value = rhs / beta_bar;
      } else if (blk == 4) {
        MonoKey arg{beta, key.i};
        arg.i[pb - 1] += 1;
        value = psi_t(arg) / Scalar(key.i[pb - 1] + 1);
      } else {
        value = Scalar();  // blocks 2-3 with beta_pbar = 0: not in the image
      }
    }
    memo.emplace(key, value);
    return value;
  };

  for (const auto& k : box) f_at(k);

  std::set<MonoKey> box_set(box.begin(), box.end());
  for (std::size_t a = 0; a < box.size(); ++a)
    for (std::size_t b = a + 1; b < box.size(); ++b) {
      Element u = Element::monomial(alg, box[a].alpha, box[a].i);
      Element v = Element::monomial(alg, box[b].alpha, box[b].i);
      Element br = bracket_structural(u, v);
      bool inside = true;
      for (const auto& [k, c] : br.terms())
        if (!box_set.count(k)) {
          inside = false;
          break;
        }
      if (!inside) continue;
      ++res.pairs_checked;
      Scalar residual;
      try {
        residual = eval_cocycle(psi, u, v);
      } catch (const std::out_of_range& e) {
        if (!blocked) blocked = std::string(e.what());
        continue;
      }
      for (const auto& [k, c] : br.terms()) residual -= c * memo.at(k);
      if (!residual.is_zero()) ++res.nonzero_residuals;
    }

  for (auto& [k, v] : memo)
    if (!v.is_zero()) res.f.values.emplace(k, v);
  res.missing_key = blocked;
  return res;
}

std::string H2Report::str() const {
  std::string s = "dim " + std::to_string(dimension);
  if (dimension > 0)
    s += " (phi pairs: " + std::to_string(phi_pairs) +
         ", hom-star: " + std::to_string(hom_star_dim) + ")";
  return s;
}

H2Report h2_report(const Lattice& L) {
  H2Report rep;
  const Shape& s = L.shape();
  if (s.n() != s.l()[0]) return rep;
  rep.phi_pairs = s.l()[0];
  rep.hom_star_dim = static_cast<int>(hom_star_complement(L).size());
  rep.dimension = 2 * rep.phi_pairs + rep.hom_star_dim;
  return rep;
}

namespace {

struct FlatCombo {
  std::map<int, Scalar> a, b;
  std::vector<Scalar> mu;  // accumulated values on the lattice basis
};

void flatten_combo(const Cocycle& c, const Scalar& w, const AlgebraPtr& alg, FlatCombo& out) {
  const auto& node = c.node();
  if (auto* pp = std::get_if<Cocycle::PhiP>(&node)) {
    out.a[pp->p] += w;
    return;
  }
  if (auto* pq = std::get_if<Cocycle::PhiPPrime>(&node)) {
    out.b[pq->p] += w;
    return;
  }
  if (auto* pm = std::get_if<Cocycle::PhiMu>(&node)) {
    for (std::size_t j = 0; j < pm->mu.values.size(); ++j) out.mu[j] += w * pm->mu.values[j];
    return;
  }
  if (auto* combo = std::get_if<Cocycle::Combo>(&node)) {
    for (const auto& [cw, part] : combo->parts) flatten_combo(part, w * cw, alg, out);
    return;
  }
  throw std::invalid_argument("independence probe wants a combination of phi generators");
}

} // namespace

std::string IndependenceReport::str() const {
  std::string s;
  for (const auto& [p, v] : a) s += "a[" + std::to_string(p) + "]=" + v.str() + " ";
  for (const auto& [p, v] : b) s += "b[" + std::to_string(p) + "]=" + v.str() + " ";
  s += mu_in_span_mu_p ? "mu in span{mu_p}" : "mu independent";
  s += coboundary_equivalent ? "; coboundary-equivalent" : "; not a coboundary on probes";
  s += zero_only ? "; probe system forces zero" : "; probe system admits nonzero solutions";
  return s;
}

IndependenceReport independence_probe(const AlgebraPtr& alg, const Cocycle& combo,
                                      const LinearFunctional& f) {
  const Shape& s = alg->shape();
  require_sigma_carrier(s);
  const Lattice& L = alg->lattice();
  GroupVector sigma = sigma_total(s);

  FlatCombo flat;
  flat.mu.resize(static_cast<std::size_t>(L.rank()));
  flatten_combo(combo, Scalar(1), alg, flat);

  Cocycle psi = Cocycle::combo({{Scalar(1), combo}, {Scalar(1), Cocycle::coboundary(f)}});
  auto X = [&](const GroupVector& a) { return Element::x(alg, a); };

  IndependenceReport rep;
  for (int p : s.I_range(1, 1)) {
    Scalar v1 = eval_cocycle(psi, X(negate(s.sigma(p))), X(sigma));
    Scalar v2 = eval_cocycle(psi, X(L.lambda(p)), X(sub(sub(sigma, L.lambda(p)), s.sigma(p))));
    Scalar bp = v2 / L.epsilon_multiple(s.bar(p));
    rep.b[p] = bp;
    rep.a[p] = -v1 - bp;
  }

  // third family: psi(x^{g_k}, x^{sigma - g_k}) = mu(g_k) + sum_q pi_q(g_k) f_q
  // with f_q = f(x^{sigma_q + sigma}); recover mu on the basis and test
  // membership in span{mu_p | p in I_1}.
  std::vector<Scalar> mu_vals;
  for (const auto& g : L.basis()) {
    Scalar v3 = eval_cocycle(psi, X(g), X(sub(sigma, g)));
    for (int q : s.I_range(1, 1)) {
      MonoKey fk{add(s.sigma(q), sigma), s.zero_index()};
      v3 -= L.pi_component(q, g) * f(fk);
    }
    mu_vals.push_back(v3);
  }
  std::size_t rank = static_cast<std::size_t>(L.rank());
  std::size_t l1 = static_cast<std::size_t>(s.l()[0]);
  Mat span_m(rank, l1);
  for (std::size_t q = 0; q < l1; ++q)
    for (std::size_t k = 0; k < rank; ++k)
      span_m.at(k, q) = L.pi_component(static_cast<int>(q) + 1, L.basis()[k]);
  auto cs = solve(span_m, mu_vals);
  rep.mu_in_span_mu_p = cs.has_value();
  if (cs) {
    rep.witness_c.resize(l1);
    for (std::size_t q = 0; q < l1; ++q) rep.witness_c[q] = -(*cs)[q];
  }
  bool ab_zero = true;
  for (const auto& [p, v] : rep.a) ab_zero = ab_zero && v.is_zero();
  for (const auto& [p, v] : rep.b) ab_zero = ab_zero && v.is_zero();
  rep.coboundary_equivalent = ab_zero && rep.mu_in_span_mu_p;

  // homogeneous independence system: unknowns (a_p, b_p, mu-star coordinates,
  // f_q); any null solution must have a = b = mu* = 0.
  auto star = hom_star_complement(L);
  std::size_t na = l1, nb = l1, nm = star.size(), nf = l1;
  Mat m(2 * l1 + rank, na + nb + nm + nf);
  std::size_t row = 0;
  for (std::size_t p = 0; p < l1; ++p) {  // -a_p - b_p = 0
    m.at(row, p) = Scalar(-1);
    m.at(row, na + p) = Scalar(-1);
    ++row;
  }
  for (std::size_t p = 0; p < l1; ++p) {  // e_p b_p = 0
    m.at(row, na + p) = L.epsilon_multiple(s.bar(static_cast<int>(p) + 1));
    ++row;
  }
  for (std::size_t k = 0; k < rank; ++k) {
    for (std::size_t j = 0; j < nm; ++j) m.at(row, na + nb + j) = star[j].values[k];
    for (std::size_t q = 0; q < nf; ++q)
      m.at(row, na + nb + nm + q) = L.pi_component(static_cast<int>(q) + 1, L.basis()[k]);
    ++row;
  }
  rep.zero_only = true;
  for (const auto& nv : nullspace(m))
    for (std::size_t c = 0; c < na + nb + nm; ++c)
      if (!nv[c].is_zero()) rep.zero_only = false;
  return rep;
}

} // namespace hamlie
