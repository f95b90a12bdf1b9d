#include "hamlie/sampling.hpp"

namespace hamlie {

MonoKey sample_key(const Algebra& alg, Rng& rng, const SampleOptions& opt) {
  const Shape& s = alg.shape();
  const Lattice& L = alg.lattice();
  GroupVector a(s.dim());
  for (const auto& g : L.basis()) {
    long c = rng.range(-opt.coord_bound, opt.coord_bound);
    if (c != 0) a = add(a, scale(Scalar(c), g));
  }
  MultiIndex i(s.dim(), 0);
  std::vector<int> slots;
  for (int p = 1; p <= s.dim(); ++p)
    if (alg.extended() || s.t_allowed(p)) slots.push_back(p);
  if (!slots.empty()) {
    int level = static_cast<int>(rng.range(0, opt.max_level));
    for (int k = 0; k < level; ++k) {
      int p = slots[static_cast<std::size_t>(rng.range(0, static_cast<long>(slots.size()) - 1))];
      i[p - 1] += 1;
    }
  }
  return MonoKey{std::move(a), std::move(i)};
}

Scalar sample_scalar(const Field& field, Rng& rng, bool nonzero) {
  for (int tries = 0; tries < 64; ++tries) {
    long num = rng.range(-6, 6);
    long den = rng.range(1, 3);
    Scalar v(num, den);
    if (field.kind == Field::Kind::Quadratic && rng.chance(40)) {
      long bn = rng.range(-3, 3);
      if (bn != 0) v += Scalar(mpq_class(bn)) * Scalar::sqrt_of(field.d);
    }
    if (!nonzero || !v.is_zero()) return v;
  }
  return Scalar(1);
}

Element sample_monomial(const AlgebraPtr& alg, Rng& rng, const SampleOptions& opt) {
  MonoKey k = sample_key(*alg, rng, opt);
  return Element::monomial(alg, k.alpha, k.i, sample_scalar(alg->field(), rng, true));
}

Element sample_element(const AlgebraPtr& alg, Rng& rng, const SampleOptions& opt) {
  Element e(alg);
  int terms = static_cast<int>(rng.range(1, opt.max_terms));
  for (int k = 0; k < terms; ++k) e += sample_monomial(alg, rng, opt);
  return e;
}

std::string PropertyReport::str() const {
  std::string s = name + ": " + std::to_string(passes) + "/" + std::to_string(samples);
  if (counterexample)
    s += " FAIL first counterexample: " + *counterexample;
  else
    s += " ok";
  return s;
}

} // namespace hamlie
