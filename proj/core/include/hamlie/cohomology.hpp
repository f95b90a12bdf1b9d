#ifndef HAMLIE_COHOMOLOGY_HPP
#define HAMLIE_COHOMOLOGY_HPP

#include "hamlie/derivations.hpp"

namespace hamlie {

/// Linear functional on the algebra with finite support (the declared box).
struct LinearFunctional {
  std::map<MonoKey, Scalar> values;

  Scalar operator()(const MonoKey& k) const {
    auto it = values.find(k);
    return it == values.end() ? Scalar() : it->second;
  }
  Scalar operator()(const Element& u) const {
    Scalar s;
    for (const auto& [k, c] : u.terms()) s += c * (*this)(k);
    return s;
  }
};

/// Bilinear functional on the algebra, as a tagged rule. The phi generators
/// exist only when iota7 = l1 (they reference sigma = sum of sigma_p).
class Cocycle {
public:
  struct PhiP { int p; };
  struct PhiPPrime { int p; };
  struct PhiMu { HomPlus mu; };
  struct Coboundary { LinearFunctional f; };
  struct Table {
    std::vector<MonoKey> box;
    std::map<std::pair<MonoKey, MonoKey>, Scalar> values;  // stored one-sided
    bool in_box(const MonoKey& k) const;
  };
  struct Combo { std::vector<std::pair<Scalar, Cocycle>> parts; };
  using Node = std::variant<PhiP, PhiPPrime, PhiMu, Coboundary, Table, Combo>;

  Cocycle(Node n) : node_(std::make_shared<Node>(std::move(n))) {}
  static Cocycle phi(int p) { return Cocycle(PhiP{p}); }
  static Cocycle phi_prime(int p) { return Cocycle(PhiPPrime{p}); }
  static Cocycle phi_mu(HomPlus mu) { return Cocycle(PhiMu{std::move(mu)}); }
  static Cocycle coboundary(LinearFunctional f) { return Cocycle(Coboundary{std::move(f)}); }
  static Cocycle table(Table t) { return Cocycle(std::move(t)); }
  static Cocycle combo(std::vector<std::pair<Scalar, Cocycle>> parts) {
    return Cocycle(Combo{std::move(parts)});
  }

  const Node& node() const { return *node_; }

private:
  std::shared_ptr<Node> node_;
};

Scalar eval_cocycle(const Cocycle& c, const Element& u, const Element& v);

PropertyReport check_cocycle_laws(const AlgebraPtr& alg, const Cocycle& c, std::size_t samples,
                                  std::uint64_t seed);

/// All valid monomial keys with basis coordinates in [-bound, bound] and
/// multi-index level at most max_level.
std::vector<MonoKey> enumerate_box(const Algebra& alg, long coord_bound, int max_level);

struct ReduceResult {
  LinearFunctional f;
  std::size_t pairs_checked = 0;
  std::size_t nonzero_residuals = 0;
  std::optional<std::string> missing_key;  // psi not evaluable where needed
  bool ok() const { return !missing_key && nonzero_residuals == 0; }
  std::string str() const;
};

/// Coboundary reduction: builds f by the two-branch recursion along the
/// chosen index p (block of p nonempty, not block 1; iota7 != l1 overall) and
/// verifies that psi - psi_f vanishes on every in-box pair whose bracket
/// stays inside the box.
ReduceResult reduce_cocycle(const AlgebraPtr& alg, const Cocycle& psi,
                            const std::vector<MonoKey>& box, int p);

struct H2Report {
  int dimension = 0;
  int phi_pairs = 0;     // contributes 2*l1
  int hom_star_dim = 0;
  std::string str() const;
};

H2Report h2_report(const Lattice& L);

struct IndependenceReport {
  std::map<int, Scalar> a;  // recovered phi_p weights
  std::map<int, Scalar> b;  // recovered phi'_p weights
  bool mu_in_span_mu_p = false;
  std::vector<Scalar> witness_c;  // f(x^{sigma_p+sigma}) = -c_p when in span
  bool coboundary_equivalent = false;
  bool zero_only = false;  // the homogeneous probe system forces a=b=mu*=0
  std::string str() const;
};

/// Evaluates combo + psi_f at the probe pairs (x^{-sigma_p}, x^sigma),
/// (x^{lambda_p}, x^{sigma-lambda_p-sigma_p}), (x^alpha, x^{sigma-alpha}) and
/// solves the resulting exact system. combo must be built from
/// PhiP/PhiPPrime/PhiMu.
IndependenceReport independence_probe(const AlgebraPtr& alg, const Cocycle& combo,
                                      const LinearFunctional& f);

} // namespace hamlie

#endif
