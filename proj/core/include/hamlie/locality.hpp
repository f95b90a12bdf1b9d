#ifndef HAMLIE_LOCALITY_HPP
#define HAMLIE_LOCALITY_HPP

#include "hamlie/algebra.hpp"
#include "hamlie/sampling.hpp"

namespace hamlie {

/// Iterated adjoint action ad_u^n(v) for n = 0..N with exact span ranks.
struct AdOrbitReport {
  std::vector<Element> powers;
  std::vector<std::size_t> span_dims;      // after including power n
  std::optional<int> nilpotent_at;         // first n with ad_u^n(v) = 0
  bool bounded() const {
    return nilpotent_at.has_value() ||
           (span_dims.size() >= 2 && span_dims.back() == span_dims[span_dims.size() - 2]);
  }
  std::string str() const;
};

AdOrbitReport ad_orbit(const Element& u, const Element& v, int max_power);

/// The sandwich nilpotency bound m = 1 + sum of the unsupported barred/J_7
/// levels of v, for u in H_2, together with its verification by iteration. sharp_expected records the structural criterion under which
/// the leading chain coefficient is nonzero, so ad^{m-1}(v) must survive.
struct NilpotencyResult {
  long m = 0;
  bool zero_at_m = false;
  bool nonzero_at_m_minus_1 = false;
  bool sharp_expected = false;
};

NilpotencyResult nilpotency_bound_check(const Element& u, const Element& v);

/// Membership in an eigen-slice M_mu, classified two ways: structurally
/// (common pi value over pure group monomials) and empirically (the
/// common-eigenvector check against H_1 and sampled H_2 elements). The suite asserts the two
/// never disagree.
struct EigenReport {
  bool is_zero = false;
  std::optional<std::vector<Scalar>> mu;   // structural classification
  bool direct_check = false;               // [h, u] in F u for the sampled h
  bool member() const { return is_zero || mu.has_value(); }
};

EigenReport eigen_membership(const Element& u, std::size_t h2_samples, std::uint64_t seed);

/// (in_MF, in_MN) per the closed-form span descriptions of M^F and M^N.
std::pair<bool, bool> mf_mn_membership(const Element& u);

/// Both sides of the cyclic-module identity [x^alpha, u] =
/// -sum_p alpha_p mu_p x^{sigma_p+alpha} u for pi(alpha) = 0, u in M_mu.
struct CyclicProbeReport {
  Element lhs, rhs;
  bool equal = false;
};

CyclicProbeReport cyclic_probe(const GroupVector& alpha, const Element& u);

/// Unbounded-orbit recipe: for a monomial u = x^{gamma,k} with activity
/// at pair (p, pbar), returns the target x^{b eps_pbar} whose orbit under
/// ad_u grows for max_power steps; b is the smallest-height admissible
/// multiple of eps_pbar with the product condition nonzero.
Element growth_target(const AlgebraPtr& alg, const MonoKey& u_key, int p, int max_power);

} // namespace hamlie

#endif
