#ifndef HAMLIE_ISOMORPHISMS_HPP
#define HAMLIE_ISOMORPHISMS_HPP

#include "hamlie/algebra.hpp"
#include "hamlie/linalg.hpp"
#include "hamlie/sampling.hpp"

namespace hamlie {

/// Preserving isomorphism data: a block-preserving permutation nu of
/// I_{1,4}, per-pair 2x2 matrices A_p through the three (a_p, b_p) shape
/// templates, and the rectangular B blocks mixing into the I_5 and I_6
/// coordinates. Matrices for absent blocks are 0x0.
struct PreservingIso {
  std::map<int, int> nu;                         // p -> nu(p) on I_{1,4}
  std::map<int, std::pair<Scalar, Scalar>> ab;   // p -> (a_p, b_p)
  Mat B15, B25, B55, B16, B26, B36, B56, B66;

  int nu_of(int p) const {
    auto it = nu.find(p);
    return it == nu.end() ? p : it->second;
  }
};

PreservingIso identity_iso(const Shape& s);
/// The template 2x2 matrix for p's block, parameterized by (a_p, b_p).
Mat a_matrix(const Shape& s, const PreservingIso& iso, int p);
/// Checks the structural constraints on the iso data itself: nu a
/// block-preserving permutation, b_p nonzero, B55/B66 invertible, block
/// dimensions.
void validate_iso_data(const Shape& s, const PreservingIso& iso);

/// Full coordinate action as a dim x dim matrix (row-vector convention:
/// tau(alpha) = alpha * M); identity on the structurally-zero coordinates.
Mat tau_matrix(const Shape& s, const PreservingIso& iso);
GroupVector apply_tau(const Shape& s, const PreservingIso& iso, const GroupVector& alpha);

struct IsoValidation {
  bool ok = false;
  std::string detail;  // first failing vector when not ok
};
/// Lattice compatibility: tau(Gamma) <= Gamma' and tau^{-1}(Gamma') <= Gamma.
IsoValidation validate_preserving(const PreservingIso& iso, const Lattice& src,
                                  const Lattice& tgt);

struct TauFactors {
  PreservingIso nu_part;   // pure permutation
  PreservingIso tau1;      // block diagonal: A_p, B55, B66
  PreservingIso tau2;      // unipotent: tilde/hat built off-diagonal blocks
};
/// tau = nu . tau1 . tau2 with tau2 applied first; the factors recompose to
/// the original coordinate action.
TauFactors decompose_tau(const Shape& s, const PreservingIso& iso);

/// Multiplicative character on the lattice given by nonzero values on the
/// basis.
struct Character {
  std::vector<Scalar> values;
};
Scalar character_eval(const Lattice& L, const Character& chi, const GroupVector& alpha);
/// Extends chi(sigma_p) = b_p to the whole lattice by integer row reduction
/// of the exponent system; free values are set to 1 and roots are chosen
/// positive-first. Throws when a required root does not exist in the field.
Character extend_character(const Lattice& L, const std::map<int, Scalar>& b);

/// Composable algebra morphism: each stage sends x^alpha to
/// chi(alpha) x'^{alpha tau} and extends multiplicatively through its stored
/// generator images theta(t_p).
class AlgebraMorphism {
public:
  struct Stage {
    AlgebraPtr src, tgt;
    Mat tau;
    std::vector<Scalar> chi;           // on src lattice basis; empty = 1
    std::map<int, Element> t_images;   // per allowed slot
  };

  AlgebraMorphism(std::vector<Stage> stages);
  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const std::vector<Stage>& stages() const { return stages_; }

  Element apply(const Element& u) const;

private:
  std::vector<Stage> stages_;
  AlgebraPtr source_, target_;
};

/// The correction matrices E1..E4 of the t-images for a unipotent tau2,
/// determined by requiring the morphism law on the generator pairs and
/// solved exactly.
struct CaseCSolution {
  Mat E1, E2, E3, E4;
  std::map<int, Element> t_images;
};
CaseCSolution solve_case_c(const PreservingIso& tau2, const AlgebraPtr& src,
                           const AlgebraPtr& tgt);

/// theta = theta_nu . theta_tau1 . theta_tau2 with chi on the tau1 stage.
/// Preconditions: validate_preserving(iso, src, tgt) holds and
/// chi(sigma_p) = b_p.
AlgebraMorphism build_theta(const PreservingIso& iso, const AlgebraPtr& src,
                            const AlgebraPtr& tgt, const Character& chi);

/// Exact check of the morphism law on the generator family plus sampled
/// pairs, and of multiplicativity for the associative product.
PropertyReport verify_morphism(const AlgebraMorphism& theta, std::size_t samples,
                               std::uint64_t seed);

struct RandomIso {
  PreservingIso iso;
  Character chi;
  AlgebraPtr src, tgt;
};

/// A validated random preserving isomorphism on the given algebra: the
/// character is planted first so every b_p is solvable over the working
/// field, B55/B66 are unimodular, and the target lattice is the tau-image
/// of the source.
RandomIso random_preserving_iso(const AlgebraPtr& src, Rng& rng);

} // namespace hamlie

#endif
