#ifndef HAMLIE_LATTICE_HPP
#define HAMLIE_LATTICE_HPP

#include "hamlie/linalg.hpp"
#include "hamlie/shape.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hamlie {

/// The free abelian group Gamma of allowed group exponents, given by a finite
/// basis of rationally independent vectors satisfying the coordinate
/// constraint (zero outside the gamma_allowed positions) and the three
/// admissibility conditions: sigma_p in Gamma, eps_q in Gamma for q in
/// I_{5,6}, and F eps_r meeting Gamma nontrivially for r in J_{1,4}.
class Lattice {
public:
  static Lattice build(Shape shape, Field field, std::vector<GroupVector> basis);
  /// Same construction without the admissibility conditions; used for the
  /// intermediate lattices of factored isomorphisms, which may miss the
  /// distinguishable conditions even when source and target satisfy them.
  static Lattice build_unchecked(Shape shape, Field field, std::vector<GroupVector> basis);

  const Shape& shape() const { return shape_; }
  const Field& field() const { return field_; }
  const std::vector<GroupVector>& basis() const { return basis_; }
  int rank() const { return static_cast<int>(basis_.size()); }

  bool contains(const GroupVector& v) const;
  /// Exact rational coordinates of v in the basis; nullopt when v is outside
  /// the rational span.
  std::optional<std::vector<Scalar>> coordinates(const GroupVector& v) const;
  /// Integer coordinates; nullopt when v is not a lattice point.
  std::optional<std::vector<mpz_class>> int_coordinates(const GroupVector& v) const;

  /// The smallest positive scalar e with e*eps_r in Gamma (r in J_{1,4}).
  Scalar epsilon_multiple(int r) const;
  /// lambda_p = e_p * eps_{bar p} for p in I_{1,4}.
  GroupVector lambda(int p) const;

  /// pi(alpha): the eigenvalue fingerprint in F^{iota6}; alpha must lie in
  /// Gamma.
  std::vector<Scalar> pi(const GroupVector& alpha) const;
  /// pi of a single component p in I_{1,6} without membership check.
  Scalar pi_component(int p, const GroupVector& alpha) const;

  /// Basis (integer vectors in lattice coordinates) of ker pi inside Gamma.
  ZMat pi_kernel_basis() const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.shape_ == b.shape_ && a.field_ == b.field_ && a.basis_ == b.basis_;
  }

private:
  Shape shape_;
  Field field_;
  std::vector<GroupVector> basis_;
  Mat split_;   // rational split of the basis, columns = basis vectors
  Mat solver_;  // row transform T with T*split = [I_k; 0], precomputed once
  mutable std::map<int, Scalar> eps_mult_;  // lazily computed probe scalars
  // coordinate solves repeat heavily across bracket evaluations; cache them
  // (guarded, so lattices stay safe to share across tasks)
  mutable std::map<GroupVector, std::optional<std::vector<mpz_class>>> coord_cache_;
  mutable std::shared_ptr<std::mutex> cache_lock_ = std::make_shared<std::mutex>();

  Lattice(Shape s, Field f) : shape_(std::move(s)), field_(std::move(f)) {}
  static Lattice build_impl(Shape shape, Field field, std::vector<GroupVector> basis,
                            bool validate);
  std::vector<Scalar> split_vector(const GroupVector& v) const;
  Scalar compute_epsilon_multiple(int r) const;
};

GroupVector add(const GroupVector& a, const GroupVector& b);
GroupVector sub(const GroupVector& a, const GroupVector& b);
GroupVector negate(const GroupVector& a);
GroupVector scale(const Scalar& c, const GroupVector& a);
bool is_zero_vector(const GroupVector& a);

} // namespace hamlie

#endif
