#ifndef HAMLIE_SAMPLING_HPP
#define HAMLIE_SAMPLING_HPP

#include "hamlie/algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace hamlie {

/// SplitMix64: tiny, portable, and stable across platforms, so seeded reports
/// are byte-identical everywhere.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Independent stream for sample `index` under a global seed.
  static Rng for_sample(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL + index * 0xbf58476d1ce4e5b9ULL));
    r.next();
    return r;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [lo, hi].
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(unsigned percent) { return next() % 100 < percent; }

private:
  std::uint64_t state_;
};

struct SampleOptions {
  int max_level = 4;        // cap on |i|
  long coord_bound = 3;     // basis coordinates drawn from [-bound, bound]
  int max_terms = 3;        // for sample_element
};

/// Random basis monomial: a lattice point from small integer basis
/// combinations plus a multi-index of bounded level on allowed slots.
MonoKey sample_key(const Algebra& alg, Rng& rng, const SampleOptions& opt);
Element sample_monomial(const AlgebraPtr& alg, Rng& rng, const SampleOptions& opt);
Element sample_element(const AlgebraPtr& alg, Rng& rng, const SampleOptions& opt);
Scalar sample_scalar(const Field& field, Rng& rng, bool nonzero = false);

/// Outcome of a seeded property run: pass count plus the first counterexample
/// rendered as text. Failure is data, not an error.
struct PropertyReport {
  std::string name;
  std::size_t samples = 0;
  std::size_t passes = 0;
  std::optional<std::string> counterexample;

  bool ok() const { return passes == samples && !counterexample; }
  std::string str() const;
};

} // namespace hamlie

#endif
