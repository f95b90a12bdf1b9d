#ifndef HAMLIE_SPECFILE_HPP
#define HAMLIE_SPECFILE_HPP

#include "hamlie/expr.hpp"

namespace hamlie {

/// Parsed .alg document: shape, lattice basis, field, optional name.
struct AlgebraSpecDocument {
  std::array<int, 7> l{};
  std::vector<GroupVector> basis;
  Field field = Field::rational();
  std::string name;

  friend bool operator==(const AlgebraSpecDocument& a, const AlgebraSpecDocument& b) {
    return a.l == b.l && a.basis == b.basis && a.field == b.field && a.name == b.name;
  }
};

/// Key-value format, one entry per line, '#' comments:
///   shape.l = [1,0,0,0,0,0,0]
///   field = rational            (or quadratic:<d>)
///   gamma.basis = [[1,0],[0,1]]
///   name = f1                   (optional)
AlgebraSpecDocument parse_spec(const std::string& text);
std::string format_spec(const AlgebraSpecDocument& doc);

/// Builds the validated algebra; semantic failures surface the
/// build_shape/build_lattice diagnostics.
AlgebraPtr spec_to_algebra(const AlgebraSpecDocument& doc);

AlgebraSpecDocument load_spec_file(const std::string& path);

} // namespace hamlie

#endif
