#ifndef HAMLIE_ISOFILE_HPP
#define HAMLIE_ISOFILE_HPP

#include "hamlie/expr.hpp"
#include "hamlie/isomorphisms.hpp"

namespace hamlie {

/// Parsed .iso document. The character is optional: when absent it is
/// derived from the b_p parameters through extend_character.
struct IsoDocument {
  PreservingIso iso;
  std::optional<Character> chi;
};

/// Sectioned key-value format:
///   nu = [(1,2),(2,1)]
///   a[1] = 0
///   b[1] = -1
///   B15 = [[1],[0]]        (row-major rational entries)
///   chi = [1,-1,1]         (values on the source basis; optional)
IsoDocument parse_iso(const std::string& text, const Shape& shape, const Field& field);
IsoDocument load_iso_file(const std::string& path, const Shape& shape, const Field& field);

} // namespace hamlie

#endif
