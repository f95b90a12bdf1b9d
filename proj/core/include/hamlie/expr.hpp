#ifndef HAMLIE_EXPR_HPP
#define HAMLIE_EXPR_HPP

#include "hamlie/cohomology.hpp"
#include "hamlie/derivations.hpp"

#include <string>

namespace hamlie {

/// Parse/elaboration failure with a located diagnostic.
struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                           std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

/// Element expression grammar (no implicit multiplication, no exponent
/// expressions):
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | '(' expr ')' | rational | 'sqrt(' int ')'
///           | 'x[' vector ']' | 't' digits ('^' digits)?
Element parse_element(const std::string& text, const AlgebraPtr& alg);

/// Derivation syntax: d0, d0', d[p], dt[q], dmu{v1,...,vn}, ad(<element>),
/// joined by +/- with optional rational*  weights.
DerivationSpec parse_derivation(const std::string& text, const AlgebraPtr& alg);

/// Cocycle syntax: phi[p], phi'[p], phimu{v1,...,vn}, cb{<element>} (the
/// element's terms define the functional), with the same combination rules.
Cocycle parse_cocycle(const std::string& text, const AlgebraPtr& alg);

/// A single scalar literal ("p/q" or "p/q+r/s*sqrt(d)" forms).
Scalar parse_scalar(const std::string& text, const Field& field);

} // namespace hamlie

#endif
