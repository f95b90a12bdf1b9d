#ifndef HAMLIE_SERIALIZE_HPP
#define HAMLIE_SERIALIZE_HPP

#include "hamlie/algebra.hpp"

#include <string>

namespace hamlie {

/// Normal-form text of an element: terms in canonical order, coefficients in
/// display form, re-parseable through parse_element.
std::string format_element(const Element& u);

/// Machine form: a JSON list of {alpha, i, c} records in canonical term
/// order, with scalars in the "p/q" / "p/q+r/s*sqrt(d)" encoding.
std::string element_to_json(const Element& u);
Element element_from_json(const std::string& text, const AlgebraPtr& alg);

std::string format_group_vector(const GroupVector& v);

} // namespace hamlie

#endif
