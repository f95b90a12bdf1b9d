#include "hamlie/serialize.hpp"

#include "hamlie/expr.hpp"

#include "json.hpp"

namespace hamlie {

std::string format_group_vector(const GroupVector& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + v[k].display();
  return s + ")";
}

namespace {

std::string format_monomial_body(const Shape& shape, const MonoKey& k) {
  std::string body;
  if (!is_zero_vector(k.alpha)) body = "x[" + format_group_vector(k.alpha) + "]";
  for (int p = 1; p <= shape.dim(); ++p) {
    if (k.i[p - 1] == 0) continue;
    if (!body.empty()) body += "*";
    body += "t" + std::to_string(p);
    if (k.i[p - 1] > 1) body += "^" + std::to_string(k.i[p - 1]);
  }
  return body.empty() ? "1" : body;
}

std::string format_coefficient(const Scalar& c, bool leading) {
  // the caller renders the sign between terms
  Scalar a = c;
  std::string sign;
  bool negative = false;
  if (c.is_rational() || c.irr_part() == 0) {
    negative = c.rat_part() < 0;
  } else if (sgn(c.rat_part()) == 0) {
    negative = sgn(c.irr_part()) < 0;
  }
  if (negative) a = -a;
  sign = leading ? (negative ? "-" : "") : (negative ? " - " : " + ");
  if (a.is_one()) return sign;
  bool needs_parens = !a.is_rational() && sgn(a.rat_part()) != 0;
  std::string body = needs_parens ? "(" + a.display() + ")" : a.display();
  return sign + body + "*";
}

} // namespace

std::string format_element(const Element& u) {
  if (u.is_zero()) return "0";
  const Shape& shape = u.algebra()->shape();
  std::string out;
  bool first = true;
  for (const auto& [k, c] : u.terms()) {
    std::string coef = format_coefficient(c, first);
    std::string body = format_monomial_body(shape, k);
    // a bare coefficient on the identity monomial keeps its magnitude
    if (body == "1" && !coef.empty() && coef.back() == '*') {
      out += coef.substr(0, coef.size() - 1);
    } else {
      out += coef + body;
    }
    first = false;
  }
  return out;
}

std::string element_to_json(const Element& u) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [k, c] : u.terms()) {
    nlohmann::json rec;
    rec["alpha"] = nlohmann::json::array();
    for (const auto& a : k.alpha) rec["alpha"].push_back(a.str());
    rec["i"] = k.i;
    rec["c"] = c.str();
    list.push_back(std::move(rec));
  }
  return list.dump();
}

Element element_from_json(const std::string& text, const AlgebraPtr& alg) {
  try {
    nlohmann::json list = nlohmann::json::parse(text);
    if (!list.is_array()) throw ParseError("element JSON must be a list of records", 1, 1);
    Element out(alg);
    for (const auto& rec : list) {
      GroupVector alpha;
      for (const auto& a : rec.at("alpha"))
        alpha.push_back(parse_scalar(a.get<std::string>(), alg->field()));
      MultiIndex i = rec.at("i").get<MultiIndex>();
      Scalar c = parse_scalar(rec.at("c").get<std::string>(), alg->field());
      out.add_term(MonoKey{std::move(alpha), std::move(i)}, c);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("element JSON: ") + e.what(), 1, 1);
  }
}

} // namespace hamlie
