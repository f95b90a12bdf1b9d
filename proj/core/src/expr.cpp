#include "hamlie/expr.hpp"

#include <cctype>

namespace hamlie {

namespace {

class Cursor {
public:
  Cursor(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r')) {
      advance();
    }
  }
  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }
  bool accept_word(const std::string& w) {
    skip_ws();
    if (text_.compare(pos_, w.size(), w) != 0) return false;
    for (std::size_t k = 0; k < w.size(); ++k) advance();
    return true;
  }
  void expect(char c, const std::string& what) {
    if (!accept(c)) fail("expected '" + std::string(1, c) + "' " + what);
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

  long integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) advance();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected an integer");
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    return std::stol(text_.substr(start, pos_ - start));
  }

  mpq_class rational() {
    mpz_class num(integer());
    if (accept('/')) {
      long den = integer();
      if (den == 0) fail("zero denominator");
      mpq_class q(num, mpz_class(den));
      q.canonicalize();
      return q;
    }
    return mpq_class(num);
  }

  bool at_digit() {
    skip_ws();
    return pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '-' || text_[pos_] == '+');
  }

  // scalar := sterm (('+'|'-') sterm)*, sterm := rational ['*' sqrt] | sqrt
  Scalar scalar(const Field& field) {
    Scalar v = scalar_term(field);
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      // a sign directly starting a number is consumed by the term itself
      std::size_t save_pos = pos_;
      int save_line = line_, save_col = col_;
      advance();
      Scalar t;
      try {
        t = scalar_term(field);
      } catch (const ParseError&) {
        pos_ = save_pos;
        line_ = save_line;
        col_ = save_col;
        break;
      }
      v += (c == '+') ? t : -t;
    }
    if (!field.admits(v)) fail("scalar outside the working field " + field.str());
    return v;
  }

  int line() const { return line_; }
  int col() const { return col_; }

private:
  Scalar scalar_term(const Field& field) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '-' && pos_ + 1 < text_.size() &&
        text_[pos_ + 1] == 's') {
      advance();
      return -scalar_term(field);
    }
    if (accept_word("sqrt")) return sqrt_tail(field);
    mpq_class q = rational();
    if (accept('*')) {
      if (!accept_word("sqrt")) fail("expected sqrt after '*' in a scalar");
      return Scalar(q) * sqrt_tail(field);
    }
    return Scalar(q);
  }

  Scalar sqrt_tail(const Field& field) {
    expect('(', "after sqrt");
    long d = integer();
    expect(')', "after the radicand");
    if (field.kind != Field::Kind::Quadratic || field.d != d)
      fail("sqrt(" + std::to_string(d) + ") is not available in the field " + field.str());
    return Scalar::sqrt_of(d);
  }

  void advance() {
    if (pos_ < text_.size()) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class ElementParser {
public:
  ElementParser(Cursor& cur, const AlgebraPtr& alg) : cur_(cur), alg_(alg) {}

  Element expr() {
    Element v = term();
    while (true) {
      if (cur_.accept('+')) {
        v += term();
      } else if (cur_.accept('-')) {
        v -= term();
      } else {
        break;
      }
    }
    return v;
  }

private:
  Element term() {
    Element v = factor();
    while (cur_.accept('*')) v = multiply(v, factor());
    return v;
  }

  Element factor() {
    if (cur_.accept('-')) return -factor();
    if (cur_.accept('(')) {
      Element v = expr();
      cur_.expect(')', "to close the subexpression");
      return v;
    }
    if (cur_.accept_word("sqrt")) {
      cur_.expect('(', "after sqrt");
      long d = cur_.integer();
      cur_.expect(')', "after the radicand");
      const Field& f = alg_->field();
      if (f.kind != Field::Kind::Quadratic || f.d != d)
        cur_.fail("sqrt(" + std::to_string(d) + ") is not available in the field " + f.str());
      return Scalar::sqrt_of(d) * Element::one(alg_);
    }
    if (cur_.accept('x')) {
      cur_.expect('[', "after x");
      GroupVector v = vector();
      cur_.expect(']', "to close the exponent");
      return elaborate([&] { return Element::x(alg_, v); });
    }
    if (cur_.peek() == 't') {
      cur_.accept('t');
      long p = cur_.integer();
      long e = 1;
      if (cur_.accept('^')) e = cur_.integer();
      if (p < 1 || p > alg_->shape().dim()) cur_.fail("t index outside J");
      if (e < 0) cur_.fail("negative t power");
      return elaborate([&] { return Element::t(alg_, static_cast<int>(p), static_cast<int>(e)); });
    }
    if (cur_.at_digit()) {
      mpq_class q = cur_.rational();
      return Scalar(q) * Element::one(alg_);
    }
    cur_.fail("expected a factor");
  }

  GroupVector vector() {
    cur_.expect('(', "to open the vector");
    GroupVector v;
    v.push_back(cur_.scalar(alg_->field()));
    while (cur_.accept(',')) v.push_back(cur_.scalar(alg_->field()));
    cur_.expect(')', "to close the vector");
    if (static_cast<int>(v.size()) != alg_->shape().dim())
      cur_.fail("vector of length " + std::to_string(v.size()) + ", expected " +
                std::to_string(alg_->shape().dim()));
    return v;
  }

  template <class F>
  Element elaborate(F&& f) {
    try {
      return f();
    } catch (const std::invalid_argument& e) {
      cur_.fail(e.what());
    }
  }

  Cursor& cur_;
  const AlgebraPtr& alg_;
};

} // namespace

Element parse_element(const std::string& text, const AlgebraPtr& alg) {
  Cursor cur(text);
  ElementParser p(cur, alg);
  Element v = p.expr();
  if (!cur.eof()) cur.fail("trailing input");
  return v;
}

Scalar parse_scalar(const std::string& text, const Field& field) {
  Cursor cur(text);
  Scalar v = cur.scalar(field);
  if (!cur.eof()) cur.fail("trailing input");
  return v;
}

namespace {

std::vector<Scalar> parse_value_list(Cursor& cur, const AlgebraPtr& alg) {
  cur.expect('{', "to open the value list");
  std::vector<Scalar> values;
  if (!cur.accept('}')) {
    values.push_back(cur.scalar(alg->field()));
    while (cur.accept(',')) values.push_back(cur.scalar(alg->field()));
    cur.expect('}', "to close the value list");
  }
  return values;
}

template <class Atom>
auto parse_combo(Cursor& cur, Atom&& atom) {
  using Spec = decltype(atom());
  std::vector<std::pair<Scalar, Spec>> parts;
  bool negative = cur.accept('-');
  while (true) {
    Scalar w(negative ? -1 : 1);
    if (cur.at_digit()) {
      mpq_class q = cur.rational();
      w = w * Scalar(q);
      cur.expect('*', "between a weight and its generator");
    }
    parts.emplace_back(w, atom());
    if (cur.accept('+')) {
      negative = false;
    } else if (cur.accept('-')) {
      negative = true;
    } else {
      break;
    }
  }
  return parts;
}

} // namespace

DerivationSpec parse_derivation(const std::string& text, const AlgebraPtr& alg) {
  Cursor cur(text);
  auto atom = [&]() -> DerivationSpec {
    if (cur.accept_word("d0'")) return DerivationSpec::d0_prime();
    if (cur.accept_word("d0")) return DerivationSpec::d0();
    if (cur.accept_word("dt")) {
      cur.expect('[', "after dt");
      long q = cur.integer();
      cur.expect(']', "after the index");
      return DerivationSpec::dt(static_cast<int>(q));
    }
    if (cur.accept_word("dmu")) {
      auto values = parse_value_list(cur, alg);
      try {
        return DerivationSpec::dmu(make_hom_plus(alg->lattice(), values));
      } catch (const std::invalid_argument& e) {
        cur.fail(e.what());
      }
    }
    if (cur.accept_word("d")) {
      cur.expect('[', "after d");
      long p = cur.integer();
      cur.expect(']', "after the index");
      return DerivationSpec::d(static_cast<int>(p));
    }
    if (cur.accept_word("ad")) {
      cur.expect('(', "after ad");
      ElementParser ep(cur, alg);
      Element v = ep.expr();
      cur.expect(')', "to close ad");
      return DerivationSpec::ad(std::move(v));
    }
    cur.fail("expected a derivation generator (d0, d0', d[p], dt[q], dmu{...}, ad(...))");
  };
  auto parts = parse_combo(cur, atom);
  if (!cur.eof()) cur.fail("trailing input");
  if (parts.size() == 1 && parts[0].first.is_one()) return parts[0].second;
  return DerivationSpec::combo(std::move(parts));
}

Cocycle parse_cocycle(const std::string& text, const AlgebraPtr& alg) {
  Cursor cur(text);
  auto atom = [&]() -> Cocycle {
    if (cur.accept_word("phimu")) {
      auto values = parse_value_list(cur, alg);
      try {
        return Cocycle::phi_mu(make_hom_plus(alg->lattice(), values));
      } catch (const std::invalid_argument& e) {
        cur.fail(e.what());
      }
    }
    if (cur.accept_word("phi'")) {
      cur.expect('[', "after phi'");
      long p = cur.integer();
      cur.expect(']', "after the index");
      return Cocycle::phi_prime(static_cast<int>(p));
    }
    if (cur.accept_word("phi")) {
      cur.expect('[', "after phi");
      long p = cur.integer();
      cur.expect(']', "after the index");
      return Cocycle::phi(static_cast<int>(p));
    }
    if (cur.accept_word("cb")) {
      cur.expect('{', "after cb");
      ElementParser ep(cur, alg);
      Element e = ep.expr();
      cur.expect('}', "to close cb");
      LinearFunctional f;
      for (const auto& [k, c] : e.terms()) f.values[k] = c;
      return Cocycle::coboundary(std::move(f));
    }
    cur.fail("expected a cocycle generator (phi[p], phi'[p], phimu{...}, cb{...})");
  };
  auto parts = parse_combo(cur, atom);
  if (!cur.eof()) cur.fail("trailing input");
  if (parts.size() == 1 && parts[0].first.is_one()) return parts[0].second;
  return Cocycle::combo(std::move(parts));
}

} // namespace hamlie
