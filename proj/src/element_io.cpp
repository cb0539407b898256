#include <cctype>
#include <optional>
#include <sstream>

#include "lfk/errors.hpp"
#include "lfk/field.hpp"
#include "lfk/local_element.hpp"

namespace lfk {

std::string LocalElement::to_string() const {
  const char* sym = ctx_->char_p() ? "t" : "pi";
  if (is_exact_zero()) return "0";
  std::ostringstream os;
  const auto& k = ctx_->residue_field();
  bool first = true;
  if (!is_zero()) {
    for (std::int64_t n = val_; n < prec_; ++n) {
      const ResidueElement d = digit(n);
      if (d.is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      const std::string coeff = k.to_string(d);
      const bool compound = coeff.find('+') != std::string::npos;
      if (n == 0) {
        os << coeff;
        continue;
      }
      if (coeff != "1") os << (compound ? "(" + coeff + ")" : coeff) << '*';
      os << sym;
      if (n != 1) os << '^' << n;
    }
  }
  if (!first) os << " + ";
  os << "O(" << sym << '^' << prec_ << ')';
  return os.str();
}

namespace {

class ElementParser {
 public:
  ElementParser(const FieldContext& ctx, std::string_view text) : ctx_(ctx), text_(text) {}

  LocalElement parse() {
    LocalElement value = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("expected '+', '-', '*', ',' or end of input");
    if (bound_) value = value.truncated(*bound_);
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "element literal, offset " << pos_ << ": " << what << " in \"" << text_ << "\"";
    throw MalformedInput(os.str());
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
    pos_ = end;
    return true;
  }

  LocalElement expr() {
    LocalElement acc = ctx_.zero();
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    while (true) {
      if (accept_word("O")) {
        if (!accept('(')) fail("expected '(' after O");
        const LocalElement b = expr();
        if (!accept(')')) fail("expected ')'");
        if (b.is_zero()) fail("O(...) needs a nonzero monomial");
        const std::int64_t v = b.valuation();
        bound_ = bound_ ? std::min(*bound_, v) : v;
      } else {
        LocalElement t = term();
        acc = negate ? acc - t : acc + t;
      }
      if (accept('+') || accept(',')) {
        negate = false;
      } else if (accept('-')) {
        negate = true;
      } else {
        break;
      }
    }
    return acc;
  }

  LocalElement term() {
    LocalElement acc = unary();
    while (true) {
      if (accept('*'))
        acc = acc * unary();
      else if (accept('/'))
        acc = acc / unary();
      else
        return acc;
    }
  }

  LocalElement unary() {
    if (accept('-')) return -unary();
    return power();
  }

  std::int64_t exponent() {
    const bool paren = accept('(');
    const bool neg = accept('-');
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    const std::int64_t e = std::stoll(std::string(text_.substr(start, pos_ - start)));
    if (paren && !accept(')')) fail("expected ')' after exponent");
    return neg ? -e : e;
  }

  LocalElement power() {
    LocalElement base = primary();
    if (accept('^')) {
      const std::int64_t n = exponent();
      if (base.is_exact_zero()) return n > 0 ? base : (fail("zero raised to a non-positive power"), base);
      return base.pow(n);
    }
    return base;
  }

  LocalElement primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input, expected a number, pi, t, g or '('");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return ctx_.from_mpz(mpz_class(std::string(text_.substr(start, pos_ - start))));
    }
    if (accept('(')) {
      LocalElement inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (accept_word("pi")) return ctx_.uniformizer();
    if (accept_word("t")) {
      if (!ctx_.char_p()) fail("'t' names the uniformizer of Fq((t)) only; use pi");
      return ctx_.uniformizer();
    }
    if (accept_word("g")) {
      if (ctx_.f() < 2) fail("'g' (residue generator) needs f >= 2");
      return ctx_.lift(ctx_.residue_field().basis(1));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const FieldContext& ctx_;
  std::string_view text_;
  std::size_t pos_ = 0;
  std::optional<std::int64_t> bound_;
};

}  // namespace

LocalElement parse_element(const FieldContext& ctx, std::string_view text) { return ElementParser(ctx, text).parse(); }

}  // namespace lfk
