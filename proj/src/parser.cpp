#include <cctype>
#include <string>

#include "pcalc/error.hpp"
#include "pcalc/polynomial.hpp"

namespace pcalc {

namespace {

// Recursive descent over the polynomial text syntax:
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := ('+' | '-') factor | power
//   power  := atom ('^' integer)?
//   atom   := number | identifier | '(' expr ')'
// The identifier `i` is the imaginary unit. Division is only by nonzero
// constants.
class Parser {
 public:
  Parser(std::string_view text, TablePtr table) : text_(text), table_(std::move(table)) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial syntax at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        Polynomial d = factor();
        auto c = d.constant_value();
        if (!c || c->is_zero()) fail("division by a non-constant or zero");
        acc *= c->inverse();
      } else {
        return acc;
      }
    }
  }

  Polynomial factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      unsigned long k = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (k > 4096) fail("exponent too large");
      return base.pow(static_cast<unsigned>(k));
    }
    return base;
  }

  Polynomial atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Polynomial(table_, number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "i") return Polynomial(table_, GaussRational::imaginary_unit());
      auto slot = table_->slot_of(name);
      if (!slot) fail("unknown variable '" + name + "'");
      return Polynomial::variable(table_, *slot);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  // Integer or decimal literal with optional exponent, converted exactly.
  GaussRational number() {
    std::string digits;
    long scale = 0;
    bool any = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_++];
      any = true;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits += text_[pos_++];
        --scale;
        any = true;
      }
    }
    if (!any) fail("malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      bool neg = false;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) neg = text_[pos_++] == '-';
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) {
        pos_ = save;
      } else {
        if (pos_ - start > 5) fail("exponent too large");
        long e = std::stol(std::string(text_.substr(start, pos_ - start)));
        scale += neg ? -e : e;
      }
    }
    mpz_class value(digits, 10);
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    mpq_class q = scale >= 0 ? mpq_class(value * ten_pow) : mpq_class(value, ten_pow);
    q.canonicalize();
    return GaussRational(q);
  }

  std::string_view text_;
  TablePtr table_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const TablePtr& table) {
  return Parser(text, table).parse();
}

GaussRational parse_scalar(std::string_view text) {
  static const TablePtr empty = make_table(std::vector<std::string>{});
  Polynomial p = parse_polynomial(text, empty);
  return *p.constant_value();
}

}  // namespace pcalc
