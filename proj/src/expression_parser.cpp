#include "sigmacalc/expression_parser.hpp"

#include <cctype>
#include <optional>

#include "sigmacalc/presentation.hpp"

namespace sigmacalc {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Caret, Slash, LParen, RParen, TensorSep, End };

struct Token {
  Tok kind;
  std::string text;
  int column;  // 1-based within the expression
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  Lexer(std::string_view text, int line, int offset) : text_(text), line_(line), offset_(offset) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text_.size()) {
      const char c = text_[i];
      const int col = static_cast<int>(i) + 1;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        out.push_back({Tok::Number, std::string(text_.substr(i, j - i)), col});
        i = j;
      } else if (ident_start(c)) {
        std::size_t j = i;
        while (j < text_.size() && ident_char(text_[j])) ++j;
        while (j < text_.size() && text_[j] == '*') ++j;
        out.push_back({Tok::Ident, std::string(text_.substr(i, j - i)), col});
        i = j;
      } else if (c == '(' && text_.substr(i, 3) == "(x)") {
        out.push_back({Tok::TensorSep, "(x)", col});
        i += 3;
      } else {
        Tok k;
        switch (c) {
          case '+': k = Tok::Plus; break;
          case '-': k = Tok::Minus; break;
          case '^': k = Tok::Caret; break;
          case '/': k = Tok::Slash; break;
          case '(': k = Tok::LParen; break;
          case ')': k = Tok::RParen; break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'", line_, offset_ + col);
        }
        out.push_back({k, std::string(1, c), col});
        ++i;
      }
    }
    out.push_back({Tok::End, "", static_cast<int>(text_.size()) + 1});
    return out;
  }

 private:
  std::string_view text_;
  int line_;
  int offset_;
};

NCElement free_product(const NCElement& x, const NCElement& y) {
  NCElement r;
  for (const auto& [u, a] : x) {
    for (const auto& [v, b] : y) r.add_term(u + v, a * b);
  }
  return r;
}

std::optional<RationalFunction> as_scalar(const NCElement& x) {
  if (x.is_zero()) return RationalFunction();
  if (x.size() == 1 && x.begin()->first.empty()) return x.begin()->second;
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::span<const std::vector<std::string>> legs, int line,
         int offset)
      : tokens_(std::move(tokens)), legs_(legs), line_(line), offset_(offset) {}

  Tensor parse_top() {
    Tensor t = parse_sum(true, 0);
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, offset_ + peek().column);
  }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    ++pos_;
  }

  static Tensor lift(const NCElement& x) {
    Tensor t;
    for (const auto& [w, c] : x) t.add_term({w}, c);
    return t;
  }

  Tensor parse_sum(bool top, std::size_t leg) {
    Tensor total;
    bool negate = false;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) negate = next().kind == Tok::Minus;
    while (true) {
      Tensor term = top ? parse_tensor_term() : lift(parse_leg(leg));
      if (top && term_arity_ != legs_.size()) {
        fail("expected " + std::to_string(legs_.size()) + " tensor leg(s), found " +
             std::to_string(term_arity_));
      }
      if (negate) total -= term;
      else total += term;
      if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
        negate = next().kind == Tok::Minus;
      } else {
        break;
      }
    }
    return total;
  }

  Tensor parse_tensor_term() {
    std::vector<NCElement> factors;
    factors.push_back(parse_leg(0));
    while (peek().kind == Tok::TensorSep) {
      next();
      factors.push_back(parse_leg(factors.size()));
    }
    term_arity_ = factors.size();
    Tensor t = lift(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i) t = tensor_of(t, factors[i]);
    return t;
  }

  bool starts_atom() const {
    const Tok k = peek().kind;
    return k == Tok::Number || k == Tok::Ident || k == Tok::LParen;
  }

  NCElement parse_leg(std::size_t leg) {
    if (!starts_atom()) fail("expected a factor");
    NCElement value = parse_factor(leg);
    while (true) {
      if (starts_atom()) {
        value = free_product(value, parse_factor(leg));
      } else if (peek().kind == Tok::Slash) {
        next();
        const int col = peek().column;
        NCElement d = parse_factor(leg);
        auto s = as_scalar(d);
        if (!s) throw ParseError("division by a non-scalar", line_, offset_ + col);
        if (s->is_zero()) throw ParseError("division by zero in scalar field", line_, offset_ + col);
        value *= s->inverse();
      } else {
        break;
      }
    }
    return value;
  }

  NCElement parse_factor(std::size_t leg) {
    NCElement base = parse_atom(leg);
    if (peek().kind != Tok::Caret) return base;
    next();
    bool negative = false;
    if (peek().kind == Tok::Minus) {
      next();
      negative = true;
    }
    if (peek().kind != Tok::Number) fail("expected an integer exponent");
    const long e = std::stol(next().text);
    if (negative) {
      auto s = as_scalar(base);
      if (!s) fail("negative power of a non-scalar");
      return NCElement(Word{}, s->pow(-e));
    }
    NCElement r(Word{});
    for (long i = 0; i < e; ++i) r = free_product(r, base);
    return r;
  }

  NCElement parse_atom(std::size_t leg) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        return NCElement(Word{}, RationalFunction(mpq_class(mpz_class(t.text))));
      }
      case Tok::Ident: {
        next();
        if (leg >= legs_.size()) {
          throw ParseError("too many tensor legs", line_, offset_ + t.column);
        }
        const auto& syms = legs_[leg];
        for (std::size_t i = 0; i < syms.size(); ++i) {
          if (syms[i] == t.text) return NCElement(Word(1, static_cast<char>(i)));
        }
        if (t.text == "q") return NCElement(Word{}, RationalFunction::q());
        throw ParseError("unknown symbol '" + t.text + "'", line_, offset_ + t.column);
      }
      case Tok::LParen: {
        next();
        Tensor inner = parse_sum(false, leg);
        expect(Tok::RParen, "')'");
        NCElement r;
        for (const auto& [k, c] : inner) r.add_term(k.front(), c);
        return r;
      }
      default:
        fail(t.kind == Tok::End ? "unexpected end of expression" : "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> tokens_;
  std::span<const std::vector<std::string>> legs_;
  int line_;
  int offset_;
  std::size_t pos_ = 0;
  std::size_t term_arity_ = 0;
};

}  // namespace

Tensor parse_tensor_expression(std::string_view text,
                               std::span<const std::vector<std::string>> legs, int line,
                               int column_offset) {
  Lexer lexer(text, line, column_offset);
  Parser parser(lexer.run(), legs, line, column_offset);
  return parser.parse_top();
}

NCElement parse_expression(std::string_view text, const std::vector<std::string>& symbols,
                           int line, int column_offset) {
  std::vector<std::vector<std::string>> legs{symbols};
  Tensor t = parse_tensor_expression(text, legs, line, column_offset);
  NCElement r;
  for (const auto& [k, c] : t) r.add_term(k.front(), c);
  return r;
}

Tensor parse_tensor(std::string_view text, std::span<const Presentation* const> legs) {
  std::vector<std::vector<std::string>> tables;
  for (const auto* p : legs) tables.push_back(p->symbols());
  Tensor raw = parse_tensor_expression(text, tables);
  Tensor out;
  for (const auto& [k, c] : raw) {
    Tensor term(TensorKey{}, c);
    for (std::size_t i = 0; i < k.size(); ++i) term = tensor_of(term, legs[i]->normal_form(k[i]));
    out += term;
  }
  return out;
}

NCElement parse_element(std::string_view text, const Presentation& p) {
  return p.normal_form(parse_expression(text, p.symbols()));
}

}  // namespace sigmacalc
