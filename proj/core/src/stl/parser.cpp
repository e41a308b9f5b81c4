#include "stlf/stl/parser.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "stlf/errors.hpp"

namespace stlf::stl {

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Plus,
  Minus,
  Star,
  Le,
  Ge,
  Lt,
  Gt,
  Bars,  // || or ∥
  Box,   // □
  Diamond,
  Wedge,
  Vee,
  Neg,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
  std::size_t index;  // position in the token stream
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const std::size_t line = line_;
      const std::size_t col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line, col, out.size()});
        return out;
      }
      Token t = next(line, col);
      t.index = out.size();
      out.push_back(std::move(t));
    }
  }

 private:
  void advance(std::size_t bytes) {
    for (std::size_t i = 0; i < bytes && pos_ < src_.size(); ++i, ++pos_) {
      const auto c = static_cast<unsigned char>(src_[pos_]);
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  Token make(Tok kind, std::size_t bytes, std::size_t line, std::size_t col) {
    Token t{kind, std::string(src_.substr(pos_, bytes)), line, col, 0};
    advance(bytes);
    return t;
  }

  Token next(std::size_t line, std::size_t col) {
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    static constexpr Sym kSymbols[] = {
        {"□", Tok::Box},     {"◇", Tok::Diamond}, {"◊", Tok::Diamond}, {"∧", Tok::Wedge},
        {"∨", Tok::Vee},     {"¬", Tok::Neg},     {"∥", Tok::Bars},    {"≤", Tok::Le},
        {"≥", Tok::Ge},      {"−", Tok::Minus},   {"||", Tok::Bars},        {"<=", Tok::Le},
        {">=", Tok::Ge},          {"<", Tok::Lt},           {">", Tok::Gt},           {"(", Tok::LParen},
        {")", Tok::RParen},       {"[", Tok::LBracket},     {"]", Tok::RBracket},     {",", Tok::Comma},
        {"+", Tok::Plus},         {"-", Tok::Minus},        {"*", Tok::Star},
    };
    for (const auto& s : kSymbols) {
      if (starts_with(s.text)) return make(s.kind, s.text.size(), line, col);
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = 0;
      while (pos_ + n < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_ + n])) || src_[pos_ + n] == '_'))
        ++n;
      return make(Tok::Ident, n, line, col);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t n = 0;
      auto digits = [&] {
        while (pos_ + n < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + n]))) ++n;
      };
      digits();
      if (pos_ + n < src_.size() && src_[pos_ + n] == '.') {
        ++n;
        digits();
      }
      if (pos_ + n < src_.size() && (src_[pos_ + n] == 'e' || src_[pos_ + n] == 'E')) {
        std::size_t m = n + 1;
        if (pos_ + m < src_.size() && (src_[pos_ + m] == '+' || src_[pos_ + m] == '-')) ++m;
        if (pos_ + m < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + m]))) {
          n = m;
          digits();
        }
      }
      return make(Tok::Number, n, line, col);
    }
    for (std::string_view op : {"==", "!=", "=", "!", "&&", "&", "|", "/", "^", "~", "->", "=>"}) {
      if (starts_with(op)) throw SyntaxError("unknown operator '" + std::string(op) + "'", line, col);
    }
    std::size_t len = 1;
    const auto lead = static_cast<unsigned char>(c);
    if (lead >= 0xF0) len = 4;
    else if (lead >= 0xE0) len = 3;
    else if (lead >= 0xC0) len = 2;
    throw SyntaxError("unexpected character '" + std::string(src_.substr(pos_, len)) + "'", line, col);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool is_reserved(std::string_view word) {
  return word == "and" || word == "or" || word == "not" || word == "norm";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "' after formula");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().line, peek().column); }

  void expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) {
      fail("expected " + std::string(what) + ", found " + (peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'"));
    }
    take();
  }

  // True when the next tokens open a temporal operator with the given keyword.
  bool at_temporal(std::string_view word, Tok symbol) const {
    if (peek().kind == symbol) return true;
    return at_word(word) && peek(1).kind == Tok::LBracket;
  }

  Formula formula() {
    Formula lhs = conjunction();
    while (peek().kind == Tok::Vee || at_word("or")) {
      take();
      lhs = Formula::disjunction(lhs, conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = until_chain();
    while (peek().kind == Tok::Wedge || at_word("and")) {
      take();
      lhs = Formula::conjunction(lhs, until_chain());
    }
    return lhs;
  }

  Formula until_chain() {
    Formula lhs = unary();
    while (at_word("U") && peek(1).kind == Tok::LBracket) {
      take();
      const TimeBound b = bound();
      lhs = Formula::until(b, lhs, unary());
    }
    return lhs;
  }

  Formula unary() {
    if (peek().kind == Tok::Neg || at_word("not")) {
      take();
      return Formula::negation(unary());
    }
    if (at_temporal("G", Tok::Box)) {
      take();
      const TimeBound b = bound();
      return Formula::globally(b, unary());
    }
    if (at_temporal("F", Tok::Diamond)) {
      take();
      const TimeBound b = bound();
      return Formula::eventually(b, unary());
    }
    if (peek().kind == Tok::Ident && peek(1).kind == Tok::LBracket) {
      fail("unknown operator '" + peek().text + "'");
    }
    return primary();
  }

  Formula primary() {
    if (peek().kind != Tok::LParen) return predicate();
    const std::size_t start = pos_;
    std::optional<SyntaxError> formula_error;
    try {
      take();
      Formula inner = formula();
      expect(Tok::RParen, "')'");
      // `(a - b) <= 1` parses as a formula prefix only by accident; let the
      // predicate path handle anything that continues as arithmetic.
      if (!continues_expression()) return inner;
    } catch (const SyntaxError& e) {
      formula_error = e;
    }
    const std::size_t formula_reach = pos_;
    pos_ = start;
    try {
      return predicate();
    } catch (const SyntaxError&) {
      if (formula_error && formula_reach >= pos_) throw *formula_error;
      throw;
    }
  }

  bool continues_expression() const {
    switch (peek().kind) {
      case Tok::Le:
      case Tok::Ge:
      case Tok::Lt:
      case Tok::Gt:
      case Tok::Plus:
      case Tok::Minus:
      case Tok::Star:
        return true;
      default:
        return false;
    }
  }

  TimeBound bound() {
    expect(Tok::LBracket, "'['");
    const std::size_t lo = integer();
    expect(Tok::Comma, "','");
    const std::size_t hi = integer();
    expect(Tok::RBracket, "']'");
    return TimeBound{lo, hi};
  }

  std::size_t integer() {
    if (peek().kind == Tok::Minus) fail("temporal bounds must be nonnegative integers");
    if (peek().kind != Tok::Number) fail("expected an integer bound");
    const Token& t = peek();
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail("temporal bounds must be nonnegative integers");
    take();
    return value;
  }

  double number() {
    const Token& t = peek();
    if (t.kind != Tok::Number) fail("expected a number");
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail("malformed number '" + t.text + "'");
    take();
    return value;
  }

  Formula predicate() {
    ScalarExpr e = expression();
    Relation rel{};
    switch (peek().kind) {
      case Tok::Le: rel = Relation::LessEqual; break;
      case Tok::Ge: rel = Relation::GreaterEqual; break;
      case Tok::Lt: rel = Relation::Less; break;
      case Tok::Gt: rel = Relation::Greater; break;
      default:
        fail(peek().kind == Tok::End ? "expected a comparison, found end of input"
                                     : "expected a comparison, found '" + peek().text + "'");
    }
    take();
    double sign = 1.0;
    if (peek().kind == Tok::Minus) {
      take();
      sign = -1.0;
    } else if (peek().kind == Tok::Plus) {
      take();
    }
    const double threshold = sign * number();
    return Formula::predicate(std::move(e), rel, threshold);
  }

  ScalarExpr expression() {
    ScalarExpr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool plus = take().kind == Tok::Plus;
      ScalarExpr rhs = term();
      lhs = plus ? ScalarExpr::add(lhs, rhs) : ScalarExpr::sub(lhs, rhs);
    }
    return lhs;
  }

  ScalarExpr term() {
    ScalarExpr lhs = signed_atom();
    while (peek().kind == Tok::Star) {
      const Token& star = take();
      ScalarExpr rhs = signed_atom();
      const auto* lc = std::get_if<expr::Constant>(&lhs.node());
      const auto* rc = std::get_if<expr::Constant>(&rhs.node());
      if (lc) {
        lhs = ScalarExpr::scale(lc->value, rhs);
      } else if (rc) {
        lhs = ScalarExpr::scale(rc->value, lhs);
      } else {
        throw SyntaxError("'*' requires a numeric literal on one side", star.line, star.column);
      }
    }
    return lhs;
  }

  ScalarExpr signed_atom() {
    if (peek().kind == Tok::Minus) {
      take();
      ScalarExpr inner = signed_atom();
      if (const auto* c = std::get_if<expr::Constant>(&inner.node())) return ScalarExpr::constant(-c->value);
      return ScalarExpr::scale(-1.0, inner);
    }
    return atom();
  }

  ScalarExpr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        return ScalarExpr::constant(number());
      case Tok::LParen: {
        take();
        ScalarExpr e = expression();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Bars: {
        take();
        ScalarExpr e = expression();
        expect(Tok::Bars, "closing norm bars");
        return ScalarExpr::norm(e);
      }
      case Tok::Ident: {
        if (t.text == "norm") {
          take();
          expect(Tok::LParen, "'(' after norm");
          ScalarExpr e = expression();
          expect(Tok::RParen, "')'");
          return ScalarExpr::norm(e);
        }
        if (is_reserved(t.text)) fail("unexpected keyword '" + t.text + "'");
        std::string name = t.text;
        take();
        return ScalarExpr::signal(std::move(name));
      }
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.parse_all();
}

Formula parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open specification file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace stlf::stl
