#pragma once

#include <cctype>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diophant/constants.hpp"
#include "diophant/interval.hpp"

namespace diophant {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Node of a model expression. Immutable once built; subtrees are shared.
struct Expr {
  // Declaration order doubles as the canonical sort order of commutative
  // operands (see make_binary).
  enum class Kind { mul, div, add, sub, neg, param, literal, log2, log3, sqrt, root };

  Kind kind;
  BigInt literal;           // Kind::literal
  unsigned index = 0;       // Kind::param, 1-based
  unsigned long order = 0;  // Kind::root
  ExprPtr lhs;              // binary ops and the single operand of neg/sqrt/root
  ExprPtr rhs;              // binary ops
};

namespace expr {

inline int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div: return 2;
    case Expr::Kind::neg: return 3;
    default: return 4;
  }
}

inline bool is_binary(Expr::Kind k) { return precedence(k) <= 2; }

inline std::string render(const Expr& e);

inline std::string render_operand(const Expr& e, bool paren) {
  return paren ? "(" + render(e) + ")" : render(e);
}

inline std::string render(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::literal: return e.literal.get_str();
    case K::param: return "a" + std::to_string(e.index);
    case K::log2: return "log2";
    case K::log3: return "log3";
    case K::sqrt: return "sqrt(" + render(*e.lhs) + ")";
    case K::root: return "root(" + std::to_string(e.order) + "," + render(*e.lhs) + ")";
    case K::neg: return "-" + render_operand(*e.lhs, precedence(e.lhs->kind) < 4);
    default: break;
  }
  const int p = precedence(e.kind);
  const char op = e.kind == K::add ? '+' : e.kind == K::sub ? '-' : e.kind == K::mul ? '*' : '/';
  // Operators are left-associative, so a same-level right operand keeps its parentheses.
  return render_operand(*e.lhs, precedence(e.lhs->kind) < p) + op +
         render_operand(*e.rhs, precedence(e.rhs->kind) <= p);
}

inline bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.index != b.index || a.order != b.order || a.literal != b.literal) {
    return false;
  }
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs) ||
      static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) {
    return false;
  }
  return (!a.lhs || structurally_equal(*a.lhs, *b.lhs)) &&
         (!a.rhs || structurally_equal(*a.rhs, *b.rhs));
}

inline bool canonical_less(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  return render(a) < render(b);
}

inline ExprPtr make_leaf(Expr::Kind kind) { return std::make_shared<const Expr>(Expr{kind, {}, 0, 0, {}, {}}); }

inline ExprPtr make_literal(BigInt v) {
  return std::make_shared<const Expr>(Expr{Expr::Kind::literal, std::move(v), 0, 0, {}, {}});
}

inline ExprPtr make_param(unsigned index) {
  return std::make_shared<const Expr>(Expr{Expr::Kind::param, {}, index, 0, {}, {}});
}

inline ExprPtr make_unary(Expr::Kind kind, ExprPtr operand, unsigned long order = 0) {
  return std::make_shared<const Expr>(Expr{kind, {}, 0, order, std::move(operand), {}});
}

/// Builds a binary node; operands of + and * are put in canonical order.
inline ExprPtr make_binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs) {
  if ((kind == Expr::Kind::add || kind == Expr::Kind::mul) && canonical_less(*rhs, *lhs)) {
    std::swap(lhs, rhs);
  }
  return std::make_shared<const Expr>(Expr{kind, {}, 0, 0, std::move(lhs), std::move(rhs)});
}

inline void collect_params(const Expr& e, std::set<unsigned>& out) {
  if (e.kind == Expr::Kind::param) out.insert(e.index);
  if (e.lhs) collect_params(*e.lhs, out);
  if (e.rhs) collect_params(*e.rhs, out);
}

inline constexpr unsigned long kMaxRootOrder = 64;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { tokenize(); }

  ExprPtr parse() {
    ExprPtr e = parse_expr();
    if (peek().type != Tok::end) fail("unexpected '" + std::string(peek().text) + "'");
    return e;
  }

 private:
  enum class Tok { integer, param, log2, log3, sqrt, root, lparen, rparen, comma, plus, minus, star, slash, end };

  struct Token {
    Tok type;
    std::string_view text;
    std::size_t pos;
  };

  [[noreturn]] void fail(const std::string& msg, std::size_t pos) const {
    throw Error(ErrorKind::syntax, msg + " at position " + std::to_string(pos), pos);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek().pos); }

  void tokenize() {
    std::size_t i = 0;
    while (i < text_.size()) {
      const char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
        tokens_.push_back({Tok::integer, text_.substr(start, i - start), start});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        while (i < text_.size() && std::isalnum(static_cast<unsigned char>(text_[i]))) ++i;
        const std::string_view word = text_.substr(start, i - start);
        tokens_.push_back({word_type(word, start), word, start});
        continue;
      }
      Tok t;
      switch (c) {
        case '(': t = Tok::lparen; break;
        case ')': t = Tok::rparen; break;
        case ',': t = Tok::comma; break;
        case '+': t = Tok::plus; break;
        case '-': t = Tok::minus; break;
        case '*': t = Tok::star; break;
        case '/': t = Tok::slash; break;
        default: fail(std::string("unexpected character '") + c + "'", start);
      }
      tokens_.push_back({t, text_.substr(start, 1), start});
      ++i;
    }
    tokens_.push_back({Tok::end, "end of input", text_.size()});
  }

  Tok word_type(std::string_view w, std::size_t pos) const {
    if (w == "log2") return Tok::log2;
    if (w == "log3") return Tok::log3;
    if (w == "sqrt") return Tok::sqrt;
    if (w == "root") return Tok::root;
    const bool param = w.size() >= 2 && w.size() <= 3 && w[0] == 'a' && w[1] >= '1' &&
                       w[1] <= '9' && (w.size() == 2 || std::isdigit(static_cast<unsigned char>(w[2])));
    if (!param) fail("unknown identifier '" + std::string(w) + "'", pos);
    return Tok::param;
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  void expect(Tok t, const char* what) {
    if (peek().type != t) fail(std::string("expected ") + what);
    ++pos_;
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (peek().type == Tok::plus || peek().type == Tok::minus) {
      const auto kind = next().type == Tok::plus ? Expr::Kind::add : Expr::Kind::sub;
      lhs = make_binary(kind, std::move(lhs), parse_term());
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    while (peek().type == Tok::star || peek().type == Tok::slash) {
      const bool is_div = next().type == Tok::slash;
      const std::size_t at = peek().pos;
      ExprPtr rhs = parse_factor();
      if (is_div && rhs->kind == Expr::Kind::literal && rhs->literal == 0) {
        throw Error(ErrorKind::zero_divisor, "literal zero divisor at position " + std::to_string(at), at);
      }
      lhs = make_binary(is_div ? Expr::Kind::div : Expr::Kind::mul, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  ExprPtr parse_factor() {
    if (peek().type == Tok::minus) {
      ++pos_;
      return make_unary(Expr::Kind::neg, parse_atom());
    }
    return parse_atom();
  }

  ExprPtr parse_atom() {
    const Token tok = next();
    switch (tok.type) {
      case Tok::integer: return make_literal(BigInt(std::string(tok.text)));
      case Tok::param: return make_param(static_cast<unsigned>(std::stoul(std::string(tok.text.substr(1)))));
      case Tok::log2: return make_leaf(Expr::Kind::log2);
      case Tok::log3: return make_leaf(Expr::Kind::log3);
      case Tok::sqrt: {
        expect(Tok::lparen, "'(' after sqrt");
        ExprPtr inner = parse_expr();
        expect(Tok::rparen, "')'");
        return make_unary(Expr::Kind::sqrt, std::move(inner));
      }
      case Tok::root: {
        expect(Tok::lparen, "'(' after root");
        const Token k = next();
        if (k.type != Tok::integer) fail("expected root order", k.pos);
        const BigInt order(std::string(k.text));
        if (order < 2 || order > kMaxRootOrder) fail("root order must be between 2 and 64", k.pos);
        expect(Tok::comma, "','");
        ExprPtr inner = parse_expr();
        expect(Tok::rparen, "')'");
        if (order == 2) return make_unary(Expr::Kind::sqrt, std::move(inner));
        return make_unary(Expr::Kind::root, std::move(inner), order.get_ui());
      }
      case Tok::lparen: {
        ExprPtr inner = parse_expr();
        expect(Tok::rparen, "')'");
        return inner;
      }
      default: fail("unexpected '" + std::string(tok.text) + "'", tok.pos);
    }
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace expr

/// A model of approximation: an expression in parameters a1..an mapping
/// nonzero integer tuples to reals.
class Model {
 public:
  Model(ExprPtr root, std::size_t arity, std::string source_text)
      : root_(std::move(root)), arity_(arity), source_text_(std::move(source_text)) {}

  const Expr& expr() const { return *root_; }
  const ExprPtr& root() const { return root_; }
  std::size_t arity() const { return arity_; }
  const std::string& source_text() const { return source_text_; }

  friend bool operator==(const Model& a, const Model& b) {
    return a.arity_ == b.arity_ && expr::structurally_equal(*a.root_, *b.root_);
  }

 private:
  ExprPtr root_;
  std::size_t arity_;
  std::string source_text_;
};

/// Parses the model grammar:
///   expr := term (('+'|'-') term)*      term := factor (('*'|'/') factor)*
///   factor := ['-'] atom
///   atom := INT | a1..a99 | log2 | log3 | sqrt(expr) | root(INT, expr) | (expr)
/// Parameter indices must be exactly 1..n. root(2, x) is stored as sqrt(x).
inline Model parse_model(std::string_view text) {
  ExprPtr root = expr::Parser(text).parse();
  std::set<unsigned> used;
  expr::collect_params(*root, used);
  if (used.empty()) throw Error(ErrorKind::parameter_gap, "model has no parameters");
  const unsigned n = *used.rbegin();
  if (used.size() != n) {
    for (unsigned i = 1; i <= n; ++i) {
      if (!used.count(i)) {
        throw Error(ErrorKind::parameter_gap,
                    "parameter a" + std::to_string(i) + " missing (model uses a" + std::to_string(n) + ")");
      }
    }
  }
  return {std::move(root), n, std::string(text)};
}

/// Canonical text: no whitespace, commutative operands ordered, minimal parentheses.
inline std::string format_model(const Model& model) { return expr::render(model.expr()); }

inline void check_params(const Model& model, std::span<const BigInt> params) {
  if (params.size() != model.arity()) {
    throw Error(ErrorKind::invalid_argument,
                "model takes " + std::to_string(model.arity()) + " parameters, got " +
                    std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i] == 0) {
      throw Error(ErrorKind::invalid_parameter, "parameter a" + std::to_string(i + 1) + " is zero");
    }
  }
}

namespace expr {

inline Interval enclose(const Expr& e, std::span<const BigInt> params, Precision q) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::literal: return Interval::point(e.literal, q);
    case K::param: return Interval::point(params[e.index - 1], q);
    case K::log2: return constant_interval("log2", q);
    case K::log3: return constant_interval("log3", q);
    case K::neg: return ival::neg(enclose(*e.lhs, params, q));
    case K::sqrt: return ival::sqrt(enclose(*e.lhs, params, q), q);
    case K::root: return ival::root(enclose(*e.lhs, params, q), e.order, q);
    case K::add: return ival::add(enclose(*e.lhs, params, q), enclose(*e.rhs, params, q), q);
    case K::sub: return ival::sub(enclose(*e.lhs, params, q), enclose(*e.rhs, params, q), q);
    case K::mul: return ival::mul(enclose(*e.lhs, params, q), enclose(*e.rhs, params, q), q);
    case K::div: return ival::div(enclose(*e.lhs, params, q), enclose(*e.rhs, params, q), q);
  }
  return Interval::point(0L, q);
}

}  // namespace expr

/// One enclosure of the model value at endpoint precision q. May throw
/// detail::Unresolved; callers normally go through evaluate().
inline Interval evaluate_enclosure(const Model& model, std::span<const BigInt> params, Precision q) {
  check_params(model, params);
  return expr::enclose(model.expr(), params, q);
}

/// Model value at the parameters, correct to `precision` bits.
inline BigReal evaluate(const Model& model, std::span<const BigInt> params,
                        Precision precision = kDefaultPrecision) {
  check_params(model, params);
  return detail::escalate(precision, [&](Precision q, bool last) {
    const Interval v = expr::enclose(model.expr(), params, q);
    if (!last && !v.relatively_tight(precision + 2) && !v.is_zero()) {
      throw detail::Unresolved{ErrorKind::insufficient_precision, "model value not resolved"};
    }
    return v.mid(precision);
  });
}

}  // namespace diophant
