#include "gpword/gpexpr.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace gpword {

namespace {

std::logic_error wrong_kind(const char* what) {
  return std::logic_error(std::string("expression node has no ") + what);
}

}  // namespace

const QuadExt& GpExpr::value() const {
  if (kind_ != ExprKind::Constant) throw wrong_kind("constant value");
  return value_;
}

const GpExprPtr& GpExpr::left() const {
  if (!left_) throw wrong_kind("operand");
  return left_;
}

const GpExprPtr& GpExpr::right() const {
  if (!right_) throw wrong_kind("right operand");
  return right_;
}

unsigned GpExpr::exponent() const {
  if (kind_ != ExprKind::Pow) throw wrong_kind("exponent");
  return exponent_;
}

GpExprPtr GpExpr::constant(QuadExt value) {
  auto node = std::shared_ptr<GpExpr>(new GpExpr(ExprKind::Constant));
  node->value_ = std::move(value);
  return node;
}

GpExprPtr GpExpr::variable() {
  static const GpExprPtr instance = std::shared_ptr<GpExpr>(new GpExpr(ExprKind::Variable));
  return instance;
}

GpExprPtr GpExpr::add(GpExprPtr lhs, GpExprPtr rhs) {
  // Constant (op) constant folds so compound field constants stay single
  // leaves; printed text like "1/2 - 3/4*sqrt(2)" then re-parses to one node.
  if (lhs->kind() == ExprKind::Constant && rhs->kind() == ExprKind::Constant) {
    return constant(lhs->value() + rhs->value());
  }
  auto node = std::shared_ptr<GpExpr>(new GpExpr(ExprKind::Add));
  node->left_ = std::move(lhs);
  node->right_ = std::move(rhs);
  return node;
}

GpExprPtr GpExpr::sub(GpExprPtr lhs, GpExprPtr rhs) {
  if (lhs->kind() == ExprKind::Constant && rhs->kind() == ExprKind::Constant) {
    return constant(lhs->value() - rhs->value());
  }
  auto node = std::shared_ptr<GpExpr>(new GpExpr(ExprKind::Sub));
  node->left_ = std::move(lhs);
  node->right_ = std::move(rhs);
  return node;
}

GpExprPtr GpExpr::mul(GpExprPtr lhs, GpExprPtr rhs) {
  if (lhs->kind() == ExprKind::Constant && rhs->kind() == ExprKind::Constant) {
    return constant(lhs->value() * rhs->value());
  }
  auto node = std::shared_ptr<GpExpr>(new GpExpr(ExprKind::Mul));
  node->left_ = std::move(lhs);
  node->right_ = std::move(rhs);
  return node;
}

GpExprPtr GpExpr::pow(GpExprPtr base, unsigned exponent) {
  auto node = std::shared_ptr<GpExpr>(new GpExpr(ExprKind::Pow));
  node->right_ = std::move(base);
  node->exponent_ = exponent;
  return node;
}

GpExprPtr GpExpr::floor(GpExprPtr operand) {
  auto node = std::shared_ptr<GpExpr>(new GpExpr(ExprKind::Floor));
  node->left_ = std::move(operand);
  return node;
}

GpExprPtr GpExpr::frac(GpExprPtr operand) {
  auto node = std::shared_ptr<GpExpr>(new GpExpr(ExprKind::Frac));
  node->left_ = std::move(operand);
  return node;
}

bool structurally_equal(const GpExprPtr& x, const GpExprPtr& y) {
  if (x.get() == y.get()) return true;
  if (x->kind() != y->kind()) return false;
  switch (x->kind()) {
    case ExprKind::Constant:
      return x->value().radicand() == y->value().radicand() &&
             x->value().rational() == y->value().rational() &&
             x->value().radical() == y->value().radical();
    case ExprKind::Variable:
      return true;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
      return structurally_equal(x->left(), y->left()) &&
             structurally_equal(x->right(), y->right());
    case ExprKind::Pow:
      return x->exponent() == y->exponent() &&
             structurally_equal(x->right(), y->right());
    case ExprKind::Floor:
    case ExprKind::Frac:
      return structurally_equal(x->left(), y->left());
  }
  return false;
}

bool contains_variable(const GpExprPtr& expr) {
  switch (expr->kind()) {
    case ExprKind::Constant: return false;
    case ExprKind::Variable: return true;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
      return contains_variable(expr->left()) || contains_variable(expr->right());
    case ExprKind::Pow: return contains_variable(expr->right());
    case ExprKind::Floor:
    case ExprKind::Frac:
      return contains_variable(expr->left());
  }
  return false;
}

namespace {

void collect_radicand(const GpExprPtr& expr, long long& d) {
  switch (expr->kind()) {
    case ExprKind::Constant: {
      const long long node_d = expr->value().radicand();
      if (node_d == 0) return;
      if (d == 0) {
        d = node_d;
      } else if (d != node_d) {
        throw invalid_input("expression mixes sqrt(" + std::to_string(d) +
                            ") and sqrt(" + std::to_string(node_d) + ")");
      }
      return;
    }
    case ExprKind::Variable:
      return;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
      collect_radicand(expr->left(), d);
      collect_radicand(expr->right(), d);
      return;
    case ExprKind::Pow:
      collect_radicand(expr->right(), d);
      return;
    case ExprKind::Floor:
    case ExprKind::Frac:
      collect_radicand(expr->left(), d);
      return;
  }
}

QuadExt eval_rec(const GpExprPtr& expr, const QuadExt& n) {
  switch (expr->kind()) {
    case ExprKind::Constant: return expr->value();
    case ExprKind::Variable: return n;
    case ExprKind::Add: return eval_rec(expr->left(), n) + eval_rec(expr->right(), n);
    case ExprKind::Sub: return eval_rec(expr->left(), n) - eval_rec(expr->right(), n);
    case ExprKind::Mul: return eval_rec(expr->left(), n) * eval_rec(expr->right(), n);
    case ExprKind::Pow: return pow(eval_rec(expr->right(), n), expr->exponent());
    case ExprKind::Floor: return QuadExt(eval_rec(expr->left(), n).floor());
    case ExprKind::Frac: return eval_rec(expr->left(), n).frac();
  }
  throw std::logic_error("unknown expression node");
}

}  // namespace

long long expr_radicand(const GpExprPtr& expr) {
  long long d = 0;
  collect_radicand(expr, d);
  return d;
}

QuadExt eval(const GpExprPtr& expr, const BigInt& n) {
  return eval_rec(expr, QuadExt(n));
}

QuadExt eval(const GpExprPtr& expr, long long n) {
  return eval(expr, BigInt(static_cast<long>(n)));
}

// --- printing ---------------------------------------------------------------

namespace {

// Binding strength used to decide parenthesisation: 1 additive, 2
// multiplicative, 3 power, 4 self-delimited atom.
int node_precedence(const GpExprPtr& expr) {
  switch (expr->kind()) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
      return 2;
    case ExprKind::Pow:
      return 3;
    case ExprKind::Variable:
    case ExprKind::Floor:
    case ExprKind::Frac:
      return 4;
    case ExprKind::Constant: {
      const QuadExt& v = expr->value();
      const bool has_rational = sgn(v.rational()) != 0;
      const bool has_radical = sgn(v.radical()) != 0;
      if (has_rational && has_radical) return 1;       // "1/2 + 3/4*sqrt(2)"
      if (v.sign() < 0) return 1;                      // leading minus
      if (has_radical && v.radical() != 1) return 2;   // "3/4*sqrt(2)"
      return 4;                                        // "7", "1/4", "sqrt(2)"
    }
  }
  return 4;
}

void print_rec(const GpExprPtr& expr, int min_precedence, std::string& out) {
  const int precedence = node_precedence(expr);
  const bool parens = precedence < min_precedence;
  if (parens) out += '(';
  switch (expr->kind()) {
    case ExprKind::Constant:
      out += expr->value().str();
      break;
    case ExprKind::Variable:
      out += 'n';
      break;
    case ExprKind::Add:
      print_rec(expr->left(), 1, out);
      out += " + ";
      print_rec(expr->right(), 2, out);
      break;
    case ExprKind::Sub:
      print_rec(expr->left(), 1, out);
      out += " - ";
      print_rec(expr->right(), 2, out);
      break;
    case ExprKind::Mul:
      print_rec(expr->left(), 2, out);
      out += '*';
      print_rec(expr->right(), 3, out);
      break;
    case ExprKind::Pow:
      print_rec(expr->right(), 4, out);
      out += '^';
      out += std::to_string(expr->exponent());
      break;
    case ExprKind::Floor:
      out += "floor(";
      print_rec(expr->left(), 1, out);
      out += ')';
      break;
    case ExprKind::Frac:
      out += "frac(";
      print_rec(expr->left(), 1, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print(const GpExprPtr& expr) {
  std::string out;
  print_rec(expr, 1, out);
  return out;
}

// --- parsing ----------------------------------------------------------------

namespace {

enum class TokenType { Integer, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  TokenType type;
  std::string text;
  BigInt int_value;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token token;
    token.pos = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      token.type = TokenType::Integer;
      token.text = std::string(text.substr(i, j - i));
      token.int_value = BigInt(token.text);
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      token.type = TokenType::Ident;
      token.text = std::string(text.substr(i, j - i));
      i = j;
    } else {
      switch (c) {
        case '+': token.type = TokenType::Plus; break;
        case '-': token.type = TokenType::Minus; break;
        case '*': token.type = TokenType::Star; break;
        case '/': token.type = TokenType::Slash; break;
        case '^': token.type = TokenType::Caret; break;
        case '(': token.type = TokenType::LParen; break;
        case ')': token.type = TokenType::RParen; break;
        default:
          throw parse_error(std::string("unexpected character '") + c + "'", i);
      }
      token.text = std::string(1, c);
      ++i;
    }
    tokens.push_back(std::move(token));
  }
  Token end;
  end.type = TokenType::End;
  end.pos = text.size();
  tokens.push_back(std::move(end));
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  GpExprPtr parse() {
    GpExprPtr expr = parse_expr();
    if (peek().type != TokenType::End) {
      throw parse_error("unexpected trailing input '" + peek().text + "'", peek().pos);
    }
    return expr;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = index_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  const Token& advance() { return tokens_[index_++]; }

  bool accept(TokenType type) {
    if (peek().type != type) return false;
    ++index_;
    return true;
  }

  const Token& expect(TokenType type, const char* what) {
    if (peek().type != type) {
      throw parse_error(std::string("expected ") + what + ", found '" +
                            (peek().type == TokenType::End ? "end of input" : peek().text) + "'",
                        peek().pos);
    }
    return advance();
  }

  GpExprPtr parse_expr() {
    GpExprPtr lhs = parse_term();
    for (;;) {
      if (accept(TokenType::Plus)) {
        lhs = GpExpr::add(std::move(lhs), parse_term());
      } else if (accept(TokenType::Minus)) {
        lhs = GpExpr::sub(std::move(lhs), parse_term());
      } else {
        return lhs;
      }
    }
  }

  GpExprPtr parse_term() {
    GpExprPtr lhs = parse_factor();
    for (;;) {
      if (accept(TokenType::Star)) {
        lhs = GpExpr::mul(std::move(lhs), parse_factor());
      } else if (peek().type == TokenType::Slash) {
        const Token& slash = advance();
        GpExprPtr rhs = parse_factor();
        if (contains_variable(rhs)) {
          throw parse_error("division is only defined by a nonzero constant", slash.pos);
        }
        QuadExt value = eval(rhs, 0);
        if (value.is_zero()) throw parse_error("division by zero", slash.pos);
        lhs = GpExpr::mul(std::move(lhs), GpExpr::constant(value.inverse()));
      } else {
        return lhs;
      }
    }
  }

  GpExprPtr parse_factor() {
    if (accept(TokenType::Minus)) {
      GpExprPtr operand = parse_factor();
      if (operand->kind() == ExprKind::Constant) {
        return GpExpr::constant(-operand->value());
      }
      return GpExpr::sub(GpExpr::constant(QuadExt(0)), std::move(operand));
    }
    return parse_power();
  }

  GpExprPtr parse_power() {
    GpExprPtr base = parse_primary();
    while (peek().type == TokenType::Caret) {
      advance();
      const Token& exp = expect(TokenType::Integer, "a non-negative integer exponent");
      if (!exp.int_value.fits_uint_p()) {
        throw parse_error("exponent too large", exp.pos);
      }
      base = GpExpr::pow(std::move(base), static_cast<unsigned>(exp.int_value.get_ui()));
    }
    return base;
  }

  GpExprPtr parse_primary() {
    const Token& token = peek();
    switch (token.type) {
      case TokenType::Integer: {
        advance();
        // Greedy rational literal: INT '/' INT.
        if (peek().type == TokenType::Slash && peek(1).type == TokenType::Integer) {
          advance();
          const Token& den = advance();
          if (sgn(den.int_value) == 0) throw parse_error("zero denominator", den.pos);
          Rational value(token.int_value, den.int_value);
          value.canonicalize();
          return GpExpr::constant(QuadExt(value));
        }
        return GpExpr::constant(QuadExt(BigInt(token.int_value)));
      }
      case TokenType::Ident: {
        advance();
        if (token.text == "n") return GpExpr::variable();
        if (token.text == "sqrt") return parse_sqrt(token.pos);
        if (token.text == "floor" || token.text == "frac") {
          expect(TokenType::LParen, "'('");
          GpExprPtr inner = parse_expr();
          expect(TokenType::RParen, "')'");
          return token.text == "floor" ? GpExpr::floor(std::move(inner))
                                       : GpExpr::frac(std::move(inner));
        }
        throw parse_error("unknown identifier '" + token.text + "' (the variable is 'n')",
                          token.pos);
      }
      case TokenType::LParen: {
        advance();
        GpExprPtr inner = parse_expr();
        expect(TokenType::RParen, "')'");
        return inner;
      }
      default:
        throw parse_error("expected a value, found '" +
                              (token.type == TokenType::End ? "end of input" : token.text) + "'",
                          token.pos);
    }
  }

  GpExprPtr parse_sqrt(std::size_t call_pos) {
    expect(TokenType::LParen, "'('");
    const Token& arg = expect(TokenType::Integer, "an integer radicand");
    expect(TokenType::RParen, "')'");
    if (!arg.int_value.fits_slong_p()) {
      throw parse_error("radicand too large", arg.pos);
    }
    const long long d = arg.int_value.get_si();
    try {
      validate_radicand(d);
    } catch (const invalid_input& error) {
      throw parse_error(error.what(), arg.pos);
    }
    if (radicand_ != 0 && radicand_ != d) {
      throw parse_error("expression mixes sqrt(" + std::to_string(radicand_) + ") and sqrt(" +
                            std::to_string(d) + ")",
                        call_pos);
    }
    radicand_ = d;
    return GpExpr::constant(QuadExt::sqrt_of(d));
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  long long radicand_ = 0;
};

}  // namespace

GpExprPtr parse_expression(std::string_view text) { return Parser(text).parse(); }

QuadExt parse_constant(std::string_view text) {
  GpExprPtr expr = parse_expression(text);
  if (contains_variable(expr)) {
    throw invalid_input("expected a constant, got an expression in n: " + std::string(text));
  }
  return eval(expr, 0);
}

GpExprPtr sturmian_expression(const QuadExt& alpha, const QuadExt& rho) {
  if (alpha.is_rational()) {
    throw invalid_input("sturmian slope must be irrational, got " + alpha.str());
  }
  const GpExprPtr alpha_c = GpExpr::constant(alpha);
  const GpExprPtr rho_c = GpExpr::constant(rho);
  const GpExprPtr n = GpExpr::variable();
  GpExprPtr shifted = GpExpr::floor(
      GpExpr::add(GpExpr::mul(alpha_c, GpExpr::add(n, GpExpr::constant(QuadExt(1)))), rho_c));
  GpExprPtr current = GpExpr::floor(GpExpr::add(GpExpr::mul(alpha_c, n), rho_c));
  GpExprPtr base = GpExpr::floor(alpha_c);
  return GpExpr::sub(GpExpr::sub(std::move(shifted), std::move(current)), std::move(base));
}

std::string sturmian_prefix(const QuadExt& alpha, const QuadExt& rho, std::size_t count) {
  if (alpha.is_rational()) {
    throw invalid_input("sturmian slope must be irrational, got " + alpha.str());
  }
  std::string out;
  out.reserve(count);
  const BigInt base = alpha.floor();
  QuadExt value = rho;  // alpha*n + rho at n = 0
  BigInt prev = value.floor();
  for (std::size_t i = 0; i < count; ++i) {
    value += alpha;
    BigInt next = value.floor();
    BigInt symbol = next - prev - base;
    prev = next;
    out.push_back(static_cast<char>(symbol.get_si()));
  }
  return out;
}

}  // namespace gpword
