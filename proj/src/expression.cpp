#include "certquad/expression.hpp"

#include "certquad/params.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

namespace certquad {

struct Expr::Node {
  ExprKind kind;
  double value = 0.0;
  std::optional<Expr> lhs;
  std::optional<Expr> rhs;
  bool has_x = false;
};

Expr Expr::constant(double value) {
  if (!std::isfinite(value) || value < 0.0)
    throw std::invalid_argument("expression constants must be finite and non-negative");
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Constant;
  n->value = value == 0.0 ? 0.0 : value;  // drop -0
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Variable;
  n->has_x = true;
  return Expr(std::move(n));
}

Expr Expr::binary(ExprKind kind, Expr lhs, Expr rhs) {
  if (!is_binary(kind)) throw std::invalid_argument("not a binary expression kind");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->has_x = lhs.depends_on_x() || rhs.depends_on_x();
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::unary(ExprKind kind, Expr operand) {
  if (kind != ExprKind::Neg && !is_function(kind))
    throw std::invalid_argument("not a unary expression kind");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->has_x = operand.depends_on_x();
  n->lhs = std::move(operand);
  return Expr(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
const Expr& Expr::lhs() const { return *node_->lhs; }
const Expr& Expr::rhs() const { return *node_->rhs; }
const Expr& Expr::operand() const { return *node_->lhs; }
bool Expr::depends_on_x() const { return node_->has_x; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::Constant: return a.value() == b.value();
    case ExprKind::Variable: return true;
    default: break;
  }
  if (is_binary(a.kind())) return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  return a.operand() == b.operand();
}

bool is_binary(ExprKind kind) {
  switch (kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
    case ExprKind::Pow: return true;
    default: return false;
  }
}

bool is_function(ExprKind kind) {
  return kind == ExprKind::Exp || kind == ExprKind::Ln || kind == ExprKind::Abs ||
         kind == ExprKind::Sign;
}

std::string_view function_name(ExprKind kind) {
  switch (kind) {
    case ExprKind::Exp: return "exp";
    case ExprKind::Ln: return "ln";
    case ExprKind::Abs: return "abs";
    case ExprKind::Sign: return "sign";
    default: return "";
  }
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

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

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      if (accept('+'))
        e = Expr::binary(ExprKind::Add, e, parse_term());
      else if (accept('-'))
        e = Expr::binary(ExprKind::Sub, e, parse_term());
      else
        return e;
    }
  }

  Expr parse_term() {
    Expr e = parse_power();
    for (;;) {
      if (accept('*'))
        e = Expr::binary(ExprKind::Mul, e, parse_power());
      else if (accept('/'))
        e = Expr::binary(ExprKind::Div, e, parse_power());
      else
        return e;
    }
  }

  Expr parse_power() {
    Expr base = parse_unary();
    if (accept('^')) return Expr::binary(ExprKind::Pow, base, parse_power());
    return base;
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::unary(ExprKind::Neg, parse_unary());
    return parse_primary();
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;  // not an exponent
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_ || !std::isfinite(v)) {
      pos_ = start;
      fail("number out of range");
    }
    return Expr::constant(v);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return Expr::variable();
    for (ExprKind k : {ExprKind::Exp, ExprKind::Ln, ExprKind::Abs, ExprKind::Sign}) {
      if (name == function_name(k)) {
        expect('(');
        Expr arg = parse_expr();
        expect(')');
        return Expr::unary(k, arg);
      }
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

int precedence(ExprKind kind) {
  switch (kind) {
    case ExprKind::Add:
    case ExprKind::Sub: return 1;
    case ExprKind::Mul:
    case ExprKind::Div: return 2;
    case ExprKind::Pow: return 3;
    case ExprKind::Neg: return 4;
    default: return 5;
  }
}

char op_char(ExprKind kind) {
  switch (kind) {
    case ExprKind::Add: return '+';
    case ExprKind::Sub: return '-';
    case ExprKind::Mul: return '*';
    case ExprKind::Div: return '/';
    default: return '^';
  }
}

void print(const Expr& e, std::string& out, int min_prec) {
  const int prec = precedence(e.kind());
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (e.kind()) {
    case ExprKind::Constant: {
      std::array<char, 64> buf{};
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), e.value());
      out.append(buf.data(), res.ptr);
      break;
    }
    case ExprKind::Variable: out += 'x'; break;
    case ExprKind::Neg:
      out += '-';
      print(e.operand(), out, precedence(ExprKind::Neg));
      break;
    case ExprKind::Pow:
      print(e.lhs(), out, prec + 1);
      out += '^';
      print(e.rhs(), out, prec);
      break;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
      print(e.lhs(), out, prec);
      out += op_char(e.kind());
      print(e.rhs(), out, prec + 1);
      break;
    default:
      out += function_name(e.kind());
      out += '(';
      print(e.operand(), out, 0);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double eval(const Expr& e, double x) {
  switch (e.kind()) {
    case ExprKind::Constant: return e.value();
    case ExprKind::Variable: return x;
    case ExprKind::Add: return eval(e.lhs(), x) + eval(e.rhs(), x);
    case ExprKind::Sub: return eval(e.lhs(), x) - eval(e.rhs(), x);
    case ExprKind::Mul: return eval(e.lhs(), x) * eval(e.rhs(), x);
    case ExprKind::Div: {
      const double d = eval(e.rhs(), x);
      if (d == 0.0) throw DomainError("division by zero");
      return eval(e.lhs(), x) / d;
    }
    case ExprKind::Pow: {
      const double base = eval(e.lhs(), x);
      const double expo = eval(e.rhs(), x);
      if (std::trunc(expo) == expo) {
        if (base == 0.0 && expo < 0.0) throw DomainError("zero raised to a negative power");
        return std::pow(base, expo);
      }
      if (base < 0.0) throw DomainError("non-integer power of a negative base");
      if (base == 0.0 && expo < 0.0) throw DomainError("zero raised to a negative power");
      return std::pow(base, expo);
    }
    case ExprKind::Neg: return -eval(e.operand(), x);
    case ExprKind::Exp: return std::exp(eval(e.operand(), x));
    case ExprKind::Ln: {
      const double u = eval(e.operand(), x);
      if (!(u > 0.0)) throw DomainError("ln of a non-positive value");
      return std::log(u);
    }
    case ExprKind::Abs: return std::fabs(eval(e.operand(), x));
    case ExprKind::Sign: {
      const double u = eval(e.operand(), x);
      return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
    }
  }
  throw std::logic_error("unknown expression kind");
}

}  // namespace

double evaluate(const Expr& e, double x) {
  const double v = eval(e, x);
  if (!std::isfinite(v)) throw DomainError("expression value is not finite");
  return v;
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

std::optional<double> constant_value(const Expr& e) {
  if (e.kind() == ExprKind::Constant) return e.value();
  if (e.kind() == ExprKind::Neg && e.operand().kind() == ExprKind::Constant)
    return -e.operand().value();
  return std::nullopt;
}

bool is_value(const Expr& e, double v) {
  const auto c = constant_value(e);
  return c && *c == v;
}

Expr num(double v) {
  if (v < 0.0) return Expr::unary(ExprKind::Neg, Expr::constant(-v));
  return Expr::constant(v);
}

Expr make_neg(const Expr& u) {
  if (const auto c = constant_value(u)) return num(-*c);
  if (u.kind() == ExprKind::Neg) return u.operand();
  return Expr::unary(ExprKind::Neg, u);
}

Expr make_add(const Expr& u, const Expr& v);

Expr make_sub(const Expr& u, const Expr& v) {
  const auto cu = constant_value(u), cv = constant_value(v);
  if (cu && cv && std::isfinite(*cu - *cv)) return num(*cu - *cv);
  if (is_value(v, 0.0)) return u;
  if (is_value(u, 0.0)) return make_neg(v);
  if (v.kind() == ExprKind::Neg) return make_add(u, v.operand());
  return Expr::binary(ExprKind::Sub, u, v);
}

Expr make_add(const Expr& u, const Expr& v) {
  const auto cu = constant_value(u), cv = constant_value(v);
  if (cu && cv && std::isfinite(*cu + *cv)) return num(*cu + *cv);
  if (is_value(u, 0.0)) return v;
  if (is_value(v, 0.0)) return u;
  if (v.kind() == ExprKind::Neg) return make_sub(u, v.operand());
  if (u.kind() == ExprKind::Neg) return make_sub(v, u.operand());
  return Expr::binary(ExprKind::Add, u, v);
}

Expr make_mul(const Expr& u, const Expr& v) {
  const auto cu = constant_value(u), cv = constant_value(v);
  if (cu && cv && std::isfinite(*cu * *cv)) return num(*cu * *cv);
  if (is_value(u, 0.0) || is_value(v, 0.0)) return Expr::constant(0.0);
  if (is_value(u, 1.0)) return v;
  if (is_value(v, 1.0)) return u;
  if (u.kind() == ExprKind::Neg) return make_neg(make_mul(u.operand(), v));
  if (v.kind() == ExprKind::Neg) return make_neg(make_mul(u, v.operand()));
  // Keep numeric factors on the left.
  if (cv && !cu) return Expr::binary(ExprKind::Mul, v, u);
  return Expr::binary(ExprKind::Mul, u, v);
}

Expr make_div(const Expr& u, const Expr& v) {
  if (is_value(u, 0.0)) return Expr::constant(0.0);
  if (is_value(v, 1.0)) return u;
  if (u.kind() == ExprKind::Neg) return make_neg(make_div(u.operand(), v));
  if (v.kind() == ExprKind::Neg) return make_neg(make_div(u, v.operand()));
  return Expr::binary(ExprKind::Div, u, v);
}

Expr make_pow(const Expr& u, const Expr& v) {
  if (is_value(v, 1.0)) return u;
  if (is_value(v, 0.0)) return Expr::constant(1.0);
  return Expr::binary(ExprKind::Pow, u, v);
}

// Folds an x-free subtree to a numeric constant when it evaluates cleanly.
Expr fold(const Expr& e) {
  if (e.depends_on_x()) return e;
  try {
    return num(evaluate(e, 0.0));
  } catch (const DomainError&) {
    return e;
  }
}

Expr diff(const Expr& e) {
  if (!e.depends_on_x()) return Expr::constant(0.0);
  switch (e.kind()) {
    case ExprKind::Constant: return Expr::constant(0.0);
    case ExprKind::Variable: return Expr::constant(1.0);
    case ExprKind::Add: return make_add(diff(e.lhs()), diff(e.rhs()));
    case ExprKind::Sub: return make_sub(diff(e.lhs()), diff(e.rhs()));
    case ExprKind::Mul:
      return make_add(make_mul(diff(e.lhs()), e.rhs()), make_mul(e.lhs(), diff(e.rhs())));
    case ExprKind::Div: {
      const Expr& u = e.lhs();
      const Expr& v = e.rhs();
      return make_div(make_sub(make_mul(diff(u), v), make_mul(u, diff(v))),
                      make_pow(v, Expr::constant(2.0)));
    }
    case ExprKind::Pow: {
      const Expr& u = e.lhs();
      const Expr& v = e.rhs();
      if (!v.depends_on_x()) {
        const Expr n = fold(v);
        const Expr n_minus_1 = fold(make_sub(n, Expr::constant(1.0)));
        return make_mul(make_mul(n, make_pow(u, n_minus_1)), diff(u));
      }
      // d(u^v) = u^v (v' ln u + v u'/u)
      return make_mul(e, make_add(make_mul(diff(v), Expr::unary(ExprKind::Ln, u)),
                                  make_div(make_mul(v, diff(u)), u)));
    }
    case ExprKind::Neg: return make_neg(diff(e.operand()));
    case ExprKind::Exp: return make_mul(e, diff(e.operand()));
    case ExprKind::Ln: return make_div(diff(e.operand()), e.operand());
    case ExprKind::Abs:
      return make_mul(Expr::unary(ExprKind::Sign, e.operand()), diff(e.operand()));
    case ExprKind::Sign: return Expr::constant(0.0);
  }
  throw std::logic_error("unknown expression kind");
}

}  // namespace

Expr differentiate(const Expr& e) { return diff(e); }

}  // namespace certquad
