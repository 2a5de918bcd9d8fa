#include "bcv/fieldlang.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <set>

namespace bcv {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      detail_(message),
      line_(line),
      column_(column) {}

namespace {

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_literal(Complex c) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Literal;
  n->value = c;
  return n;
}

NodePtr make_unary(NodeKind k, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(a);
  return n;
}

NodePtr make_binary(NodeKind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

NodePtr make_pow(NodePtr a, int m) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Pow;
  n->lhs = std::move(a);
  n->exponent = m;
  return n;
}

// Negating a literal folds into the literal, so "-2" parses to a single leaf.
NodePtr make_neg(NodePtr a) {
  if (a->kind == NodeKind::Literal) return make_literal(-a->value);
  return make_unary(NodeKind::Neg, std::move(a));
}

bool pure_real(const Node& n) { return n.kind == NodeKind::Literal && n.value.imag() == 0.0; }
bool pure_imag(const Node& n) { return n.kind == NodeKind::Literal && n.value.real() == 0.0 && n.value.imag() != 0.0; }

// "a + bi" with literal operands folds into one complex literal (this is how complex
// literals print).
NodePtr make_additive(NodeKind k, NodePtr a, NodePtr b) {
  if (pure_real(*a) && pure_imag(*b)) {
    return make_literal(k == NodeKind::Add ? a->value + b->value : a->value - b->value);
  }
  return make_binary(k, std::move(a), std::move(b));
}

bool nodes_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Literal:
      return a.value == b.value;
    case NodeKind::Coord:
      return a.index == b.index && a.anti == b.anti;
    case NodeKind::Param:
      return a.name == b.name;
    case NodeKind::Neg:
    case NodeKind::Exp:
    case NodeKind::Log:
      return nodes_equal(*a.lhs, *b.lhs);
    case NodeKind::Pow:
      return a.exponent == b.exponent && nodes_equal(*a.lhs, *b.lhs);
    default:
      return nodes_equal(*a.lhs, *b.lhs) && nodes_equal(*a.rhs, *b.rhs);
  }
}

// ---------------------------------------------------------------- lexer

enum class Tok { Number, Ident, Op, LParen, RParen, Comma, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0;
  bool imaginary = false;
  bool integral = false;
  char op = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= s_.size()) return t;
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < s_.size() &&
                                                        std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      return number(t);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) advance();
      t.kind = Tok::Ident;
      t.text = s_.substr(start, pos_ - start);
      return t;
    }
    advance();
    t.text = std::string(1, c);
    switch (c) {
      case '(':
        t.kind = Tok::LParen;
        return t;
      case ')':
        t.kind = Tok::RParen;
        return t;
      case ',':
        t.kind = Tok::Comma;
        return t;
      case '+':
      case '-':
      case '*':
      case '/':
      case '^':
        t.kind = Tok::Op;
        t.op = c;
        return t;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
    }
  }

 private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }

  Token number(Token t) {
    const std::size_t start = pos_;
    bool integral = true;
    auto digits = [&] {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) advance();
    };
    digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      integral = false;
      advance();
      digits();
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_;
      int save_col = col_;
      advance();
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) advance();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        integral = false;
        digits();
      } else {
        pos_ = save;
        col_ = save_col;
      }
    }
    const std::string text = s_.substr(start, pos_ - start);
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ParseError("malformed number '" + text + "'", t.line, t.column);
    }
    if (pos_ < s_.size() && s_[pos_] == 'i') {
      const bool ident_follows = pos_ + 1 < s_.size() &&
                                 (std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '_');
      if (!ident_follows) {
        advance();
        t.imaginary = true;
        integral = false;
      }
    }
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      throw ParseError("implicit multiplication is not allowed after '" + text + "'", line_, col_);
    }
    t.kind = Tok::Number;
    t.text = s_.substr(start, pos_ - start);
    t.number = value;
    t.integral = integral;
    return t;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------- parser

class Parser {
 public:
  Parser(const std::string& text, int dim, const std::vector<std::string>& params)
      : lex_(text), dim_(dim), params_(params.begin(), params.end()) {
    cur_ = lex_.next();
  }

  NodePtr parse_all() {
    if (cur_.kind == Tok::End) throw ParseError("empty expression", cur_.line, cur_.column);
    NodePtr e = expr();
    if (cur_.kind != Tok::End) fail("unexpected '" + cur_.text + "' after end of expression");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur_.line, cur_.column); }

  void advance() { cur_ = lex_.next(); }

  bool at_op(char c) const { return cur_.kind == Tok::Op && cur_.op == c; }

  NodePtr expr() {
    NodePtr lhs = term();
    while (at_op('+') || at_op('-')) {
      const NodeKind k = at_op('+') ? NodeKind::Add : NodeKind::Sub;
      advance();
      lhs = make_additive(k, lhs, term());
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (at_op('*') || at_op('/')) {
      const NodeKind k = at_op('*') ? NodeKind::Mul : NodeKind::Div;
      advance();
      lhs = make_binary(k, lhs, unary());
    }
    return lhs;
  }

  NodePtr unary() {
    if (at_op('-')) {
      advance();
      return make_neg(unary());
    }
    if (at_op('+')) {
      advance();
      return unary();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (!at_op('^')) return base;
    advance();
    const int m = exponent();
    if (at_op('^')) fail("chained '^' is ambiguous; add parentheses");
    return make_pow(base, m);
  }

  int exponent() {
    bool paren = false;
    if (cur_.kind == Tok::LParen) {
      paren = true;
      advance();
    }
    int sign = 1;
    if (at_op('-')) {
      sign = -1;
      advance();
    } else if (at_op('+')) {
      advance();
    }
    if (cur_.kind != Tok::Number || !cur_.integral) fail("exponent after '^' must be an integer literal");
    if (cur_.number > 1e6) fail("exponent too large");
    const int m = sign * static_cast<int>(cur_.number);
    advance();
    if (paren) {
      if (cur_.kind != Tok::RParen) fail("expected ')' after exponent");
      advance();
    }
    return m;
  }

  NodePtr primary() {
    const Token t = cur_;
    switch (t.kind) {
      case Tok::Number: {
        advance();
        return make_literal(t.imaginary ? Complex(0, t.number) : Complex(t.number, 0));
      }
      case Tok::LParen: {
        advance();
        NodePtr e = expr();
        if (cur_.kind != Tok::RParen) fail("expected ')'");
        advance();
        return e;
      }
      case Tok::Ident:
        advance();
        if (cur_.kind == Tok::LParen) return call(t);
        return symbol(t);
      case Tok::End:
        fail("unexpected end of expression");
      default:
        fail("unexpected '" + t.text + "'");
    }
    fail("unexpected token");
  }

  NodePtr call(const Token& name) {
    NodeKind k;
    if (name.text == "exp") {
      k = NodeKind::Exp;
    } else if (name.text == "log") {
      k = NodeKind::Log;
    } else {
      throw ParseError("unknown function '" + name.text + "'", name.line, name.column);
    }
    advance();  // '('
    NodePtr arg = expr();
    if (cur_.kind == Tok::Comma) fail("function '" + name.text + "' takes one argument");
    if (cur_.kind != Tok::RParen) fail("expected ')' to close '" + name.text + "('");
    advance();
    return make_unary(k, arg);
  }

  NodePtr symbol(const Token& t) {
    if (params_.count(t.text)) return Expr::param(t.text).root();
    const std::string& s = t.text;
    std::size_t digits_at = 0;
    bool anti = false;
    if (s.size() > 2 && s.compare(0, 2, "zb") == 0 && std::isdigit(static_cast<unsigned char>(s[2]))) {
      digits_at = 2;
      anti = true;
    } else if (s.size() > 1 && s[0] == 'z' && std::isdigit(static_cast<unsigned char>(s[1]))) {
      digits_at = 1;
    }
    if (digits_at > 0) {
      int idx = 0;
      auto [ptr, ec] = std::from_chars(s.data() + digits_at, s.data() + s.size(), idx);
      if (ec == std::errc() && ptr == s.data() + s.size()) {
        if (idx < 1 || idx > dim_) {
          throw ParseError("coordinate '" + s + "' index out of range for dimension " + std::to_string(dim_), t.line,
                           t.column);
        }
        return Expr::coord(idx - 1, anti).root();
      }
    }
    if (s == "exp" || s == "log") throw ParseError("function '" + s + "' needs an argument", t.line, t.column);
    throw ParseError("unknown symbol '" + s + "'", t.line, t.column);
  }

  Lexer lex_;
  Token cur_;
  int dim_;
  std::set<std::string> params_;
};

// ---------------------------------------------------------------- printer

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, ptr);
  if (s == "inf" || s == "-inf" || s == "nan" || s == "-nan") throw std::invalid_argument("non-finite literal");
  return s;
}

std::string format_literal(Complex c) {
  const double re = c.real(), im = c.imag();
  if (im == 0.0) {
    const std::string s = format_double(re);
    return std::signbit(re) ? "(" + s + ")" : s;
  }
  std::string ims = format_double(std::abs(im)) + "i";
  if (re == 0.0 && !std::signbit(re)) return im < 0 ? "(-" + ims + ")" : ims;
  return "(" + format_double(re) + (im < 0 ? "-" : "+") + ims + ")";
}

void print(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Literal:
      out += format_literal(n.value);
      return;
    case NodeKind::Coord:
      out += (n.anti ? "zb" : "z") + std::to_string(n.index + 1);
      return;
    case NodeKind::Param:
      out += n.name;
      return;
    case NodeKind::Neg:
      out += "(-";
      print(*n.lhs, out);
      out += ")";
      return;
    case NodeKind::Exp:
    case NodeKind::Log:
      out += n.kind == NodeKind::Exp ? "exp(" : "log(";
      print(*n.lhs, out);
      out += ")";
      return;
    case NodeKind::Pow:
      out += "(";
      print(*n.lhs, out);
      out += "^" + std::to_string(n.exponent) + ")";
      return;
    default: {
      const char* op = n.kind == NodeKind::Add ? "+" : n.kind == NodeKind::Sub ? "-" : n.kind == NodeKind::Mul ? "*" : "/";
      out += "(";
      print(*n.lhs, out);
      out += op;
      print(*n.rhs, out);
      out += ")";
    }
  }
}

// ---------------------------------------------------------------- evaluation

template <typename T, typename Leaf>
T evaluate(const Node& n, const Leaf& leaf) {
  switch (n.kind) {
    case NodeKind::Literal:
    case NodeKind::Coord:
    case NodeKind::Param:
      return leaf(n);
    case NodeKind::Neg:
      return -evaluate<T>(*n.lhs, leaf);
    case NodeKind::Exp:
      return exp(evaluate<T>(*n.lhs, leaf));
    case NodeKind::Log: {
      T a = evaluate<T>(*n.lhs, leaf);
      if constexpr (std::is_same_v<T, Complex>) {
        if (a == Complex(0)) throw DomainError("log of zero");
      }
      return log(a);
    }
    case NodeKind::Pow: {
      T a = evaluate<T>(*n.lhs, leaf);
      if constexpr (std::is_same_v<T, Complex>) {
        if (n.exponent < 0 && a == Complex(0)) throw DomainError("negative power of zero");
        Complex r(1);
        Complex base = a;
        for (int m = std::abs(n.exponent); m > 0; m >>= 1) {
          if (m & 1) r *= base;
          base *= base;
        }
        return n.exponent < 0 ? Complex(1) / r : r;
      } else {
        return pow(a, n.exponent);
      }
    }
    case NodeKind::Add:
      return evaluate<T>(*n.lhs, leaf) + evaluate<T>(*n.rhs, leaf);
    case NodeKind::Sub:
      return evaluate<T>(*n.lhs, leaf) - evaluate<T>(*n.rhs, leaf);
    case NodeKind::Mul:
      return evaluate<T>(*n.lhs, leaf) * evaluate<T>(*n.rhs, leaf);
    case NodeKind::Div: {
      T a = evaluate<T>(*n.lhs, leaf);
      T b = evaluate<T>(*n.rhs, leaf);
      if constexpr (std::is_same_v<T, Complex>) {
        if (b == Complex(0)) throw DomainError("division by zero");
      }
      return a / b;
    }
  }
  throw std::logic_error("evaluate: bad node");
}

Complex param_value(const Node& n, const ParamValues& params) {
  auto it = params.find(n.name);
  if (it == params.end()) throw EvalError("no value for parameter '" + n.name + "'");
  return it->second;
}

int coord_slot(const Node& n, std::size_t point_size) {
  const int dim = static_cast<int>(point_size / 2);
  if (n.index >= dim) throw EvalError("coordinate index exceeds point dimension");
  return n.index + (n.anti ? dim : 0);
}

}  // namespace

// ---------------------------------------------------------------- Expr

Expr::Expr() : root_(make_literal(0.0)) {}

Expr Expr::literal(Complex c) { return Expr(make_literal(c)); }

Expr Expr::coord(int index, bool anti) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Coord;
  n->index = index;
  n->anti = anti;
  return Expr(std::move(n));
}

Expr Expr::param(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Param;
  n->name = std::move(name);
  return Expr(std::move(n));
}

int Expr::max_coord_index() const {
  std::function<int(const Node&)> walk = [&](const Node& n) -> int {
    int m = n.kind == NodeKind::Coord ? n.index + 1 : 0;
    if (n.lhs) m = std::max(m, walk(*n.lhs));
    if (n.rhs) m = std::max(m, walk(*n.rhs));
    return m;
  };
  return walk(*root_);
}

std::vector<std::string> Expr::param_names() const {
  std::set<std::string> names;
  std::function<void(const Node&)> walk = [&](const Node& n) {
    if (n.kind == NodeKind::Param) names.insert(n.name);
    if (n.lhs) walk(*n.lhs);
    if (n.rhs) walk(*n.rhs);
  };
  walk(*root_);
  return {names.begin(), names.end()};
}

bool operator==(const Expr& a, const Expr& b) { return nodes_equal(a.node(), b.node()); }

Expr operator-(const Expr& a) { return Expr(make_neg(a.root())); }
Expr operator+(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Add, a.root(), b.root())); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Sub, a.root(), b.root())); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Mul, a.root(), b.root())); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Div, a.root(), b.root())); }
Expr exp(const Expr& a) { return Expr(make_unary(NodeKind::Exp, a.root())); }
Expr log(const Expr& a) { return Expr(make_unary(NodeKind::Log, a.root())); }
Expr pow(const Expr& a, int m) { return Expr(make_pow(a.root(), m)); }

Expr parse(const std::string& text, int dim, const std::vector<std::string>& params) {
  if (dim < 1) throw std::invalid_argument("parse: dimension must be >= 1");
  return Expr(Parser(text, dim, params).parse_all());
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e.node(), out);
  return out;
}

namespace {

Expr conjugate_impl(const Expr& e, bool literals) {
  std::function<NodePtr(const NodePtr&)> walk = [&](const NodePtr& n) -> NodePtr {
    switch (n->kind) {
      case NodeKind::Literal:
        return literals ? Expr::literal(std::conj(n->value)).root() : n;
      case NodeKind::Param:
        return n;
      case NodeKind::Coord:
        return Expr::coord(n->index, !n->anti).root();
      default: {
        auto copy = std::make_shared<Node>(*n);
        if (copy->lhs) copy->lhs = walk(copy->lhs);
        if (copy->rhs) copy->rhs = walk(copy->rhs);
        return copy;
      }
    }
  };
  return Expr(walk(e.root()));
}

}  // namespace

Expr conjugate_symbols(const Expr& e) { return conjugate_impl(e, false); }

Expr complex_conjugate(const Expr& e) { return conjugate_impl(e, true); }

CJet eval_jet(const Expr& e, std::span<const Complex> point, int order, const ParamValues& params, int num_vars) {
  if (point.empty() || point.size() % 2 != 0) throw EvalError("eval_jet: point must have even length 2n");
  const int nv = num_vars < 0 ? static_cast<int>(point.size()) : num_vars;
  if (nv < static_cast<int>(point.size())) throw EvalError("eval_jet: fewer jet variables than coordinates");
  auto leaf = [&](const Node& n) -> CJet {
    switch (n.kind) {
      case NodeKind::Literal:
        return CJet::constant(n.value, order, nv);
      case NodeKind::Param:
        return CJet::constant(param_value(n, params), order, nv);
      default: {
        const int slot = coord_slot(n, point.size());
        return CJet::variable(slot, point[slot], order, nv);
      }
    }
  };
  return evaluate<CJet>(e.node(), leaf);
}

Complex eval_value(const Expr& e, std::span<const Complex> point, const ParamValues& params) {
  auto leaf = [&](const Node& n) -> Complex {
    switch (n.kind) {
      case NodeKind::Literal:
        return n.value;
      case NodeKind::Param:
        return param_value(n, params);
      default:
        return point[coord_slot(n, point.size())];
    }
  };
  return evaluate<Complex>(e.node(), leaf);
}

}  // namespace bcv
