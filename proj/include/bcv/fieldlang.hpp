#pragma once

#include <complex>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcv/jet.hpp"

namespace bcv {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  int line_;
  int column_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind { Literal, Coord, Param, Neg, Exp, Log, Add, Sub, Mul, Div, Pow };

struct Node {
  NodeKind kind = NodeKind::Literal;
  Complex value{};      // Literal
  int index = 0;        // Coord: 0..n-1 holomorphic, n..2n-1 antiholomorphic is resolved at eval
  bool anti = false;    // Coord
  std::string name;     // Param
  int exponent = 0;     // Pow
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

using ParamValues = std::map<std::string, Complex>;

/// Immutable scalar-field expression. Coordinates are z1..zn and zb1..zbn; zb is an
/// independent variable, not the numerical conjugate of z.
class Expr {
 public:
  Expr();  // the literal 0
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  static Expr literal(Complex c);
  static Expr coord(int index, bool anti);  // index is 0-based
  static Expr param(std::string name);

  const Node& node() const { return *root_; }
  const std::shared_ptr<const Node>& root() const { return root_; }

  bool is_literal() const { return root_->kind == NodeKind::Literal; }
  bool is_zero() const { return is_literal() && root_->value == Complex(0); }

  /// Largest 1-based coordinate index referenced, 0 if none.
  int max_coord_index() const;
  std::vector<std::string> param_names() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  std::shared_ptr<const Node> root_;
};

Expr operator-(const Expr& a);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr pow(const Expr& a, int m);

Expr parse(const std::string& text, int dim, const std::vector<std::string>& params = {});

/// Canonical, fully parenthesised form; parse(to_string(e)) reproduces e.
std::string to_string(const Expr& e);

/// Swaps z_i with zb_i. Literals and parameters are untouched.
Expr conjugate_symbols(const Expr& e);

/// conjugate_symbols plus conjugation of every literal (parameters are taken as real).
Expr complex_conjugate(const Expr& e);

/// Jet of e at `point` (length 2n, z's first). The coordinate with 0-based slot k seeds
/// jet variable k; `num_vars` may exceed 2n to leave room for auxiliary variables.
CJet eval_jet(const Expr& e, std::span<const Complex> point, int order, const ParamValues& params = {},
              int num_vars = -1);

Complex eval_value(const Expr& e, std::span<const Complex> point, const ParamValues& params = {});

}  // namespace bcv
