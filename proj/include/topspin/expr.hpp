#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "topspin/jet.hpp"

namespace topspin {

/// Abstract syntax tree of a potential expression in the variable `s`.
///
/// Nodes live in a flat arena and refer to their children by index; a child
/// always has a smaller index than its parent, so the tree is acyclic by
/// construction and the last node is the root.
class ExprAst {
 public:
  enum class Op { Constant, Variable, Parameter, Negate, Add, Sub, Mul, Div, Pow, Sqrt };

  struct Node {
    Op op = Op::Constant;
    double value = 0.0;   // Constant
    std::string name;     // Parameter
    int lhs = -1;         // operand of unary nodes
    int rhs = -1;

    bool operator==(const Node&) const = default;
  };

  int constant(double value);
  int variable();
  int parameter(std::string name);
  int unary(Op op, int operand);
  int binary(Op op, int lhs, int rhs);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int index) const { return nodes_.at(static_cast<std::size_t>(index)); }
  int root() const { return static_cast<int>(nodes_.size()) - 1; }
  bool empty() const { return nodes_.empty(); }

  /// Names of every parameter referenced, sorted and without duplicates.
  std::vector<std::string> parameters() const;

  /// Fully parenthesized source text; parsing it yields an equal tree.
  std::string to_string() const;

  /// Evaluates the tree with `s` seeded as the jet variable. Throws
  /// EvaluationError on sqrt of a negative, division by zero, or an unbound
  /// parameter.
  Jet2 evaluate(Jet2 s, const std::map<std::string, double>& bindings) const;

  bool operator==(const ExprAst&) const = default;

 private:
  int push(Node node);
  std::vector<Node> nodes_;
};

/// Parses `source` under the potential grammar:
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | atom ('^' factor)?
///   atom   := number | 's' | identifier | '(' expr ')' | 'sqrt' '(' expr ')'
///
/// `^` is right-associative and binds tighter than unary minus, so -s^2 is
/// -(s^2). Identifiers other than `s` and `sqrt` must appear in `parameters`.
ExprAst parse_expression(std::string_view source, std::span<const std::string> parameters = {});

}  // namespace topspin
