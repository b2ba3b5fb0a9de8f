#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "topspin/expr.hpp"
#include "topspin/jet.hpp"

namespace topspin {

struct BuiltinLagrange {
  bool operator==(const BuiltinLagrange&) const = default;
};

struct BuiltinKirchhoff {
  double c = 1.0;
  bool operator==(const BuiltinKirchhoff&) const = default;
};

/// V(s) = sum_k coefficients[k] * s^k.
struct PolynomialInS {
  std::vector<double> coefficients;
  bool operator==(const PolynomialInS&) const = default;
};

/// Expression source in `s` plus the values of its named parameters.
struct Expression {
  std::string source;
  std::map<std::string, double> bindings;
  bool operator==(const Expression&) const = default;
};

using PotentialSpec = std::variant<BuiltinLagrange, BuiltinKirchhoff, PolynomialInS, Expression>;

/// V together with dV/ds and d2V/ds2 at one point.
struct PotentialValue {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Coefficients of the quartic normal form of the potential at the pole.
///
/// With u = tau(v) chosen so the centrifugal term becomes (lambda^2/2) v^2,
/// V(tau(v)^2) = f(v^2) and
///   f'(0)  = 4 V'(0),
///   f''(0) = 8 (V''(0) - V'(0)).
struct NormalFormCoeffs {
  double fp0 = 0.0;
  double fpp0 = 0.0;
  double vp0 = 0.0;
  double vpp0 = 0.0;
};

/// An SO(2)xSO(2)-invariant potential, written as a function of s = u^2.
///
/// Immutable once built; copies share the parsed expression.
class InvariantPotential {
 public:
  /// Validates `spec` and, for expressions, parses the source and checks that
  /// every parameter is bound. Throws ConfigError / ParseError.
  explicit InvariantPotential(PotentialSpec spec);

  static InvariantPotential lagrange() { return InvariantPotential(BuiltinLagrange{}); }
  static InvariantPotential kirchhoff(double c) { return InvariantPotential(BuiltinKirchhoff{c}); }
  static InvariantPotential polynomial(std::vector<double> coefficients) {
    return InvariantPotential(PolynomialInS{std::move(coefficients)});
  }
  static InvariantPotential expression(std::string source, std::map<std::string, double> bindings = {}) {
    return InvariantPotential(Expression{std::move(source), std::move(bindings)});
  }

  const PotentialSpec& spec() const { return spec_; }

  /// Short human-readable description, e.g. "kirchhoff(c=2)".
  std::string describe() const;

  /// (V, V', V'') at s. Throws DomainError unless 0 <= s < 1, EvaluationError
  /// when an expression cannot be evaluated there.
  PotentialValue evaluate(double s) const;

  /// V composed with a jet in some other variable, e.g. s = u^2.
  Jet2 evaluate(Jet2 s) const;

 private:
  PotentialValue evaluate_unchecked(double s) const;

  PotentialSpec spec_;
  std::shared_ptr<const ExprAst> ast_;
};

/// Free-function spelling of InvariantPotential::evaluate.
inline PotentialValue eval_potential(const InvariantPotential& p, double s) { return p.evaluate(s); }

NormalFormCoeffs normal_form_coeffs(const InvariantPotential& p);

}  // namespace topspin
