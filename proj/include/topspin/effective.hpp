#pragma once

#include <string_view>

#include "topspin/jet.hpp"
#include "topspin/potential.hpp"

namespace topspin {

/// Kind of a critical point, from the sign of the second derivative.
enum class Extremum { Minimum, Maximum, Degenerate };

std::string_view to_string(Extremum e);

/// Labels a second derivative, treating |d2| <= threshold as zero.
inline Extremum classify_curvature(double d2, double threshold) {
  if (d2 > threshold) return Extremum::Minimum;
  if (d2 < -threshold) return Extremum::Maximum;
  return Extremum::Degenerate;
}

/// m(u) = (1 - sqrt(1-u^2)) / u and its derivative.
struct HalfAngle {
  double m = 0.0;
  double dm = 0.0;
};

/// Evaluates m in the rationalized form u / (1 + z), z = sqrt(1-u^2), which is
/// regular at u = 0 and exactly odd. dm = 1 / (z (1 + z)).
/// Throws DomainError unless |u| < 1.
HalfAngle half_angle_factor(double u);

/// Same, returning (m, dm, d2m).
Jet2 half_angle_jet(double u);

inline constexpr double kDefaultEdgeGuard = 1e-6;

/// U_lambda(u) = (lambda^2 / 2) m(u)^2 + V(u^2), the potential governing the
/// zero-momentum reduced system near the North pole.
class EffectivePotential {
 public:
  /// Throws DomainError if lambda is negative or not finite, or if the guard
  /// is outside (0, 1).
  EffectivePotential(InvariantPotential potential, double lambda, double edge_guard = kDefaultEdgeGuard);

  const InvariantPotential& potential() const { return potential_; }
  double lambda() const { return lambda_; }
  double edge_guard() const { return edge_guard_; }

  /// d^order U / du^order for order in {0, 1, 2}. Throws DomainError when
  /// |u| > 1 - edge_guard.
  double eval(double u, int order) const;

  /// (U, U', U'') at u.
  Jet2 jet(double u) const;

  /// U''(0) = lambda^2 / 4 + 2 V'(0).
  double pole_hessian() const;

 private:
  void check(double u) const;

  InvariantPotential potential_;
  double lambda_;
  double edge_guard_;
};

inline double eval_U(const EffectivePotential& e, double u, int order) { return e.eval(u, order); }
inline double pole_hessian(const EffectivePotential& e) { return e.pole_hessian(); }

}  // namespace topspin
