#include "topspin/effective.hpp"

#include <cmath>
#include <string>

#include "topspin/errors.hpp"

namespace topspin {

std::string_view to_string(Extremum e) {
  switch (e) {
    case Extremum::Minimum: return "Minimum";
    case Extremum::Maximum: return "Maximum";
    case Extremum::Degenerate: return "Degenerate";
  }
  return "?";
}

namespace {

void require_open_interval(double u) {
  if (!(std::abs(u) < 1.0)) throw DomainError("u=" + std::to_string(u) + " outside (-1, 1)");
}

}  // namespace

HalfAngle half_angle_factor(double u) {
  require_open_interval(u);
  const double z = std::sqrt(1.0 - u * u);
  return {u / (1.0 + z), 1.0 / (z * (1.0 + z))};
}

Jet2 half_angle_jet(double u) {
  require_open_interval(u);
  const double z = std::sqrt(1.0 - u * u);
  // d2m comes from differentiating the closed form of dm.
  const Jet2 x = Jet2::variable(u);
  const Jet2 zj = sqrt(Jet2{1.0} - x * x);
  const Jet2 dm = Jet2{1.0} / (zj * (Jet2{1.0} + zj));
  return {u / (1.0 + z), dm.v, dm.d};
}

EffectivePotential::EffectivePotential(InvariantPotential potential, double lambda, double edge_guard)
    : potential_(std::move(potential)), lambda_(lambda), edge_guard_(edge_guard) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw DomainError("spin lambda must be finite and non-negative");
  if (!(edge_guard > 0.0 && edge_guard < 1.0)) throw DomainError("edge guard must lie in (0, 1)");
}

void EffectivePotential::check(double u) const {
  if (!(std::abs(u) <= 1.0 - edge_guard_))
    throw DomainError("u=" + std::to_string(u) + " outside the guarded interval |u| <= 1 - eps");
}

Jet2 EffectivePotential::jet(double u) const {
  check(u);
  const Jet2 m = half_angle_jet(u);
  const double s = u * u;
  const PotentialValue p = potential_.evaluate(s);
  const double l2 = lambda_ * lambda_;
  const double value = 0.5 * l2 * m.v * m.v + p.value;
  const double d1 = l2 * m.v * m.d + 2.0 * u * p.d1;
  const double d2 = l2 * (m.d * m.d + m.v * m.dd) + 2.0 * p.d1 + 4.0 * s * p.d2;
  return {value, d1, d2};
}

double EffectivePotential::eval(double u, int order) const {
  if (order < 0 || order > 2) throw DomainError("derivative order must be 0, 1 or 2");
  const Jet2 j = jet(u);
  return order == 0 ? j.v : order == 1 ? j.d : j.dd;
}

double EffectivePotential::pole_hessian() const {
  return 0.25 * lambda_ * lambda_ + 2.0 * potential_.evaluate(0.0).d1;
}

}  // namespace topspin
