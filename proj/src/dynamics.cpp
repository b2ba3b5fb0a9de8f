#include "topspin/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "topspin/errors.hpp"
#include "topspin/jet.hpp"

namespace topspin {

namespace odeint = boost::numeric::odeint;

namespace {

void require_chart(double x, double y) {
  if (!(x * x + y * y < 1.0)) throw DomainError("state outside the upper-hemisphere chart");
}

template <class T>
T chart_energy(const InvariantPotential& potential, T x, T y, T px, T py) {
  const T qp = x * px + y * py;
  const T kinetic = 0.5 * (px * px + py * py - qp * qp);
  if constexpr (std::is_same_v<T, double>) {
    return kinetic + potential.evaluate(x * x + y * y).value;
  } else {
    return kinetic + potential.evaluate(x * x + y * y);
  }
}

/// dH along coordinate `axis` (0..3 for x, y, p_x, p_y).
double chart_partial(const InvariantPotential& potential, const ChartState& c, int axis) {
  std::array<Jet2, 4> v{Jet2{c.x}, Jet2{c.y}, Jet2{c.p_x}, Jet2{c.p_y}};
  v[static_cast<std::size_t>(axis)].d = 1.0;
  return chart_energy(potential, v[0], v[1], v[2], v[3]).d;
}

}  // namespace

ChartSystem::ChartSystem(InvariantPotential potential, double lambda)
    : potential_(std::move(potential)), lambda_(lambda) {
  if (!std::isfinite(lambda)) throw DomainError("spin lambda must be finite");
}

double ChartSystem::magnetic(double x, double y) const {
  require_chart(x, y);
  return lambda_ / std::sqrt(1.0 - x * x - y * y);
}

double hamiltonian_1d(const EffectivePotential& e, ReducedState s) {
  return 0.5 * (1.0 - s.u * s.u) * s.p_u * s.p_u + e.eval(s.u, 0);
}

ReducedState vector_field_1d(const EffectivePotential& e, ReducedState s) {
  // G(u) = 1 - u^2, G'(u) = -2u.
  return {(1.0 - s.u * s.u) * s.p_u, s.u * s.p_u * s.p_u - e.eval(s.u, 1)};
}

double hamiltonian_chart(const ChartSystem& sys, ChartState c) {
  require_chart(c.x, c.y);
  return chart_energy(sys.potential(), c.x, c.y, c.p_x, c.p_y);
}

double momentum_map(double lambda, ChartState c) {
  require_chart(c.x, c.y);
  const double z = std::sqrt(1.0 - c.x * c.x - c.y * c.y);
  return c.y * c.p_x - c.x * c.p_y - lambda * z + lambda;
}

ChartState embed_zero_level(double lambda, ReducedState s, double edge_guard) {
  if (!(std::abs(s.u) <= 1.0 - edge_guard)) throw DomainError("u outside the guarded interval");
  return {s.u, 0.0, s.p_u, lambda * half_angle_factor(s.u).m};
}

ChartState vector_field_chart(const ChartSystem& sys, ChartState c) {
  require_chart(c.x, c.y);
  const auto& v = sys.potential();
  const double hx = chart_partial(v, c, 0);
  const double hy = chart_partial(v, c, 1);
  const double hpx = chart_partial(v, c, 2);
  const double hpy = chart_partial(v, c, 3);
  const double b = sys.magnetic(c.x, c.y);
  return {hpx, hpy, -hx - b * hpy, -hy + b * hpx};
}

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("integrator tolerances must be positive");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw DomainError("t_final must be positive");
  if (max_steps <= 0) throw DomainError("max_steps must be positive");
  if (!(sample_interval > 0.0)) throw DomainError("sample_interval must be positive");
  if (!(edge_guard > 0.0 && edge_guard < 1.0)) throw DomainError("edge guard must lie in (0, 1)");
}

namespace {

template <std::size_t N>
using Vec = std::array<double, N>;

/// Shared stepping loop. `field` maps a state to its time derivative and may
/// throw DomainError/EvaluationError for trial stages that leave the domain;
/// such steps are retried with half the step size.
template <std::size_t N, class Field, class Escaped, class Record, class Stop>
void drive(Field field, Escaped escaped, Record record, Stop stop, Vec<N> x, const IntegratorConfig& cfg) {
  cfg.validate();
  using stepper_t = odeint::runge_kutta_fehlberg78<Vec<N>>;
  // Per-step target is tol/100: drift grows with the step count, and fast
  // orbits over t = 100 take thousands of steps.
  auto controlled = odeint::make_controlled(1e-2 * cfg.abs_tol, 1e-2 * cfg.rel_tol, stepper_t());
  auto system = [&field](const Vec<N>& s, Vec<N>& ds, double) { ds = field(s); };

  double t = 0.0;
  double dt = std::min(1e-3, cfg.sample_interval);
  long attempts = 0;
  long sample = 0;
  bool domain_trouble = false;
  record(t, x);
  if (stop(t, x)) return;

  const auto next_sample_time = [&](long k) { return std::min(cfg.t_final, static_cast<double>(k) * cfg.sample_interval); };
  double target = next_sample_time(++sample);

  Vec<N> out{};
  while (t < cfg.t_final) {
    if (++attempts > cfg.max_steps)
      throw IntegrationError(IntegrationError::Kind::MaxSteps, t,
                             "step budget of " + std::to_string(cfg.max_steps) + " exhausted at t=" + std::to_string(t));
    const double floor = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (dt < floor) {
      if (domain_trouble)
        throw IntegrationError(IntegrationError::Kind::BoundaryEscape, t,
                               "trajectory reached the chart boundary at t=" + std::to_string(t));
      throw IntegrationError(IntegrationError::Kind::StepUnderflow, t,
                             "step size underflow at t=" + std::to_string(t));
    }

    const bool clamped = t + dt >= target;
    const double suggested = dt;
    double step = clamped ? target - t : dt;
    double t_try = t;
    odeint::controlled_step_result result = odeint::fail;
    try {
      result = controlled.try_step(system, x, t_try, out, step);
      domain_trouble = false;
    } catch (const DomainError&) {
      domain_trouble = true;
      dt = 0.5 * (clamped ? target - t : dt);
      continue;
    } catch (const EvaluationError&) {
      domain_trouble = true;
      dt = 0.5 * (clamped ? target - t : dt);
      continue;
    }
    if (result == odeint::fail) {
      dt = step;
      continue;
    }
    // Landing on a sample time must not shrink the next step.
    t = clamped ? target : t_try;
    dt = clamped ? std::max(step, suggested) : step;
    x = out;

    if (escaped(x))
      throw IntegrationError(IntegrationError::Kind::BoundaryEscape, t,
                             "trajectory left the chart interior at t=" + std::to_string(t));
    if (clamped) {
      record(t, x);
      target = next_sample_time(++sample);
    }
    if (stop(t, x)) {
      if (!clamped) record(t, x);
      return;
    }
  }
}

}  // namespace

void integrate_into(const EffectivePotential& e, ReducedState start, const IntegratorConfig& cfg,
                    ReducedTrajectory& traj, const StopCondition<ReducedState>& stop) {
  const double limit = 1.0 - cfg.edge_guard;
  if (!(std::abs(start.u) <= limit)) throw DomainError("start state outside the guarded interval");
  // Trial stages may wander past the guard; the field itself only needs |u| < 1.
  const EffectivePotential field_potential(e.potential(), e.lambda(), std::numeric_limits<double>::epsilon());

  traj = {};
  auto unpack = [](const Vec<2>& v) { return ReducedState{v[0], v[1]}; };
  drive<2>(
      [&](const Vec<2>& v) {
        const ReducedState d = vector_field_1d(field_potential, unpack(v));
        return Vec<2>{d.u, d.p_u};
      },
      [limit](const Vec<2>& v) { return std::abs(v[0]) > limit; },
      [&](double t, const Vec<2>& v) {
        traj.times.push_back(t);
        traj.states.push_back(unpack(v));
        traj.energy.push_back(hamiltonian_1d(e, unpack(v)));
      },
      [&](double t, const Vec<2>& v) { return stop && stop(t, unpack(v)); }, Vec<2>{start.u, start.p_u}, cfg);
}

ReducedTrajectory integrate(const EffectivePotential& e, ReducedState start, const IntegratorConfig& cfg,
                            const StopCondition<ReducedState>& stop) {
  ReducedTrajectory traj;
  integrate_into(e, start, cfg, traj, stop);
  return traj;
}

void integrate_into(const ChartSystem& sys, ChartState start, const IntegratorConfig& cfg,
                    ChartTrajectory& traj, const StopCondition<ChartState>& stop) {
  const double limit = 1.0 - cfg.edge_guard;
  if (!(start.x * start.x + start.y * start.y <= limit * limit))
    throw DomainError("start state outside the guarded chart");

  traj = {};
  auto unpack = [](const Vec<4>& v) { return ChartState{v[0], v[1], v[2], v[3]}; };
  drive<4>(
      [&](const Vec<4>& v) {
        const ChartState d = vector_field_chart(sys, unpack(v));
        return Vec<4>{d.x, d.y, d.p_x, d.p_y};
      },
      [limit](const Vec<4>& v) { return v[0] * v[0] + v[1] * v[1] > limit * limit; },
      [&](double t, const Vec<4>& v) {
        const ChartState c = unpack(v);
        traj.times.push_back(t);
        traj.states.push_back(c);
        traj.energy.push_back(hamiltonian_chart(sys, c));
        traj.momentum.push_back(momentum_map(sys.lambda(), c));
      },
      [&](double t, const Vec<4>& v) { return stop && stop(t, unpack(v)); },
      Vec<4>{start.x, start.y, start.p_x, start.p_y}, cfg);
}

ChartTrajectory integrate(const ChartSystem& sys, ChartState start, const IntegratorConfig& cfg,
                          const StopCondition<ChartState>& stop) {
  ChartTrajectory traj;
  integrate_into(sys, start, cfg, traj, stop);
  return traj;
}

std::string_view to_string(Stability s) { return s == Stability::Stable ? "Stable" : "Unstable"; }

ProbeResult stability_probe(const EffectivePotential& e, double u_star, double eps, const IntegratorConfig& cfg) {
  if (!(eps > 0.0 && eps < 0.1)) throw DomainError("probe radius eps must lie in (0, 0.1)");
  const double residual = e.eval(u_star, 1);
  if (std::abs(residual) > 1e-9)
    throw DomainError("u*=" + std::to_string(u_star) + " is not a critical point (|dU|=" +
                      std::to_string(std::abs(residual)) + ")");

  const double bounded = 10.0 * eps;
  const double escape = 0.5 * std::sqrt(eps);
  double worst = 0.0;

  constexpr int kRays = 8;
  for (int k = 0; k < kRays; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / kRays;
    const ReducedState start{u_star + eps * std::cos(theta), eps * std::sin(theta)};
    double ray_max = 0.0;
    auto deviation = [u_star](const ReducedState& s) { return std::hypot(s.u - u_star, s.p_u); };
    try {
      integrate(e, start, cfg, [&](double, const ReducedState& s) {
        ray_max = std::max(ray_max, deviation(s));
        return ray_max > escape;
      });
    } catch (const IntegrationError& err) {
      if (err.kind() != IntegrationError::Kind::BoundaryEscape) throw;
      return {Stability::Unstable, std::max(worst, ray_max)};
    }
    worst = std::max(worst, ray_max);
    if (ray_max > escape) return {Stability::Unstable, worst};
  }
  if (worst <= bounded) return {Stability::Stable, worst};
  throw InconclusiveProbe("probe deviation " + std::to_string(worst) + " lies between " + std::to_string(bounded) +
                              " and " + std::to_string(escape),
                          worst);
}

}  // namespace topspin
