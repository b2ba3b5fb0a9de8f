#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "topspin/effective.hpp"
#include "topspin/potential.hpp"

namespace topspin {

/// Point of the one-degree-of-freedom reduced system T*(-1, 1).
struct ReducedState {
  double u = 0.0;
  double p_u = 0.0;
};

/// Point of T*S^2 in the upper-hemisphere chart (x, y) -> (x, y, z),
/// z = sqrt(1 - x^2 - y^2).
struct ChartState {
  double x = 0.0;
  double y = 0.0;
  double p_x = 0.0;
  double p_y = 0.0;
};

/// Kinetic energy of the round metric plus V, on the chart with symplectic
/// form dx^dp_x + dy^dp_y + (lambda / z) dx^dy.
class ChartSystem {
 public:
  ChartSystem(InvariantPotential potential, double lambda);

  const InvariantPotential& potential() const { return potential_; }
  double lambda() const { return lambda_; }

  /// Coefficient lambda / z of the magnetic term.
  double magnetic(double x, double y) const;

 private:
  InvariantPotential potential_;
  double lambda_;
};

/// H = (1/2) (1 - u^2) p_u^2 + U_lambda(u).
double hamiltonian_1d(const EffectivePotential& e, ReducedState s);

/// Hamilton's equations for hamiltonian_1d; the result holds (du/dt, dp_u/dt).
ReducedState vector_field_1d(const EffectivePotential& e, ReducedState s);

/// H = (1/2) p^T g^{-1} p + V(x^2 + y^2), g^{-1} = I - q q^T with q = (x, y).
/// Throws DomainError outside the open unit disk.
double hamiltonian_chart(const ChartSystem& sys, ChartState c);

/// Momentum map of the residual rotation, y p_x - x p_y - lambda z + lambda,
/// normalized to vanish at the pole.
double momentum_map(double lambda, ChartState c);

/// (u, p_u) -> (u, 0, p_u, lambda m(u)), a section of the zero level set of
/// the momentum map.
ChartState embed_zero_level(double lambda, ReducedState s, double edge_guard = kDefaultEdgeGuard);

/// Hamiltonian vector field X with i_X omega = dH, as
/// (dx/dt, dy/dt, dp_x/dt, dp_y/dt). Gradients of H come from jets.
ChartState vector_field_chart(const ChartSystem& sys, ChartState c);

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double t_final = 100.0;
  long max_steps = 5'000'000;
  double sample_interval = 0.1;
  /// Integration stops with BoundaryEscape once |u| or sqrt(x^2 + y^2)
  /// exceeds 1 - edge_guard.
  double edge_guard = kDefaultEdgeGuard;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// Samples of a run. `momentum` is empty for reduced runs.
template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<double> energy;
  std::vector<double> momentum;
};

using ReducedTrajectory = Trajectory<ReducedState>;
using ChartTrajectory = Trajectory<ChartState>;

/// Called after every accepted step; returning true ends the run early.
template <class State>
using StopCondition = std::function<bool(double t, const State&)>;

/// Adaptive Runge-Kutta-Fehlberg 7(8) integration, landing exactly on every
/// multiple of sample_interval and on t_final. Throws IntegrationError on step
/// underflow, step budget exhaustion or boundary escape. Each step is held to
/// a hundredth of rel_tol/abs_tol so that drift over a whole run stays near them.
ReducedTrajectory integrate(const EffectivePotential& e, ReducedState start, const IntegratorConfig& cfg,
                            const StopCondition<ReducedState>& stop = {});
ChartTrajectory integrate(const ChartSystem& sys, ChartState start, const IntegratorConfig& cfg,
                          const StopCondition<ChartState>& stop = {});

/// As integrate, but samples go into `traj` as they are produced, so a run
/// that ends in IntegrationError leaves everything up to the failure behind.
void integrate_into(const EffectivePotential& e, ReducedState start, const IntegratorConfig& cfg,
                    ReducedTrajectory& traj, const StopCondition<ReducedState>& stop = {});
void integrate_into(const ChartSystem& sys, ChartState start, const IntegratorConfig& cfg, ChartTrajectory& traj,
                    const StopCondition<ChartState>& stop = {});

enum class Stability { Stable, Unstable };

std::string_view to_string(Stability s);

struct ProbeResult {
  Stability verdict = Stability::Stable;
  /// Largest distance from (u*, 0) in the (u, p_u) plane over all rays.
  double max_deviation = 0.0;
};

/// Perturbs the equilibrium (u_star, 0) along 8 rays at distance eps in the
/// (u, p_u) plane and integrates each for cfg.t_final.
///
/// Stable when every trajectory stays within 10 eps; Unstable as soon as one
/// leaves the 0.5 sqrt(eps) ball (or the chart). Anything in between throws
/// InconclusiveProbe. Throws DomainError if |dU(u_star)| > 1e-9.
ProbeResult stability_probe(const EffectivePotential& e, double u_star, double eps, const IntegratorConfig& cfg);

}  // namespace topspin
