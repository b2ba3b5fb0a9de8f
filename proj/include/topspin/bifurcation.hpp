#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "topspin/effective.hpp"
#include "topspin/potential.hpp"

namespace topspin {

/// How the pole u = 0 changes stability as the spin varies.
///
///   NoBifurcation   V'(0) > 0: u = 0 is a minimum for every spin.
///   AlternativeOne  V'(0) < 0, V''(0) > V'(0): below lambda0 the pole turns
///                   into a maximum and a branch of minima splits off.
///   AlternativeTwo  V'(0) < 0, V''(0) < V'(0): above lambda0 the pole turns
///                   into a minimum and a branch of maxima splits off.
///   Degenerate      a deciding quantity vanishes within tolerance.
enum class Scenario { NoBifurcation, AlternativeOne, AlternativeTwo, Degenerate };

std::string_view to_string(Scenario s);

inline constexpr double kDefaultClassifyTol = 1e-10;

struct Classification {
  NormalFormCoeffs coeffs;
  Scenario scenario = Scenario::Degenerate;
  std::optional<double> lambda0;  // sqrt(-8 V'(0)) for the two alternatives
};

/// Decides the scenario from V'(0) and V''(0) - V'(0).
Classification classify(const InvariantPotential& p, double tol = kDefaultClassifyTol);

/// Spin at which u (0 < u < 1) is an equilibrium of U_lambda:
/// lambda^2 = -2 u V'(u^2) / (m(u) m'(u)).
/// Throws NoRealSpin when the right-hand side is negative and DomainError
/// for u outside (0, 1).
double branch_lambda_of_u(const InvariantPotential& p, double u);

struct BranchSample {
  double lambda = 0.0;
  double u = 0.0;
  Extremum stability = Extremum::Degenerate;
};

/// Samples the bifurcating branch on a geometric u-grid spanning three decades
/// below u_max (n points, u_max included). Points with no real spin are
/// dropped; rows come back sorted by lambda.
std::vector<BranchSample> trace_branch(const InvariantPotential& p, double u_max, int n,
                                       double tol = kDefaultClassifyTol);

/// Log-log slope of u against |lambda0 - lambda| along the branch, over
/// samples with |lambda0 - lambda| in [1e-6, 1e-3]. Square-root branches give
/// 1/2. Throws InsufficientSamples if the scenario has no branch or fewer than
/// five samples fall in the window.
double verify_branch_scaling(const InvariantPotential& p, double tol = kDefaultClassifyTol);

struct BifurcationReport {
  Classification classification;
  std::vector<BranchSample> branch;
  std::optional<double> holder_fit;
};

/// classify + trace_branch + verify_branch_scaling. The branch and fit are
/// only filled for the two alternatives.
BifurcationReport analyze(const InvariantPotential& p, double u_max, int n, double tol = kDefaultClassifyTol);

/// Critical point of the model family f(x) = x^4/6 - x^2 + lambda^2 x^2.
struct ToyCriticalPoint {
  double x = 0.0;
  Extremum label = Extremum::Degenerate;
};

/// All real critical points of the model family, sorted by x.
/// x = 0 always; +-sqrt(3 (1 - lambda^2)) when lambda < 1.
std::vector<ToyCriticalPoint> toy_family_critical_points(double lambda);

}  // namespace topspin
