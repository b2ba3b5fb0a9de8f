#include "topspin/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topspin/errors.hpp"

namespace topspin {

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::NoBifurcation: return "NoBifurcation";
    case Scenario::AlternativeOne: return "AlternativeOne";
    case Scenario::AlternativeTwo: return "AlternativeTwo";
    case Scenario::Degenerate: return "Degenerate";
  }
  return "?";
}

Classification classify(const InvariantPotential& p, double tol) {
  if (!(tol > 0.0)) throw DomainError("classification tolerance must be positive");
  Classification out;
  out.coeffs = normal_form_coeffs(p);
  const double slope = out.coeffs.vp0;
  const double gap = out.coeffs.vpp0 - out.coeffs.vp0;

  if (std::abs(slope) <= tol) {
    out.scenario = Scenario::Degenerate;
  } else if (slope > 0.0) {
    out.scenario = Scenario::NoBifurcation;
  } else if (std::abs(gap) <= tol) {
    out.scenario = Scenario::Degenerate;
  } else {
    out.scenario = gap > 0.0 ? Scenario::AlternativeOne : Scenario::AlternativeTwo;
    out.lambda0 = std::sqrt(-8.0 * slope);
  }
  return out;
}

double branch_lambda_of_u(const InvariantPotential& p, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("branch parameter u must lie in (0, 1)");
  const HalfAngle h = half_angle_factor(u);
  const double radicand = -2.0 * u * p.evaluate(u * u).d1 / (h.m * h.dm);
  if (radicand < 0.0) throw NoRealSpin("no real spin makes u=" + std::to_string(u) + " an equilibrium");
  return std::sqrt(radicand);
}

std::vector<BranchSample> trace_branch(const InvariantPotential& p, double u_max, int n, double tol) {
  if (!(u_max > 0.0 && u_max < 1.0)) throw DomainError("u_max must lie in (0, 1)");
  if (n < 2) throw DomainError("trace_branch needs at least two samples");

  constexpr double kDecades = 3.0;
  std::vector<BranchSample> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double u = u_max * std::pow(10.0, -kDecades * static_cast<double>(n - 1 - k) / (n - 1));
    double lambda = 0.0;
    try {
      lambda = branch_lambda_of_u(p, u);
    } catch (const NoRealSpin&) {
      continue;
    }
    const EffectivePotential e(p, lambda);
    const double curvature = e.eval(u, 2);
    rows.push_back({lambda, u, classify_curvature(curvature, tol * std::max(1.0, lambda * lambda))});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const BranchSample& a, const BranchSample& b) { return a.lambda < b.lambda; });
  return rows;
}

double verify_branch_scaling(const InvariantPotential& p, double tol) {
  const Classification c = classify(p, tol);
  if (!c.lambda0) {
    throw InsufficientSamples(std::string("branch scaling not applicable to scenario ") +
                              std::string(to_string(c.scenario)));
  }
  const double lambda0 = *c.lambda0;

  constexpr int kGrid = 600;
  constexpr double kLo = 1e-5;
  constexpr double kHi = 0.5;
  std::vector<double> xs;
  std::vector<double> ys;
  for (int k = 0; k < kGrid; ++k) {
    const double u = kLo * std::pow(kHi / kLo, static_cast<double>(k) / (kGrid - 1));
    double lambda = 0.0;
    try {
      lambda = branch_lambda_of_u(p, u);
    } catch (const NoRealSpin&) {
      continue;
    }
    const double gap = std::abs(lambda0 - lambda);
    if (gap < 1e-6 || gap > 1e-3) continue;
    xs.push_back(std::log(gap));
    ys.push_back(std::log(u));
  }
  if (xs.size() < 5) throw InsufficientSamples("fewer than five branch samples in the scaling window");

  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) throw InsufficientSamples("degenerate scaling fit");
  return (n * sxy - sx * sy) / denom;
}

BifurcationReport analyze(const InvariantPotential& p, double u_max, int n, double tol) {
  BifurcationReport report;
  report.classification = classify(p, tol);
  if (report.classification.lambda0) {
    report.branch = trace_branch(p, u_max, n, tol);
    try {
      report.holder_fit = verify_branch_scaling(p, tol);
    } catch (const InsufficientSamples&) {
    }
  }
  return report;
}

std::vector<ToyCriticalPoint> toy_family_critical_points(double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("toy family spin must be non-negative");
  // f'(x) = (2/3) x^3 + 2 (lambda^2 - 1) x,  f''(x) = 2 x^2 + 2 (lambda^2 - 1).
  const double shift = lambda * lambda - 1.0;
  const ToyCriticalPoint origin{0.0, classify_curvature(2.0 * shift, 0.0)};
  if (shift >= 0.0) return {origin};
  const double x = std::sqrt(-3.0 * shift);
  const Extremum side = classify_curvature(2.0 * x * x + 2.0 * shift, 0.0);
  return {{-x, side}, origin, {x, side}};
}

}  // namespace topspin
