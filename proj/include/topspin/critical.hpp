#pragma once

#include <span>
#include <vector>

#include "topspin/effective.hpp"
#include "topspin/potential.hpp"

namespace topspin {

inline constexpr double kDefaultUMax = 0.95;
inline constexpr int kDefaultGrid = 512;

/// Equilibrium (u, lambda) of the reduced system with u >= 0.
struct CriticalPoint {
  double u = 0.0;
  double lambda = 0.0;
  Extremum label = Extremum::Degenerate;
  double value = 0.0;  // U_lambda(u)
};

/// Non-negative critical points of U_lambda on [0, u_max].
///
/// u = 0 is always reported. Interior roots come from a sign-change scan of
/// dU/du on `grid` uniform cells of (0, u_max], each refined by bisection down
/// to adjacent doubles (so well below `tol`). A root is Degenerate when
/// |U''| <= tol * max(1, lambda^2). Roots closer together than one grid cell
/// can be missed.
std::vector<CriticalPoint> find_critical_points(const InvariantPotential& p, double lambda, double u_max,
                                                int grid, double tol);

/// find_critical_points over a spin grid, concatenated in grid order.
std::vector<CriticalPoint> sweep(const InvariantPotential& p, std::span<const double> lambda_grid,
                                 double u_max, int grid, double tol);

}  // namespace topspin
