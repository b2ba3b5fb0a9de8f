#include "topspin/critical.hpp"

#include <algorithm>
#include <cmath>

#include "topspin/errors.hpp"

namespace topspin {

namespace {

/// Bisects a bracket [lo, hi] of dU until no double lies strictly between the
/// endpoints, returning the endpoint with the smaller |dU|.
double bisect(const EffectivePotential& e, double lo, double flo, double hi, double fhi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = e.eval(mid, 1);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

}  // namespace

std::vector<CriticalPoint> find_critical_points(const InvariantPotential& p, double lambda, double u_max,
                                                int grid, double tol) {
  if (!(u_max > 0.0 && u_max < 1.0)) throw DomainError("u_max must lie in (0, 1)");
  if (grid < 16) throw DomainError("scan grid must have at least 16 cells");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  const EffectivePotential e(p, lambda);
  const double threshold = tol * std::max(1.0, lambda * lambda);
  auto make = [&](double u) {
    const Jet2 j = e.jet(u);
    return CriticalPoint{u, lambda, classify_curvature(j.dd, threshold), j.v};
  };

  std::vector<CriticalPoint> out;
  {
    CriticalPoint pole = make(0.0);
    pole.label = classify_curvature(e.pole_hessian(), threshold);
    out.push_back(pole);
  }

  const double h = u_max / grid;
  double prev_u = h;
  double prev_f = e.eval(prev_u, 1);
  if (prev_f == 0.0) out.push_back(make(prev_u));
  for (int i = 2; i <= grid; ++i) {
    const double u = (i == grid) ? u_max : i * h;
    const double f = e.eval(u, 1);
    if (f == 0.0) {
      out.push_back(make(u));
    } else if (prev_f != 0.0 && (f < 0.0) != (prev_f < 0.0)) {
      out.push_back(make(bisect(e, prev_u, prev_f, u, f)));
    }
    prev_u = u;
    prev_f = f;
  }
  return out;
}

std::vector<CriticalPoint> sweep(const InvariantPotential& p, std::span<const double> lambda_grid,
                                 double u_max, int grid, double tol) {
  if (lambda_grid.empty()) throw DomainError("spin grid must not be empty");
  std::vector<CriticalPoint> rows;
  for (double lambda : lambda_grid) {
    auto points = find_critical_points(p, lambda, u_max, grid, tol);
    rows.insert(rows.end(), points.begin(), points.end());
  }
  return rows;
}

}  // namespace topspin
