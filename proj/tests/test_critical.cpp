#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "topspin/bifurcation.hpp"
#include "topspin/critical.hpp"
#include "topspin/errors.hpp"

using namespace topspin;
using doctest::Approx;

namespace {
constexpr double kTol = 1e-10;
const auto kLagrange = InvariantPotential::lagrange();

std::vector<CriticalPoint> lagrange_at(double lambda, double u_max = 0.95) {
  return find_critical_points(kLagrange, lambda, u_max, 512, kTol);
}
}  // namespace

TEST_CASE("lagrange critical points") {
  const auto slow = lagrange_at(1.8);
  REQUIRE(slow.size() == 2);
  CHECK(slow[0].u == 0.0);
  CHECK(slow[0].label == Extremum::Maximum);
  CHECK(slow[0].value == 1.0);
  CHECK(slow[1].u == Approx(0.6).epsilon(1e-12));
  CHECK(slow[1].label == Extremum::Minimum);
  CHECK(slow[1].value == Approx(0.98).epsilon(1e-12));
  CHECK(slow[1].lambda == 1.8);

  const auto fast = lagrange_at(2.2);
  REQUIRE(fast.size() == 1);
  CHECK(fast[0].label == Extremum::Minimum);

  const auto edge = lagrange_at(2.0);
  REQUIRE(edge.size() == 1);
  CHECK(edge[0].label == Extremum::Degenerate);
}

TEST_CASE("sweep") {
  const std::vector<double> grid = {1.6, 1.8, 2.0, 2.2};
  const auto rows = sweep(kLagrange, grid, 0.95, 512, kTol);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].lambda == 1.6);
  CHECK(rows[1].u == Approx(0.8).epsilon(1e-12));
  CHECK(rows[1].label == Extremum::Minimum);
  CHECK(rows[4].label == Extremum::Degenerate);
  CHECK(rows[5].lambda == 2.2);

  const std::vector<double> kir_grid = {0.0, 1.0, 5.0};
  const auto kir = sweep(InvariantPotential::kirchhoff(0.5), kir_grid, 0.95, 512, kTol);
  REQUIRE(kir.size() == 3);
  for (const auto& r : kir) {
    CHECK(r.u == 0.0);
    CHECK(r.label == Extremum::Minimum);
  }

  const std::vector<double> one = {1.0};
  const auto narrow = sweep(kLagrange, one, 0.1, 512, kTol);
  REQUIRE(narrow.size() == 1);
  CHECK(narrow[0].label == Extremum::Maximum);

  CHECK_THROWS_AS(sweep(kLagrange, std::vector<double>{}, 0.95, 512, kTol), DomainError);
  CHECK_THROWS_AS(find_critical_points(kLagrange, 1.0, 1.0, 512, kTol), DomainError);
  CHECK_THROWS_AS(find_critical_points(kLagrange, 1.0, 0.9, 8, kTol), DomainError);
  CHECK_THROWS_AS(find_critical_points(kLagrange, 1.0, 0.9, 64, 0.0), DomainError);
  CHECK_THROWS_AS(find_critical_points(kLagrange, -1.0, 0.9, 64, kTol), DomainError);
}

TEST_CASE("property: roots are refined equilibria with consistent labels") {
  oracle::PotentialSampler gen(0x5eed0301);
  int interior = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = gen.next();
    const double lambda = gen.uniform(0.0, 4.0);
    const auto pts = find_critical_points(p, lambda, 0.95, 256, kTol);
    REQUIRE(!pts.empty());
    CHECK(pts[0].u == 0.0);
    const EffectivePotential e(p, lambda);
    const double threshold = kTol * std::max(1.0, lambda * lambda);
    for (std::size_t k = 1; k < pts.size(); ++k) {
      ++interior;
      CHECK(pts[k].u > pts[k - 1].u);
      CHECK(std::abs(e.eval(pts[k].u, 1)) <= 1e-9);
      CHECK(pts[k].label == classify_curvature(e.eval(pts[k].u, 2), threshold));
    }
  }
  CHECK(interior > 100);
}

TEST_CASE("property: interior minima invert the branch formula") {
  oracle::PotentialSampler gen(0x5eed0302);
  for (int i = 0; i < 1000; ++i) {
    // Half Lagrange, half random first-alternative polynomials.
    InvariantPotential p = kLagrange;
    if (i % 2) {
      const double slope = -gen.uniform(0.05, 2.0);
      p = InvariantPotential::polynomial({0.0, slope, 0.5 * (slope + gen.uniform(0.05, 2.0))});
    }
    const double lambda0 = *classify(p).lambda0;
    const double lambda = lambda0 * gen.uniform(0.2, 0.98);
    for (const auto& r : find_critical_points(p, lambda, 0.95, 512, kTol)) {
      if (r.u == 0.0 || r.label != Extremum::Minimum) continue;
      CHECK(std::abs(branch_lambda_of_u(p, r.u) - lambda) <= kTol);
    }
  }
}

TEST_CASE("property: refining the grid keeps every root") {
  oracle::PotentialSampler gen(0x5eed0303);
  for (int i = 0; i < 1000; ++i) {
    const auto p = gen.next();
    const double lambda = gen.uniform(0.0, 4.0);
    const auto coarse = find_critical_points(p, lambda, 0.95, 64, kTol);
    const auto fine = find_critical_points(p, lambda, 0.95, 128, kTol);
    CHECK(fine.size() >= coarse.size());
    for (const auto& r : coarse) {
      const bool kept = std::any_of(fine.begin(), fine.end(), [&](const CriticalPoint& f) {
        return std::abs(f.u - r.u) <= 0.95 / 64;
      });
      CHECK(kept);
    }
  }
}

TEST_CASE("brute-force grid of U agrees on lagrange") {
  oracle::PotentialSampler gen(0x5eed0304);
  int checked = 0;
  while (checked < 200) {
    const double lambda = gen.uniform(0.5, 4.0);
    if (std::abs(lambda - 2.0) < 0.05) continue;
    if (lambda < 2.0) {
      const double root = std::sqrt(1.0 - (lambda - 1.0) * (lambda - 1.0));
      if (std::abs(root - 0.95) < 0.01) continue;
    }
    ++checked;
    const EffectivePotential e(kLagrange, lambda);
    const oracle::Fn U = [&](double u) { return e.eval(u, 0); };
    std::vector<oracle::GridExtremum> ext;
    for (const auto& x : oracle::grid_extrema(U, -0.95, 0.95, 20000))
      if (x.x >= -1e-12) ext.push_back(x);
    const auto pts = lagrange_at(lambda);
    INFO("lambda=", lambda);
    REQUIRE(ext.size() == pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      CHECK(std::abs(ext[k].x - pts[k].u) <= 1e-3);
      CHECK(ext[k].minimum == (pts[k].label == Extremum::Minimum));
    }
  }
}
