#include "topspin/selftest.hpp"

#include <cmath>
#include <sstream>

#include "topspin/bifurcation.hpp"
#include "topspin/dynamics.hpp"
#include "topspin/errors.hpp"

namespace topspin {

namespace {

std::string str(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

/// Spin at which the pole Hessian changes sign, by bisection on [lo, hi].
double bisect_pole_threshold(const InvariantPotential& p, double lo, double hi) {
  auto h = [&](double lambda) { return EffectivePotential(p, lambda).pole_hessian(); };
  double hlo = h(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double hm = h(mid);
    if ((hm < 0.0) == (hlo < 0.0)) {
      lo = mid;
      hlo = hm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <class F>
CheckResult guarded(std::string name, F body) {
  try {
    return body(std::move(name));
  } catch (const std::exception& e) {
    return {std::move(name), false, std::string("threw: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_selftest() {
  std::vector<CheckResult> results;
  const auto lagrange = InvariantPotential::lagrange();

  results.push_back(guarded("lagrange critical spin", [&](std::string name) {
    const auto c = classify(lagrange);
    const bool ok = c.scenario == Scenario::AlternativeOne && c.lambda0 && std::abs(*c.lambda0 - 2.0) <= 1e-12;
    return CheckResult{std::move(name), ok,
                       std::string(to_string(c.scenario)) + ", lambda0 = " + (c.lambda0 ? str(*c.lambda0) : "none")};
  }));

  results.push_back(guarded("pole hessian sign change", [&](std::string name) {
    const double root = bisect_pole_threshold(lagrange, 1.0, 3.0);
    return CheckResult{std::move(name), std::abs(root - 2.0) <= 1e-9, "bisection root " + str(root)};
  }));

  results.push_back(guarded("kirchhoff alternatives", [&](std::string name) {
    bool ok = true;
    std::string detail;
    for (double c : {0.5, 2.0}) {
      const auto r = classify(InvariantPotential::kirchhoff(c));
      const Scenario want = c < 1.0 ? Scenario::NoBifurcation : Scenario::AlternativeOne;
      ok = ok && r.scenario == want;
      if (r.lambda0) ok = ok && std::abs(*r.lambda0 - std::sqrt(8.0 * (c - 1.0))) <= 1e-12;
      detail += "c=" + str(c) + ": " + std::string(to_string(r.scenario)) + "; ";
    }
    return CheckResult{std::move(name), ok, detail};
  }));

  results.push_back(guarded("square-root branch", [&](std::string name) {
    const double slope = verify_branch_scaling(lagrange);
    return CheckResult{std::move(name), std::abs(slope - 0.5) <= 0.02, "fitted exponent " + str(slope)};
  }));

  results.push_back(guarded("model family collision", [&](std::string name) {
    const bool before = toy_family_critical_points(0.9).size() == 3 &&
                        toy_family_critical_points(0.9)[1].label == Extremum::Maximum;
    const bool after = toy_family_critical_points(1.1).size() == 1 &&
                       toy_family_critical_points(1.1)[0].label == Extremum::Minimum;
    return CheckResult{std::move(name), before && after, "three points below |lambda| = 1, one above"};
  }));

  results.push_back(guarded("slow/fast transition", [&](std::string name) {
    IntegratorConfig cfg;
    const auto slow = stability_probe(EffectivePotential(lagrange, 1.6), 0.0, 1e-3, cfg).verdict;
    const auto fast = stability_probe(EffectivePotential(lagrange, 2.4), 0.0, 1e-3, cfg).verdict;
    return CheckResult{std::move(name), slow == Stability::Unstable && fast == Stability::Stable,
                       "lambda=1.6: " + std::string(to_string(slow)) + ", lambda=2.4: " + std::string(to_string(fast))};
  }));

  return results;
}

}  // namespace topspin
