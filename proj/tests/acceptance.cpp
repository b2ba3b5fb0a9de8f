// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "topspin/bifurcation.hpp"
#include "topspin/critical.hpp"
#include "topspin/dynamics.hpp"
#include "topspin/errors.hpp"

using namespace topspin;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

const auto kLagrange = InvariantPotential::lagrange();

double bisect_pole_hessian(const InvariantPotential& p, double lo, double hi) {
  auto h = [&](double l) { return EffectivePotential(p, l).pole_hessian(); };
  const bool lo_negative = h(lo) < 0.0;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    ((h(mid) < 0.0) == lo_negative ? lo : hi) = mid;
  }
}

Outcome lagrange_critical_spin() {
  Outcome o;
  const auto c = classify(kLagrange);
  o.require(c.scenario == Scenario::AlternativeOne, "scenario " + std::string(to_string(c.scenario)));
  o.require(c.lambda0 && std::abs(*c.lambda0 - 2.0) <= 1e-12, "closed-form lambda0 off");
  const double root = bisect_pole_hessian(kLagrange, 1.0, 3.0);
  o.require(std::abs(root - 2.0) <= 1e-9, "bisection gave " + num(root));
  if (o.pass) o.detail = "lambda0 = " + num(*c.lambda0) + ", bisection " + num(root);
  return o;
}

Outcome kirchhoff_alternatives() {
  Outcome o;
  for (double c : {0.2, 0.5, 0.99}) {
    const auto r = classify(InvariantPotential::kirchhoff(c));
    o.require(r.scenario == Scenario::NoBifurcation && !r.lambda0, "c=" + num(c) + " not NoBifurcation");
  }
  for (double c : {1.01, 2.0, 5.0}) {
    const auto r = classify(InvariantPotential::kirchhoff(c));
    o.require(r.scenario == Scenario::AlternativeOne, "c=" + num(c) + " not AlternativeOne");
    o.require(r.lambda0 && std::abs(*r.lambda0 - std::sqrt(8.0 * (c - 1.0))) <= 1e-12,
              "c=" + num(c) + " lambda0 mismatch");
  }
  if (o.pass) o.detail = "3 NoBifurcation, 3 AlternativeOne";
  return o;
}

Outcome lagrange_branch_oracle() {
  Outcome o;
  double worst = 0.0;
  std::size_t count = 0;
  for (int n : {8, 64, 512}) {
    for (double u_max : {0.5, 0.9, 0.99}) {
      for (const auto& s : trace_branch(kLagrange, u_max, n)) {
        worst = std::max(worst, std::abs(s.lambda - oracle::lagrange_branch_lambda(s.u)));
        o.require(s.stability == Extremum::Minimum, "sample at u=" + num(s.u) + " not a minimum");
        ++count;
      }
    }
  }
  o.require(worst <= 1e-10, "max |lambda - closed form| = " + num(worst));
  if (o.pass) o.detail = std::to_string(count) + " samples, max error " + num(worst);
  return o;
}

Outcome holder_exponent() {
  Outcome o;
  const double lag = verify_branch_scaling(kLagrange);
  const double kir = verify_branch_scaling(InvariantPotential::kirchhoff(2.0));
  o.require(std::abs(lag - 0.5) <= 0.02, "lagrange exponent " + num(lag));
  o.require(std::abs(kir - 0.5) <= 0.02, "kirchhoff exponent " + num(kir));
  o.detail = "lagrange " + num(lag) + ", kirchhoff c=2 " + num(kir);
  return o;
}

Outcome toy_collision() {
  Outcome o;
  auto pole_label = [](const std::vector<ToyCriticalPoint>& pts) {
    for (const auto& p : pts)
      if (p.x == 0.0) return p.label;
    return Extremum::Degenerate;
  };
  for (double l : {0.0, 0.5, 0.9, 0.99}) {
    const auto pts = toy_family_critical_points(l);
    o.require(pts.size() == 3, "lambda=" + num(l) + " lacks nonzero points");
    o.require(pole_label(pts) == Extremum::Maximum, "lambda=" + num(l) + " pole not a maximum");
  }
  for (double l : {1.01, 1.5}) {
    const auto pts = toy_family_critical_points(l);
    o.require(pts.size() == 1, "lambda=" + num(l) + " has nonzero points");
    o.require(pole_label(pts) == Extremum::Minimum, "lambda=" + num(l) + " pole not a minimum");
  }
  if (o.pass) o.detail = "collision at |lambda| = 1";
  return o;
}

Outcome reduction_correspondence() {
  Outcome o;
  oracle::PotentialSampler gen(0xacce0006);
  double worst_h = 0.0, worst_phi = 0.0;
  for (const auto& p : {kLagrange, InvariantPotential::kirchhoff(2.0)}) {
    for (int i = 0; i < 1000; ++i) {
      const ReducedState s{gen.uniform(-0.9, 0.9), gen.uniform(-3.0, 3.0)};
      const double lambda = gen.uniform(0.0, 4.0);
      const auto c = embed_zero_level(lambda, s);
      worst_h = std::max(worst_h, std::abs(hamiltonian_chart(ChartSystem(p, lambda), c) -
                                           hamiltonian_1d(EffectivePotential(p, lambda), s)));
      worst_phi = std::max(worst_phi, std::abs(momentum_map(lambda, c)));
    }
  }
  o.require(worst_h <= 1e-12, "max |dH| = " + num(worst_h));
  o.require(worst_phi <= 1e-13, "max |Phi| = " + num(worst_phi));
  o.detail = "max |dH| " + num(worst_h) + ", max |Phi| " + num(worst_phi);
  return o;
}

Outcome conservation() {
  Outcome o;
  IntegratorConfig cfg;
  cfg.t_final = 100.0;
  cfg.rel_tol = cfg.abs_tol = 1e-10;
  const auto traj = integrate(ChartSystem(kLagrange, 1.8), embed_zero_level(1.8, {0.59, 0.0}), cfg);
  double dh = 0.0, phi = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    dh = std::max(dh, std::abs(traj.energy[i] - traj.energy.front()));
    phi = std::max(phi, std::abs(traj.momentum[i]));
  }
  o.require(traj.times.back() == 100.0, "run ended early");
  o.require(dh <= 1e-8, "max |dH| = " + num(dh));
  o.require(phi <= 1e-8, "max |Phi| = " + num(phi));
  o.detail = "max |dH| " + num(dh) + ", max |Phi| " + num(phi);
  return o;
}

Outcome probe_agreement() {
  Outcome o;
  const IntegratorConfig cfg;
  auto verdict = [&](double lambda, double u) -> std::string {
    try {
      return std::string(to_string(stability_probe(EffectivePotential(kLagrange, lambda), u, 1e-3, cfg).verdict));
    } catch (const InconclusiveProbe& e) {
      return "Inconclusive";
    }
  };
  for (double l : {1.0, 1.6, 1.9}) {
    const auto v = verdict(l, 0.0);
    o.require(v == "Unstable", "pole at lambda=" + num(l) + ": " + v);
  }
  for (double l : {2.1, 2.4, 3.0}) {
    const auto v = verdict(l, 0.0);
    o.require(v == "Stable", "pole at lambda=" + num(l) + ": " + v);
  }
  for (double l : {1.4, 1.6, 1.8}) {
    // Branch point from the closed form, refined to a root of dU.
    const auto pts = find_critical_points(kLagrange, l, 0.95, 512, 1e-10);
    const double rho = std::sqrt(1.0 - (l - 1.0) * (l - 1.0));
    double u = -1.0;
    for (const auto& p : pts)
      if (std::abs(p.u - rho) <= 1e-9) u = p.u;
    o.require(u > 0.0, "no branch point near " + num(rho) + " at lambda=" + num(l));
    if (u > 0.0) {
      const auto v = verdict(l, u);
      o.require(v == "Stable", "branch at lambda=" + num(l) + ": " + v);
    }
  }
  if (o.pass) o.detail = "9 verdicts match";
  return o;
}

/// Runs one property test binary and reports its outcome.
Outcome property_suites(const char* self) {
  Outcome o;
  std::string dir(self);
  dir = dir.substr(0, dir.find_last_of('/') + 1);
  int passed = 0;
  for (const char* name : {"expr", "potential", "effective", "bifurcation", "critical", "dynamics", "cli"}) {
    const std::string cmd =
        "\"" + dir + "test_" + name + "\" --test-case='property:*' --no-intro=true --minimal=true > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    o.require(status == 0, std::string("property tests in ") + name + " failed");
    passed += status == 0;
  }
  if (o.pass) o.detail = std::to_string(passed) + " property suites";
  return o;
}

}  // namespace

int main(int, char** argv) {
  struct Criterion {
    const char* id;
    const char* name;
    double budget_ms;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "lagrange critical spin", 100.0, lagrange_critical_spin},
      {"AC2", "kirchhoff alternatives", 1000.0, kirchhoff_alternatives},
      {"AC3", "lagrange branch oracle", 1000.0, lagrange_branch_oracle},
      {"AC4", "holder exponent", 1000.0, holder_exponent},
      {"AC5", "model family collision", 1000.0, toy_collision},
      {"AC6", "reduction correspondence", 1000.0, reduction_correspondence},
      {"AC7", "conservation", 30000.0, conservation},
      {"AC8", "probe agrees with pole hessian", 120000.0, probe_agreement},
      {"AC9", "property suites", 600000.0, [&] { return property_suites(argv[0]); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (ms > c.budget_ms) {
      o.pass = false;
      o.detail += " (over the " + num(c.budget_ms) + " ms budget)";
    }
    std::printf("%s %s %s: %s [%.0f ms]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), ms);
    failures += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
