#include "topspin/commands.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "topspin/errors.hpp"
#include "topspin/selftest.hpp"

namespace topspin {

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

void write_diagram_csv(std::ostream& out, const std::vector<CriticalPoint>& rows) {
  out << "lambda,u,label,U\n";
  for (const auto& r : rows)
    out << format_double(r.lambda) << ',' << format_double(r.u) << ',' << to_string(r.label) << ','
        << format_double(r.value) << '\n';
}

void write_branch_csv(std::ostream& out, const std::vector<BranchSample>& rows) {
  out << "lambda,u,label\n";
  for (const auto& r : rows)
    out << format_double(r.lambda) << ',' << format_double(r.u) << ',' << to_string(r.stability) << '\n';
}

void write_trajectory_csv(std::ostream& out, const ReducedTrajectory& traj) {
  out << "t,u,p_u,H\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& s = traj.states[i];
    out << format_double(traj.times[i]) << ',' << format_double(s.u) << ',' << format_double(s.p_u) << ','
        << format_double(traj.energy[i]) << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const ChartTrajectory& traj) {
  out << "t,x,y,p_x,p_y,H,Phi\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& s = traj.states[i];
    out << format_double(traj.times[i]) << ',' << format_double(s.x) << ',' << format_double(s.y) << ','
        << format_double(s.p_x) << ',' << format_double(s.p_y) << ',' << format_double(traj.energy[i]) << ','
        << format_double(traj.momentum[i]) << '\n';
  }
}

std::string format_report(const InvariantPotential& p, const BifurcationReport& report) {
  const auto& c = report.classification;
  std::ostringstream out;
  out << "potential = " << p.describe() << '\n';
  out << "scenario = " << to_string(c.scenario) << '\n';
  out << "V'(0) = " << format_double(c.coeffs.vp0) << '\n';
  out << "V''(0) = " << format_double(c.coeffs.vpp0) << '\n';
  out << "f'(0) = " << format_double(c.coeffs.fp0) << '\n';
  out << "f''(0) = " << format_double(c.coeffs.fpp0) << '\n';
  if (c.lambda0) {
    out << "lambda0 = " << format_double(*c.lambda0) << '\n';
  } else {
    out << "lambda0 = none\n";
  }
  if (report.holder_fit) out << "holder_exponent = " << format_double(*report.holder_fit) << '\n';
  out << "branch_samples = " << report.branch.size() << '\n';
  return out.str();
}

namespace {

std::ofstream open_output(const RunConfig& cfg, const std::string& name, std::filesystem::path& path) {
  std::filesystem::create_directories(cfg.output_dir);
  path = cfg.output_dir / name;
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot write '" + path.string() + "'");
  return file;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const InvariantPotential p(cfg.potential);
  const auto report = analyze(p, cfg.u_max, cfg.branch_samples, cfg.tol);
  const std::string text = format_report(p, report);
  std::filesystem::path path;
  open_output(cfg, "report.txt", path) << text;
  out << text << "wrote " << path.string() << '\n';
  return kExitOk;
}

int cmd_branch(const RunConfig& cfg, std::ostream& out) {
  const InvariantPotential p(cfg.potential);
  const auto rows = trace_branch(p, cfg.u_max, cfg.branch_samples, cfg.tol);
  std::filesystem::path path;
  auto file = open_output(cfg, "branch.csv", path);
  write_branch_csv(file, rows);
  out << rows.size() << " branch samples, wrote " << path.string() << '\n';
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const InvariantPotential p(cfg.potential);
  const auto rows = sweep(p, cfg.lambda_grid, cfg.u_max, cfg.grid, cfg.tol);
  std::filesystem::path path;
  auto file = open_output(cfg, "diagram.csv", path);
  write_diagram_csv(file, rows);
  out << rows.size() << " critical points over " << cfg.lambda_grid.size() << " spins, wrote " << path.string()
      << '\n';
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.lambda_grid.size() != 1) throw ConfigError("simulate needs exactly one value in lambda_grid");
  const double lambda = cfg.lambda_grid.front();
  const InvariantPotential p(cfg.potential);
  std::filesystem::path path;
  auto file = open_output(cfg, "trajectory.csv", path);

  auto report = [&](const auto& traj, std::size_t samples) {
    double drift = 0.0;
    for (double h : traj.energy) drift = std::max(drift, std::abs(h - traj.energy.front()));
    out << samples << " samples, max |H - H0| = " << format_double(drift);
    double phi = 0.0;
    for (double m : traj.momentum) phi = std::max(phi, std::abs(m));
    if (!traj.momentum.empty()) out << ", max |Phi| = " << format_double(phi);
    out << ", wrote " << path.string() << '\n';
  };

  try {
    if (cfg.system == SimulatedSystem::Reduced) {
      ReducedTrajectory traj;
      try {
        integrate_into(EffectivePotential(p, lambda, cfg.eps), cfg.initial, cfg.integrator, traj);
      } catch (const IntegrationError&) {
        write_trajectory_csv(file, traj);
        throw;
      }
      write_trajectory_csv(file, traj);
      report(traj, traj.times.size());
    } else {
      const ChartSystem sys(p, lambda);
      ChartTrajectory traj;
      try {
        integrate_into(sys, embed_zero_level(lambda, cfg.initial, cfg.eps), cfg.integrator, traj);
      } catch (const IntegrationError&) {
        write_trajectory_csv(file, traj);
        throw;
      }
      write_trajectory_csv(file, traj);
      report(traj, traj.times.size());
    }
  } catch (const IntegrationError& e) {
    err << "simulate: " << e.what() << " (partial trajectory written to " << path.string() << ")\n";
    return kExitNumericFailure;
  }
  return kExitOk;
}

int cmd_probe(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const InvariantPotential p(cfg.potential);
  int status = kExitOk;
  for (double lambda : cfg.lambda_grid) {
    const EffectivePotential e(p, lambda, cfg.eps);
    std::vector<double> targets;
    if (cfg.probe_u) {
      targets = *cfg.probe_u;
    } else {
      for (const auto& cp : find_critical_points(p, lambda, cfg.u_max, cfg.grid, cfg.tol)) targets.push_back(cp.u);
    }
    for (double u : targets) {
      out << "lambda=" << format_double(lambda) << " u=" << format_double(u) << ' ';
      try {
        const ProbeResult r = stability_probe(e, u, cfg.probe_eps, cfg.integrator);
        out << to_string(r.verdict) << " (max deviation " << format_double(r.max_deviation) << ")\n";
      } catch (const InconclusiveProbe& ex) {
        out << "Inconclusive\n";
        err << "probe: " << ex.what() << '\n';
        status = kExitNumericFailure;
      } catch (const IntegrationError& ex) {
        out << "Failed\n";
        err << "probe: " << ex.what() << '\n';
        status = kExitNumericFailure;
      }
    }
  }
  return status;
}

int cmd_selftest(std::ostream& out) {
  bool ok = true;
  for (const auto& check : run_selftest()) {
    out << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
    ok = ok && check.passed;
  }
  out << (ok ? "selftest passed\n" : "selftest FAILED\n");
  return ok ? kExitOk : kExitSelftestFailure;
}

}  // namespace

int run_subcommand(std::string_view name, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (name == "classify") return cmd_classify(cfg, out);
    if (name == "branch") return cmd_branch(cfg, out);
    if (name == "sweep") return cmd_sweep(cfg, out);
    if (name == "simulate") return cmd_simulate(cfg, out, err);
    if (name == "probe") return cmd_probe(cfg, out, err);
    if (name == "selftest") return cmd_selftest(out);
    err << "unknown subcommand '" << name << "'\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << name << ": configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ParseError& e) {
    err << name << ": configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DomainError& e) {
    err << name << ": invalid input: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    err << name << ": numeric failure: " << e.what() << '\n';
    return kExitNumericFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << name << ": " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace topspin
