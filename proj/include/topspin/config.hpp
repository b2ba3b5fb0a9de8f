#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topspin/bifurcation.hpp"
#include "topspin/critical.hpp"
#include "topspin/dynamics.hpp"
#include "topspin/potential.hpp"

namespace topspin {

enum class SimulatedSystem { Reduced, Chart };

/// Everything a subcommand needs, loaded from a flat `key = value` file.
struct RunConfig {
  PotentialSpec potential = BuiltinLagrange{};
  std::vector<double> lambda_grid;
  double u_max = kDefaultUMax;
  int grid = kDefaultGrid;
  double eps = kDefaultEdgeGuard;    // distance kept from u = +-1
  double tol = kDefaultClassifyTol;  // degeneracy threshold
  IntegratorConfig integrator;
  std::filesystem::path output_dir = ".";

  int branch_samples = 64;

  SimulatedSystem system = SimulatedSystem::Reduced;
  ReducedState initial{};

  std::optional<std::vector<double>> probe_u;  // unset: probe every critical point
  double probe_eps = 1e-3;
};

/// Parses the config format:
///
///   # comment
///   potential   = lagrange | kirchhoff | polynomial | expr
///   c           = 2                  (kirchhoff)
///   coefficients = 0, 1              (polynomial, ascending powers of s)
///   expr        = 1 + (k-1)*(1-s)    (expr)
///   param.k     = 2                  (binds an expr parameter)
///   lambda_grid = 0:4:0.1 | 1.6, 1.8 | 2
///
/// plus the optional numeric keys u_max, grid, eps, tol, rel_tol, abs_tol,
/// t_final, max_steps, sample_interval, branch_samples, probe_eps, probe_u,
/// u0, p0, system (reduced | chart) and output_dir.
///
/// Throws ConfigError (with the line number where one applies) on syntax
/// errors, unknown or duplicate keys, missing mandatory keys, unbound
/// expression parameters and out-of-range values. Negative spins are replaced
/// by their absolute value.
RunConfig parse_config(std::string_view text);

/// Reads and parses a config file. Throws ConfigError if it cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// Expands `start:stop:step` or a comma list into spin values.
std::vector<double> parse_lambda_grid(std::string_view text);

}  // namespace topspin
