#include "topspin/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "topspin/errors.hpp"

namespace topspin {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_double(std::string_view token, std::size_t line = 0) {
  token = trim(token);
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc() || ptr != last || !std::isfinite(value))
    throw ConfigError("expected a number, got '" + std::string(token) + "'", line);
  return value;
}

long to_integer(std::string_view token, std::size_t line) {
  token = trim(token);
  long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
    throw ConfigError("expected an integer, got '" + std::string(token) + "'", line);
  return value;
}

std::vector<double> to_list(std::string_view text, std::size_t line) {
  std::vector<double> values;
  for (auto part : split(text, ',')) values.push_back(to_double(part, line));
  return values;
}

const std::set<std::string, std::less<>> kKnownKeys = {
    "potential", "c",        "coefficients", "expr",      "lambda_grid",     "u_max",          "grid",
    "eps",       "tol",      "rel_tol",      "abs_tol",   "t_final",         "max_steps",      "sample_interval",
    "output_dir", "branch_samples", "system", "u0",       "p0",              "probe_u",        "probe_eps"};

struct Entry {
  std::string value;
  std::size_t line;
};

}  // namespace

std::vector<double> parse_lambda_grid(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ConfigError("lambda_grid is empty");
  std::vector<double> grid;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("range must be start:stop:step");
    const double start = to_double(parts[0]);
    const double stop = to_double(parts[1]);
    const double step = to_double(parts[2]);
    if (!(step > 0.0)) throw ConfigError("range step must be positive");
    if (stop < start) throw ConfigError("range stop must not be below start");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 10'000'000) throw ConfigError("range has too many points");
    for (long i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  } else {
    grid = to_list(text, 0);
  }
  for (double& lambda : grid) lambda = std::abs(lambda);
  return grid;
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Entry, std::less<>> entries;
  std::map<std::string, Entry, std::less<>> params;

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (value.empty()) throw ConfigError("missing value for '" + key + "'", line_no);

    if (key.starts_with("param.")) {
      const std::string name = key.substr(6);
      if (name.empty() || name == "s" || name == "sqrt") throw ConfigError("invalid parameter name '" + name + "'", line_no);
      if (!params.emplace(name, Entry{value, line_no}).second)
        throw ConfigError("duplicate parameter '" + name + "'", line_no);
      continue;
    }
    if (!kKnownKeys.contains(key)) throw ConfigError("unknown key '" + key + "'", line_no);
    if (!entries.emplace(key, Entry{value, line_no}).second) throw ConfigError("duplicate key '" + key + "'", line_no);
  }

  auto take = [&](std::string_view key) -> std::optional<Entry> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    Entry e = it->second;
    entries.erase(it);
    return e;
  };
  auto number = [&](std::string_view key, double& target) {
    if (auto e = take(key)) target = to_double(e->value, e->line);
  };

  RunConfig cfg;

  const auto kind = take("potential");
  if (!kind) throw ConfigError("missing mandatory key 'potential'");
  const auto c = take("c");
  const auto coefficients = take("coefficients");
  const auto expr = take("expr");
  auto reject = [](const std::optional<Entry>& e, const char* key, const std::string& kind_name) {
    if (e) throw ConfigError(std::string("key '") + key + "' does not apply to potential = " + kind_name, e->line);
  };

  if (kind->value == "lagrange") {
    reject(c, "c", kind->value);
    reject(coefficients, "coefficients", kind->value);
    reject(expr, "expr", kind->value);
    cfg.potential = BuiltinLagrange{};
  } else if (kind->value == "kirchhoff") {
    reject(coefficients, "coefficients", kind->value);
    reject(expr, "expr", kind->value);
    if (!c) throw ConfigError("potential = kirchhoff needs key 'c'", kind->line);
    cfg.potential = BuiltinKirchhoff{to_double(c->value, c->line)};
  } else if (kind->value == "polynomial") {
    reject(c, "c", kind->value);
    reject(expr, "expr", kind->value);
    if (!coefficients) throw ConfigError("potential = polynomial needs key 'coefficients'", kind->line);
    cfg.potential = PolynomialInS{to_list(coefficients->value, coefficients->line)};
  } else if (kind->value == "expr") {
    reject(c, "c", kind->value);
    reject(coefficients, "coefficients", kind->value);
    if (!expr) throw ConfigError("potential = expr needs key 'expr'", kind->line);
    Expression e{expr->value, {}};
    for (const auto& [name, entry] : params) e.bindings[name] = to_double(entry.value, entry.line);
    cfg.potential = std::move(e);
  } else {
    throw ConfigError("unknown potential '" + kind->value + "'", kind->line);
  }
  if (kind->value != "expr" && !params.empty())
    throw ConfigError("param.* keys only apply to potential = expr", params.begin()->second.line);

  // Build once so parse errors and unbound parameters surface at load time.
  try {
    InvariantPotential validated(cfg.potential);
  } catch (const UnknownIdentifier& err) {
    throw ConfigError("unbound expression parameter '" + err.name() + "'", expr ? expr->line : kind->line);
  } catch (const ParseError& err) {
    throw ConfigError(std::string("expression: ") + err.what(), expr ? expr->line : kind->line);
  }

  const auto grid_entry = take("lambda_grid");
  if (!grid_entry) throw ConfigError("missing mandatory key 'lambda_grid'");
  try {
    cfg.lambda_grid = parse_lambda_grid(grid_entry->value);
  } catch (const ConfigError& err) {
    throw ConfigError(err.what(), grid_entry->line);
  }

  number("u_max", cfg.u_max);
  number("eps", cfg.eps);
  number("tol", cfg.tol);
  number("rel_tol", cfg.integrator.rel_tol);
  number("abs_tol", cfg.integrator.abs_tol);
  number("t_final", cfg.integrator.t_final);
  number("sample_interval", cfg.integrator.sample_interval);
  number("probe_eps", cfg.probe_eps);
  number("u0", cfg.initial.u);
  number("p0", cfg.initial.p_u);
  if (auto e = take("grid")) cfg.grid = static_cast<int>(to_integer(e->value, e->line));
  if (auto e = take("branch_samples")) cfg.branch_samples = static_cast<int>(to_integer(e->value, e->line));
  if (auto e = take("max_steps")) cfg.integrator.max_steps = to_integer(e->value, e->line);
  if (auto e = take("output_dir")) cfg.output_dir = e->value;
  if (auto e = take("probe_u")) {
    cfg.probe_u = to_list(e->value, e->line);
    for (double u : *cfg.probe_u)
      if (u < 0.0) throw ConfigError("probe_u values must be non-negative", e->line);
  }
  if (auto e = take("system")) {
    if (e->value == "reduced") {
      cfg.system = SimulatedSystem::Reduced;
    } else if (e->value == "chart") {
      cfg.system = SimulatedSystem::Chart;
    } else {
      throw ConfigError("system must be 'reduced' or 'chart'", e->line);
    }
  }
  cfg.integrator.edge_guard = cfg.eps;

  if (!(cfg.u_max > 0.0 && cfg.u_max < 1.0)) throw ConfigError("u_max must lie in (0, 1)");
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  if (cfg.u_max > 1.0 - cfg.eps) throw ConfigError("u_max must not exceed 1 - eps");
  if (cfg.grid < 16) throw ConfigError("grid must be at least 16");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  if (cfg.branch_samples < 2) throw ConfigError("branch_samples must be at least 2");
  if (!(cfg.probe_eps > 0.0 && cfg.probe_eps < 0.1)) throw ConfigError("probe_eps must lie in (0, 0.1)");
  if (!(std::abs(cfg.initial.u) <= 1.0 - cfg.eps)) throw ConfigError("u0 must satisfy |u0| <= 1 - eps");
  try {
    cfg.integrator.validate();
  } catch (const DomainError& err) {
    throw ConfigError(err.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace topspin
