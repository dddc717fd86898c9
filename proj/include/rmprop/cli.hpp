#pragma once

// Command-line frontend: `rmprop <potential|propagator|fig1|spectrum|harmonic>`.
//
// Options come from the command line and from an optional --config file
// (key = value lines, or the JSON document previously emitted with
// --format json). Command-line flags take precedence over the file.
//
// Exit codes: 0 ok, 2 configuration error, 3 domain error, 4 verification or
// threshold failure, 5 eigen-solver failure. Data goes to stdout (or --out),
// diagnostics to stderr.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmprop/errors.hpp"
#include "rmprop/geometry.hpp"
#include "rmprop/momentum.hpp"
#include "rmprop/operators.hpp"
#include "rmprop/potentials.hpp"

namespace rmprop::cli {

/// A check failed after the data was produced (exit code 4).
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  PhysicalParams params;  // hbar = 1, 2 mu = 1, kappa = 1, G = 1

  // potential
  double chi_min = 0.05;
  double chi_max = pi - 0.05;
  int chi_steps = 101;

  // propagator / fig1
  double q_min = 0.0;
  double q_max = 8.0 * pi;
  int q_steps = 129;
  Hemisphere hemisphere = Hemisphere::Northern;
  bool verify = false;
  QuadratureConfig quad;
  std::vector<double> kappas{0.25, 0.5, 1.0, 2.0, 4.0};

  // spectrum
  int k_max = 3;
  int n_points = 1600;
  bool extrapolate = true;
  double threshold = 1e-3;

  // harmonic
  std::vector<int> grids{200, 400, 800};
  double window_lo = 0.1;
  double window_hi = pi - 0.1;
  double min_order = 1.9;

  Format format = Format::Csv;
  std::string out;  // empty: stdout
};

// ---------------------------------------------------------------------------
// Tables and emitters

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// A table plus the reason a post-run check failed, if any.
struct CommandResult {
  Table table;
  std::optional<std::string> failure;
};

namespace detail {

inline std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string csv_cell(const Cell& c) {
  if (std::holds_alternative<long long>(c))
    return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<double>(c))
    return format_double(std::get<double>(c), 12);
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return "";
}

inline std::string json_cell(const Cell& c) {
  if (std::holds_alternative<long long>(c))
    return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<double>(c))
    return format_double(std::get<double>(c), 17);
  if (std::holds_alternative<std::string>(c))
    return "\"" + json_escape(std::get<std::string>(c)) + "\"";
  return "null";
}

inline std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i], 17);
  }
  return s;
}

inline std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace detail

/// Resolved configuration as ordered (key, value) pairs. Keys are the long
/// option names, so the echo can be fed back through --config.
inline std::vector<std::pair<std::string, Cell>> config_echo(const RunConfig& c) {
  const auto& p = c.params;
  return {
      {"command", c.command},
      {"hbar", p.hbar},
      {"mu", p.mu},
      {"G", p.G},
      {"kappa", p.kappa},
      {"l", static_cast<long long>(p.l)},
      {"chi-min", c.chi_min},
      {"chi-max", c.chi_max},
      {"chi-steps", static_cast<long long>(c.chi_steps)},
      {"q-min", c.q_min},
      {"q-max", c.q_max},
      {"q-steps", static_cast<long long>(c.q_steps)},
      {"hemisphere", std::string(to_string(c.hemisphere))},
      {"verify", std::string(c.verify ? "true" : "false")},
      {"base-panels", static_cast<long long>(c.quad.base_panels)},
      {"panels-per-wavelength",
       static_cast<long long>(c.quad.panels_per_wavelength)},
      {"abs-tol", c.quad.abs_tol},
      {"rel-tol", c.quad.rel_tol},
      {"kappas", detail::join_doubles(c.kappas)},
      {"k-max", static_cast<long long>(c.k_max)},
      {"n-points", static_cast<long long>(c.n_points)},
      {"extrapolate", std::string(c.extrapolate ? "true" : "false")},
      {"threshold", c.threshold},
      {"grids", detail::join_ints(c.grids)},
      {"window-lo", c.window_lo},
      {"window-hi", c.window_hi},
      {"min-order", c.min_order},
      {"format", std::string(c.format == Format::Csv ? "csv" : "json")},
  };
}

/// CSV: header row, comma separator, LF endings, 12 significant digits.
inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << detail::csv_cell(row[i]);
    os << '\n';
  }
}

/// JSON: {"config": {...}, "rows": [{...}, ...]}, 17 significant digits.
inline void write_json(std::ostream& os, const RunConfig& cfg, const Table& t) {
  os << "{\n  \"config\": {";
  auto echo = config_echo(cfg);
  for (std::size_t i = 0; i < echo.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << '"' << echo[i].first
       << "\": " << detail::json_cell(echo[i].second);
  }
  os << "\n  },\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? ",\n    {" : "\n    {");
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      os << (i ? ", " : "") << '"' << t.columns[i]
         << "\": " << detail::json_cell(t.rows[r][i]);
    }
    os << '}';
  }
  os << (t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

// ---------------------------------------------------------------------------
// Commands

inline Table cmd_potential(const RunConfig& cfg) {
  cfg.params.validate();
  if (cfg.chi_steps < 2) throw ConfigError("chi-steps must be >= 2");
  if (!(cfg.chi_max > cfg.chi_min))
    throw ConfigError("chi-max must be greater than chi-min");
  Table t{{"chi", "V", "cot_term", "barrier"}, {}};
  for (int i = 0; i < cfg.chi_steps; ++i) {
    double chi = i + 1 == cfg.chi_steps
                     ? cfg.chi_max
                     : cfg.chi_min + (cfg.chi_max - cfg.chi_min) * i /
                                         (cfg.chi_steps - 1);
    double cot = cot_term(chi, cfg.params);
    double bar = centrifugal_barrier(chi, cfg.params);
    t.rows.push_back({chi, rosen_morse(chi, cfg.params), cot, bar});
  }
  return t;
}

namespace detail {
inline double hemisphere_sign(Hemisphere h) {
  return h == Hemisphere::Northern ? 1.0 : -1.0;
}

// Verification compares against the closed form with the user tolerances, so
// the quadrature's own panel-doubling estimate is not allowed to abort first.
inline QuadratureConfig verification_quadrature(const QuadratureConfig& q) {
  QuadratureConfig loose = q;
  loose.abs_tol = std::numeric_limits<double>::max();
  return loose;
}
}  // namespace detail

inline CommandResult cmd_propagator(const RunConfig& cfg, std::ostream& diag) {
  const auto& p = cfg.params;
  p.validate();
  cfg.quad.validate();
  auto grid = MomentumGrid::linear(cfg.q_min, cfg.q_max, cfg.q_steps, p);
  const double sign = detail::hemisphere_sign(cfg.hemisphere);

  Table t{{"q", "x", "Pi_closed", "Pi_over_c"}, {}};
  if (cfg.verify)
    for (const char* c : {"Pi_north", "Pi_south", "abs_err"}) t.columns.push_back(c);

  auto closed = propagator_curve(grid, p, PropagatorMode::ClosedForm);
  std::optional<PropagatorCurve> north, south;
  if (cfg.verify) {
    auto quad = detail::verification_quadrature(cfg.quad);
    north = propagator_curve(grid, p, PropagatorMode::Northern, quad);
    south = propagator_curve(grid, p, PropagatorMode::Southern, quad);
  }

  double max_err = 0.0;
  bool failed = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double x = grid.x()[i];
    double pi_closed = sign * closed.values[i];
    std::vector<Cell> row{grid.q()[i], x, pi_closed,
                          sign * half_versine_ratio(x)};
    if (cfg.verify) {
      double quad = cfg.hemisphere == Hemisphere::Northern ? north->values[i]
                                                           : south->values[i];
      double err = std::abs(quad - pi_closed);
      max_err = std::max(max_err, err);
      if (err > std::max(cfg.quad.abs_tol, cfg.quad.rel_tol * std::abs(pi_closed)))
        failed = true;
      row.insert(row.end(), {north->values[i], south->values[i], err});
    }
    t.rows.push_back(std::move(row));
  }
  if (cfg.verify) {
    diag << "max abs_err = " << detail::format_double(max_err, 6) << '\n';
    if (failed)
      return {std::move(t), "quadrature deviates from the closed form beyond "
                            "tolerance (max abs_err = " +
                                detail::format_double(max_err, 6) + ")"};
  }
  return {std::move(t), std::nullopt};
}

inline CommandResult cmd_fig1(const RunConfig& cfg, std::ostream& diag) {
  if (cfg.kappas.empty()) throw ConfigError("kappas must not be empty");
  if (cfg.q_min < 0.0) throw ConfigError("q-min must be >= 0");
  cfg.quad.validate();
  const double sign = detail::hemisphere_sign(cfg.hemisphere);
  Table t{{"kappa", "q", "Pi", "Pi_over_c"}, {}};
  if (cfg.verify) {
    t.columns.push_back("Pi_quad");
    t.columns.push_back("abs_err");
  }
  double max_err = 0.0;
  bool failed = false;
  for (double kappa : cfg.kappas) {
    PhysicalParams p = cfg.params;
    p.kappa = kappa;
    p.validate();
    auto grid = MomentumGrid::linear(cfg.q_min, cfg.q_max, cfg.q_steps, p);
    auto closed = propagator_curve(grid, p, PropagatorMode::ClosedForm);
    std::optional<PropagatorCurve> quad;
    if (cfg.verify)
      quad = propagator_curve(grid, p,
                              cfg.hemisphere == Hemisphere::Northern
                                  ? PropagatorMode::Northern
                                  : PropagatorMode::Southern,
                              detail::verification_quadrature(cfg.quad));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double v = sign * closed.values[i];
      std::vector<Cell> row{kappa, grid.q()[i], v,
                            sign * half_versine_ratio(grid.x()[i])};
      if (quad) {
        double err = std::abs(quad->values[i] - v);
        max_err = std::max(max_err, err);
        if (err > std::max(cfg.quad.abs_tol, cfg.quad.rel_tol * std::abs(v)))
          failed = true;
        row.push_back(quad->values[i]);
        row.push_back(err);
      }
      t.rows.push_back(std::move(row));
    }
  }
  if (cfg.verify) {
    diag << "max abs_err = " << detail::format_double(max_err, 6) << '\n';
    if (failed)
      return {std::move(t), "quadrature deviates from the closed form beyond "
                            "tolerance (max abs_err = " +
                                detail::format_double(max_err, 6) + ")"};
  }
  return {std::move(t), std::nullopt};
}

inline CommandResult cmd_spectrum(const RunConfig& cfg, std::ostream& diag) {
  if (cfg.k_max < 1) throw ConfigError("k-max must be >= 1");
  ChiGrid grid(cfg.n_points);
  int n_levels = cfg.k_max + 1;
  if (n_levels > grid.size() / 4)
    throw ConfigError("n-levels = " + std::to_string(n_levels) +
                      " exceeds n-points/4 = " + std::to_string(grid.size() / 4));
  auto rep = degeneracy_report(cfg.params, cfg.k_max, grid, cfg.extrapolate);

  Table t{{"l", "level_index", "n", "eigenvalue", "spread"}, {}};
  for (const auto& e : rep.entries) {
    t.rows.push_back({static_cast<long long>(e.l),
                      static_cast<long long>(e.level_index),
                      static_cast<long long>(e.n), e.eigenvalue,
                      rep.spread_for(e.n).spread});
  }
  double worst = rep.max_spread();
  diag << "max relative spread = " << detail::format_double(worst, 6) << '\n';
  if (!(worst < cfg.threshold))
    return {std::move(t), "degeneracy spread " + detail::format_double(worst, 6) +
                              " is not below threshold " +
                              detail::format_double(cfg.threshold, 6)};
  return {std::move(t), std::nullopt};
}

inline CommandResult cmd_harmonic(const RunConfig& cfg, std::ostream& diag) {
  if (cfg.grids.size() < 2)
    throw ConfigError("grids needs at least two sizes to estimate an order");
  Table t{{"n_points", "h", "residual", "observed_order"}, {}};
  double prev_res = 0.0, prev_h = 0.0;
  std::optional<double> last_order;
  for (std::size_t i = 0; i < cfg.grids.size(); ++i) {
    ChiGrid grid(cfg.grids[i]);
    double res = harmonicity_residual(grid, cfg.window_lo, cfg.window_hi);
    double h = grid.spacing();
    Cell order;
    if (i > 0) {
      double o = std::log(prev_res / res) / std::log(prev_h / h);
      order = o;
      last_order = o;
    }
    t.rows.push_back({static_cast<long long>(grid.size()), h, res, order});
    prev_res = res;
    prev_h = h;
  }
  diag << "final observed order = " << detail::format_double(*last_order, 6)
       << '\n';
  if (!(*last_order >= cfg.min_order))
    return {std::move(t), "observed order " +
                              detail::format_double(*last_order, 6) +
                              " is below " +
                              detail::format_double(cfg.min_order, 6)};
  return {std::move(t), std::nullopt};
}

// ---------------------------------------------------------------------------
// Argument handling

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::string json_scalar_to_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>(), 17);
  throw ConfigError("unsupported config value: " + v.dump());
}

/// Reads a config file into (key, value) pairs. Accepts `key = value` lines
/// (with # comments) or a JSON document with a "config" object.
inline std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  std::vector<std::pair<std::string, std::string>> kv;

  if (trim(text).starts_with("{")) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config: invalid JSON in '" + path + "': " + e.what());
    }
    const auto& obj = doc.contains("config") ? doc.at("config") : doc;
    if (!obj.is_object()) throw ConfigError("config: expected a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (it.key() == "command") continue;
      kv.emplace_back(it.key(), json_scalar_to_string(it.value()));
    }
    return kv;
  }

  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) +
                        " is not 'key = value'");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& v) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      T value;
      if constexpr (std::is_same_v<T, int>)
        value = std::stoi(item, &used);
      else
        value = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(value);
    } catch (const std::exception&) {
      throw ConfigError(key + ": cannot parse list element '" + item + "'");
    }
  }
  return out;
}

// String-valued options are bound here and converted after parsing.
struct RawOptions {
  std::string config_path;
  std::string hemisphere = "north";
  std::string format = "csv";
  std::string kappas;
  std::string grids;
  std::string verify = "false";
  std::string extrapolate = "true";
};

inline void bind_options(CLI::App& app, RunConfig& c, RawOptions& raw) {
  app.add_option("--config", raw.config_path, "key = value or JSON config file");
  app.add_option("--G", c.params.G, "coupling G (energy*length)");
  app.add_option("--kappa", c.params.kappa, "curvature kappa = 1/R^2");
  app.add_option("--hbar", c.params.hbar, "reduced Planck constant");
  app.add_option("--mu", c.params.mu, "reduced mass");
  app.add_option("--l", c.params.l, "angular momentum l");
  app.add_option("--chi-min", c.chi_min, "first chi sample (potential)");
  app.add_option("--chi-max", c.chi_max, "last chi sample (potential)");
  app.add_option("--chi-steps", c.chi_steps, "number of chi samples (potential)");
  app.add_option("--q-min", c.q_min, "first momentum");
  app.add_option("--q-max", c.q_max, "last momentum");
  app.add_option("--q-steps", c.q_steps, "number of momenta");
  app.add_option("--hemisphere", raw.hemisphere, "north or south");
  app.add_flag("--verify{true}", raw.verify,
               "compare hemisphere quadrature against the closed form");
  app.add_option("--base-panels", c.quad.base_panels, "minimum quadrature panels");
  app.add_option("--panels-per-wavelength", c.quad.panels_per_wavelength,
                 "quadrature panels per 2 pi of x");
  app.add_option("--abs-tol", c.quad.abs_tol, "absolute quadrature tolerance");
  app.add_option("--rel-tol", c.quad.rel_tol, "relative quadrature tolerance");
  app.add_option("--kappas", raw.kappas, "comma-separated kappa values (fig1)");
  app.add_option("--k-max", c.k_max, "largest K in the degeneracy report");
  app.add_option("--n-levels", c.k_max, "levels of the l = 0 problem (K_max + 1)")
      ->transform([](std::string v) {
        try {
          return std::to_string(std::stoi(v) - 1);
        } catch (const std::exception&) {
          return v;
        }
      });
  app.add_option("--n-points", c.n_points, "interior chi grid points (spectrum)");
  app.add_flag("--extrapolate{true}", raw.extrapolate,
               "Richardson-extrapolate over (N, 2N)");
  app.add_option("--threshold", c.threshold, "maximum allowed relative spread");
  app.add_option("--grids", raw.grids, "comma-separated grid sizes (harmonic)");
  app.add_option("--window-lo", c.window_lo, "harmonicity window start");
  app.add_option("--window-hi", c.window_hi, "harmonicity window end");
  app.add_option("--min-order", c.min_order, "required observed order");
  app.add_option("--format", raw.format, "csv or json");
  app.add_option("--out", c.out, "output path (default stdout)");
}

inline void finish_config(RunConfig& c, const RawOptions& raw) {
  if (raw.hemisphere == "north")
    c.hemisphere = Hemisphere::Northern;
  else if (raw.hemisphere == "south")
    c.hemisphere = Hemisphere::Southern;
  else
    throw ConfigError("hemisphere: expected north or south, got '" +
                      raw.hemisphere + "'");
  if (raw.format == "csv")
    c.format = Format::Csv;
  else if (raw.format == "json")
    c.format = Format::Json;
  else
    throw ConfigError("format: expected csv or json, got '" + raw.format + "'");
  c.verify = parse_bool("verify", raw.verify);
  c.extrapolate = parse_bool("extrapolate", raw.extrapolate);
  if (!raw.kappas.empty()) c.kappas = parse_list<double>("kappas", raw.kappas);
  if (!raw.grids.empty()) c.grids = parse_list<int>("grids", raw.grids);
}

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"potential", "propagator", "fig1",
                                              "spectrum", "harmonic"};
  return names;
}

}  // namespace detail

/// Parses arguments (excluding the program name) into a RunConfig.
/// Throws ConfigError on invalid input; returns nullopt after printing help.
inline std::optional<RunConfig> parse_args(std::vector<std::string> args,
                                           std::ostream& out) {
  if (args.empty() || args[0] == "-h" || args[0] == "--help") {
    out << "usage: rmprop <potential|propagator|fig1|spectrum|harmonic> "
           "[options]\n       rmprop <command> --help\n";
    if (args.empty()) throw ConfigError("missing command");
    return std::nullopt;
  }
  const std::string command = args[0];
  const auto& names = detail::command_names();
  if (std::find(names.begin(), names.end(), command) == names.end())
    throw ConfigError("unknown command '" + command + "'");

  // Locate --config before the real parse so its entries can be placed ahead
  // of the command-line tokens; single-valued options keep the last value.
  std::string config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].starts_with("--config=")) config_path = args[i].substr(9);
  }
  std::vector<std::string> tokens;
  if (!config_path.empty()) {
    for (const auto& [key, value] : detail::read_config_file(config_path)) {
      if (key == "config") throw ConfigError("config: nested config files");
      tokens.push_back("--" + key + "=" + value);
    }
  }
  tokens.insert(tokens.end(), args.begin() + 1, args.end());

  RunConfig cfg;
  cfg.command = command;
  detail::RawOptions raw;
  CLI::App app("rmprop " + command, "rmprop " + command);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  detail::bind_options(app, cfg, raw);
  try {
    std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(std::string(e.get_name()) + ": " + e.what());
  }
  detail::finish_config(cfg, raw);
  return cfg;
}

/// Runs a parsed command and writes its table. A failed post-run check is
/// reported by throwing VerificationFailure after the table is written.
inline void execute(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  CommandResult result;
  try {
    if (cfg.command == "potential")
      result.table = cmd_potential(cfg);
    else if (cfg.command == "propagator")
      result = cmd_propagator(cfg, diag);
    else if (cfg.command == "fig1")
      result = cmd_fig1(cfg, diag);
    else if (cfg.command == "spectrum")
      result = cmd_spectrum(cfg, diag);
    else if (cfg.command == "harmonic")
      result = cmd_harmonic(cfg, diag);
    else
      throw ConfigError("unknown command '" + cfg.command + "'");
  } catch (const ToleranceError& e) {
    throw VerificationFailure(e.what());
  }

  std::ofstream file;
  std::ostream* dest = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary);
    if (!file) throw ConfigError("out: cannot open '" + cfg.out + "' for writing");
    dest = &file;
  }
  if (cfg.format == Format::Csv)
    write_csv(*dest, result.table);
  else
    write_json(*dest, cfg, result.table);
  dest->flush();
  if (result.failure) throw VerificationFailure(*result.failure);
}

/// Entry point shared by the executable and the tests; returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  try {
    auto cfg = parse_args(args, out);
    if (!cfg) return 0;
    execute(*cfg, out, err);
    return 0;
  } catch (const ConfigError& e) {
    err << "rmprop: config error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "rmprop: domain error: " << e.what() << '\n';
    return 3;
  } catch (const VerificationFailure& e) {
    err << "rmprop: verification failed: " << e.what() << '\n';
    return 4;
  } catch (const ConvergenceError& e) {
    err << "rmprop: eigen-solver failure: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    err << "rmprop: error: " << e.what() << '\n';
    return 1;
  }
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace rmprop::cli
