#include "kerrcat/cli.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "kerrcat/cat_decomposition.hpp"
#include "kerrcat/dynamics.hpp"
#include "kerrcat/error.hpp"
#include "kerrcat/leggett_garg.hpp"
#include "kerrcat/phase_space.hpp"
#include "kerrcat/presets.hpp"
#include "kerrcat/serialization.hpp"

namespace kerrcat::cli {

namespace {

using io::format_double;
using io::json;

// A --config file is a flat JSON object whose keys are long flag names
// without the dashes. Its entries are spliced into the argument list right
// after the subcommand, so flags given on the command line (which come later
// and are resolved last-wins) override the file.
// Keys that name a flag of another subcommand are skipped so that one file can
// serve several commands; keys unknown to every subcommand are rejected.
std::vector<std::string> config_arguments(const std::string& path, const CLI::App& app, const CLI::App* sub) {
  json doc;
  try {
    doc = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw validation_error("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw validation_error("config '" + path + "' must be a JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : doc.items()) {
    if (key == "config") throw validation_error("config files cannot include other config files");
    const std::string flag = "--" + key;
    if (sub == nullptr || sub->get_option_no_throw(flag) == nullptr) {
      bool elsewhere = false;
      for (const auto* other : app.get_subcommands({})) elsewhere = elsewhere || other->get_option_no_throw(flag);
      if (!elsewhere) throw validation_error("config key '" + key + "' is not a known flag");
      continue;
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag + "=" + value.get<std::string>());
    } else if (value.is_number_integer()) {
      args.push_back(flag + "=" + std::to_string(value.get<long long>()));
    } else if (value.is_number()) {
      args.push_back(flag + "=" + format_double(value.get<double>()));
    } else {
      throw validation_error("config value for '" + key + "' must be a scalar");
    }
  }
  return args;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args, const CLI::App& app) {
  const CLI::App* sub = args.empty() ? nullptr : app.get_subcommand_no_throw(args.front());
  std::vector<std::string> expanded;
  std::vector<std::string> spliced;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      spliced = config_arguments(args[++i], app, sub);
    } else if (args[i].rfind("--config=", 0) == 0) {
      spliced = config_arguments(args[i].substr(9), app, sub);
    } else {
      expanded.push_back(args[i]);
    }
  }
  if (!spliced.empty()) {
    const auto insert_at = expanded.empty() ? expanded.end() : expanded.begin() + 1;
    expanded.insert(insert_at, spliced.begin(), spliced.end());
  }
  return expanded;
}

struct RunConfig {
  double alpha = 3.0;
  int k = 2;
  int omega_sign = 1;
  std::string time = "0";
  double theta = 0.0;
  std::string out;
  std::optional<std::size_t> n_max;
  double tail_tol = kDefaultTailTolerance;

  // px
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::size_t curve_resolution = 801;

  // qfunc
  std::optional<double> extent;
  std::size_t grid_resolution = 161;

  // lg
  std::string preset;
  bool mixture = false;
  std::string sweep;
  std::string t2;
  std::string t3;
  std::string assign2;
  std::string assign3;
  double partition_angle = 0.0;
};

HamiltonianSpec hamiltonian(const RunConfig& cfg) {
  if (cfg.omega_sign != 1 && cfg.omega_sign != -1) throw validation_error("--omega-sign must be +1 or -1");
  HamiltonianSpec spec{cfg.k, static_cast<double>(cfg.omega_sign), 0.0};
  spec.validate();
  return spec;
}

TruncationPolicy truncation(const RunConfig& cfg) {
  if (cfg.n_max) {
    TruncationPolicy p{*cfg.n_max, cfg.tail_tol};
    p.validate();
    return p;
  }
  return choose_truncation(complex(cfg.alpha, 0.0), cfg.tail_tol);
}

FockState evolved_state(const RunConfig& cfg) {
  if (!std::isfinite(cfg.alpha)) throw validation_error("--alpha must be finite");
  const FockState initial = make_coherent(complex(cfg.alpha, 0.0), truncation(cfg));
  return evolve(initial, hamiltonian(cfg), RationalPhaseTime::parse(cfg.time));
}

QuadratureSpec quadrature_spec(const RunConfig& cfg) {
  QuadratureSpec q{cfg.theta};
  q.validate();
  return q;
}

void emit(const std::string& path, const std::string& contents) {
  if (!path.empty()) io::write_file_atomic(path, contents);
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  const FockState state = evolved_state(cfg);
  emit(cfg.out, io::to_json(state).dump(2) + "\n");
  out << "n_max = " << state.n_max() << "\n";
  out << "norm = " << format_double(std::sqrt(state.norm_squared())) << "\n";
  out << "mean_n = " << format_double(state.mean_photon_number()) << "\n";
  return kOk;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  if (!std::isfinite(cfg.alpha)) throw validation_error("--alpha must be finite");
  const auto sup = decompose(complex(cfg.alpha, 0.0), hamiltonian(cfg), RationalPhaseTime::parse(cfg.time));
  emit(cfg.out, io::to_json(sup).dump(2) + "\n");
  out << fmt::format("{:>4} {:>20} {:>20} {:>20} {:>20}\n", "term", "|coeff|", "arg(coeff)/pi", "|amp|",
                     "arg(amp)/pi");
  for (std::size_t j = 0; j < sup.terms.size(); ++j) {
    const auto& t = sup.terms[j];
    out << fmt::format("{:>4} {:>20.12f} {:>20.12f} {:>20.12f} {:>20.12f}\n", j, std::abs(t.coeff),
                       std::arg(t.coeff) / std::numbers::pi, std::abs(t.amp), std::arg(t.amp) / std::numbers::pi);
  }
  out << "norm^2 = " << format_double(norm_squared(sup)) << "\n";
  return kOk;
}

int cmd_px(const RunConfig& cfg, std::ostream& out) {
  const FockState state = evolved_state(cfg);
  const double half = default_half_width(state);
  const std::pair<double, double> window{cfg.x_min.value_or(-half), cfg.x_max.value_or(half)};
  const auto curve = p_x_curve(state, quadrature_spec(cfg), window, cfg.curve_resolution);
  std::ostringstream csv;
  io::write_density_csv(csv, curve);
  emit(cfg.out, csv.str());
  out << "window = [" << format_double(window.first) << ", " << format_double(window.second) << "]\n";
  out << "integral = " << format_double(curve.integral) << "\n";
  return kOk;
}

int cmd_qfunc(const RunConfig& cfg, std::ostream& out) {
  const FockState state = evolved_state(cfg);
  GridSpec grid = GridSpec::around(cfg.alpha, cfg.grid_resolution);
  if (cfg.extent) grid = GridSpec{{-*cfg.extent, *cfg.extent}, {-*cfg.extent, *cfg.extent}, cfg.grid_resolution};
  const auto q = q_function(state, grid);
  if (!cfg.out.empty()) {
    std::ostringstream csv;
    io::write_q_csv(csv, q);
    io::write_file_atomic(cfg.out, csv.str());
    io::write_file_atomic(cfg.out + ".json", io::grid_sidecar(grid).dump(2) + "\n");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < q.values.size(); ++i) {
    if (q.values[i] > q.values[best]) best = i;
  }
  out << "q_max = " << format_double(q.values[best]) << " at (" << format_double(grid.re_at(best % grid.resolution))
      << ", " << format_double(grid.im_at(best / grid.resolution)) << ")\n";
  out << "integral = " << format_double(q.integral()) << "\n";
  return kOk;
}

OutcomeAssignment parse_assignment(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw validation_error(std::string(flag) + " expects 'plus,minus'");
  try {
    std::size_t used = 0;
    const std::string plus = text.substr(0, comma);
    const std::string minus = text.substr(comma + 1);
    OutcomeAssignment a{std::stod(plus, &used), 0.0};
    if (used != plus.size()) throw std::invalid_argument(plus);
    a.value_minus = std::stod(minus, &used);
    if (used != minus.size()) throw std::invalid_argument(minus);
    a.validate();
    return a;
  } catch (const std::logic_error&) {
    throw validation_error(std::string(flag) + " has a malformed value: '" + text + "'");
  }
}

LgProtocol lg_protocol(const RunConfig& cfg, double alpha) {
  if (!cfg.preset.empty()) {
    LgProtocol p = preset_protocol(cfg.preset, alpha);
    p.tail_tolerance = cfg.tail_tol;
    p.validate();
    return p;
  }
  if (cfg.t2.empty() || cfg.t3.empty() || cfg.assign2.empty() || cfg.assign3.empty()) {
    throw validation_error("lg needs --preset or all of --t2, --t3, --assign2, --assign3");
  }
  LgProtocol p;
  p.spec = hamiltonian(cfg);
  p.alpha0 = complex(alpha, 0.0);
  p.times = {RationalPhaseTime(0, 1), RationalPhaseTime::parse(cfg.t2), RationalPhaseTime::parse(cfg.t3)};
  p.assignments = {OutcomeAssignment{1.0, -1.0}, parse_assignment(cfg.assign2, "--assign2"),
                   parse_assignment(cfg.assign3, "--assign3")};
  p.partition_angle = cfg.partition_angle;
  p.quad = quadrature_spec(cfg);
  p.tail_tolerance = cfg.tail_tol;
  p.validate();
  return p;
}

std::vector<double> sweep_values(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string piece;
  try {
    while (std::getline(ss, piece, ':')) parts.push_back(std::stod(piece));
  } catch (const std::logic_error&) {
    throw validation_error("--sweep-alpha expects a:b:step");
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw validation_error("--sweep-alpha expects a:b:step with a <= b and step > 0");
  }
  std::vector<double> values;
  const auto count = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) values.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return values;
}

int cmd_lg(const RunConfig& cfg, std::ostream& out) {
  const auto run_one = [&](const LgProtocol& p) { return cfg.mixture ? mixture_lg_value(p) : lg_value(p); };
  const std::string label = cfg.preset.empty() ? "custom" : cfg.preset;

  if (!cfg.sweep.empty()) {
    std::string csv = std::string(io::lg_csv_header()) + "\n";
    for (double alpha : sweep_values(cfg.sweep)) {
      csv += io::lg_csv_row(label, alpha, run_one(lg_protocol(cfg, alpha))) + "\n";
    }
    if (cfg.out.empty()) {
      out << csv;
    } else {
      io::write_file_atomic(cfg.out, csv);
    }
    return kOk;
  }

  const LgProtocol protocol = lg_protocol(cfg, cfg.alpha);
  const LgReport report = run_one(protocol);
  emit(cfg.out, io::to_json(report, protocol).dump(2) + "\n");
  out << "c12 = " << format_double(report.c12) << "\n";
  out << "c23 = " << format_double(report.c23) << "\n";
  out << "c13 = " << format_double(report.c13) << "\n";
  out << "lg_value = " << format_double(report.lg_value) << "\n";
  out << "violated = " << (report.violated ? "true" : "false") << "\n";
  return kOk;
}

void add_state_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--alpha", cfg.alpha, "Real coherent amplitude of the initial state");
  sub->add_option("--k", cfg.k, "Order of the nonlinearity");
  sub->add_option("--omega-sign", cfg.omega_sign, "Sign of the nonlinear rate (+1 or -1)");
  sub->add_option("--time", cfg.time, "Evolution time p/q in units of pi/|Omega|");
  sub->add_option("--theta", cfg.theta, "Quadrature angle in [0, 2 pi)");
  sub->add_option("--out", cfg.out, "Output path");
  sub->add_option("--n-max", cfg.n_max, "Fock cutoff override");
  sub->add_option("--tail-tol", cfg.tail_tol, "Admissible probability mass above the cutoff");
  // Consumed by expand_config before parsing; registered here for --help.
  sub->add_option("--config", "JSON file mirroring the flags");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kerr-type cat-state simulator and Leggett-Garg evaluator", "kerrcat"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  RunConfig cfg;
  auto* evolve_cmd = app.add_subcommand("evolve", "Evolve a coherent state and write the Fock amplitudes");
  add_state_options(evolve_cmd, cfg);

  auto* decompose_cmd = app.add_subcommand("decompose", "Write the coherent-state superposition at a rational time");
  add_state_options(decompose_cmd, cfg);

  auto* px_cmd = app.add_subcommand("px", "Write the quadrature density P(x) as CSV");
  add_state_options(px_cmd, cfg);
  px_cmd->add_option("--x-min", cfg.x_min, "Left edge of the sampling window");
  px_cmd->add_option("--x-max", cfg.x_max, "Right edge of the sampling window");
  px_cmd->add_option("--resolution", cfg.curve_resolution, "Number of samples")->check(CLI::Range(2, 1000000));

  auto* qfunc_cmd = app.add_subcommand("qfunc", "Write the Husimi Q function on a square grid as CSV");
  add_state_options(qfunc_cmd, cfg);
  qfunc_cmd->add_option("--extent", cfg.extent, "Grid half-width (default |alpha| + 5)");
  qfunc_cmd->add_option("--resolution", cfg.grid_resolution, "Nodes per axis")->check(CLI::Range(2, 10000));

  auto* lg_cmd = app.add_subcommand("lg", "Evaluate the Leggett-Garg functional");
  add_state_options(lg_cmd, cfg);
  lg_cmd->add_option("--preset", cfg.preset, "Protocol preset")->check(CLI::IsMember(preset_names()));
  lg_cmd->add_flag("--mixture", cfg.mixture, "Evaluate the classical mixture of the t2 branches");
  lg_cmd->add_option("--sweep-alpha", cfg.sweep, "Sweep alpha as a:b:step and emit CSV rows");
  lg_cmd->add_option("--t2", cfg.t2, "Second time p/q (custom protocol)");
  lg_cmd->add_option("--t3", cfg.t3, "Third time p/q (custom protocol)");
  lg_cmd->add_option("--assign2", cfg.assign2, "Outcome values 'plus,minus' at t2 (custom protocol)");
  lg_cmd->add_option("--assign3", cfg.assign3, "Outcome values 'plus,minus' at t3 (custom protocol)");
  lg_cmd->add_option("--partition-angle", cfg.partition_angle, "Half-plane angle for the t2 branch split");

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args, app);
  } catch (const validation_error& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const io_error& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }

  try {
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (evolve_cmd->parsed()) return cmd_evolve(cfg, out);
    if (decompose_cmd->parsed()) return cmd_decompose(cfg, out);
    if (px_cmd->parsed()) return cmd_px(cfg, out);
    if (qfunc_cmd->parsed()) return cmd_qfunc(cfg, out);
    return cmd_lg(cfg, out);
  } catch (const validation_error& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const io_error& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace kerrcat::cli
