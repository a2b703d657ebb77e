#include "kerrcat/serialization.hpp"

#include <array>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

#include "kerrcat/error.hpp"

namespace kerrcat::io {

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw validation_error(std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw validation_error(std::string("bad JSON field '") + key + "': " + e.what());
  }
}

}  // namespace

json to_json(const FockState& state) {
  json re = json::array();
  json im = json::array();
  for (const auto& c : state.amplitudes()) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return {{"n_max", state.n_max()}, {"re", re}, {"im", im}, {"normalized", state.normalized()}};
}

FockState fock_state_from_json(const json& j) {
  const auto n_max = field<std::size_t>(j, "n_max");
  const auto re = field<std::vector<double>>(j, "re");
  const auto im = field<std::vector<double>>(j, "im");
  if (re.size() != n_max + 1 || im.size() != n_max + 1) {
    throw validation_error("state arrays must have n_max + 1 entries");
  }
  std::vector<complex> c(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) c[n] = complex(re[n], im[n]);
  return FockState(std::move(c), field<bool>(j, "normalized"));
}

json to_json(const CoherentSuperposition& sup) {
  json terms = json::array();
  for (const auto& t : sup.terms) {
    terms.push_back({{"coeff_re", t.coeff.real()},
                     {"coeff_im", t.coeff.imag()},
                     {"amp_re", t.amp.real()},
                     {"amp_im", t.amp.imag()}});
  }
  return {{"terms", terms}};
}

CoherentSuperposition superposition_from_json(const json& j) {
  CoherentSuperposition sup;
  const auto terms = field<json>(j, "terms");
  if (!terms.is_array()) throw validation_error("'terms' must be an array");
  for (const auto& t : terms) {
    sup.terms.push_back({complex(field<double>(t, "coeff_re"), field<double>(t, "coeff_im")),
                         complex(field<double>(t, "amp_re"), field<double>(t, "amp_im"))});
  }
  return sup;
}

json to_json(const HamiltonianSpec& spec) {
  return {{"k", spec.k},
          {"omega_sign", spec.omega_sign()},
          {"omega_magnitude", std::abs(spec.omega_nl)},
          {"frame_freq", spec.frame_freq}};
}

HamiltonianSpec hamiltonian_from_json(const json& j) {
  const int sign = field<int>(j, "omega_sign");
  if (sign != 1 && sign != -1) throw validation_error("omega_sign must be +1 or -1");
  HamiltonianSpec spec{field<int>(j, "k"), sign * field<double>(j, "omega_magnitude"),
                       field<double>(j, "frame_freq")};
  spec.validate();
  return spec;
}

json to_json(const LgProtocol& p) {
  json times = json::array();
  for (const auto& t : p.times) times.push_back(t.to_string());
  json assignments = json::array();
  for (const auto& a : p.assignments) assignments.push_back({a.value_plus, a.value_minus});
  return {{"hamiltonian", to_json(p.spec)},
          {"alpha_re", p.alpha0.real()},
          {"alpha_im", p.alpha0.imag()},
          {"times", times},
          {"assignments", assignments},
          {"partition_angle", p.partition_angle},
          {"theta", p.quad.theta},
          {"tail_tolerance", p.tail_tolerance}};
}

LgProtocol protocol_from_json(const json& j) {
  LgProtocol p;
  p.spec = hamiltonian_from_json(field<json>(j, "hamiltonian"));
  p.alpha0 = complex(field<double>(j, "alpha_re"), field<double>(j, "alpha_im"));
  const auto times = field<std::vector<std::string>>(j, "times");
  const auto assignments = field<std::vector<std::array<double, 2>>>(j, "assignments");
  if (times.size() != 3 || assignments.size() != 3) throw validation_error("protocol needs exactly three times");
  for (std::size_t i = 0; i < 3; ++i) {
    p.times[i] = RationalPhaseTime::parse(times[i]);
    p.assignments[i] = OutcomeAssignment{assignments[i][0], assignments[i][1]};
  }
  p.partition_angle = field<double>(j, "partition_angle");
  p.quad.theta = field<double>(j, "theta");
  p.tail_tolerance = field<double>(j, "tail_tolerance");
  p.validate();
  return p;
}

json to_json(const LgReport& r, const LgProtocol& protocol) {
  return {{"c12", r.c12},
          {"c23", r.c23},
          {"c13", r.c13},
          {"prob_neg", r.prob_neg},
          {"prob_pos", r.prob_pos},
          {"branch_conditionals", {r.conditional_neg, r.conditional_pos}},
          {"lg_value", r.lg_value},
          {"violated", r.violated},
          {"protocol", to_json(protocol)}};
}

json grid_sidecar(const GridSpec& grid) {
  return {{"re_min", grid.re_range.first},
          {"re_max", grid.re_range.second},
          {"im_min", grid.im_range.first},
          {"im_max", grid.im_range.second},
          {"resolution", grid.resolution},
          {"order", "row-major, im outer, re inner"}};
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void write_density_csv(std::ostream& os, const DensityCurve& curve) {
  os << "x,density\n";
  for (const auto& [x, p] : curve.samples) os << format_double(x) << ',' << format_double(p) << '\n';
}

void write_q_csv(std::ostream& os, const PhaseGrid& grid) {
  os << "re,im,q\n";
  const auto& g = grid.grid;
  for (std::size_t j = 0; j < g.resolution; ++j) {
    for (std::size_t i = 0; i < g.resolution; ++i) {
      os << format_double(g.re_at(i)) << ',' << format_double(g.im_at(j)) << ',' << format_double(grid.at(i, j))
         << '\n';
    }
  }
}

std::string_view lg_csv_header() { return "preset,alpha,c12,c23,c13,lg_value,violated"; }

std::string lg_csv_row(std::string_view preset, double alpha, const LgReport& r) {
  return fmt::format("{},{},{},{},{},{},{}", preset, format_double(alpha), format_double(r.c12), format_double(r.c23),
                     format_double(r.c13), format_double(r.lg_value), r.violated ? "true" : "false");
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw io_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw io_error("cannot move output into place at " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace kerrcat::io
