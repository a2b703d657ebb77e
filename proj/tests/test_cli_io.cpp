#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "kerrcat/cli.hpp"
#include "kerrcat/error.hpp"
#include "kerrcat/phase_space.hpp"
#include "kerrcat/presets.hpp"
#include "kerrcat/serialization.hpp"
#include "oracles.hpp"

using namespace kerrcat;
using kerrcat::io::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("kerrcat-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

double value_after(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + " = ");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size() + 3));
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == cli::kValidation);
  CHECK(run_cli({"--help"}).code == cli::kOk);
  CHECK(run_cli({"evolve", "--alpha", "abc"}).code == cli::kValidation);
  CHECK(run_cli({"evolve", "--k", "1"}).code == cli::kValidation);
  CHECK(run_cli({"evolve", "--time", "1/0"}).code == cli::kValidation);
  CHECK(run_cli({"evolve", "--omega-sign", "2"}).code == cli::kValidation);
  CHECK(run_cli({"evolve", "--alpha", "3", "--n-max", "10"}).code == cli::kValidation);
  CHECK(run_cli({"lg", "--preset", "k5-lg"}).code == cli::kValidation);
  CHECK(run_cli({"lg"}).code == cli::kValidation);
  CHECK(run_cli({"evolve", "--out", "/nonexistent-dir/x/state.json"}).code == cli::kIo);
  CHECK(run_cli({"evolve", "--config", "/nonexistent-dir/config.json"}).code == cli::kIo);
  CHECK(run_cli({"px", "--alpha", "3", "--x-min", "-1", "--x-max", "1"}).code == cli::kNumerical);
}

TEST_CASE("evolve writes a state that reads back") {
  TempDir dir;
  const auto path = dir.file("state.json");
  const auto r = run_cli({"evolve", "--alpha", "3", "--k", "2", "--time", "1/3", "--out", path});
  REQUIRE(r.code == cli::kOk);
  CHECK(value_after(r.out, "mean_n") == doctest::Approx(9.0).epsilon(1e-9));
  const auto state = io::fock_state_from_json(json::parse(io::read_file(path)));
  CHECK(state.normalized());
  CHECK(state.n_max() == oracle::kNmaxAlpha3);
  CHECK(state.mean_photon_number() == doctest::Approx(9.0).epsilon(1e-9));
  CHECK_FALSE(fs::exists(path + ".tmp"));
}

TEST_CASE("outputs are byte-identical across runs") {
  TempDir dir;
  for (const std::string cmd : {"evolve", "decompose", "px", "qfunc"}) {
    CAPTURE(cmd);
    const auto a = dir.file(cmd + "-a");
    const auto b = dir.file(cmd + "-b");
    REQUIRE(run_cli({cmd, "--alpha", "2", "--time", "1/3", "--out", a}).code == cli::kOk);
    REQUIRE(run_cli({cmd, "--alpha", "2", "--time", "1/3", "--out", b}).code == cli::kOk);
    CHECK(io::read_file(a) == io::read_file(b));
  }
}

TEST_CASE("decompose lists the three-component cat") {
  TempDir dir;
  const auto path = dir.file("sup.json");
  const auto r = run_cli({"decompose", "--alpha", "3", "--k", "2", "--time", "1/3", "--out", path});
  REQUIRE(r.code == cli::kOk);
  CHECK(value_after(r.out, "norm^2") == doctest::Approx(1.0).epsilon(1e-9));
  const auto sup = io::superposition_from_json(json::parse(io::read_file(path)));
  REQUIRE(sup.terms.size() == 3);
  for (const auto& t : sup.terms) {
    CHECK(std::abs(t.coeff) == doctest::Approx(1.0 / oracle::sqrt3).epsilon(1e-14));
    CHECK(std::abs(t.amp) == doctest::Approx(3.0).epsilon(1e-14));
  }
}

TEST_CASE("px writes the cat density with lobes at +-sqrt(2) alpha") {
  TempDir dir;
  const auto path = dir.file("px.csv");
  const auto r = run_cli({"px", "--alpha", "5", "--k", "4", "--time", "1/2", "--out", path});
  REQUIRE(r.code == cli::kOk);
  CHECK(value_after(r.out, "integral") == doctest::Approx(1.0).epsilon(1e-8));
  std::istringstream csv(io::read_file(path));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "x,density");
  double best_neg = 0.0, x_neg = 0.0, best_pos = 0.0, x_pos = 0.0;
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    const auto comma = line.find(',');
    const double x = std::stod(line.substr(0, comma));
    const double d = std::stod(line.substr(comma + 1));
    if (x < 0 && d > best_neg) best_neg = d, x_neg = x;
    if (x > 0 && d > best_pos) best_pos = d, x_pos = x;
  }
  CHECK(rows == 801);
  const double step = 2.0 * (oracle::sqrt2 * 5.0 + 8.0) / 800.0;
  CHECK(std::abs(x_pos - oracle::sqrt2 * 5.0) <= step);
  CHECK(std::abs(x_neg + oracle::sqrt2 * 5.0) <= step);
}

TEST_CASE("qfunc of the vacuum peaks at 1/pi at the origin") {
  TempDir dir;
  const auto path = dir.file("q.csv");
  const auto r = run_cli({"qfunc", "--alpha", "0", "--resolution", "101", "--out", path});
  REQUIRE(r.code == cli::kOk);
  CHECK(value_after(r.out, "q_max") == doctest::Approx(1.0 / oracle::pi).epsilon(1e-14));
  CHECK(r.out.find("at (0, 0)") != std::string::npos);
  const auto sidecar = json::parse(io::read_file(path + ".json"));
  CHECK(sidecar.at("resolution") == 101);
  std::istringstream csv(io::read_file(path));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "re,im,q");
}

TEST_CASE("negative Omega mirrors the phase") {
  TempDir dir;
  const auto plus = dir.file("plus.json");
  const auto minus = dir.file("minus.json");
  REQUIRE(run_cli({"evolve", "--alpha", "2", "--k", "2", "--time", "1/4", "--out", plus}).code == cli::kOk);
  REQUIRE(run_cli({"evolve", "--alpha", "2", "--k", "2", "--time", "1/4", "--omega-sign", "-1", "--out", minus})
              .code == cli::kOk);
  const auto a = io::fock_state_from_json(json::parse(io::read_file(plus)));
  const auto b = io::fock_state_from_json(json::parse(io::read_file(minus)));
  REQUIRE(a.size() == b.size());
  for (std::size_t n = 0; n < a.size(); ++n) CHECK(std::abs(a[n] - std::conj(b[n])) < 1e-15);
  // The Q function is mirrored about the real axis.
  for (const complex beta : {complex(1.0, 2.0), complex(-0.5, 1.5), complex(2.0, -0.3)}) {
    CHECK(q_value(a, beta) == doctest::Approx(q_value(b, std::conj(beta))).epsilon(1e-12));
  }
}

TEST_CASE("evolve at time zero writes the coherent state") {
  TempDir dir;
  const auto path = dir.file("coherent.json");
  REQUIRE(run_cli({"evolve", "--alpha", "3", "--k", "4", "--time", "0", "--out", path}).code == cli::kOk);
  const auto state = io::fock_state_from_json(json::parse(io::read_file(path)));
  const auto expected = make_coherent(3.0, choose_truncation(3.0));
  REQUIRE(state.size() == expected.size());
  for (std::size_t n = 0; n < state.size(); ++n) CHECK(state[n] == expected[n]);
}

TEST_CASE("lg presets and the mixture switch") {
  TempDir dir;
  const auto path = dir.file("lg.json");
  const auto r = run_cli({"lg", "--preset", "k4-lg", "--alpha", "3", "--out", path});
  REQUIRE(r.code == cli::kOk);
  CHECK(std::abs(value_after(r.out, "lg_value") - 1.414) < 2e-3);
  CHECK(r.out.find("violated = true") != std::string::npos);
  const auto report = json::parse(io::read_file(path));
  CHECK(report.at("violated") == true);
  CHECK(report.at("protocol").at("hamiltonian").at("k") == 4);
  const auto protocol = io::protocol_from_json(report.at("protocol"));
  CHECK(protocol.times[2] == RationalPhaseTime(3, 4));

  const auto mix = run_cli({"lg", "--preset", "k4-lg", "--alpha", "3", "--mixture"});
  REQUIRE(mix.code == cli::kOk);
  CHECK(mix.out.find("violated = false") != std::string::npos);

  const auto k2 = run_cli({"lg", "--preset", "k2-lg", "--alpha", "3"});
  REQUIRE(k2.code == cli::kOk);
  CHECK(std::abs(value_after(k2.out, "lg_value") - 10.0 / 9.0) < 3e-3);
}

TEST_CASE("lg custom protocol matches the preset") {
  const auto custom = run_cli({"lg", "--k", "2", "--alpha", "3", "--t2", "1/3", "--t3", "2/3", "--assign2", "1,0",
                               "--assign3", "0,-1"});
  const auto preset = run_cli({"lg", "--preset", "k2-lg", "--alpha", "3"});
  REQUIRE(custom.code == cli::kOk);
  CHECK(custom.out == preset.out);
  CHECK(run_cli({"lg", "--t2", "1/3", "--t3", "2/3", "--assign2", "1;0", "--assign3", "0,-1"}).code ==
        cli::kValidation);
}

TEST_CASE("lg sweep emits CSV rows") {
  const auto r = run_cli({"lg", "--preset", "k4-lg", "--sweep-alpha", "2:3:0.5"});
  REQUIRE(r.code == cli::kOk);
  std::istringstream csv(r.out);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "preset,alpha,c12,c23,c13,lg_value,violated");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line.rfind("k4-lg,", 0) == 0);
    CHECK(line.substr(line.rfind(',') + 1) == "true");
  }
  CHECK(rows == 3);
  CHECK(run_cli({"lg", "--preset", "k4-lg", "--sweep-alpha", "3:2:0.5"}).code == cli::kValidation);
}

TEST_CASE("config file mirrors the flags") {
  TempDir dir;
  const auto config = dir.file("config.json");
  io::write_file_atomic(config, R"({"alpha": 3, "k": 4, "time": "1/4", "preset": "k4-lg"})");
  const auto from_file = run_cli({"lg", "--config", config});
  const auto from_flags = run_cli({"lg", "--preset", "k4-lg", "--alpha", "3"});
  REQUIRE(from_file.code == cli::kOk);
  CHECK(from_file.out == from_flags.out);

  // Command-line flags override the file.
  const auto overridden = run_cli({"evolve", "--config", config, "--alpha", "2"});
  REQUIRE(overridden.code == cli::kOk);
  CHECK(value_after(overridden.out, "mean_n") == doctest::Approx(4.0).epsilon(1e-9));

  io::write_file_atomic(config, R"({"alpah": 3})");
  CHECK(run_cli({"evolve", "--config", config}).code == cli::kValidation);
  io::write_file_atomic(config, "[1, 2]");
  CHECK(run_cli({"evolve", "--config", config}).code == cli::kValidation);
  io::write_file_atomic(config, "{not json");
  CHECK(run_cli({"evolve", "--config", config}).code == cli::kValidation);
}

TEST_CASE("JSON round trips") {
  const auto state = make_coherent(complex(1.0, -0.5), choose_truncation(complex(1.0, -0.5)));
  const auto back = io::fock_state_from_json(io::to_json(state));
  REQUIRE(back.size() == state.size());
  for (std::size_t n = 0; n < state.size(); ++n) CHECK(back[n] == state[n]);
  CHECK(back.normalized() == state.normalized());

  const auto sup = decompose(3.0, HamiltonianSpec{2, 1.0, 0.0}, RationalPhaseTime(1, 3));
  const auto sup_back = io::superposition_from_json(io::to_json(sup));
  REQUIRE(sup_back.terms.size() == sup.terms.size());
  for (std::size_t j = 0; j < sup.terms.size(); ++j) {
    CHECK(sup_back.terms[j].coeff == sup.terms[j].coeff);
    CHECK(sup_back.terms[j].amp == sup.terms[j].amp);
  }

  const HamiltonianSpec spec{6, -1.0, 0.0};
  const auto spec_back = io::hamiltonian_from_json(io::to_json(spec));
  CHECK(spec_back.k == 6);
  CHECK(spec_back.omega_nl == -1.0);

  const auto protocol = preset_protocol("k2-lg", 3.0);
  const auto p_back = io::protocol_from_json(io::to_json(protocol));
  CHECK(p_back.times[1] == protocol.times[1]);
  CHECK(p_back.assignments[1].value_minus == protocol.assignments[1].value_minus);
  CHECK(p_back.alpha0 == protocol.alpha0);

  CHECK_THROWS_AS(io::fock_state_from_json(json::parse(R"({"amplitudes": 3})")), validation_error);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(io::format_double(v)) == v);
  CHECK(io::format_double(1.0) == "1");
}
