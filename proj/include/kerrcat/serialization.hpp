#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "kerrcat/cat_decomposition.hpp"
#include "kerrcat/dynamics.hpp"
#include "kerrcat/fock_core.hpp"
#include "kerrcat/leggett_garg.hpp"
#include "kerrcat/phase_space.hpp"

namespace kerrcat::io {

using json = nlohmann::json;

// {"n_max": int, "re": [...], "im": [...], "normalized": bool}
json to_json(const FockState& state);
FockState fock_state_from_json(const json& j);

// {"terms": [{"coeff_re", "coeff_im", "amp_re", "amp_im"}, ...]}
json to_json(const CoherentSuperposition& sup);
CoherentSuperposition superposition_from_json(const json& j);

// {"k", "omega_sign", "omega_magnitude", "frame_freq"}
json to_json(const HamiltonianSpec& spec);
HamiltonianSpec hamiltonian_from_json(const json& j);

json to_json(const LgProtocol& protocol);
LgProtocol protocol_from_json(const json& j);

/// Report fields plus a "protocol" echo.
json to_json(const LgReport& report, const LgProtocol& protocol);

/// Grid extents and resolution, written next to the Q CSV.
json grid_sidecar(const GridSpec& grid);

/// 17 significant digits, locale independent.
std::string format_double(double v);

void write_density_csv(std::ostream& os, const DensityCurve& curve);
void write_q_csv(std::ostream& os, const PhaseGrid& grid);

std::string_view lg_csv_header();
std::string lg_csv_row(std::string_view preset, double alpha, const LgReport& report);

/// Writes through a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace kerrcat::io
