#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kerrcat/fock_core.hpp"

namespace kerrcat {

/// H = frame_freq n + omega_nl n^k, evolved in the interaction picture.
///
/// frame_freq is recorded for provenance only: every observable here is
/// either insensitive to the harmonic rotation or absorbs it. The sign of
/// omega_nl sets the direction of evolution. Hamiltonians written as
/// -(Omega_K / 2) n^2 (the usual circuit-QED Kerr convention) correspond to
/// omega_nl = -Omega_K / 2.
struct HamiltonianSpec {
  int k = 2;
  double omega_nl = 1.0;
  double frame_freq = 0.0;

  void validate() const;
  int omega_sign() const { return omega_nl < 0 ? -1 : 1; }
};

/// Time t = (p/q) pi / |Omega|, kept as a reduced fraction.
class RationalPhaseTime {
 public:
  RationalPhaseTime() = default;
  RationalPhaseTime(std::int64_t p, std::int64_t q);

  /// Parses "p/q" or a bare integer "p".
  static RationalPhaseTime parse(std::string_view text);

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  double value() const { return static_cast<double>(p_) / static_cast<double>(q_); }
  std::string to_string() const;

  friend RationalPhaseTime operator+(const RationalPhaseTime& a, const RationalPhaseTime& b);
  friend RationalPhaseTime operator-(const RationalPhaseTime& a, const RationalPhaseTime& b);
  friend bool operator==(const RationalPhaseTime& a, const RationalPhaseTime& b) = default;
  friend std::strong_ordering operator<=>(const RationalPhaseTime& a, const RationalPhaseTime& b);

 private:
  std::int64_t p_ = 0;
  std::int64_t q_ = 1;
};

/// exp(-2 pi i r / m) with exact values at quarter turns.
complex unit_root(std::int64_t r, std::int64_t m);

/// Integer residues r_n in [0, 2q) with g_n = exp(-i pi r_n / q) the phase
/// picked up by |n> at the given time. Computed as sign * p * n^k mod 2q.
std::vector<std::int64_t> phase_residues(const HamiltonianSpec& spec, const RationalPhaseTime& time,
                                         std::size_t length);

/// g_n = exp(-i pi (p/q) n^k), n = 0..length-1. Periodic with period
/// dividing 2q.
std::vector<complex> phase_sequence(const HamiltonianSpec& spec, const RationalPhaseTime& time,
                                    std::size_t length);

/// Smallest L dividing 2q with g_{n+L} = g_n for all n.
std::int64_t phase_period(const HamiltonianSpec& spec, const RationalPhaseTime& time);

/// c_n <- c_n g_n. Exact: p = 0 returns the input unchanged.
FockState evolve(const FockState& state, const HamiltonianSpec& spec, const RationalPhaseTime& time);

/// Harmonic rotation c_n <- c_n exp(-i n angle); maps |alpha> to |alpha e^{-i angle}>.
FockState rotate_frame(const FockState& state, double angle);

}  // namespace kerrcat
