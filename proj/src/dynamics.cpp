#include "kerrcat/dynamics.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "kerrcat/error.hpp"

namespace kerrcat {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

__extension__ using wide_int = __int128;

std::int64_t pow_mod(std::int64_t base, int exponent, std::int64_t m) {
  std::int64_t result = 1 % m;
  base = mod(base, m);
  for (int e = exponent; e > 0; e >>= 1) {
    if (e & 1) result = static_cast<std::int64_t>((static_cast<wide_int>(result) * base) % m);
    base = static_cast<std::int64_t>((static_cast<wide_int>(base) * base) % m);
  }
  return result;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || first == s.data() + s.size()) {
    throw validation_error("malformed integer '" + std::string(s) + "' in time");
  }
  return v;
}

}  // namespace

void HamiltonianSpec::validate() const {
  if (k < 2) throw validation_error("nonlinearity order k must be >= 2, got " + std::to_string(k));
  if (omega_nl == 0.0 || !std::isfinite(omega_nl)) throw validation_error("nonlinear rate must be finite and nonzero");
  if (!std::isfinite(frame_freq)) throw validation_error("frame frequency must be finite");
}

RationalPhaseTime::RationalPhaseTime(std::int64_t p, std::int64_t q) {
  if (q <= 0) throw validation_error("time denominator must be positive, got " + std::to_string(q));
  const std::int64_t g = std::gcd(p, q);
  p_ = p / g;
  q_ = q / g;
}

RationalPhaseTime RationalPhaseTime::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return RationalPhaseTime(parse_int(text), 1);
  return RationalPhaseTime(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string RationalPhaseTime::to_string() const { return std::to_string(p_) + "/" + std::to_string(q_); }

RationalPhaseTime operator+(const RationalPhaseTime& a, const RationalPhaseTime& b) {
  return RationalPhaseTime(a.p_ * b.q_ + b.p_ * a.q_, a.q_ * b.q_);
}

RationalPhaseTime operator-(const RationalPhaseTime& a, const RationalPhaseTime& b) {
  return RationalPhaseTime(a.p_ * b.q_ - b.p_ * a.q_, a.q_ * b.q_);
}

std::strong_ordering operator<=>(const RationalPhaseTime& a, const RationalPhaseTime& b) {
  return a.p_ * b.q_ <=> b.p_ * a.q_;
}

complex unit_root(std::int64_t r, std::int64_t m) {
  r = mod(r, m);
  if ((4 * r) % m == 0) {
    switch ((4 * r) / m) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, -1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, 1.0};
    }
  }
  // Fold into (-m/2, m/2] so that unit_root(-r, m) is the exact conjugate.
  const bool upper = 2 * r > m;
  const double folded = static_cast<double>(upper ? m - r : r);
  const double angle = 2.0 * std::numbers::pi * folded / static_cast<double>(m);
  return {std::cos(angle), upper ? std::sin(angle) : -std::sin(angle)};
}

std::vector<std::int64_t> phase_residues(const HamiltonianSpec& spec, const RationalPhaseTime& time,
                                         std::size_t length) {
  spec.validate();
  const std::int64_t modulus = 2 * time.q();
  const std::int64_t numerator = mod(spec.omega_sign() * time.p(), modulus);
  std::vector<std::int64_t> r(length);
  for (std::size_t n = 0; n < length; ++n) {
    const std::int64_t nk = pow_mod(static_cast<std::int64_t>(n), spec.k, modulus);
    r[n] = static_cast<std::int64_t>((static_cast<wide_int>(numerator) * nk) % modulus);
  }
  return r;
}

std::vector<complex> phase_sequence(const HamiltonianSpec& spec, const RationalPhaseTime& time,
                                    std::size_t length) {
  // exp(-i pi r / q) == exp(-2 pi i r / 2q)
  const auto residues = phase_residues(spec, time, length);
  std::vector<complex> g(length);
  for (std::size_t n = 0; n < length; ++n) g[n] = unit_root(residues[n], 2 * time.q());
  return g;
}

std::int64_t phase_period(const HamiltonianSpec& spec, const RationalPhaseTime& time) {
  const std::int64_t full = 2 * time.q();
  const auto r = phase_residues(spec, time, static_cast<std::size_t>(full));
  for (std::int64_t period = 1; period < full; ++period) {
    if (full % period != 0) continue;
    bool periodic = true;
    for (std::int64_t n = 0; n < full && periodic; ++n) periodic = r[n] == r[(n + period) % full];
    if (periodic) return period;
  }
  return full;
}

FockState evolve(const FockState& state, const HamiltonianSpec& spec, const RationalPhaseTime& time) {
  const auto g = phase_sequence(spec, time, state.size());
  std::vector<complex> c(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] *= g[n];
  return FockState(std::move(c), state.normalized());
}

FockState rotate_frame(const FockState& state, double angle) {
  std::vector<complex> c(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] *= std::polar(1.0, -static_cast<double>(n) * angle);
  return FockState(std::move(c), state.normalized());
}

}  // namespace kerrcat
