#include "kerrcat/fock_core.hpp"

#include <cmath>
#include <string>

#include "kerrcat/error.hpp"

namespace kerrcat {

void TruncationPolicy::validate() const {
  if (!(tail_tolerance > 0.0)) {
    throw validation_error("tail tolerance must be positive, got " + std::to_string(tail_tolerance));
  }
}

double poisson_tail(double mean, std::size_t n_max) {
  if (mean <= 0.0) return 0.0;
  const double log_mean = std::log(mean);
  double sum = 0.0;
  for (std::size_t n = n_max + 1;; ++n) {
    const double nd = static_cast<double>(n);
    const double term = std::exp(-mean + nd * log_mean - std::lgamma(nd + 1.0));
    sum += term;
    // Past the mode the terms fall off faster than geometrically.
    if (nd > mean && (term == 0.0 || term < sum * 1e-18)) break;
  }
  return sum;
}

bool tail_satisfied(const TruncationPolicy& policy, complex alpha) {
  return poisson_tail(std::norm(alpha), policy.n_max) < policy.tail_tolerance;
}

TruncationPolicy choose_truncation(complex alpha, double tail_tolerance) {
  TruncationPolicy policy{0, tail_tolerance};
  policy.validate();
  const double mean = std::norm(alpha);
  while (poisson_tail(mean, policy.n_max) >= tail_tolerance) ++policy.n_max;
  return policy;
}

FockState::FockState(std::vector<complex> amplitudes, bool normalized)
    : amplitudes_(std::move(amplitudes)), normalized_(normalized) {
  if (amplitudes_.empty()) throw validation_error("FockState needs at least one amplitude");
  if (normalized_ && std::abs(norm_squared() - 1.0) >= kNormalizedTolerance) {
    throw validation_error("FockState flagged normalized but has squared norm " + std::to_string(norm_squared()));
  }
}

FockState FockState::basis(std::size_t n, std::size_t n_max) {
  if (n > n_max) throw validation_error("basis index above cutoff");
  std::vector<complex> c(n_max + 1);
  c[n] = 1.0;
  return FockState(std::move(c), true);
}

double FockState::norm_squared() const {
  double s = 0.0;
  for (const auto& c : amplitudes_) s += std::norm(c);
  return s;
}

double FockState::mean_photon_number() const {
  double s = 0.0;
  for (std::size_t n = 0; n < amplitudes_.size(); ++n) s += static_cast<double>(n) * std::norm(amplitudes_[n]);
  return s;
}

FockState FockState::renormalized() const {
  const double norm = std::sqrt(norm_squared());
  if (norm == 0.0) throw numerical_error("cannot renormalize a zero state");
  std::vector<complex> c(amplitudes_);
  for (auto& v : c) v /= norm;
  return FockState(std::move(c), true);
}

FockState make_coherent(complex alpha, const TruncationPolicy& policy) {
  policy.validate();
  if (!tail_satisfied(policy, alpha)) {
    throw validation_error("n_max = " + std::to_string(policy.n_max) + " too small for |alpha| = " +
                           std::to_string(std::abs(alpha)) + " at tail tolerance " +
                           std::to_string(policy.tail_tolerance));
  }
  std::vector<complex> c(policy.n_max + 1);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t n = 0; n < policy.n_max; ++n) {
    c[n + 1] = c[n] * alpha / std::sqrt(static_cast<double>(n + 1));
  }
  double norm = 0.0;
  for (const auto& v : c) norm += std::norm(v);
  const bool normalized = std::abs(norm - 1.0) < kNormalizedTolerance;
  return FockState(std::move(c), normalized);
}

complex coherent_overlap(complex a, complex b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

complex inner_product(const FockState& a, const FockState& b) {
  if (a.size() != b.size()) {
    throw validation_error("inner product of states with cutoffs " + std::to_string(a.n_max()) + " and " +
                           std::to_string(b.n_max()));
  }
  complex s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) s += std::conj(a[n]) * b[n];
  return s;
}

double fidelity(const FockState& a, const FockState& b) {
  if (!a.normalized() || !b.normalized()) throw validation_error("fidelity requires normalized states");
  return std::norm(inner_product(a, b));
}

}  // namespace kerrcat
