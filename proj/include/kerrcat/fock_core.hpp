#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace kerrcat {

using complex = std::complex<double>;

inline constexpr double kDefaultTailTolerance = 1e-12;
inline constexpr double kNormalizedTolerance = 1e-10;

/// Basis cutoff plus the admissible probability mass above it.
struct TruncationPolicy {
  std::size_t n_max = 0;
  double tail_tolerance = kDefaultTailTolerance;

  void validate() const;
};

/// Probability mass of a Poisson(mean) distribution strictly above n_max.
double poisson_tail(double mean, std::size_t n_max);

/// True iff the coherent state |alpha> loses less than the policy's tail
/// tolerance when cut at n_max.
bool tail_satisfied(const TruncationPolicy& policy, complex alpha);

/// Smallest n_max whose Poisson tail for |alpha|^2 is below tail_tolerance.
TruncationPolicy choose_truncation(complex alpha, double tail_tolerance = kDefaultTailTolerance);

/// A pure state in the number basis, amplitudes c_0..c_{n_max}.
///
/// The normalized flag is a checked claim: constructing a state with the
/// flag set and |sum |c_n|^2 - 1| >= 1e-10 throws.
class FockState {
 public:
  FockState(std::vector<complex> amplitudes, bool normalized);

  static FockState basis(std::size_t n, std::size_t n_max);

  std::span<const complex> amplitudes() const { return amplitudes_; }
  complex operator[](std::size_t n) const { return amplitudes_[n]; }
  std::size_t size() const { return amplitudes_.size(); }
  std::size_t n_max() const { return amplitudes_.size() - 1; }
  bool normalized() const { return normalized_; }

  double norm_squared() const;
  double mean_photon_number() const;

  /// Rescaled to unit norm, flag set. Throws on a zero vector.
  FockState renormalized() const;

 private:
  std::vector<complex> amplitudes_;
  bool normalized_;
};

/// Coherent state |alpha> by the recurrence c_{n+1} = c_n alpha / sqrt(n+1).
/// Throws validation_error if the policy's tail condition fails for alpha.
FockState make_coherent(complex alpha, const TruncationPolicy& policy);

/// Closed-form overlap <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b).
complex coherent_overlap(complex a, complex b);

/// sum_n conj(a_n) b_n. Throws on length mismatch.
complex inner_product(const FockState& a, const FockState& b);

/// |<a|b>|^2 for two normalized states.
double fidelity(const FockState& a, const FockState& b);

}  // namespace kerrcat
