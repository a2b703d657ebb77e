#pragma once

#include <vector>

#include "kerrcat/dynamics.hpp"
#include "kerrcat/fock_core.hpp"

namespace kerrcat {

inline constexpr double kDefaultPruneThreshold = 1e-12;

struct CoherentTerm {
  complex coeff;
  complex amp;
};

/// sum_j coeff_j |amp_j>.
struct CoherentSuperposition {
  std::vector<CoherentTerm> terms;
  double prune_threshold = kDefaultPruneThreshold;

  bool empty() const { return terms.empty(); }
};

/// Squared norm from the closed-form coherent overlaps, all cross terms kept.
double norm_squared(const CoherentSuperposition& sup);

/// Coefficients rescaled so norm_squared == 1. Empty input stays empty.
CoherentSuperposition renormalized(const CoherentSuperposition& sup);

/// Overlap <a|b> between two superpositions via the closed-form kernel.
complex overlap(const CoherentSuperposition& a, const CoherentSuperposition& b);

/// Exact finite superposition equal to evolve(|alpha0>, spec, time).
///
/// With L the minimal period of the phase sequence g_n, the coefficients
///   f_m = (1/L) sum_{n<L} g_n exp(+2 pi i m n / L)
/// satisfy sum_m f_m exp(-2 pi i m n / L) = g_n, so the evolved state is
/// sum_m f_m |alpha0 exp(-2 pi i m / L)>. The sums are accumulated as
/// integer exponent histograms over the L-th roots of unity; the only
/// rounding happens in the final complex sum. Terms with |f_m| below
/// the prune threshold are dropped.
CoherentSuperposition decompose(complex alpha0, const HamiltonianSpec& spec, const RationalPhaseTime& time,
                                double prune_threshold = kDefaultPruneThreshold);

/// Fock amplitudes of the superposition. The normalized flag is set iff the
/// Fock norm is within 1e-10 of one. Throws if any amplitude breaks the tail
/// condition.
FockState reconstruct(const CoherentSuperposition& sup, const TruncationPolicy& policy);

struct BranchSplit {
  CoherentSuperposition branch_neg;
  CoherentSuperposition branch_pos;
  double prob_neg = 0.0;
  double prob_pos = 0.0;
};

/// Splits terms by the half-plane Re(amp e^{-i angle}) < 0 (negative branch)
/// versus >= 0 (positive branch). Each branch weight is its own squared
/// norm including within-branch interference, normalized over both
/// branches. Throws validation_error for a component within 1e-9 of the
/// dividing line.
BranchSplit split_branches(const CoherentSuperposition& sup, double partition_angle);

}  // namespace kerrcat
