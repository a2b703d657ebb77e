#pragma once

#include <array>

#include "kerrcat/cat_decomposition.hpp"
#include "kerrcat/dynamics.hpp"
#include "kerrcat/fock_core.hpp"
#include "kerrcat/phase_space.hpp"

namespace kerrcat {

/// Values reported for a quadrature outcome x >= 0 (plus) and x < 0 (minus).
struct OutcomeAssignment {
  double value_plus = 1.0;
  double value_minus = -1.0;

  void validate() const;
  double for_sign(bool negative) const { return negative ? value_minus : value_plus; }
};

enum class LgSlot { t2, t3 };

/// Three-time protocol. times[0] must be zero and assignments[0] must be
/// exactly (+1, -1); the prepared state |alpha0> with alpha0 real positive
/// then has S1 = +1.
struct LgProtocol {
  HamiltonianSpec spec;
  complex alpha0{3.0, 0.0};
  std::array<RationalPhaseTime, 3> times;
  std::array<OutcomeAssignment, 3> assignments;
  double partition_angle = 0.0;
  QuadratureSpec quad;
  double tail_tolerance = kDefaultTailTolerance;

  void validate() const;
  TruncationPolicy truncation() const;
};

struct LgReport {
  double c12 = 0.0;
  double c23 = 0.0;
  double c13 = 0.0;
  double prob_neg = 0.0;
  double prob_pos = 0.0;
  double conditional_neg = 0.0;  // <S2 S3> given the negative branch
  double conditional_pos = 0.0;  // <S2 S3> given the positive branch
  double lg_value = 0.0;
  bool violated = false;
};

/// lambda1 in {-1, +1}; |lambda2|, |lambda3| <= 1.
struct HiddenVariableTriple {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda3 = 1.0;

  void validate() const;
};

/// value_plus P(x >= 0) + value_minus P(x < 0).
double outcome_expectation(const FockState& state, const OutcomeAssignment& assignment, const QuadratureSpec& quad);

/// <S1 S_j> for j = 2, 3, with S1 fixed by preparation and no intermediate
/// measurement. Throws validation_error unless alpha0 is real and positive.
double correlator_with_preparation(const LgProtocol& protocol, LgSlot which);

struct ReprepareResult {
  double c23 = 0.0;
  double conditional_neg = 0.0;
  double conditional_pos = 0.0;
  double prob_neg = 0.0;
  double prob_pos = 0.0;
  // <S3> of each branch after evolving by t3 - t2; used by the mixture model.
  double s3_neg = 0.0;
  double s3_pos = 0.0;
};

/// Measure-and-re-prepare <S2 S3>: decompose the state at t2, split into
/// branches, re-prepare each branch and evolve it by t3 - t2, then weight
/// S2(branch) <S3>_branch by the branch probability. An empty branch has
/// probability zero and contributes nothing.
ReprepareResult correlator_reprepare(const LgProtocol& protocol);

/// c12 + c23 - c13 for the coherent evolution.
LgReport lg_value(const LgProtocol& protocol);

/// Same pipeline for the classical mixture of the t2 branches: c13 becomes
/// sum_b prob_b <S3>_b.
LgReport mixture_lg_value(const LgProtocol& protocol);

/// lambda1 lambda2 + lambda2 lambda3 - lambda1 lambda3.
double hidden_variable_functional(const HiddenVariableTriple& triple);

/// Maximum of the functional over lambda1 = +-1 and lambda2, lambda3 on a
/// uniform grid over [-1, 1]. The grid has ceil(2 / grid_step) intervals so
/// its spacing never exceeds grid_step; evaluation is in exact integer
/// arithmetic on the grid indices. Requires 0 < grid_step <= 0.1.
double classical_max_bruteforce(double grid_step);

/// cos 2(t2 - t1) + cos 2(t3 - t2) - cos 2(t3 - t1).
double cosine_oracle(double t1, double t2, double t3);

}  // namespace kerrcat
