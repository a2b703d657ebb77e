#include "kerrcat/leggett_garg.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "kerrcat/error.hpp"

namespace kerrcat {

namespace {

void require_real_positive(complex alpha0) {
  if (alpha0.imag() != 0.0 || !(alpha0.real() > 0.0)) {
    throw validation_error("preparation-anchored correlators need a real positive alpha0 so that S1 = +1");
  }
}

FockState normalized_or_rescaled(FockState state) {
  return state.normalized() ? state : state.renormalized();
}

}  // namespace

void OutcomeAssignment::validate() const {
  if (!(std::abs(value_plus) <= 1.0) || !(std::abs(value_minus) <= 1.0)) {
    throw validation_error("outcome values must satisfy |value| <= 1");
  }
}

void LgProtocol::validate() const {
  spec.validate();
  quad.validate();
  if (!std::isfinite(alpha0.real()) || !std::isfinite(alpha0.imag())) throw validation_error("alpha0 must be finite");
  if (!std::isfinite(partition_angle)) throw validation_error("partition angle must be finite");
  if (!(tail_tolerance > 0.0)) throw validation_error("tail tolerance must be positive");
  if (times[0] != RationalPhaseTime{}) throw validation_error("t1 must be 0");
  if (!(times[0] < times[1] && times[1] < times[2])) throw validation_error("protocol times must satisfy t1 < t2 < t3");
  for (const auto& a : assignments) a.validate();
  if (assignments[0].value_plus != 1.0 || assignments[0].value_minus != -1.0) {
    throw validation_error("the t1 assignment must be exactly (+1, -1)");
  }
}

TruncationPolicy LgProtocol::truncation() const { return choose_truncation(alpha0, tail_tolerance); }

void HiddenVariableTriple::validate() const {
  if (std::abs(lambda1) != 1.0) throw validation_error("lambda1 must be +1 or -1");
  if (!(std::abs(lambda2) <= 1.0) || !(std::abs(lambda3) <= 1.0)) {
    throw validation_error("lambda2 and lambda3 must satisfy |lambda| <= 1");
  }
}

double outcome_expectation(const FockState& state, const OutcomeAssignment& assignment, const QuadratureSpec& quad) {
  assignment.validate();
  const auto p = sign_probabilities(state, quad);
  return assignment.value_plus * p.p_plus + assignment.value_minus * p.p_minus;
}

double correlator_with_preparation(const LgProtocol& protocol, LgSlot which) {
  protocol.validate();
  require_real_positive(protocol.alpha0);
  const std::size_t slot = which == LgSlot::t2 ? 1 : 2;
  const FockState prepared = make_coherent(protocol.alpha0, protocol.truncation());
  const FockState evolved = evolve(prepared, protocol.spec, protocol.times[slot]);
  const double s1 = protocol.assignments[0].value_plus;
  return s1 * outcome_expectation(evolved, protocol.assignments[slot], protocol.quad);
}

ReprepareResult correlator_reprepare(const LgProtocol& protocol) {
  protocol.validate();
  const TruncationPolicy policy = protocol.truncation();
  const auto split = split_branches(decompose(protocol.alpha0, protocol.spec, protocol.times[1]),
                                    protocol.partition_angle);
  const RationalPhaseTime interval = protocol.times[2] - protocol.times[1];
  const OutcomeAssignment& s2 = protocol.assignments[1];
  const OutcomeAssignment& s3 = protocol.assignments[2];

  const auto future_s3 = [&](const CoherentSuperposition& branch, double prob) {
    if (prob == 0.0 || branch.empty()) return 0.0;
    const FockState reprepared = normalized_or_rescaled(reconstruct(branch, policy));
    return outcome_expectation(evolve(reprepared, protocol.spec, interval), s3, protocol.quad);
  };

  ReprepareResult r;
  r.prob_neg = split.prob_neg;
  r.prob_pos = split.prob_pos;
  r.s3_neg = future_s3(split.branch_neg, split.prob_neg);
  r.s3_pos = future_s3(split.branch_pos, split.prob_pos);
  r.conditional_neg = s2.for_sign(true) * r.s3_neg;
  r.conditional_pos = s2.for_sign(false) * r.s3_pos;
  r.c23 = r.prob_neg * r.conditional_neg + r.prob_pos * r.conditional_pos;
  return r;
}

namespace {

LgReport assemble(double c12, double c13, const ReprepareResult& r) {
  LgReport report;
  report.c12 = c12;
  report.c13 = c13;
  report.c23 = r.c23;
  report.prob_neg = r.prob_neg;
  report.prob_pos = r.prob_pos;
  report.conditional_neg = r.conditional_neg;
  report.conditional_pos = r.conditional_pos;
  report.lg_value = report.c12 + report.c23 - report.c13;
  report.violated = report.lg_value > 1.0;
  return report;
}

}  // namespace

LgReport lg_value(const LgProtocol& protocol) {
  const double c12 = correlator_with_preparation(protocol, LgSlot::t2);
  const double c13 = correlator_with_preparation(protocol, LgSlot::t3);
  return assemble(c12, c13, correlator_reprepare(protocol));
}

LgReport mixture_lg_value(const LgProtocol& protocol) {
  const double c12 = correlator_with_preparation(protocol, LgSlot::t2);
  const auto r = correlator_reprepare(protocol);
  const double s1 = protocol.assignments[0].value_plus;
  const double c13 = s1 * (r.prob_neg * r.s3_neg + r.prob_pos * r.s3_pos);
  return assemble(c12, c13, r);
}

double hidden_variable_functional(const HiddenVariableTriple& triple) {
  triple.validate();
  return triple.lambda1 * triple.lambda2 + triple.lambda2 * triple.lambda3 - triple.lambda1 * triple.lambda3;
}

double classical_max_bruteforce(double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw validation_error("grid step must lie in (0, 0.1], got " + std::to_string(grid_step));
  }
  // lambda = a / n with a in {-n, -n+2, ..., n}; F n^2 is an integer.
  const auto n = static_cast<std::int64_t>(std::ceil(2.0 / grid_step - 1e-9));
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::int64_t s1 : {-1, 1}) {
    for (std::int64_t j2 = 0; j2 <= n; ++j2) {
      const std::int64_t a2 = 2 * j2 - n;
      for (std::int64_t j3 = 0; j3 <= n; ++j3) {
        const std::int64_t a3 = 2 * j3 - n;
        best = std::max(best, s1 * n * a2 + a2 * a3 - s1 * n * a3);
      }
    }
  }
  return static_cast<double>(best) / static_cast<double>(n * n);
}

double cosine_oracle(double t1, double t2, double t3) {
  return std::cos(2.0 * (t2 - t1)) + std::cos(2.0 * (t3 - t2)) - std::cos(2.0 * (t3 - t1));
}

}  // namespace kerrcat
