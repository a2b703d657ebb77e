#include "kerrcat/cat_decomposition.hpp"

#include <cmath>
#include <string>

#include "kerrcat/error.hpp"

namespace kerrcat {

namespace {

constexpr double kPartitionMargin = 1e-9;

}  // namespace

complex overlap(const CoherentSuperposition& a, const CoherentSuperposition& b) {
  complex s = 0.0;
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) s += std::conj(ta.coeff) * tb.coeff * coherent_overlap(ta.amp, tb.amp);
  }
  return s;
}

double norm_squared(const CoherentSuperposition& sup) { return overlap(sup, sup).real(); }

CoherentSuperposition renormalized(const CoherentSuperposition& sup) {
  if (sup.empty()) return sup;
  const double n2 = norm_squared(sup);
  if (!(n2 > 0.0)) throw numerical_error("superposition has zero norm");
  CoherentSuperposition out = sup;
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& t : out.terms) t.coeff *= scale;
  return out;
}

CoherentSuperposition decompose(complex alpha0, const HamiltonianSpec& spec, const RationalPhaseTime& time,
                                double prune_threshold) {
  spec.validate();
  const std::int64_t modulus = 2 * time.q();
  const std::int64_t period = phase_period(spec, time);
  const std::int64_t stride = modulus / period;
  const auto residues = phase_residues(spec, time, static_cast<std::size_t>(period));

  CoherentSuperposition out;
  out.prune_threshold = prune_threshold;
  std::vector<std::int64_t> histogram(static_cast<std::size_t>(modulus));
  for (std::int64_t m = 0; m < period; ++m) {
    // g_n e^{+2 pi i m n / L} = exp(-2 pi i (r_n - m n M / L) / M)
    std::fill(histogram.begin(), histogram.end(), 0);
    for (std::int64_t n = 0; n < period; ++n) {
      std::int64_t e = (residues[n] - (m * n % period) * stride) % modulus;
      if (e < 0) e += modulus;
      ++histogram[e];
    }
    complex f = 0.0;
    for (std::int64_t e = 0; e < modulus; ++e) {
      if (histogram[e] != 0) f += static_cast<double>(histogram[e]) * unit_root(e, modulus);
    }
    f /= static_cast<double>(period);
    if (std::abs(f) < prune_threshold) continue;
    out.terms.push_back({f, alpha0 * unit_root(m, period)});
  }
  return out;
}

FockState reconstruct(const CoherentSuperposition& sup, const TruncationPolicy& policy) {
  std::vector<complex> c(policy.n_max + 1);
  for (const auto& term : sup.terms) {
    const FockState component = make_coherent(term.amp, policy);
    for (std::size_t n = 0; n < c.size(); ++n) c[n] += term.coeff * component[n];
  }
  double n2 = 0.0;
  for (const auto& v : c) n2 += std::norm(v);
  const bool normalized = std::abs(n2 - 1.0) < kNormalizedTolerance;
  return FockState(std::move(c), normalized);
}

BranchSplit split_branches(const CoherentSuperposition& sup, double partition_angle) {
  const complex rotation = std::polar(1.0, -partition_angle);
  CoherentSuperposition neg;
  CoherentSuperposition pos;
  neg.prune_threshold = pos.prune_threshold = sup.prune_threshold;
  for (const auto& term : sup.terms) {
    const double side = (term.amp * rotation).real();
    if (std::abs(side) < kPartitionMargin) {
      throw validation_error("component at amplitude (" + std::to_string(term.amp.real()) + ", " +
                             std::to_string(term.amp.imag()) + ") lies on the partition line");
    }
    (side < 0.0 ? neg : pos).terms.push_back(term);
  }
  const double w_neg = norm_squared(neg);
  const double w_pos = norm_squared(pos);
  const double total = w_neg + w_pos;
  if (!(total > 0.0)) throw numerical_error("both branches are empty");

  BranchSplit split;
  split.branch_neg = renormalized(neg);
  split.branch_pos = renormalized(pos);
  split.prob_neg = w_neg / total;
  split.prob_pos = w_pos / total;
  return split;
}

}  // namespace kerrcat
