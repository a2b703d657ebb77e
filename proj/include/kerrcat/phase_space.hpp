#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kerrcat/fock_core.hpp"

namespace kerrcat {

/// Measured quadrature x_theta = (e^{-i theta} a + e^{i theta} a^dag) / sqrt(2),
/// i.e. the phase-space projection onto the direction e^{i theta}. A coherent
/// state |alpha> has mean sqrt(2) Re(alpha e^{-i theta}) and variance 1/2.
struct QuadratureSpec {
  double theta = 0.0;

  void validate() const;
};

struct DensityCurve {
  std::vector<std::pair<double, double>> samples;  // (x, P(x))
  std::pair<double, double> window;
  double integral = 0.0;
};

/// Rectangular sampling region for Q. Nodes include both endpoints.
struct GridSpec {
  std::pair<double, double> re_range{-8.0, 8.0};
  std::pair<double, double> im_range{-8.0, 8.0};
  std::size_t resolution = 161;

  void validate() const;
  double re_step() const;
  double im_step() const;
  double re_at(std::size_t i) const;
  double im_at(std::size_t j) const;

  /// Square grid of half-width |alpha0| + 5.
  static GridSpec around(double alpha_magnitude, std::size_t resolution = 161);
};

/// Husimi Q sampled on a GridSpec. values[j * resolution + i] holds
/// Q(re_at(i) + i im_at(j)): row-major with the imaginary axis as the row.
struct PhaseGrid {
  GridSpec grid;
  std::vector<double> values;

  double at(std::size_t i_re, std::size_t j_im) const { return values[j_im * grid.resolution + i_re]; }
  /// Riemann sum times cell area.
  double integral() const;
};

/// Real oscillator eigenfunctions u_0..u_{n_max} at x, by the three-term
/// recurrence u_{n+1} = sqrt(2/(n+1)) x u_n - sqrt(n/(n+1)) u_{n-1}.
std::vector<double> oscillator_eigenfunctions(double x, std::size_t n_max);

/// <x_theta|psi> = sum_n c_n e^{-i n theta} u_n(x).
complex wavefunction_at(const FockState& state, double x, const QuadratureSpec& quad);

/// |psi(x)|^2 on `resolution` uniform samples of the window, integrated by
/// composite Simpson. Throws numerical_error if the integral falls more than
/// 1e-6 below the state's squared norm (window clips the density).
DensityCurve p_x_curve(const FockState& state, const QuadratureSpec& quad, std::pair<double, double> window,
                       std::size_t resolution);

struct SignProbabilities {
  double p_plus = 0.0;   // x >= 0
  double p_minus = 0.0;  // x < 0
};

/// Half-width of the integration window: sqrt(2 <n>) + 8. For states built
/// from coherent components of common modulus |alpha0| this is
/// sqrt(2)|alpha0| + 8.
double default_half_width(const FockState& state);

/// Integrals of P(x) over x >= 0 and x < 0 by adaptive Simpson (absolute
/// tolerance 1e-10). Requires a normalized state; throws numerical_error if
/// the two halves do not sum to one within 1e-8.
SignProbabilities sign_probabilities(const FockState& state, const QuadratureSpec& quad);
SignProbabilities sign_probabilities(const FockState& state, const QuadratureSpec& quad, double half_width);

/// Q(beta) = |<beta|psi>|^2 / pi.
double q_value(const FockState& state, complex beta);

/// Q on every node of the grid. Requires a normalized state.
PhaseGrid q_function(const FockState& state, const GridSpec& grid);

}  // namespace kerrcat
