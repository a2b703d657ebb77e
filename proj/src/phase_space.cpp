#include "kerrcat/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kerrcat/error.hpp"
#include "kerrcat/quadrature.hpp"

namespace kerrcat {

namespace {

constexpr double kSignQuadratureTolerance = 1e-10;
constexpr double kSignSumTolerance = 1e-8;
constexpr double kClipTolerance = 1e-6;

std::vector<complex> rotated_coefficients(const FockState& state, double theta) {
  std::vector<complex> d(state.amplitudes().begin(), state.amplitudes().end());
  if (theta == 0.0) return d;
  for (std::size_t n = 0; n < d.size(); ++n) d[n] *= std::polar(1.0, -static_cast<double>(n) * theta);
  return d;
}

// sum_n d_n u_n(x), recurrence evaluated inline.
complex eigen_sum(const std::vector<complex>& d, double x) {
  const double u0 = std::exp(-0.5 * x * x) / std::pow(std::numbers::pi, 0.25);
  complex s = d[0] * u0;
  if (d.size() == 1) return s;
  double prev = u0;
  double cur = std::numbers::sqrt2 * x * u0;
  s += d[1] * cur;
  for (std::size_t n = 1; n + 1 < d.size(); ++n) {
    const double nd = static_cast<double>(n);
    const double next = std::sqrt(2.0 / (nd + 1.0)) * x * cur - std::sqrt(nd / (nd + 1.0)) * prev;
    prev = cur;
    cur = next;
    s += d[n + 1] * cur;
  }
  return s;
}

void require_normalized(const FockState& state, const char* what) {
  if (!state.normalized()) throw validation_error(std::string(what) + " requires a normalized state");
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(theta >= 0.0 && theta < 2.0 * std::numbers::pi)) {
    throw validation_error("quadrature angle must lie in [0, 2 pi), got " + std::to_string(theta));
  }
}

void GridSpec::validate() const {
  if (resolution < 2) throw validation_error("grid resolution must be at least 2");
  const auto ok = [](std::pair<double, double> r) {
    return std::isfinite(r.first) && std::isfinite(r.second) && r.second > r.first;
  };
  if (!ok(re_range) || !ok(im_range)) throw validation_error("grid extents must be finite with max > min");
}

double GridSpec::re_step() const { return (re_range.second - re_range.first) / static_cast<double>(resolution - 1); }
double GridSpec::im_step() const { return (im_range.second - im_range.first) / static_cast<double>(resolution - 1); }
double GridSpec::re_at(std::size_t i) const { return re_range.first + static_cast<double>(i) * re_step(); }
double GridSpec::im_at(std::size_t j) const { return im_range.first + static_cast<double>(j) * im_step(); }

GridSpec GridSpec::around(double alpha_magnitude, std::size_t resolution) {
  const double half = std::abs(alpha_magnitude) + 5.0;
  return GridSpec{{-half, half}, {-half, half}, resolution};
}

double PhaseGrid::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.re_step() * grid.im_step();
}

std::vector<double> oscillator_eigenfunctions(double x, std::size_t n_max) {
  std::vector<double> u(n_max + 1);
  u[0] = std::exp(-0.5 * x * x) / std::pow(std::numbers::pi, 0.25);
  if (n_max >= 1) u[1] = std::numbers::sqrt2 * x * u[0];
  for (std::size_t n = 1; n < n_max; ++n) {
    const double nd = static_cast<double>(n);
    u[n + 1] = std::sqrt(2.0 / (nd + 1.0)) * x * u[n] - std::sqrt(nd / (nd + 1.0)) * u[n - 1];
  }
  return u;
}

complex wavefunction_at(const FockState& state, double x, const QuadratureSpec& quad) {
  return eigen_sum(rotated_coefficients(state, quad.theta), x);
}

DensityCurve p_x_curve(const FockState& state, const QuadratureSpec& quad, std::pair<double, double> window,
                       std::size_t resolution) {
  quad.validate();
  if (!(window.second > window.first) || !std::isfinite(window.first) || !std::isfinite(window.second)) {
    throw validation_error("density window must be finite and nonempty");
  }
  if (resolution < 2) throw validation_error("density curve needs at least two samples");

  const auto d = rotated_coefficients(state, quad.theta);
  const double step = (window.second - window.first) / static_cast<double>(resolution - 1);
  DensityCurve curve;
  curve.window = window;
  curve.samples.reserve(resolution);
  std::vector<double> density(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double x = (i + 1 == resolution) ? window.second : window.first + static_cast<double>(i) * step;
    density[i] = std::norm(eigen_sum(d, x));
    curve.samples.emplace_back(x, density[i]);
  }
  curve.integral = quadrature::composite_simpson(density, step);
  if (curve.integral < state.norm_squared() - kClipTolerance) {
    throw numerical_error("density window [" + std::to_string(window.first) + ", " + std::to_string(window.second) +
                          "] clips the state: integral " + std::to_string(curve.integral));
  }
  return curve;
}

double default_half_width(const FockState& state) {
  const double mean = state.mean_photon_number() / state.norm_squared();
  return std::sqrt(2.0 * mean) + 8.0;
}

SignProbabilities sign_probabilities(const FockState& state, const QuadratureSpec& quad) {
  return sign_probabilities(state, quad, default_half_width(state));
}

SignProbabilities sign_probabilities(const FockState& state, const QuadratureSpec& quad, double half_width) {
  require_normalized(state, "sign_probabilities");
  quad.validate();
  if (!(half_width > 0.0)) throw validation_error("integration half-width must be positive");

  const auto d = rotated_coefficients(state, quad.theta);
  const auto density = [&d](double x) { return std::norm(eigen_sum(d, x)); };
  const double tol = 0.5 * kSignQuadratureTolerance;
  SignProbabilities p;
  p.p_minus = quadrature::adaptive_simpson(density, -half_width, 0.0, tol);
  p.p_plus = quadrature::adaptive_simpson(density, 0.0, half_width, tol);
  if (std::abs(p.p_plus + p.p_minus - 1.0) > kSignSumTolerance) {
    throw numerical_error("sign probabilities sum to " + std::to_string(p.p_plus + p.p_minus) +
                          "; integration window too narrow");
  }
  return p;
}

double q_value(const FockState& state, complex beta) {
  const complex beta_conj = std::conj(beta);
  complex t = std::exp(-0.5 * std::norm(beta));
  complex s = t * state[0];
  for (std::size_t n = 1; n < state.size(); ++n) {
    t *= beta_conj / std::sqrt(static_cast<double>(n));
    s += t * state[n];
  }
  return std::norm(s) / std::numbers::pi;
}

PhaseGrid q_function(const FockState& state, const GridSpec& grid) {
  require_normalized(state, "q_function");
  grid.validate();
  PhaseGrid out{grid, std::vector<double>(grid.resolution * grid.resolution)};
  for (std::size_t j = 0; j < grid.resolution; ++j) {
    const double im = grid.im_at(j);
    for (std::size_t i = 0; i < grid.resolution; ++i) {
      out.values[j * grid.resolution + i] = q_value(state, complex(grid.re_at(i), im));
    }
  }
  return out;
}

}  // namespace kerrcat
