#include "kerrcat/quadrature.hpp"

#include <cmath>

#include "kerrcat/error.hpp"

namespace kerrcat::quadrature {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol, int panels,
                        int max_depth) {
  if (!(abs_tol > 0.0)) throw validation_error("quadrature tolerance must be positive");
  if (panels < 1) throw validation_error("quadrature needs at least one panel");
  if (a == b) return 0.0;
  const double width = (b - a) / panels;
  const double panel_tol = abs_tol / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == panels) ? b : a + (i + 1) * width;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fmid = f(mid);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += simpson_step(f, lo, flo, hi, fhi, mid, fmid, whole, panel_tol, max_depth);
  }
  return total;
}

double composite_simpson(std::span<const double> values, double spacing) {
  const std::size_t n = values.size();
  if (n < 2) throw validation_error("composite Simpson needs at least two samples");
  if (n == 2) return 0.5 * spacing * (values[0] + values[1]);
  if (n == 3) return spacing / 3.0 * (values[0] + 4.0 * values[1] + values[2]);

  // Odd count: plain Simpson. Even count: Simpson on the first n-3 intervals,
  // 3/8 rule on the last three.
  const std::size_t simpson_end = (n % 2 == 1) ? n - 1 : n - 4;
  double s = 0.0;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    s += values[i] + 4.0 * values[i + 1] + values[i + 2];
  }
  double total = spacing / 3.0 * s;
  if (n % 2 == 0) {
    const std::size_t j = n - 4;
    total += 3.0 * spacing / 8.0 * (values[j] + 3.0 * values[j + 1] + 3.0 * values[j + 2] + values[j + 3]);
  }
  return total;
}

}  // namespace kerrcat::quadrature
