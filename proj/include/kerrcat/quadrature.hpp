#pragma once

#include <functional>
#include <span>

namespace kerrcat::quadrature {

/// Adaptive Simpson with Richardson correction. The interval is first cut
/// into `panels` equal pieces so that narrow features are not skipped by the
/// initial five-point sample; the absolute tolerance is shared between them.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        int panels = 16, int max_depth = 48);

/// Composite Simpson on equally spaced samples. An even sample count closes
/// with a Simpson 3/8 panel. Needs at least two samples (trapezoid).
double composite_simpson(std::span<const double> values, double spacing);

}  // namespace kerrcat::quadrature
