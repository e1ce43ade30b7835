#pragma once

#include "aniso/linalg.hpp"

namespace aniso {

// Each oracle evaluates both sides of one sharp elementary inequality and returns them as
// (lower, upper) with the claim lower <= upper. Out-of-range exponents throw std::domain_error.
struct Ineq {
  double lower = 0.0;
  double upper = 0.0;
  bool holds(double tol = 1e-12) const {
    double scale = std::max({1.0, std::abs(lower), std::abs(upper)});
    return lower <= upper + tol * scale;
  }
  double slack() const { return upper - lower; }
};

// (|x| + |y|)^p <= 2^{(p-1)^+} (|x|^p + |y|^p), p > 0.
Ineq sum_power_split(const Vec& x, const Vec& y, double p);

// (|x| + |y|)^p <= 2^p (|x|^p + |y|^p), p > 0 (coarse form).
Ineq sum_power_split_coarse(const Vec& x, const Vec& y, double p);

// | |x|^p - |y|^p | <= |x - y|^p, p in (0, 1].
Ineq norm_power_diff_sub(const Vec& x, const Vec& y, double p);

// | |x|^p - |y|^p | <= 2^{(p-2)^+} (|x|^{p-1} + |y|^{p-1}) |x - y|, p >= 1.
Ineq norm_power_diff_lip(const Vec& x, const Vec& y, double p);

// | |x|^p x - |y|^p y | <= 2^{(p-1)^+} (|x|^p + |y|^p) |x - y|, p > 0.
Ineq power_map_lip(const Vec& x, const Vec& y, double p);

// (1/2)(|x|^p + |y|^p) |x - y|^2 <= (|x|^p x - |y|^p y) . (x - y), p > 0.
Ineq power_mono_weighted(const Vec& x, const Vec& y, double p);

// |x - y|^{p+2} / 2^{1+(p-1)^+} <= (|x|^p x - |y|^p y) . (x - y), p > 0.
Ineq power_mono_strong(const Vec& x, const Vec& y, double p);

// Scalars, p in (-1, 0), with |0|^p 0 := 0:
// | |x|^p x - |y|^p y | <= 2^{-p} |x - y|^{1+p}.
Ineq scalar_negpower_diff(double x, double y, double p);

// p in (-1, 0), |0|^p 0 := 0:
// (1+p)(|x| + |y|)^p |x - y|^2 <= (|x|^p x - |y|^p y) . (x - y).
Ineq negpower_mono(const Vec& x, const Vec& y, double p);

// |x - y|^alpha / (2^{alpha+1}(alpha+1)) <= \int_0^1 |t x + (1-t) y|^alpha dt, alpha > 0.
// The integral is evaluated by adaptive Simpson to 1e-12.
Ineq segment_average_power(const Vec& x, const Vec& y, double alpha);

// \int_0^1 |t x + (1-t) y|^alpha dt, adaptive Simpson.
double segment_power_integral(const Vec& x, const Vec& y, double alpha, double tol = 1e-12);

}  // namespace aniso
