#pragma once

#include "aniso/constitutive.hpp"

#include <cstdint>
#include <optional>

namespace aniso {

// A concrete monotonicity violation: (F(u) - F(v)) . (u - v) = value < 0.
struct Violation {
  Vec u;
  Vec v;
  double value = 0.0;
  std::uint64_t seed = 0;
};

struct SearchConfig {
  long samples = 100000;
  double box_halfwidth = 10.0;
  std::uint64_t seed = 0;
  bool include_ray_scaling = true;
};

// (F(u) - F(v)) . (u - v).
double mono_product(const ConstitutiveLaw& law, const Vec& u, const Vec& v);

// Randomized + structured search for the most negative monotonicity product.
// Deterministic for a given config. Returns the deepest violation found, if any.
std::optional<Violation> search_violation(const ConstitutiveLaw& law, const SearchConfig& cfg);

// Sampled minimum of ((F(u)-F(v)).(u-v)) / |u-v|^order over distinct pairs, antipodal
// pairs included. Accumulated in extended precision so sharp constants (e.g. 1/2 for
// F(u)=|u|u at order 3) are hit exactly. Negative result disproves order-monotonicity
// on the box.
double empirical_power_constant(const ConstitutiveLaw& law, double order,
                                const SearchConfig& cfg);

// Ray scaling u = t u*, v = t v* against an added linear term A0: finds t <= t_max with
// (A0(u-v) + G_B(u) - G_B(v)) . (u-v) < 0. On success *t_found (if given) holds the t.
std::optional<Violation> amplified_violation(const TrilinearForm& B, const Mat& A0,
                                             const Vec& ustar, const Vec& vstar, double t_max,
                                             double* t_found = nullptr);

}  // namespace aniso
