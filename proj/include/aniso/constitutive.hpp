#pragma once

#include "aniso/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aniso {

// B(u,v,w)_i = (u^T A_i v) w_i and the induced map G_B(u) = B(u,u,u)/|u| (0 at 0).
struct TrilinearForm {
  std::vector<Mat> A;  // n matrices, each n x n

  int dim() const { return static_cast<int>(A.size()); }
  void validate() const;  // throws std::invalid_argument on shape mismatch

  Vec apply(const Vec& u, const Vec& v, const Vec& w) const;
  Vec gb(const Vec& u) const;
  Mat gb_jacobian(const Vec& u) const;  // undefined at u = 0; throws there
  // Lipschitz constant of G_B on the closed ball of given radius.
  double lipschitz(double radius) const;
};

enum class WeightKind { Plain, Weighted, SqrtWeighted };

// F(u) = |K u|^alpha A u. Plain: K = I. Weighted: explicit K. SqrtWeighted: K = A^{1/2}
// (requires symmetric positive semidefinite A). alpha = 0 gives the linear term A u.
struct PowerTerm {
  double alpha = 0.0;
  Mat A;
  WeightKind kind = WeightKind::Plain;
  Mat K_explicit;  // used when kind == Weighted

  void validate() const;
  Mat weight() const;  // the effective K
  Vec eval(const Vec& u) const;
  Mat jacobian(const Vec& u) const;  // throws at u = 0 when 0 < alpha < 2
  double lipschitz(double radius) const;
};

struct LawMetadata {
  double s = 0.0;  // growth exponent; conjugate r = s/(s-1)
  std::optional<double> mono_order;
  std::optional<double> mono_constant;
  double r() const { return s / (s - 1.0); }
};

// Sum of power terms plus an optional trilinear part.
struct ConstitutiveLaw {
  int dim = 0;
  std::vector<PowerTerm> terms;
  std::optional<TrilinearForm> trilinear;
  std::optional<LawMetadata> metadata;

  void validate() const;
  Vec eval(const Vec& u) const;
  Mat jacobian(const Vec& u) const;
  double alpha_max() const;           // max exponent over power terms (0 if none)
  double growth_exponent() const;     // metadata s if set, else derived from structure
  double lipschitz_bound(double radius) const;
  bool has_trilinear() const { return trilinear.has_value(); }
  bool pure_trilinear() const { return trilinear.has_value() && terms.empty(); }
};

// Scale factor M* controlling |F(u)| <= M* (|u|^{s-1} + |u|) style growth bounds:
// sum of ||A||_op ||K||_op^alpha over power terms plus sqrt(sum ||A_i||_op^2) for the
// trilinear part.
double mstar(const ConstitutiveLaw& law);

// Solve F(u) = g by damped Newton with a monotone line bisection fallback.
// Throws std::runtime_error if |F(u) - g| <= tol * (1 + |g|) is not reached.
Vec invert_pointwise(const ConstitutiveLaw& law, const Vec& g, double tol = 1e-12,
                     int max_iter = 200);

}  // namespace aniso
