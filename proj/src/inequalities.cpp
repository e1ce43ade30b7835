#include "aniso/inequalities.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace aniso {
namespace {

double pos(double t) { return t > 0.0 ? t : 0.0; }

// |z|^p z with the |0|^p 0 := 0 convention (needed for p < 0).
double signed_power(double z, double p) {
  if (z == 0.0) return 0.0;
  return std::pow(std::abs(z), p) * z;
}

Vec signed_power(const Vec& z, double p) {
  double n = z.norm();
  if (n == 0.0) return Vec::Zero(z.size());
  return std::pow(n, p) * z;
}

void check_same_dim(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("inequality oracle: dimension mismatch");
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double segment_power_integral(const Vec& x, const Vec& y, double alpha, double tol) {
  check_same_dim(x, y);
  auto f = [&](double t) { return std::pow((t * x + (1.0 - t) * y).norm(), alpha); };
  double fa = f(0.0), fm = f(0.5), fb = f(1.0);
  double whole = (fa + 4.0 * fm + fb) / 6.0;
  return adaptive_simpson(f, 0.0, 1.0, fa, fm, fb, whole, tol, 48);
}

Ineq sum_power_split(const Vec& x, const Vec& y, double p) {
  check_same_dim(x, y);
  if (p <= 0.0) throw std::domain_error("sum_power_split: requires p > 0");
  double s = x.norm() + y.norm();
  return {std::pow(s, p),
          std::pow(2.0, pos(p - 1.0)) * (std::pow(x.norm(), p) + std::pow(y.norm(), p))};
}

Ineq sum_power_split_coarse(const Vec& x, const Vec& y, double p) {
  check_same_dim(x, y);
  if (p <= 0.0) throw std::domain_error("sum_power_split_coarse: requires p > 0");
  double s = x.norm() + y.norm();
  return {std::pow(s, p), std::pow(2.0, p) * (std::pow(x.norm(), p) + std::pow(y.norm(), p))};
}

Ineq norm_power_diff_sub(const Vec& x, const Vec& y, double p) {
  check_same_dim(x, y);
  if (p <= 0.0 || p > 1.0) throw std::domain_error("norm_power_diff_sub: requires p in (0,1]");
  return {std::abs(std::pow(x.norm(), p) - std::pow(y.norm(), p)), std::pow((x - y).norm(), p)};
}

Ineq norm_power_diff_lip(const Vec& x, const Vec& y, double p) {
  check_same_dim(x, y);
  if (p < 1.0) throw std::domain_error("norm_power_diff_lip: requires p >= 1");
  double rhs = std::pow(2.0, pos(p - 2.0)) *
               (std::pow(x.norm(), p - 1.0) + std::pow(y.norm(), p - 1.0)) * (x - y).norm();
  return {std::abs(std::pow(x.norm(), p) - std::pow(y.norm(), p)), rhs};
}

Ineq power_map_lip(const Vec& x, const Vec& y, double p) {
  check_same_dim(x, y);
  if (p <= 0.0) throw std::domain_error("power_map_lip: requires p > 0");
  double lhs = (signed_power(x, p) - signed_power(y, p)).norm();
  double rhs = std::pow(2.0, pos(p - 1.0)) * (std::pow(x.norm(), p) + std::pow(y.norm(), p)) *
               (x - y).norm();
  return {lhs, rhs};
}

Ineq power_mono_weighted(const Vec& x, const Vec& y, double p) {
  check_same_dim(x, y);
  if (p <= 0.0) throw std::domain_error("power_mono_weighted: requires p > 0");
  double product = (signed_power(x, p) - signed_power(y, p)).dot(x - y);
  double lower = 0.5 * (std::pow(x.norm(), p) + std::pow(y.norm(), p)) * (x - y).squaredNorm();
  return {lower, product};
}

Ineq power_mono_strong(const Vec& x, const Vec& y, double p) {
  check_same_dim(x, y);
  if (p <= 0.0) throw std::domain_error("power_mono_strong: requires p > 0");
  double product = (signed_power(x, p) - signed_power(y, p)).dot(x - y);
  double lower = std::pow((x - y).norm(), p + 2.0) / std::pow(2.0, 1.0 + pos(p - 1.0));
  return {lower, product};
}

Ineq scalar_negpower_diff(double x, double y, double p) {
  if (p <= -1.0 || p >= 0.0) throw std::domain_error("scalar_negpower_diff: requires p in (-1,0)");
  double lhs = std::abs(signed_power(x, p) - signed_power(y, p));
  return {lhs, std::pow(2.0, -p) * std::pow(std::abs(x - y), 1.0 + p)};
}

Ineq negpower_mono(const Vec& x, const Vec& y, double p) {
  check_same_dim(x, y);
  if (p <= -1.0 || p >= 0.0) throw std::domain_error("negpower_mono: requires p in (-1,0)");
  double product = (signed_power(x, p) - signed_power(y, p)).dot(x - y);
  double s = x.norm() + y.norm();
  double lower = s == 0.0 ? 0.0 : (1.0 + p) * std::pow(s, p) * (x - y).squaredNorm();
  return {lower, product};
}

Ineq segment_average_power(const Vec& x, const Vec& y, double alpha) {
  check_same_dim(x, y);
  if (alpha <= 0.0) throw std::domain_error("segment_average_power: requires alpha > 0");
  double lower =
      std::pow((x - y).norm(), alpha) / (std::pow(2.0, alpha + 1.0) * (alpha + 1.0));
  return {lower, segment_power_integral(x, y, alpha)};
}

}  // namespace aniso
