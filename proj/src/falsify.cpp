#include "aniso/falsify.hpp"

#include <cmath>
#include <random>

namespace aniso {
namespace {

using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

double u01(std::mt19937_64& gen) {
  // uniform in [0,1) from raw bits; identical across standard libraries
  return (gen() >> 11) * 0x1.0p-53;
}

Vec random_vec(std::mt19937_64& gen, int n, double half) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = (2.0 * u01(gen) - 1.0) * half;
  return v;
}

// Negativity threshold well above round-off of the product evaluation.
double violation_threshold(const ConstitutiveLaw& law, const Vec& u, const Vec& v) {
  double fmag = law.eval(u).norm() + law.eval(v).norm();
  return -1e-12 * (fmag * (u - v).norm() + 1.0);
}

// Extended-precision evaluation of F for exact sharp-constant ratios.
VecL eval_ld(const ConstitutiveLaw& law, const Vec& ud) {
  VecL u = ud.cast<long double>();
  VecL out = VecL::Zero(law.dim);
  for (const PowerTerm& t : law.terms) {
    MatL A = t.A.cast<long double>();
    if (t.alpha == 0.0) {
      out += A * u;
      continue;
    }
    MatL K = t.weight().cast<long double>();
    long double w = (K * u).norm();
    if (w > 0.0L) out += powl(w, (long double)t.alpha) * (A * u);
  }
  if (law.trilinear) {
    long double nu = u.norm();
    if (nu > 0.0L) {
      int n = law.dim;
      VecL g(n);
      for (int i = 0; i < n; ++i) {
        MatL Ai = law.trilinear->A[i].cast<long double>();
        g[i] = (u.dot(Ai * u)) * u[i] / nu;
      }
      out += g;
    }
  }
  return out;
}

long double ratio_ld(const ConstitutiveLaw& law, const Vec& u, const Vec& v, double order) {
  VecL d = (u - v).cast<long double>();
  long double dn = d.norm();
  if (dn == 0.0L) return std::numeric_limits<long double>::infinity();
  long double prod = (eval_ld(law, u) - eval_ld(law, v)).dot(d);
  return prod / powl(dn, (long double)order);
}

void polish(const ConstitutiveLaw& law, Vec& u, Vec& v, double& value, double box) {
  double step = 0.1 * box;
  for (int it = 0; it < 50; ++it) {
    bool improved = false;
    for (int side = 0; side < 2; ++side) {
      Vec& x = side == 0 ? u : v;
      for (int i = 0; i < x.size(); ++i) {
        for (double sgn : {+1.0, -1.0}) {
          double saved = x[i];
          x[i] = saved + sgn * step;
          double cand = mono_product(law, u, v);
          if (cand < value) {
            value = cand;
            improved = true;
            break;
          }
          x[i] = saved;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
}

}  // namespace

double mono_product(const ConstitutiveLaw& law, const Vec& u, const Vec& v) {
  return (law.eval(u) - law.eval(v)).dot(u - v);
}

std::optional<Violation> search_violation(const ConstitutiveLaw& law, const SearchConfig& cfg) {
  law.validate();
  std::mt19937_64 gen(cfg.seed);
  int n = law.dim;
  std::optional<Violation> best;
  for (long i = 0; i < cfg.samples; ++i) {
    Vec u = random_vec(gen, n, cfg.box_halfwidth);
    Vec v;
    switch (i % 5) {
      case 1:  // antipodal
        v = -u;
        break;
      case 2:  // near-collinear
        v = u * (0.5 + u01(gen)) + 1e-3 * random_vec(gen, n, cfg.box_halfwidth);
        break;
      case 3: {  // axis-aligned pair
        int k = static_cast<int>(gen() % n);
        u = Vec::Zero(n);
        u[k] = (2.0 * u01(gen) - 1.0) * cfg.box_halfwidth;
        v = Vec::Zero(n);
        v[k] = (2.0 * u01(gen) - 1.0) * cfg.box_halfwidth;
        break;
      }
      case 4:  // ray-scaled copy of the previous draw
        if (cfg.include_ray_scaling) {
          double t = 1.0 + 9.0 * u01(gen);
          v = random_vec(gen, n, cfg.box_halfwidth);
          u *= t;
          v *= t;
          break;
        }
        [[fallthrough]];
      default:
        v = random_vec(gen, n, cfg.box_halfwidth);
    }
    double value = mono_product(law, u, v);
    if (value < violation_threshold(law, u, v)) {
      polish(law, u, v, value, cfg.box_halfwidth);
      if (!best || value < best->value) best = Violation{u, v, value, cfg.seed};
    }
  }
  return best;
}

double empirical_power_constant(const ConstitutiveLaw& law, double order,
                                const SearchConfig& cfg) {
  law.validate();
  std::mt19937_64 gen(cfg.seed);
  int n = law.dim;
  long double best = std::numeric_limits<long double>::infinity();
  for (long i = 0; i < cfg.samples; ++i) {
    Vec u = random_vec(gen, n, cfg.box_halfwidth);
    Vec v = (i % 3 == 0) ? Vec(-u) : random_vec(gen, n, cfg.box_halfwidth);
    if ((u - v).norm() < 1e-12) continue;
    long double r = ratio_ld(law, u, v, order);
    if (r < best) best = r;
  }
  return static_cast<double>(best);
}

std::optional<Violation> amplified_violation(const TrilinearForm& B, const Mat& A0,
                                             const Vec& ustar, const Vec& vstar, double t_max,
                                             double* t_found) {
  B.validate();
  ConstitutiveLaw law;
  law.dim = B.dim();
  PowerTerm darcy;
  darcy.alpha = 0.0;
  darcy.A = A0;
  law.terms.push_back(darcy);
  law.trilinear = B;
  const int steps = 20000;
  for (int i = 1; i <= steps; ++i) {
    double t = t_max * i / steps;
    Vec u = t * ustar, v = t * vstar;
    double value = mono_product(law, u, v);
    if (value < violation_threshold(law, u, v)) {
      if (t_found) *t_found = t;
      return Violation{u, v, value, 0};
    }
  }
  return std::nullopt;
}

}  // namespace aniso
