#include "aniso/constitutive.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace aniso {

void TrilinearForm::validate() const {
  int n = dim();
  if (n == 0) throw std::invalid_argument("TrilinearForm: needs at least one matrix");
  for (const Mat& Ai : A)
    if (Ai.rows() != n || Ai.cols() != n)
      throw std::invalid_argument("TrilinearForm: each A_i must be n x n with n = #matrices");
}

Vec TrilinearForm::apply(const Vec& u, const Vec& v, const Vec& w) const {
  int n = dim();
  if (u.size() != n || v.size() != n || w.size() != n)
    throw std::invalid_argument("TrilinearForm::apply: dimension mismatch");
  Vec out(n);
  for (int i = 0; i < n; ++i) out[i] = u.dot(A[i] * v) * w[i];
  return out;
}

Vec TrilinearForm::gb(const Vec& u) const {
  double nu = u.norm();
  if (nu == 0.0) return Vec::Zero(dim());
  return apply(u, u, u) / nu;
}

Mat TrilinearForm::gb_jacobian(const Vec& u) const {
  int n = dim();
  double nu = u.norm();
  if (nu == 0.0) throw std::domain_error("gb_jacobian: undefined at u = 0");
  Mat J(n, n);
  for (int i = 0; i < n; ++i) {
    double q = u.dot(A[i] * u);
    Vec grad = ((A[i] + A[i].transpose()) * u) * (u[i] / nu);
    grad[i] += q / nu;
    grad -= (q * u[i] / (nu * nu * nu)) * u;
    J.row(i) = grad.transpose();
  }
  return J;
}

double TrilinearForm::lipschitz(double radius) const {
  double ssq = 0.0;
  for (const Mat& Ai : A) {
    double op = operator_norm(Ai);
    ssq += op * op;
  }
  return 3.0 * radius * std::sqrt(ssq);
}

void PowerTerm::validate() const {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw std::invalid_argument("PowerTerm: A must be square and nonempty");
  if (alpha < 0.0) throw std::invalid_argument("PowerTerm: alpha must be >= 0");
  if (kind == WeightKind::Weighted &&
      (K_explicit.rows() != A.rows() || K_explicit.cols() != A.cols()))
    throw std::invalid_argument("PowerTerm: K must match the shape of A");
  if (kind == WeightKind::SqrtWeighted && !is_symmetric(A))
    throw std::invalid_argument("PowerTerm: sqrt-weighted terms need symmetric A");
}

Mat PowerTerm::weight() const {
  switch (kind) {
    case WeightKind::Plain:
      return Mat::Identity(A.rows(), A.cols());
    case WeightKind::Weighted:
      return K_explicit;
    case WeightKind::SqrtWeighted:
      return sqrt_spd(A);
  }
  throw std::logic_error("PowerTerm::weight: bad kind");
}

Vec PowerTerm::eval(const Vec& u) const {
  if (u.size() != A.rows()) throw std::invalid_argument("PowerTerm::eval: dimension mismatch");
  if (alpha == 0.0) return A * u;
  double w = (weight() * u).norm();
  if (w == 0.0) return Vec::Zero(u.size());
  return std::pow(w, alpha) * (A * u);
}

Mat PowerTerm::jacobian(const Vec& u) const {
  if (u.size() != A.rows())
    throw std::invalid_argument("PowerTerm::jacobian: dimension mismatch");
  if (alpha == 0.0) return A;
  Mat K = weight();
  Vec Ku = K * u;
  double w = Ku.norm();
  if (w == 0.0) {
    if (alpha > 1.0) return Mat::Zero(A.rows(), A.cols());
    throw std::domain_error("PowerTerm::jacobian: nonsmooth at |Ku| = 0 for alpha <= 1");
  }
  return std::pow(w, alpha) * A +
         alpha * std::pow(w, alpha - 2.0) * (A * u) * (K.transpose() * Ku).transpose();
}

double PowerTerm::lipschitz(double radius) const {
  double opA = operator_norm(A);
  if (alpha == 0.0) return opA;
  Mat K = weight();
  double opK = operator_norm(K);
  double first = opA * std::pow(opK, alpha) * std::pow(radius, alpha);
  double second;
  if (alpha >= 1.0) {
    second = alpha * opA * std::pow(opK, alpha) * std::pow(radius, alpha);
  } else {
    Eigen::SelfAdjointEigenSolver<Mat> es(K.transpose() * K);
    double smin = std::sqrt(std::max(0.0, es.eigenvalues().minCoeff()));
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    second = alpha * opA * opK * std::pow(smin, alpha - 1.0) * std::pow(radius, alpha);
  }
  return first + second;
}

void ConstitutiveLaw::validate() const {
  if (dim <= 0) throw std::invalid_argument("ConstitutiveLaw: dim must be positive");
  if (terms.empty() && !trilinear)
    throw std::invalid_argument("ConstitutiveLaw: needs at least one term");
  for (const PowerTerm& t : terms) {
    t.validate();
    if (t.A.rows() != dim) throw std::invalid_argument("ConstitutiveLaw: term dimension mismatch");
  }
  if (trilinear) {
    trilinear->validate();
    if (trilinear->dim() != dim)
      throw std::invalid_argument("ConstitutiveLaw: trilinear dimension mismatch");
  }
  if (metadata && metadata->s <= 1.0)
    throw std::invalid_argument("ConstitutiveLaw: metadata s must exceed 1");
}

Vec ConstitutiveLaw::eval(const Vec& u) const {
  Vec out = Vec::Zero(dim);
  for (const PowerTerm& t : terms) out += t.eval(u);
  if (trilinear) out += trilinear->gb(u);
  return out;
}

Mat ConstitutiveLaw::jacobian(const Vec& u) const {
  Mat J = Mat::Zero(dim, dim);
  for (const PowerTerm& t : terms) J += t.jacobian(u);
  if (trilinear) J += trilinear->gb_jacobian(u);
  return J;
}

double ConstitutiveLaw::alpha_max() const {
  double a = 0.0;
  for (const PowerTerm& t : terms) a = std::max(a, t.alpha);
  return a;
}

double ConstitutiveLaw::growth_exponent() const {
  if (metadata) return metadata->s;
  double s = terms.empty() ? 0.0 : alpha_max() + 2.0;
  if (trilinear) s = std::max(s, 3.0);
  return s;
}

double ConstitutiveLaw::lipschitz_bound(double radius) const {
  double L = 0.0;
  for (const PowerTerm& t : terms) L += t.lipschitz(radius);
  if (trilinear) L += trilinear->lipschitz(radius);
  return L;
}

double mstar(const ConstitutiveLaw& law) {
  double m = 0.0;
  for (const PowerTerm& t : law.terms)
    m += operator_norm(t.A) * std::pow(operator_norm(t.weight()), t.alpha);
  if (law.trilinear) {
    double ssq = 0.0;
    for (const Mat& Ai : law.trilinear->A) {
      double op = operator_norm(Ai);
      ssq += op * op;
    }
    m += std::sqrt(ssq);
  }
  return m;
}

Vec invert_pointwise(const ConstitutiveLaw& law, const Vec& g, double tol, int max_iter) {
  law.validate();
  if (g.size() != law.dim) throw std::invalid_argument("invert_pointwise: dimension mismatch");
  double gnorm = g.norm();
  double target = tol * (1.0 + gnorm);
  if (gnorm == 0.0) return Vec::Zero(law.dim);

  // Radial initial guess: pick t so that |F(t g/|g|)| roughly matches |g|.
  Vec dir = g / gnorm;
  double t = 1.0;
  auto radial = [&](double tt) { return law.eval(tt * dir).norm(); };
  for (int i = 0; i < 60 && radial(t) < gnorm; ++i) t *= 2.0;
  for (int i = 0; i < 60 && t > 1e-12 && radial(t) > gnorm; ++i) t *= 0.5;
  Vec u = t * dir;

  Vec r = law.eval(u) - g;
  for (int it = 0; it < max_iter; ++it) {
    if (r.norm() <= target) return u;
    bool stepped = false;
    // Damped Newton.
    try {
      Mat J = law.jacobian(u);
      Vec du = J.fullPivLu().solve(-r);
      if (du.allFinite()) {
        double step = 1.0;
        for (int ls = 0; ls < 40; ++ls, step *= 0.5) {
          Vec cand = u + step * du;
          Vec rc = law.eval(cand) - g;
          if (rc.norm() < r.norm()) {
            u = cand;
            r = rc;
            stepped = true;
            break;
          }
        }
      }
    } catch (const std::domain_error&) {
      // fall through to the bisection step
    }
    if (!stepped) {
      // Monotone bisection along d = -r: psi(t) = (F(u + t d) - g) . d is nondecreasing
      // and negative at t = 0, so a sign change brackets the 1-D root.
      Vec d = -r / r.norm();
      auto psi = [&](double tt) { return (law.eval(u + tt * d) - g).dot(d); };
      double hi = 1.0;
      int k = 0;
      for (; k < 80 && psi(hi) < 0.0; ++k) hi *= 2.0;
      if (k == 80) throw std::runtime_error("invert_pointwise: failed to bracket");
      double lo = 0.0;
      for (int b = 0; b < 80; ++b) {
        double mid = 0.5 * (lo + hi);
        (psi(mid) < 0.0 ? lo : hi) = mid;
      }
      Vec cand = u + 0.5 * (lo + hi) * d;
      Vec rc = law.eval(cand) - g;
      if (rc.norm() >= r.norm() * (1.0 - 1e-15))
        throw std::runtime_error("invert_pointwise: stalled");
      u = cand;
      r = rc;
    }
  }
  if (r.norm() <= target) return u;
  throw std::runtime_error("invert_pointwise: no convergence");
}

}  // namespace aniso
