#include "aniso/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace aniso {
namespace {

constexpr double kStrictTol = 1e-12;

double scale_of(std::initializer_list<double> vals) {
  double s = 1.0;
  for (double v : vals) s = std::max(s, std::abs(v));
  return s;
}

void require_positive(double a, double b, double c, double d) {
  if (a <= 0 || b <= 0 || c <= 0 || d <= 0)
    throw std::invalid_argument("diagonal trilinear certificate: coefficients must be positive");
}

// Classifies the two-sided inequality lo <= x <= hi given slack values
// (slack >= 0 means satisfied). Returns 2 strict, 1 boundary, 0 failed.
int classify(double min_slack, double tol) {
  if (min_slack > tol) return 2;
  if (min_slack >= -tol) return 1;
  return 0;
}

Certificate quadratic_range_verdict(const std::string& id, double a, double d, double bc,
                                    double lo, double hi, double margin) {
  // Condition: (bc - q/2)^2 <= 4ad for all q in [lo - margin, hi + margin].
  // The left side is convex in q, so only the endpoints matter.
  double wlo = lo - margin, whi = hi + margin;
  double worst = std::max(std::pow(bc - wlo / 2.0, 2), std::pow(bc - whi / 2.0, 2));
  double bound = 4.0 * a * d;
  double slack = bound - worst;
  double tol = kStrictTol * scale_of({bound, worst});
  Certificate cert;
  cert.theorem_id = id;
  cert.witness["range_lo"] = lo;
  cert.witness["range_hi"] = hi;
  cert.witness["range_margin"] = margin;
  cert.witness["worst_lhs"] = worst;
  cert.witness["bound_4ad"] = bound;
  cert.witness["margin"] = slack;
  int cls = classify(slack, tol);
  if (cls == 2) {
    cert.verdict = Verdict::PowerMonotone;
    cert.order = 3.0;
  } else if (cls == 1) {
    cert.verdict = Verdict::Monotone;
  } else {
    cert.verdict = Verdict::Inconclusive;
  }
  return cert;
}

// golden-section minimization of g over [lo, hi]
double golden_min(const std::function<double(double)>& g, double lo, double hi, int iters,
                  double* argmin) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = g(x2);
    }
  }
  double x = 0.5 * (a + b);
  if (argmin) *argmin = x;
  return g(x);
}

// Minimizes g(lambda) over (0, hi] from several seed brackets; g is a max of convex
// functions minus a linear one, but seeding guards against surprises.
double scan_lambda(const std::function<double(double)>& g, double hi, double* best_lambda) {
  const int seeds = 64;
  double best = std::numeric_limits<double>::infinity();
  double best_x = hi;
  for (int s = 0; s < seeds; ++s) {
    double lo = hi * (s) / seeds + 1e-12 * hi;
    double up = hi * (s + 1.0) / seeds;
    double x;
    double val = golden_min(g, lo, up, 200 / 8, &x);
    if (val < best) {
      best = val;
      best_x = x;
    }
  }
  // polish around the best seed
  double lo = std::max(1e-12 * hi, best_x - hi / seeds);
  double up = std::min(hi, best_x + hi / seeds);
  double x;
  double val = golden_min(g, lo, up, 200, &x);
  if (val < best) {
    best = val;
    best_x = x;
  }
  if (best_lambda) *best_lambda = best_x;
  return best;
}

Certificate lambda_feasibility(const std::string& id, const std::function<double(double)>& opdist,
                               double op_scale, double threshold_divisor, double order,
                               double power_denom) {
  // Searches lambda > 0 with opdist(lambda) <= lambda / threshold_divisor.
  auto g = [&](double lam) { return opdist(lam) - lam / threshold_divisor; };
  double lam;
  double gmin = scan_lambda(g, 8.0 * op_scale, &lam);
  double tol = kStrictTol * scale_of({op_scale, lam});
  Certificate cert;
  cert.theorem_id = id;
  cert.witness["lambda"] = lam;
  cert.witness["margin"] = -gmin;
  if (gmin < -tol) {
    cert.verdict = Verdict::PowerMonotone;
    cert.order = order;
    // constructive constant: (lambda - divisor * ||M||) / power_denom
    double c = lam - threshold_divisor * opdist(lam);
    cert.constant = c / power_denom;
  } else if (gmin <= tol) {
    cert.verdict = Verdict::Monotone;
  } else {
    cert.verdict = Verdict::Inconclusive;
  }
  return cert;
}

bool diag2x2(const TrilinearForm& B, double& a, double& b, double& c, double& d) {
  if (B.dim() != 2) return false;
  if (!is_diagonal(B.A[0]) || !is_diagonal(B.A[1])) return false;
  a = B.A[0](0, 0);
  b = B.A[0](1, 1);
  c = B.A[1](0, 0);
  d = B.A[1](1, 1);
  return a > 0 && b > 0 && c > 0 && d > 0;
}

bool invertible(const Mat& K) {
  Eigen::SelfAdjointEigenSolver<Mat> es(K.transpose() * K);
  double smin = std::sqrt(std::max(0.0, es.eigenvalues().minCoeff()));
  return smin > 1e-12 * std::max(1.0, operator_norm(K));
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Monotone:
      return "Monotone";
    case Verdict::PowerMonotone:
      return "PowerMonotone";
    case Verdict::NotMonotone:
      return "NotMonotone";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

SphereRange range_sum_squares(double a, double b, double c, double d) {
  require_positive(a, b, c, d);
  SphereRange r;
  r.lo = std::min(a + c, b + d);
  r.hi = std::max(a + c, b + d);
  r.method = "analytic-diagonal";
  return r;
}

SphereRange range_pm_squared(double a, double b, double c, double d, int sign, int samples) {
  require_positive(a, b, c, d);
  if (sign != 1 && sign != -1) throw std::invalid_argument("range_pm_squared: sign must be +-1");
  // g(theta) = (sqrt(f1) + sign sqrt(f2))^2, f1 = a cos^2 + b sin^2, f2 = c cos^2 + d sin^2.
  // Everything is pi/2-periodic up to the symmetry theta -> pi/2 - theta of {f1,f2} pairs,
  // so sampling [0, pi/2] covers the range.
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const double half_pi = std::asin(1.0);
  for (int i = 0; i <= samples; ++i) {
    double th = half_pi * i / samples;
    double cs = std::cos(th), sn = std::sin(th);
    double f1 = a * cs * cs + b * sn * sn;
    double f2 = c * cs * cs + d * sn * sn;
    double g = std::pow(std::sqrt(f1) + sign * std::sqrt(f2), 2);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  // |d sqrt(f1)/d theta| <= |a-b| / (2 sqrt(min(a,b))), same for f2; and
  // |g'| <= 2(sqrt(f1)+sqrt(f2)) (|d sqrt f1| + |d sqrt f2|).
  double s1 = std::abs(a - b) / (2.0 * std::sqrt(std::min(a, b)));
  double s2 = std::abs(c - d) / (2.0 * std::sqrt(std::min(c, d)));
  double gmax = std::sqrt(std::max(a, b)) + std::sqrt(std::max(c, d));
  double lipschitz = 2.0 * gmax * (s1 + s2);
  SphereRange r;
  r.lo = lo;
  r.hi = hi;
  r.method = "sampled-with-margin";
  r.samples = samples;
  r.margin = lipschitz * (half_pi / samples) / 2.0;
  return r;
}

Certificate certify_thm_sumrange(double a, double b, double c, double d) {
  require_positive(a, b, c, d);
  SphereRange r = range_sum_squares(a, b, c, d);
  Certificate cert = quadratic_range_verdict("sum-squares-range", a, d, b + c, r.lo, r.hi, 0.0);
  return cert;
}

Certificate certify_cor_minmax(double a, double b, double c, double d) {
  require_positive(a, b, c, d);
  double rad = 2.0 * std::sqrt(a * d);
  double s1 = 2.0 * (b + c + rad) - std::max(a + c, b + d);
  double s2 = std::min(a + c, b + d) - 2.0 * (b + c - rad);
  double slack = std::min(s1, s2);
  double tol = kStrictTol * scale_of({a + c, b + d, b + c, rad});
  Certificate cert;
  cert.theorem_id = "minmax-closed-form";
  cert.witness["slack_upper"] = s1;
  cert.witness["slack_lower"] = s2;
  int cls = classify(slack, tol);
  if (cls == 2) {
    cert.verdict = Verdict::PowerMonotone;
    cert.order = 3.0;
  } else if (cls == 1) {
    cert.verdict = Verdict::Monotone;
  }
  return cert;
}

Certificate certify_thm_pmrange(double a, double b, double c, double d) {
  require_positive(a, b, c, d);
  Certificate best;
  best.theorem_id = "pm-norm-range";
  for (int sign : {+1, -1}) {
    SphereRange r = range_pm_squared(a, b, c, d, sign);
    Certificate cand =
        quadratic_range_verdict("pm-norm-range", a, d, b + c, r.lo, r.hi, r.margin);
    cand.witness["sign"] = sign;
    bool better = (cand.verdict == Verdict::PowerMonotone && best.verdict != Verdict::PowerMonotone) ||
                  (cand.verdict == Verdict::Monotone && best.verdict == Verdict::Inconclusive);
    if (best.witness.empty() || better) best = cand;
    if (best.verdict == Verdict::PowerMonotone) break;
  }
  return best;
}

Certificate certify_cor_crossed(double a, double b, double c, double d) {
  require_positive(a, b, c, d);
  double rad = 2.0 * std::sqrt(a * d);
  double lhs1 = std::max(a + c, b + d) + 2.0 * std::sqrt(std::max(a, b)) * std::sqrt(std::max(c, d));
  double rhs1 = 2.0 * (b + c + rad);
  double lhs2 = 2.0 * (b + c - rad);
  double rhs2 = std::min(a + c, b + d) + 2.0 * std::sqrt(std::min(a, b)) * std::sqrt(std::min(c, d));
  double slack = std::min(rhs1 - lhs1, rhs2 - lhs2);
  double tol = kStrictTol * scale_of({lhs1, rhs1, lhs2, rhs2});
  Certificate cert;
  cert.theorem_id = "crossed-closed-form";
  cert.witness["lhs_upper"] = lhs1;
  cert.witness["rhs_upper"] = rhs1;
  cert.witness["lhs_lower"] = lhs2;
  cert.witness["rhs_lower"] = rhs2;
  cert.witness["margin"] = slack;
  int cls = classify(slack, tol);
  if (cls == 2) {
    cert.verdict = Verdict::PowerMonotone;
    cert.order = 3.0;
  } else if (cls == 1) {
    cert.verdict = Verdict::Monotone;
  }
  return cert;
}

Certificate certify_cor_ratio(double a, double b, double c, double d) {
  require_positive(a, b, c, d);
  double M = std::max(a, d), m = std::min(a, d);
  double ratio = M / m;
  double rad = 2.0 * std::sqrt(a * d);
  double lo = M / 2.0 - rad;  // lower bound on b+c
  double s1 = (b + c) - lo;
  double s2 = rad - (b + c);
  double slack = std::min(s1, s2);
  double tol = kStrictTol * scale_of({b + c, rad, M});
  Certificate cert;
  cert.theorem_id = "ratio-regime";
  cert.witness["Mm_ratio"] = ratio;
  cert.witness["slack_lower"] = s1;
  cert.witness["slack_upper"] = s2;
  double rtol = 1e-9 * 64.0;
  int regime = ratio <= 16.0 + rtol        ? 0
               : ratio < 64.0 - rtol       ? 1
               : std::abs(ratio - 64.0) <= rtol ? 2
                                           : 3;
  cert.witness["regime"] = regime;
  const char* names[] = {"M/m<=16", "16<M/m<64", "M/m=64", "M/m>64"};
  cert.note = names[regime];
  int cls = classify(slack, tol);
  if (regime == 3) {
    cert.verdict = Verdict::Inconclusive;  // condition impossible in this regime
  } else if (cls == 2 && regime != 2) {
    cert.verdict = Verdict::PowerMonotone;
    cert.order = 3.0;
  } else if (cls >= 1) {
    cert.verdict = Verdict::Monotone;
  }
  return cert;
}

Certificate certify_identity_perturbation(const TrilinearForm& B) {
  B.validate();
  double op_scale = 0.0;
  for (const Mat& Ai : B.A) op_scale = std::max(op_scale, operator_norm(Ai));
  int n = B.dim();
  auto opdist = [&](double lam) {
    double v = 0.0;
    Mat I = Mat::Identity(n, n);
    for (const Mat& Ai : B.A) v = std::max(v, operator_norm(Ai - lam * I));
    return v;
  };
  // order 3 with constructive constant (lambda - 4 eps0)/8
  return lambda_feasibility("identity-perturbation-trilinear", opdist, op_scale, 4.0, 3.0, 8.0);
}

Certificate certify_trace_test(const TrilinearForm& B) {
  B.validate();
  int n = B.dim();
  double tr = 0.0, fro2 = 0.0;
  for (const Mat& Ai : B.A) {
    tr += Ai.trace();
    fro2 += Ai.squaredNorm();
  }
  double ratio = tr / std::sqrt(fro2);
  // The lambda-quadratic sum_i |A_i - lambda I|^2 <= lambda^2/16 has lambda^2
  // coefficient n^2 - 1/16 (n matrices, |I|^2 = n each), hence this threshold.
  double threshold = std::sqrt(static_cast<double>(n) * n - 1.0 / 16.0);
  Certificate cert;
  cert.theorem_id = "trace-threshold-trilinear";
  cert.witness["ratio"] = ratio;
  cert.witness["threshold"] = threshold;
  double tol = kStrictTol * scale_of({ratio, threshold});
  int cls = classify(ratio - threshold, tol);
  if (cls == 2) {
    cert.verdict = Verdict::PowerMonotone;
    cert.order = 3.0;
  } else if (cls == 1) {
    cert.verdict = Verdict::Monotone;
  }
  return cert;
}

Certificate check_necessary(const PowerTerm& t, std::optional<double> claimed_order) {
  t.validate();
  Certificate cert;
  cert.theorem_id = "necessary-conditions";
  double lmin = lambda_min_sym_part(t.A);
  cert.witness["sym_part_min_eig"] = lmin;
  Mat K = t.weight();
  bool Kinv = invertible(K);
  cert.witness["K_invertible"] = Kinv ? 1.0 : 0.0;
  if (Kinv && lmin < -kStrictTol * std::max(1.0, operator_norm(t.A))) {
    cert.verdict = Verdict::NotMonotone;
    cert.note = "quadratic form takes negative values";
    return cert;
  }
  if (claimed_order && t.alpha > 0.0 &&
      std::abs(*claimed_order - (t.alpha + 2.0)) > kStrictTol * (t.alpha + 2.0)) {
    cert.verdict = Verdict::NotMonotone;
    cert.order = *claimed_order;
    cert.note = "power order must equal alpha + 2";
    return cert;
  }
  cert.verdict = Verdict::Inconclusive;
  return cert;
}

Certificate certify_coercive_ratio(const PowerTerm& t) {
  t.validate();
  Certificate cert;
  cert.theorem_id = "coercive-ratio";
  double k2 = lambda_min_sym_part(t.A);
  cert.witness["kappa0_sq"] = k2;
  if (k2 <= 0.0) return cert;
  double denom = std::pow(2.0, t.alpha + 1.0) * (t.alpha + 1.0);
  if (t.alpha == 0.0) {
    cert.verdict = Verdict::PowerMonotone;
    cert.order = 2.0;
    cert.constant = k2;
    return cert;
  }
  if (t.kind == WeightKind::SqrtWeighted) {
    // symmetric positive definite A: (alpha+2)-monotone with an explicit constant
    cert.verdict = Verdict::PowerMonotone;
    cert.order = t.alpha + 2.0;
    cert.constant = std::pow(std::sqrt(k2), t.alpha + 2.0) / denom;
    return cert;
  }
  if (t.kind != WeightKind::Plain) return cert;
  double op = operator_norm(t.A);
  double ratio = k2 / op;
  cert.witness["alpha_limit"] = ratio;
  double tol = kStrictTol * std::max(1.0, ratio);
  if (t.alpha < ratio - tol) {
    cert.verdict = Verdict::PowerMonotone;
    cert.order = t.alpha + 2.0;
    cert.constant = (k2 - t.alpha * op) / denom;
  } else if (t.alpha <= ratio + tol) {
    cert.verdict = Verdict::Monotone;
  }
  return cert;
}

Certificate certify_identity_perturbation(const PowerTerm& t) {
  t.validate();
  if (t.kind != WeightKind::Plain)
    throw std::invalid_argument("identity-perturbation certificate applies to plain terms only");
  int n = static_cast<int>(t.A.rows());
  Mat I = Mat::Identity(n, n);
  auto opdist = [&](double lam) { return operator_norm(t.A - lam * I); };
  double denom = std::pow(2.0, t.alpha + 1.0) * (t.alpha + 1.0);
  Certificate cert = lambda_feasibility("identity-perturbation", opdist, operator_norm(t.A),
                                        1.0 + t.alpha, t.alpha + 2.0, denom);
  return cert;
}

Certificate certify_trace_test(const PowerTerm& t) {
  t.validate();
  if (t.kind != WeightKind::Plain)
    throw std::invalid_argument("trace-threshold certificate applies to plain terms only");
  int n = static_cast<int>(t.A.rows());
  double ratio = t.A.trace() / t.A.norm();
  double threshold = std::sqrt(n - 1.0 / std::pow(1.0 + t.alpha, 2));
  Certificate cert;
  cert.theorem_id = "trace-threshold";
  cert.witness["ratio"] = ratio;
  cert.witness["threshold"] = threshold;
  double tol = kStrictTol * scale_of({ratio, threshold});
  int cls = classify(ratio - threshold, tol);
  if (cls == 2) {
    cert.verdict = Verdict::PowerMonotone;
    cert.order = t.alpha + 2.0;
  } else if (cls == 1) {
    cert.verdict = Verdict::Monotone;
  }
  return cert;
}

namespace {

// Best certificate for a trilinear part alone.
Certificate best_trilinear(const TrilinearForm& B) {
  double a, b, c, d;
  std::vector<Certificate> cands;
  if (diag2x2(B, a, b, c, d)) {
    cands.push_back(certify_cor_crossed(a, b, c, d));
    cands.push_back(certify_cor_minmax(a, b, c, d));
    cands.push_back(certify_thm_sumrange(a, b, c, d));
    cands.push_back(certify_cor_ratio(a, b, c, d));
    cands.push_back(certify_thm_pmrange(a, b, c, d));
  }
  cands.push_back(certify_identity_perturbation(B));
  cands.push_back(certify_trace_test(B));
  Certificate best = cands.front();
  for (const Certificate& cand : cands) {
    bool better =
        (cand.verdict == Verdict::PowerMonotone &&
         (best.verdict != Verdict::PowerMonotone ||
          (cand.constant && (!best.constant || *cand.constant > *best.constant)))) ||
        (cand.verdict == Verdict::Monotone && best.verdict == Verdict::Inconclusive);
    if (better) best = cand;
  }
  return best;
}

// Best certificate for one power term.
Certificate best_power_term(const PowerTerm& t) {
  std::vector<Certificate> cands;
  cands.push_back(certify_coercive_ratio(t));
  if (t.kind == WeightKind::Plain && t.alpha > 0.0) {
    cands.push_back(certify_identity_perturbation(t));
    cands.push_back(certify_trace_test(t));
  }
  Certificate best = cands.front();
  for (const Certificate& cand : cands) {
    bool better =
        (cand.verdict == Verdict::PowerMonotone &&
         (best.verdict != Verdict::PowerMonotone ||
          (cand.constant && (!best.constant || *cand.constant > *best.constant)))) ||
        (cand.verdict == Verdict::Monotone && best.verdict == Verdict::Inconclusive);
    if (better) best = cand;
  }
  return best;
}

}  // namespace

Certificate certify_composite(const ConstitutiveLaw& law) {
  law.validate();
  Certificate cert;
  cert.theorem_id = "composite";

  // A failed necessary condition on any term sinks the whole law.
  for (const PowerTerm& t : law.terms) {
    Certificate nec = check_necessary(t);
    if (nec.verdict == Verdict::NotMonotone) {
      cert.verdict = Verdict::NotMonotone;
      cert.note = "power term fails a necessary condition";
      cert.witness = nec.witness;
      return cert;
    }
  }

  std::optional<Certificate> gb_cert;
  if (law.trilinear) gb_cert = best_trilinear(*law.trilinear);

  if (law.pure_trilinear()) {
    Certificate g = *gb_cert;
    g.theorem_id = "composite";
    g.note = "trilinear-only; via " + gb_cert->theorem_id;
    g.witness["beta"] = 1.0;
    return g;
  }

  std::vector<Certificate> term_certs;
  for (const PowerTerm& t : law.terms) term_certs.push_back(best_power_term(t));

  // index of the dominating (largest-alpha) term
  size_t top = 0;
  for (size_t i = 1; i < law.terms.size(); ++i)
    if (law.terms[i].alpha > law.terms[top].alpha) top = i;
  double alpha_N = law.terms[top].alpha;

  bool all_monotone = true;
  for (const Certificate& tc : term_certs) all_monotone &= tc.certified();

  if (!law.trilinear) {
    // power-sum law: lower terms monotone, top term power monotone of order alpha_N + 2
    if (law.terms.size() == 1 && alpha_N == 0.0) {
      // linear law: 2-monotone when coercive
      if (term_certs[0].power()) {
        cert = term_certs[0];
        cert.theorem_id = "composite";
        cert.note = "linear law; via coercive-ratio";
      }
      return cert;
    }
    if (all_monotone && term_certs[top].power() && alpha_N > 0.0) {
      cert.verdict = Verdict::PowerMonotone;
      cert.order = alpha_N + 2.0;
      cert.constant = term_certs[top].constant;
      cert.witness["beta"] = alpha_N;
      cert.note = "power sum; top term via " + term_certs[top].theorem_id;
    }
    return cert;
  }

  // mixed law: everything monotone, plus a power-monotone anchor per the alpha_N regime
  bool gb_ok = gb_cert->certified();
  if (!(all_monotone && gb_ok)) return cert;
  double beta = std::max(alpha_N, 1.0);
  bool gb_power = gb_cert->power();
  bool top_power = term_certs[top].power() && alpha_N > 0.0;
  std::string subcase;
  std::optional<double> constant;
  if (alpha_N < 1.0) {
    if (!gb_power) return cert;
    subcase = "trilinear-anchored";
    constant = gb_cert->constant;
  } else if (alpha_N > 1.0) {
    if (!top_power) return cert;
    subcase = "top-term-anchored";
    constant = term_certs[top].constant;
  } else {
    if (!gb_power && !top_power) return cert;
    subcase = "either-anchored";
    // conservative: take the larger available constructive constant
    if (gb_power && gb_cert->constant) constant = gb_cert->constant;
    if (top_power && term_certs[top].constant &&
        (!constant || *term_certs[top].constant > *constant))
      constant = term_certs[top].constant;
  }
  cert.verdict = Verdict::PowerMonotone;
  cert.order = beta + 2.0;
  cert.constant = constant;
  cert.witness["beta"] = beta;
  cert.note = "mixed law; " + subcase;
  return cert;
}

std::vector<Certificate> certify_all(const ConstitutiveLaw& law) {
  law.validate();
  std::vector<Certificate> out;
  if (law.trilinear) {
    double a, b, c, d;
    if (diag2x2(*law.trilinear, a, b, c, d)) {
      out.push_back(certify_thm_sumrange(a, b, c, d));
      out.push_back(certify_cor_minmax(a, b, c, d));
      out.push_back(certify_thm_pmrange(a, b, c, d));
      out.push_back(certify_cor_crossed(a, b, c, d));
      out.push_back(certify_cor_ratio(a, b, c, d));
    }
    out.push_back(certify_identity_perturbation(*law.trilinear));
    out.push_back(certify_trace_test(*law.trilinear));
  }
  for (const PowerTerm& t : law.terms) {
    out.push_back(check_necessary(t));
    out.push_back(certify_coercive_ratio(t));
    if (t.kind == WeightKind::Plain && t.alpha > 0.0) {
      out.push_back(certify_identity_perturbation(t));
      out.push_back(certify_trace_test(t));
    }
  }
  out.push_back(certify_composite(law));
  return out;
}

void apply_certificate(ConstitutiveLaw& law, const Certificate& cert) {
  if (!cert.power() || !cert.order || *cert.order <= 2.0) return;
  LawMetadata meta;
  meta.s = *cert.order;
  meta.mono_order = cert.order;
  meta.mono_constant = cert.constant;
  law.metadata = meta;
}

}  // namespace aniso
