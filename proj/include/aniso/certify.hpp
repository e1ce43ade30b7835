#pragma once

#include "aniso/constitutive.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aniso {

enum class Verdict { Monotone, PowerMonotone, NotMonotone, Inconclusive };

std::string to_string(Verdict v);

// Outcome of one sufficient/necessary monotonicity condition. PowerMonotone carries the
// order (> 2) and, when the condition yields one, a constructive constant C with
// (F(u)-F(v)).(u-v) >= C|u-v|^order. NotMonotone is only ever produced by a necessary
// condition failing or by an explicit violation; a failed sufficient condition is
// Inconclusive.
struct Certificate {
  std::string theorem_id;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<double> order;
  std::optional<double> constant;
  std::map<std::string, double> witness;
  std::string note;

  bool certified() const {
    return verdict == Verdict::Monotone || verdict == Verdict::PowerMonotone;
  }
  bool power() const { return verdict == Verdict::PowerMonotone; }
};

// Range of a scalar function of w over the unit circle.
struct SphereRange {
  double lo = 0.0;
  double hi = 0.0;
  std::string method;  // "analytic-diagonal" or "sampled-with-margin"
  int samples = 0;
  double margin = 0.0;  // certified sampling slack; 0 for analytic
};

// Range of |w|_1^2 + |w|_2^2 over |w| = 1 for A_1 = diag[a,b], A_2 = diag[c,d] (exact).
SphereRange range_sum_squares(double a, double b, double c, double d);

// Range of (|w|_1 + sign*|w|_2)^2 over |w| = 1, sign in {+1,-1}; angle-sampled with a
// certified Lipschitz slack.
SphereRange range_pm_squared(double a, double b, double c, double d, int sign,
                             int samples = 100000);

// Two-dimensional diagonal trilinear conditions (A_1 = diag[a,b], A_2 = diag[c,d]).
Certificate certify_thm_sumrange(double a, double b, double c, double d);   // quadratic-in-q test
Certificate certify_cor_minmax(double a, double b, double c, double d);     // closed-form min/max
Certificate certify_thm_pmrange(double a, double b, double c, double d);    // (|w|_1 +/- |w|_2)^2
Certificate certify_cor_crossed(double a, double b, double c, double d);    // sharper closed forms
Certificate certify_cor_ratio(double a, double b, double c, double d);      // M/m regime test

// General-dimension trilinear conditions.
Certificate certify_identity_perturbation(const TrilinearForm& B);   // ||A_i - lambda I|| <= lambda/4
Certificate certify_trace_test(const TrilinearForm& B);              // trace / Frobenius threshold

// Power-term conditions.
Certificate check_necessary(const PowerTerm& t,
                            std::optional<double> claimed_order = std::nullopt);
Certificate certify_coercive_ratio(const PowerTerm& t);              // kappa_0^2 vs alpha ||A||
Certificate certify_identity_perturbation(const PowerTerm& t);       // ||A - lambda I|| <= lambda/(1+alpha)
Certificate certify_trace_test(const PowerTerm& t);                  // Tr(A)/|A| threshold

// Composite dispatch: certifies the whole law and, on success, returns
// PowerMonotone(beta + 2) with beta = 1 (trilinear only), alpha_N (power sum), or
// max{alpha_N, 1} (mixed).
Certificate certify_composite(const ConstitutiveLaw& law);

// Every applicable certificate for the law (individual conditions + the composite one,
// which is last).
std::vector<Certificate> certify_all(const ConstitutiveLaw& law);

// Copies order/constant of a successful composite certificate into law.metadata
// (only when order > 2, the range Assumption-style metadata supports).
void apply_certificate(ConstitutiveLaw& law, const Certificate& cert);

}  // namespace aniso
