#include "aniso/constitutive.hpp"

#include <doctest.h>

#include <random>

using namespace aniso;

namespace {

TrilinearForm diag_form(double a, double b, double c, double d) {
  TrilinearForm B;
  Mat A1 = Mat::Zero(2, 2), A2 = Mat::Zero(2, 2);
  A1(0, 0) = a;
  A1(1, 1) = b;
  A2(0, 0) = c;
  A2(1, 1) = d;
  B.A = {A1, A2};
  return B;
}

}  // namespace

TEST_CASE("trilinear form and gb basics") {
  TrilinearForm B = diag_form(1.0, 5.0, 5.0, 1.0);
  Vec u(2);
  u << 2.0, 2.0;
  Vec bu = B.apply(u, u, u);
  // u^T A1 u = 4 + 20 = 24, u^T A2 u = 20 + 4 = 24
  CHECK(bu[0] == doctest::Approx(48.0));
  CHECK(bu[1] == doctest::Approx(48.0));
  CHECK(B.gb(u)[0] == doctest::Approx(48.0 / u.norm()).epsilon(1e-14));
  CHECK(B.gb(Vec::Zero(2)).norm() == 0.0);
  CHECK_THROWS(B.gb_jacobian(Vec::Zero(2)));
}

TEST_CASE("known sign-indefinite product of the cubic drag term") {
  TrilinearForm B = diag_form(1.0, 5.0, 5.0, 1.0);
  Vec u(2), v(2);
  u << 2.0, 2.0;
  v << 3.0, 1.0;
  double prod = (B.gb(u) - B.gb(v)).dot(u - v);
  CHECK(prod == doctest::Approx(-4.0 / std::sqrt(10.0)).epsilon(1e-13));
}

TEST_CASE("power term kinds") {
  Mat A(2, 2);
  A << 2, 0, 0, 8;
  Vec u(2);
  u << 1.0, 0.0;

  PowerTerm plain;
  plain.A = A;
  plain.alpha = 1.0;
  CHECK(plain.eval(u)[0] == doctest::Approx(2.0));  // |u| A u

  PowerTerm sqrtw;
  sqrtw.A = A;
  sqrtw.alpha = 2.0;
  sqrtw.kind = WeightKind::SqrtWeighted;
  // K = diag(sqrt 2, sqrt 8); |K u|^2 = 2
  CHECK(sqrtw.eval(u)[0] == doctest::Approx(4.0));

  PowerTerm wght;
  wght.A = A;
  wght.alpha = 1.0;
  wght.kind = WeightKind::Weighted;
  wght.K_explicit = 3.0 * Mat::Identity(2, 2);
  CHECK(wght.eval(u)[0] == doctest::Approx(6.0));
}

TEST_CASE("jacobian matches finite differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  ConstitutiveLaw law;
  law.dim = 2;
  PowerTerm darcy;
  darcy.A = Mat::Identity(2, 2);
  PowerTerm quad;
  quad.A = Mat::Identity(2, 2);
  quad.alpha = 1.0;
  law.terms = {darcy, quad};
  law.trilinear = diag_form(1.0, 0.2, 0.2, 1.0);

  for (int trial = 0; trial < 20; ++trial) {
    Vec u(2);
    u << U(rng), U(rng);
    if (u.norm() < 0.3) continue;
    Mat J = law.jacobian(u);
    double h = 1e-6;
    for (int k = 0; k < 2; ++k) {
      Vec e = Vec::Zero(2);
      e[k] = h;
      Vec fd = (law.eval(u + e) - law.eval(u - e)) / (2.0 * h);
      CHECK((J.col(k) - fd).norm() == doctest::Approx(0.0).epsilon(1e-5));
    }
  }
}

TEST_CASE("invert_pointwise round trips") {
  ConstitutiveLaw law;
  law.dim = 2;
  PowerTerm darcy;
  darcy.A = Mat::Identity(2, 2);
  PowerTerm quad;
  quad.A = Mat::Identity(2, 2);
  quad.alpha = 1.0;
  law.terms = {darcy, quad};

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    Vec g(2);
    g << U(rng), U(rng);
    Vec u = invert_pointwise(law, g);
    CHECK((law.eval(u) - g).norm() <= 1e-10 * (1.0 + g.norm()));
  }
  CHECK(invert_pointwise(law, Vec::Zero(2)).norm() <= 1e-10);
}

TEST_CASE("growth exponent and mstar") {
  ConstitutiveLaw law;
  law.dim = 2;
  PowerTerm quad;
  quad.A = 2.0 * Mat::Identity(2, 2);
  quad.alpha = 1.0;
  law.terms = {quad};
  CHECK(law.alpha_max() == 1.0);
  CHECK(law.growth_exponent() == doctest::Approx(3.0));
  CHECK(mstar(law) == doctest::Approx(2.0));

  law.metadata = LawMetadata{3.0, {}, {}};
  CHECK(law.metadata->r() == doctest::Approx(1.5));
}

TEST_CASE("validation rejects malformed laws") {
  ConstitutiveLaw law;
  law.dim = 2;
  PowerTerm t;
  t.A = Mat::Identity(3, 3);  // wrong size
  law.terms = {t};
  CHECK_THROWS_AS(law.validate(), std::invalid_argument);

  PowerTerm neg;
  neg.A = Mat::Identity(2, 2);
  neg.alpha = -0.5;
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
}
