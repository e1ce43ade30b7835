#include "aniso/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace aniso;

TEST_CASE("operator norm, diagonal and rotated") {
  Mat D = Mat::Zero(2, 2);
  D(0, 0) = 3.0;
  D(1, 1) = -7.0;
  CHECK(operator_norm(D) == doctest::Approx(7.0).epsilon(1e-14));

  double th = 0.7;
  Mat R(2, 2);
  R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  CHECK(operator_norm(R * D * R.transpose()) == doctest::Approx(7.0).epsilon(1e-12));

  Mat A(3, 3);
  A << 2, 1, 0, 1, 2, 1, 0, 1, 2;
  // symmetric: operator norm equals largest |eigenvalue| = 2 + sqrt(2)
  CHECK(operator_norm(A) == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("operator norm agrees with power iteration on random matrices") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = U(rng);
    Vec x = Vec::Ones(n).normalized();
    for (int k = 0; k < 2000; ++k) x = (A.transpose() * (A * x)).normalized();
    double est = (A * x).norm();
    CHECK(operator_norm(A) == doctest::Approx(est).epsilon(1e-8));
    CHECK(operator_norm(A) >= est - 1e-10);
  }
}

TEST_CASE("lambda_min_sym and symmetric part") {
  Mat A(2, 2);
  A << 1, 5, 5, 1;
  CHECK(lambda_min_sym(A) == doctest::Approx(-4.0).epsilon(1e-14));
  Mat B(2, 2);
  B << 1, 10, 0, 1;  // sym part [[1,5],[5,1]]
  CHECK(lambda_min_sym_part(B) == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK_THROWS_AS(lambda_min_sym(B), std::invalid_argument);
}

TEST_CASE("sqrt_spd round trip and rejection") {
  Mat A(2, 2);
  A << 2, 1, 1, 2;
  Mat S = sqrt_spd(A);
  CHECK((S * S - A).norm() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(is_symmetric(S));

  Mat N(2, 2);
  N << 1, 0, 0, -1;
  CHECK_THROWS(sqrt_spd(N));
}

TEST_CASE("structure predicates") {
  CHECK(is_diagonal(Mat::Identity(3, 3)));
  Mat A(2, 2);
  A << 1, 1e-15, 0, 2;
  CHECK(is_diagonal(A));  // below relative tolerance
  A(0, 1) = 0.1;
  CHECK_FALSE(is_diagonal(A));
  CHECK(frobenius(Mat::Identity(4, 4)) == doctest::Approx(2.0));
}
