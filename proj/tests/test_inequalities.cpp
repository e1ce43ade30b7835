#include "aniso/inequalities.hpp"

#include <doctest.h>

#include <random>

using namespace aniso;

namespace {

std::mt19937_64 rng(2024);

Vec rand_vec(int n, double scale) {
  std::uniform_real_distribution<double> U(-scale, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = U(rng);
  return v;
}

}  // namespace

TEST_CASE("inequality oracles hold on randomized instances") {
  std::uniform_real_distribution<double> Up(0.05, 4.0);
  std::uniform_real_distribution<double> Usub(0.05, 1.0);
  std::uniform_real_distribution<double> Ulip(1.0, 4.0);
  std::uniform_real_distribution<double> Uneg(-0.95, -0.05);
  for (int trial = 0; trial < 2000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    Vec x = rand_vec(n, 3.0), y = rand_vec(n, 3.0);
    CHECK(sum_power_split(x, y, Up(rng)).holds());
    CHECK(sum_power_split_coarse(x, y, Up(rng)).holds());
    CHECK(norm_power_diff_sub(x, y, Usub(rng)).holds());
    CHECK(norm_power_diff_lip(x, y, Ulip(rng)).holds());
    CHECK(power_map_lip(x, y, Up(rng)).holds());
    CHECK(power_mono_weighted(x, y, Up(rng)).holds());
    CHECK(power_mono_strong(x, y, Up(rng)).holds());
    CHECK(scalar_negpower_diff(x[0], y[0], Uneg(rng)).holds());
    CHECK(negpower_mono(x, y, Uneg(rng)).holds());
    CHECK(segment_average_power(x, y, Up(rng)).holds(1e-10));
  }
}

TEST_CASE("strong power monotonicity is sharp on antipodal pairs at p = 1") {
  Vec x(2);
  x << 1.3, -0.7;
  Ineq q = power_mono_strong(x, -x, 1.0);
  // lower = |2x|^3 / 2, upper = 2 |x| x . 2x = |2x|^3 / 2: equality.
  CHECK(q.lower == doctest::Approx(q.upper).epsilon(1e-15));
}

TEST_CASE("coarse split dominates the sharp split") {
  for (int trial = 0; trial < 200; ++trial) {
    Vec x = rand_vec(2, 2.0), y = rand_vec(2, 2.0);
    std::uniform_real_distribution<double> Up(0.1, 3.0);
    double p = Up(rng);
    CHECK(sum_power_split_coarse(x, y, p).upper >= sum_power_split(x, y, p).upper - 1e-12);
  }
}

TEST_CASE("segment integral matches closed forms") {
  Vec x(1), y(1);
  x << 1.0;
  y << 0.0;
  // int_0^1 t^alpha dt = 1/(alpha+1)
  CHECK(segment_power_integral(x, y, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(segment_power_integral(x, y, 0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // x = y: integrand constant
  CHECK(segment_power_integral(x, x, 3.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("out-of-range exponents throw") {
  Vec x(1), y(1);
  x << 1.0;
  y << 2.0;
  CHECK_THROWS_AS(sum_power_split(x, y, 0.0), std::domain_error);
  CHECK_THROWS_AS(norm_power_diff_sub(x, y, 1.5), std::domain_error);
  CHECK_THROWS_AS(norm_power_diff_lip(x, y, 0.5), std::domain_error);
  CHECK_THROWS_AS(scalar_negpower_diff(1.0, 2.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(negpower_mono(x, y, -1.5), std::domain_error);
  CHECK_THROWS_AS(segment_average_power(x, y, -0.5), std::domain_error);
}

TEST_CASE("zero convention for negative powers") {
  CHECK(scalar_negpower_diff(0.0, 2.0, -0.5).holds());
  Vec z = Vec::Zero(2), y(2);
  y << 1.0, 1.0;
  CHECK(negpower_mono(z, y, -0.5).holds());
}
