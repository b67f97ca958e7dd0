#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <numeric>
#include <random>
#include <vector>

#include "eqmorse/kernels.hpp"

using namespace eqmorse;

TEST_CASE("parallel convolution matches the serial reference bitwise") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> a(513), b(257);
  for (auto& x : a) x = dist(rng);
  for (auto& x : b) x = dist(rng);
  const auto s = kernels::convolve_serial(a, b);
  const auto p = kernels::convolve_parallel(a, b);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == p[i]);
}

TEST_CASE("parallel convolution is exact for rationals") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  std::vector<mpq_class> a(67), b(31);
  for (auto& x : a) { x = mpq_class(num(rng), den(rng)); x.canonicalize(); }
  for (auto& x : b) { x = mpq_class(num(rng), den(rng)); x.canonicalize(); }
  const auto s = kernels::convolve_serial(a, b);
  const auto p = kernels::convolve_parallel(a, b);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == p[i]);
}

TEST_CASE("dispatch honors the process-wide switch") {
  const bool was = kernels::parallel_enabled();
  std::vector<double> a{1.0, 2.0}, b{3.0, 4.0};
  kernels::set_parallel(false);
  const auto s = kernels::convolve(a, b);
  kernels::set_parallel(true);
  const auto p = kernels::convolve(a, b);
  kernels::set_parallel(was);
  CHECK(s == p);
  CHECK(s == std::vector<double>{3.0, 10.0, 8.0});
}

TEST_CASE("pairwise sum is accurate and thread-count independent") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(10000);
  for (auto& x : v) x = dist(rng);
  const double ps = kernels::pairwise_sum(v);
  long double ref = 0.0L;
  for (double x : v) ref += static_cast<long double>(x);
  CHECK(ps == doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));

  const bool was = kernels::parallel_enabled();
  kernels::set_parallel(false);
  const double s1 = kernels::pairwise_sum(v);
  kernels::set_parallel(true);
  const double s2 = kernels::pairwise_sum(v);
  kernels::set_parallel(was);
  CHECK(s1 == s2);
}

TEST_CASE("indexed map fills every slot identically on both paths") {
  auto f = [](std::size_t i) { return 1.0 / (1.0 + static_cast<double>(i)); };
  const auto s = kernels::map_indexed_serial<double>(1000, f);
  const auto p = kernels::map_indexed_parallel<double>(1000, f);
  CHECK(s == p);
}
