#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eqmorse/geometry.hpp"
#include "test_util.hpp"

using namespace eqmorse;
using testutil::direct_plus_series;
using testutil::random_model;

namespace {

ManifoldModel point_model(const Character& fiber) {
  ManifoldModel m;
  m.dim = 0;
  m.points.push_back({"pt", {}, fiber});
  return m;
}

ManifoldModel cp1_trivial() {
  ManifoldModel m;
  m.dim = 1;
  m.points.push_back({"p0", {1}, Character::monomial(0)});
  m.points.push_back({"p1", {-1}, Character::monomial(0)});
  return m;
}

}  // namespace

TEST_CASE("orientation index counts negative weights") {
  CHECK(orientation_index({2, -3, 1}) == 1);
  CHECK(orientation_index({-1, -2}) == 2);
  CHECK(orientation_index({5}) == 0);
  CHECK_THROWS_AS(orientation_index({1, 0}), std::invalid_argument);
}

TEST_CASE("model validation") {
  ManifoldModel empty;
  empty.dim = 1;
  CHECK_THROWS_AS(empty.validate(), ModelError);

  auto bad = cp1_trivial();
  bad.points[0].weights = {1, 2};
  CHECK_THROWS_AS(bad.validate(), ModelError);

  auto frac = cp1_trivial();
  Rational half(1, 2);
  half.canonicalize();
  frac.points[0].fiber = Character::monomial(0, half);
  CHECK_THROWS_AS(frac.validate(), ModelError);

  CHECK_NOTHROW(cp1_trivial().validate());
}

TEST_CASE("strong series of the point model is its fiber") {
  auto fiber = Character::from_terms({{-1, Rational(2)}, {4, Rational(1)}});
  auto s = strong_series(point_model(fiber), Side::Minus, 32);
  CHECK(s.degree_bound() == 0);
  CHECK(char_match(s[0], fiber).ok);
  CHECK(s[0].everywhere_valid());
}

TEST_CASE("strong series of the trivial bundle on CP^1, expanded by hand") {
  auto s = strong_series(cp1_trivial(), Side::Minus, 5);
  // t^0: 1/(1-q) from the weight -1 point; t^1: q/(1-q) from the other
  for (Weight mth = 0; mth <= 5; ++mth) CHECK(s[0].at(mth) == 1);
  CHECK(s[1].at(0) == 0);
  for (Weight mth = 1; mth <= 5; ++mth) CHECK(s[1].at(mth) == 1);
  CHECK(s[0].window_hi() == 5);
  CHECK(s[1].window_hi() == 5);
}

TEST_CASE("degree-k bundle series carries the fiber shift") {
  auto b = cp1_model(2);
  auto s = strong_series(b.model, Side::Minus, 12);
  CHECK(s[0].support_lo() == -2);
  for (Weight mth = -2; mth <= 12; ++mth) CHECK(s[0].at(mth) == 1);
  CHECK(s[0].window_hi() == 12);
}

TEST_CASE("weak bounds are the t^k series coefficients") {
  auto b = cp1_model(0);
  auto w0 = weak_bound(b.model, 0, Side::Minus, 10);
  for (Weight mth = 0; mth <= 10; ++mth) CHECK(w0.at(mth) == 1);
  auto w1 = weak_bound(b.model, 1, Side::Minus, 10);
  CHECK(w1.at(0) == 0);
  for (Weight mth = 1; mth <= 10; ++mth) CHECK(w1.at(mth) == 1);

  auto fiber = Character::from_terms({{2, Rational(3)}});
  CHECK(char_match(weak_bound(point_model(fiber), 0, Side::Minus, 8), fiber).ok);
  CHECK_THROWS_AS(weak_bound(b.model, 2, Side::Minus, 8), std::invalid_argument);
}

TEST_CASE("alternating fixed-point sum telescopes") {
  auto ab = atiyah_bott_series(cp1_trivial(), 40);
  CHECK(ab.at(0) == 1);
  CHECK(ab.support_lo() == 0);
  CHECK(ab.support_hi() == 0);
  CHECK(ab.window_hi() == 40);

  auto fiber = Character::from_terms({{-2, Rational(1)}, {1, Rational(5)}});
  CHECK(char_match(atiyah_bott_series(point_model(fiber), 16), fiber).ok);

  auto b3 = cp1_model(3);
  auto ab3 = atiyah_bott_series(b3.model, 40);
  for (Weight j = 0; j <= 3; ++j) CHECK(ab3.at(-j) == 1);
  CHECK(ab3.support_lo() == -3);
  CHECK(ab3.support_hi() == 0);

  auto bm1 = cp1_model(-1);
  CHECK(atiyah_bott_series(bm1.model, 40).is_zero_on_window());
}

TEST_CASE("bundle oracle cohomology content") {
  const auto triv = cp1_model(0);
  CHECK(triv.cohomology.by_degree[0].identical(Character::monomial(0)));
  CHECK(triv.cohomology.by_degree[1].support_empty());

  const auto b3 = cp1_model(3, 1);
  for (Weight j = 0; j <= 3; ++j) CHECK(b3.cohomology.by_degree[0].at(-j) == 1);
  CHECK(b3.cohomology.by_degree[0].support_lo() == -3);
  CHECK(b3.cohomology.by_degree[1].support_empty());

  const auto bm1 = cp1_model(-1);
  CHECK(bm1.cohomology.by_degree[0].support_empty());
  CHECK(bm1.cohomology.by_degree[1].support_empty());

  const auto bm4 = cp1_model(-4, 2);  // three dual weights 2, 4, 6
  CHECK(bm4.cohomology.by_degree[0].support_empty());
  CHECK(bm4.cohomology.by_degree[1].at(2) == 1);
  CHECK(bm4.cohomology.by_degree[1].at(4) == 1);
  CHECK(bm4.cohomology.by_degree[1].at(6) == 1);
  CHECK(bm4.cohomology.by_degree[1].at(3) == 0);

  CHECK_THROWS_AS(cp1_model(2, 0), std::invalid_argument);
}

TEST_CASE("monomial-count cohomology satisfies the fixed-point identity") {
  for (int lambda0 : {1, 2}) {
    for (int k = -3; k <= 10; ++k) {
      auto b = cp1_model(k, lambda0);
      auto rep = verify_atiyah_bott(b.model, b.cohomology, 64);
      CHECK(rep.ok);
    }
  }
}

TEST_CASE("reverse_action negates weights and mirrors fibers") {
  ManifoldModel m;
  m.dim = 2;
  m.points.push_back({"p", {2, -3}, Character::monomial(2)});
  auto r = reverse_action(m);
  CHECK(r.points[0].weights == std::vector<int>{-2, 3});
  CHECK(r.points[0].fiber.at(-2) == 1);
  auto rr = reverse_action(r);
  CHECK(rr.points[0].weights == m.points[0].weights);
  CHECK(rr.points[0].fiber.identical(m.points[0].fiber));
}

TEST_CASE("products of models") {
  auto pt = point_model(Character::monomial(0));
  auto b = cp1_model(2);
  auto prod = product_model(pt, b.model);
  CHECK(prod.dim == 1);
  auto sa = strong_series(prod, Side::Minus, 16);
  auto sb = strong_series(b.model, Side::Minus, 16);
  for (int k = 0; k <= 1; ++k) CHECK(char_match(sa[k], sb[k]).ok);

  auto two = product_model(cp1_trivial(), cp1_trivial());
  CHECK(two.dim == 2);
  CHECK(two.points.size() == 4);
  int seen[2][2] = {};
  for (const auto& p : two.points) seen[p.weights[0] > 0][p.weights[1] > 0]++;
  CHECK(seen[0][0] == 1);
  CHECK(seen[0][1] == 1);
  CHECK(seen[1][0] == 1);
  CHECK(seen[1][1] == 1);
}

TEST_CASE("Kuenneth: series of a product is the product of series") {
  auto a = cp1_model(2, 1);
  auto b = cp1_model(3, 1);
  auto prod = product_model(a.model, b.model);
  auto sp = strong_series(prod, Side::Minus, 24);
  auto sab = strong_series(a.model, Side::Minus, 24) * strong_series(b.model, Side::Minus, 24);
  REQUIRE(sp.degree_bound() == sab.degree_bound());
  for (int k = 0; k <= sp.degree_bound(); ++k) CHECK(char_match(sp[k], sab[k]).ok);

  std::mt19937_64 rng(515);
  for (int trial = 0; trial < 5; ++trial) {
    auto ma = random_model(rng);
    auto mb = random_model(rng);
    auto mp = product_model(ma, mb);
    auto s1 = strong_series(mp, Side::Minus, 20);
    auto s2 = strong_series(ma, Side::Minus, 20) * strong_series(mb, Side::Minus, 20);
    for (int k = 0; k <= s1.degree_bound(); ++k) CHECK(char_match(s1[k], s2[k]).ok);
  }
}

TEST_CASE("plus side equals the reversal route and the direct expansion") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_model(rng);
    auto plus = strong_series(m, Side::Plus, 20);
    auto mirror_route = strong_series(reverse_action(m), Side::Minus, 20).mirrored();
    auto direct = direct_plus_series(m, 20);
    REQUIRE(plus.degree_bound() == direct.degree_bound());
    for (int k = 0; k <= plus.degree_bound(); ++k) {
      CHECK(plus[k].identical(mirror_route[k]));
      CHECK(char_match(plus[k], direct[k]).ok);
    }
  }
  // hand check on the trivial bundle: t^0 is 1/(1-q^{-1})
  auto s = strong_series(cp1_trivial(), Side::Plus, 6);
  for (Weight mth = 0; mth >= -6; --mth) CHECK(s[0].at(mth) == 1);
  CHECK(s[1].at(0) == 0);
  for (Weight mth = -1; mth >= -6; --mth) CHECK(s[1].at(mth) == 1);
}

TEST_CASE("strong verification of consistent and corrupted data") {
  // point model: cohomology concentrated in degree 0
  auto fiber = Character::from_terms({{0, Rational(1)}, {2, Rational(1)}});
  auto pm = point_model(fiber);
  CohomologyData pc;
  pc.by_degree = {fiber};
  auto pv = verify_strong(pm, pc, Side::Minus, 16);
  CHECK(pv.pass());
  CHECK(pv.quotient[0].is_zero_on_window());

  for (int k : {0, 1, 3, 7}) {
    auto b = cp1_model(k);
    auto v = verify_strong(b.model, b.cohomology, Side::Minus, 48);
    CHECK(v.pass());
    CHECK(v.remainder.is_zero_on_window());
    // slack at t^0 is q + q^2 + ...
    for (Weight mth = 1; mth <= 10; ++mth) CHECK(v.quotient[0].at(mth) == 1);
    CHECK(v.quotient[0].at(0) == 0);
    CHECK(v.quotient[0].at(-1) == 0);
  }

  auto b = cp1_model(0);
  auto corrupted = b.cohomology;
  corrupted.by_degree[0] = Character::from_terms({{0, Rational(1)}, {1, Rational(1)}});
  auto v = verify_strong(b.model, corrupted, Side::Minus, 48);
  CHECK_FALSE(v.divisible);
  CHECK_FALSE(v.remainder.is_zero_on_window());
  CHECK_FALSE(v.pass());
}

TEST_CASE("weak verification with witnesses") {
  auto b = cp1_model(3);
  CHECK(verify_weak(b.model, b.cohomology, 0, Side::Minus, 48).ok);
  CHECK(verify_weak(b.model, b.cohomology, 1, Side::Minus, 48).ok);
  CHECK(verify_weak(b.model, b.cohomology, 0, Side::Plus, 48).ok);
  CHECK(verify_weak(b.model, b.cohomology, 1, Side::Plus, 48).ok);

  auto corrupted = b.cohomology;
  corrupted.by_degree[0] = b.cohomology.by_degree[0] + Character::monomial(0);
  auto v = verify_weak(b.model, corrupted, 0, Side::Minus, 48);
  CHECK_FALSE(v.ok);
  CHECK(v.weight == 0);
  CHECK(v.lhs == 2);
  CHECK(v.rhs == 1);
}

TEST_CASE("window too small is reported, not passed") {
  auto deep = cp1_model(-5);  // H^1 reaches weight 4
  CHECK_THROWS_AS(verify_strong(deep.model, deep.cohomology, Side::Minus, 2), WindowError);
  auto wide = cp1_model(3);  // H^0 reaches weight -3 on the plus side
  CHECK_THROWS_AS(verify_strong(wide.model, wide.cohomology, Side::Plus, 2), WindowError);
  CHECK_NOTHROW(verify_strong(wide.model, wide.cohomology, Side::Plus, 8));
}

TEST_CASE("finite-temperature series: exact cases and prefactors") {
  // a point model has a single empty index set and no factors
  auto fiber = Character::from_terms({{-1, Rational(1)}, {3, Rational(2)}});
  auto pm = point_model(fiber);
  auto ft = finite_T_series(pm, 0.7, 16);
  CHECK(ft[0].at(-1) == 1.0);
  CHECK(ft[0].at(3) == 2.0);

  CHECK_THROWS_AS(finite_T_series(pm, 0.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(finite_T_series(pm, -1.0, 16), std::invalid_argument);

  // weight +1, empty index set: per-unit-T exponent -2, so the prefactor at
  // T = ln 10 is exactly 0.01
  CHECK(finite_T_prefactor_exponent({1}, 0u) == -2);
  CHECK(finite_T_prefactor_exponent({1}, 1u) == 0);
  CHECK(finite_T_prefactor_exponent({2, -3}, 0b01u) == 0);   // positive weights selected
  CHECK(finite_T_prefactor_exponent({2, -3}, 0b11u) == -6);  // negative weight included
  CHECK(finite_T_prefactor_exponent({2, -3}, 0b10u) == -10);
  CHECK(std::exp(std::log(10.0) * -2.0) == doctest::Approx(0.01).epsilon(1e-12));

  // large T: the deformed series lands on the strong series
  for (const auto& b : {cp1_model(0), cp1_model(3), cp1_model(-2, 2)}) {
    auto big = finite_T_series(b.model, 20.0, 32);
    auto strong = to_float(strong_series(b.model, Side::Minus, 32));
    for (int k = 0; k <= 1; ++k) {
      auto d = big[k] - strong[k];
      CHECK(d.max_abs_coefficient() < 1e-9);
    }
  }
}

TEST_CASE("finite-temperature distance agrees with direct subtraction") {
  for (const auto& b : {cp1_model(0), cp1_model(2)}) {
    const double T = 2.0;
    auto ft = finite_T_series(b.model, T, 24);
    auto strong = to_float(strong_series(b.model, Side::Minus, 24));
    double direct = 0;
    for (int k = 0; k <= 1; ++k) direct = std::max(direct, (ft[k] - strong[k]).max_abs_coefficient());
    const double clean = finite_T_distance(b.model, T, 24);
    CHECK(clean == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("finite-temperature convergence contracts at the expected rate") {
  for (const auto& b : {cp1_model(0, 1), cp1_model(3, 1), cp1_model(-3, 2)}) {
    const int lmin = smallest_weight_magnitude(b.model);
    const double d2 = finite_T_distance(b.model, 2.0, 32, 1e-30);
    const double d4 = finite_T_distance(b.model, 4.0, 32, 1e-30);
    const double d8 = finite_T_distance(b.model, 8.0, 32, 1e-30);
    CHECK(d4 / d2 <= std::exp(-4.0 * lmin) + 1e-9);
    CHECK(d8 / d4 <= std::exp(-4.0 * lmin) + 1e-9);
    // tighter per-step bound with the step size in the exponent
    CHECK(d4 / d2 <= std::exp(-2.0 * lmin * 2.0) * (1 + 1e-6));
    CHECK(d8 / d4 <= std::exp(-2.0 * lmin * 4.0) * (1 + 1e-6));
  }
}

TEST_CASE("finite-temperature slack polynomial stays nonnegative") {
  for (const auto& b : {cp1_model(0), cp1_model(5), cp1_model(-4)}) {
    for (double T : {2.0, 4.0, 8.0}) {
      auto v = finite_T_verdict(b.model, b.cohomology, T, 32);
      CHECK(v.divisible);
      CHECK(v.remainder.max_abs_coefficient() < 1e-8);
      CHECK(v.nonneg.ok);
    }
  }
}
