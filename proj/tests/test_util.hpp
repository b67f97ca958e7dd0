#pragma once

// Shared helpers for the unit and acceptance suites: seeded random
// characters and models, and a naive convolution used as the independent
// oracle for series products.

#include <random>
#include <string>
#include <vector>

#include "eqmorse/character.hpp"
#include "eqmorse/geometry.hpp"

namespace eqmorse::testutil {

inline Character random_finite_character(std::mt19937_64& rng, int max_terms = 5,
                                         Weight span = 8, bool nonneg_integers = false) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<Weight> wdist(-span, span);
  std::uniform_int_distribution<int> num(nonneg_integers ? 0 : -9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  std::vector<std::pair<Weight, Rational>> terms;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Rational c = nonneg_integers ? Rational(num(rng)) : Rational(num(rng), den(rng));
    c.canonicalize();
    if (nonneg_integers && sgn(c) < 0) c = -c;
    terms.emplace_back(wdist(rng), c);
  }
  return Character::from_terms(terms);
}

// Random fixed-point model: dimension <= 3, weights in +-[1,4], random
// finite fibers of a common dimension.
inline ManifoldModel random_model(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ndist(0, 3);
  std::uniform_int_distribution<int> npoints(1, 4);
  std::uniform_int_distribution<int> wmag(1, 4);
  std::uniform_int_distribution<int> signd(0, 1);
  std::uniform_int_distribution<int> fdim(1, 3);
  std::uniform_int_distribution<Weight> fw(-3, 3);
  ManifoldModel m;
  m.dim = ndist(rng);
  const int points = npoints(rng);
  const int fiber_dim = fdim(rng);
  for (int p = 0; p < points; ++p) {
    FixedPoint fp;
    fp.name = "p" + std::to_string(p);
    for (int k = 0; k < m.dim; ++k) {
      const int w = wmag(rng);
      fp.weights.push_back(signd(rng) ? w : -w);
    }
    std::vector<std::pair<Weight, Rational>> terms;
    for (int j = 0; j < fiber_dim; ++j) terms.emplace_back(fw(rng), Rational(1));
    fp.fiber = Character::from_terms(terms);
    m.points.push_back(std::move(fp));
  }
  m.validate();
  return m;
}

template <class Coeff>
std::vector<Coeff> naive_convolution(const std::vector<Coeff>& a, const std::vector<Coeff>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Coeff> out(a.size() + b.size() - 1, Coeff(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Independent plus-side expansion used as the duality oracle: per fixed
// point, descending factors
//   l > 0: 1/(1 - q^{-l}),   l < 0: q^{-|l|}/(1 - q^{-|l|}),
// contributing at t^(orientation index).
inline TPoly direct_plus_series(const ManifoldModel& m, Weight order) {
  TPoly s(m.dim);
  for (const auto& p : m.points) {
    FixedPoint rev{p.name, p.weights, p.fiber.mirrored()};
    for (int& w : rev.weights) w = -w;
    s[orientation_index(p.weights)] += strong_point_term(rev, order).mirrored();
  }
  return s;
}

}  // namespace eqmorse::testutil
