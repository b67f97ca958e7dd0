#include "eqmorse/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace eqmorse {

namespace {

// Expansion slack so that a product of ascending factors stays certified
// through the requested order. Only truncated (ascending) factors cap the
// window: with every such factor expanded to order + margin, the product
// window ends at order + margin + (sum of all support lows) - (largest
// ascending support low), which must reach order.
Weight expansion_margin(Weight max_ascending_lo, Weight sum_of_support_los) {
  return std::max<Weight>(0, max_ascending_lo - sum_of_support_los);
}

void require_nonzero_weights(const std::vector<int>& weights) {
  for (int w : weights)
    if (w == 0) throw std::invalid_argument("zero isotropy weight");
}

}  // namespace

int orientation_index(const std::vector<int>& weights) {
  require_nonzero_weights(weights);
  int count = 0;
  for (int w : weights)
    if (w < 0) ++count;
  return count;
}

void ManifoldModel::validate() const {
  if (dim < 0) throw ModelError("negative dimension");
  if (points.empty()) throw ModelError("fixed-point set must be nonempty");
  Rational fiber_dim(-1);
  for (const auto& p : points) {
    if (static_cast<int>(p.weights.size()) != dim)
      throw ModelError("fixed point '" + p.name + "' must carry exactly " + std::to_string(dim) +
                       " weights");
    for (int w : p.weights)
      if (w == 0) throw ModelError("fixed point '" + p.name + "': zero isotropy weight");
    if (!p.fiber.everywhere_valid())
      throw ModelError("fixed point '" + p.name + "': fiber character must be finite");
    Rational total(0);
    for (Weight m = p.fiber.support_empty() ? 0 : p.fiber.support_lo();
         m <= (p.fiber.support_empty() ? -1 : p.fiber.support_hi()); ++m) {
      const Rational c = p.fiber.at(m);
      if (sgn(c) < 0 || c.get_den() != 1)
        throw ModelError("fixed point '" + p.name +
                         "': fiber multiplicities must be nonnegative integers");
      total += c;
    }
    if (sgn(total) == 0)
      throw ModelError("fixed point '" + p.name + "': fiber character must be nonzero");
    if (fiber_dim == -1)
      fiber_dim = total;
    else if (total != fiber_dim)
      throw ModelError("fiber dimension differs between fixed points");
  }
}

ManifoldModel reverse_action(const ManifoldModel& m) {
  ManifoldModel r = m;
  for (auto& p : r.points) {
    for (int& w : p.weights) w = -w;
    p.fiber = p.fiber.mirrored();
  }
  return r;
}

ManifoldModel product_model(const ManifoldModel& a, const ManifoldModel& b) {
  ManifoldModel r;
  r.dim = a.dim + b.dim;
  for (const auto& pa : a.points) {
    for (const auto& pb : b.points) {
      FixedPoint p;
      p.name = pa.name + "x" + pb.name;
      p.weights = pa.weights;
      p.weights.insert(p.weights.end(), pb.weights.begin(), pb.weights.end());
      p.fiber = pa.fiber * pb.fiber;
      r.points.push_back(std::move(p));
    }
  }
  return r;
}

CohomologyData product_cohomology(const CohomologyData& a, const CohomologyData& b) {
  const int na = static_cast<int>(a.by_degree.size()) - 1;
  const int nb = static_cast<int>(b.by_degree.size()) - 1;
  CohomologyData r;
  r.by_degree.assign(static_cast<std::size_t>(na + nb) + 1, Character::zero());
  for (int i = 0; i <= na; ++i)
    for (int j = 0; j <= nb; ++j) r.by_degree[static_cast<std::size_t>(i + j)] +=
        a.by_degree[static_cast<std::size_t>(i)] * b.by_degree[static_cast<std::size_t>(j)];
  return r;
}

Cp1Bundle cp1_model(int k, int lambda0) {
  if (lambda0 < 1) throw std::invalid_argument("cp1_model: lambda0 must be positive");
  Cp1Bundle b;
  b.k = k;
  b.lambda0 = lambda0;
  b.model.dim = 1;
  b.model.points.push_back({"p0", {lambda0}, Character::monomial(0)});
  b.model.points.push_back(
      {"p1", {-lambda0}, Character::monomial(-static_cast<Weight>(k) * lambda0)});
  b.cohomology.by_degree.assign(2, Character::zero());
  if (k >= 0) {
    std::vector<std::pair<Weight, Rational>> h0;
    for (int j = 0; j <= k; ++j) h0.emplace_back(-static_cast<Weight>(j) * lambda0, Rational(1));
    b.cohomology.by_degree[0] = Character::from_terms(h0);
  } else if (k <= -2) {
    std::vector<std::pair<Weight, Rational>> h1;
    for (int j = 1; j <= -k - 1; ++j) h1.emplace_back(static_cast<Weight>(j) * lambda0, Rational(1));
    b.cohomology.by_degree[1] = Character::from_terms(h1);
  }
  return b;
}

Character strong_point_term(const FixedPoint& p, Weight order) {
  Weight sum_lo = p.fiber.support_empty() ? 0 : p.fiber.support_lo();
  Weight max_asc = 0;
  for (int w : p.weights) {
    const Weight lo = w > 0 ? w : 0;
    sum_lo += lo;
    max_asc = std::max(max_asc, lo);
  }
  const Weight hi = order + expansion_margin(max_asc, sum_lo);
  Character term = p.fiber;
  for (int w : p.weights) term *= geometric_factor(w, Side::Minus, hi);
  if (term.everywhere_valid()) return term;
  return term.truncated_above(order);
}

TPoly strong_series(const ManifoldModel& m, Side side, Weight order) {
  m.validate();
  if (side == Side::Plus)
    return strong_series(reverse_action(m), Side::Minus, order).mirrored();
  TPoly s(m.dim);
  for (const auto& p : m.points)
    s[m.dim - orientation_index(p.weights)] += strong_point_term(p, order);
  return s;
}

Character weak_bound(const ManifoldModel& m, int k, Side side, Weight order) {
  if (k < 0 || k > m.dim) throw std::invalid_argument("weak_bound: degree out of range");
  return strong_series(m, side, order)[k];
}

Character atiyah_bott_series(const ManifoldModel& m, Weight order) {
  return strong_series(m, Side::Minus, order).eval_minus_one();
}

Character alternating_cohomology(const CohomologyData& coh) {
  Character r;
  for (std::size_t k = 0; k < coh.by_degree.size(); ++k) {
    if (k % 2 == 0)
      r += coh.by_degree[k];
    else
      r -= coh.by_degree[k];
  }
  return r;
}

namespace {

void check_degree_count(const ManifoldModel& m, const CohomologyData& coh) {
  if (static_cast<int>(coh.by_degree.size()) != m.dim + 1)
    throw ModelError("cohomology data must carry degrees 0.." + std::to_string(m.dim));
}

template <class Coeff>
void check_window_covers(const CharacterT<Coeff>& series, const Character& h, int degree) {
  if (h.support_empty()) return;
  if (h.support_lo() < series.window_lo() || h.support_hi() > series.window_hi())
    throw WindowError("expansion order too small to compare cohomology" +
                      (degree >= 0 ? " at degree " + std::to_string(degree)
                                   : std::string(" (alternating sum)")));
}

}  // namespace

Verdict verify_strong(const ManifoldModel& m, const CohomologyData& coh, Side side,
                      Weight order) {
  check_degree_count(m, coh);
  TPoly p = strong_series(m, side, order);
  for (int k = 0; k <= m.dim; ++k) {
    check_window_covers(p[k], coh.by_degree[static_cast<std::size_t>(k)], k);
    p[k] -= coh.by_degree[static_cast<std::size_t>(k)];
  }
  auto div = tpoly_div_1_plus_t(p);
  Verdict v;
  v.quotient = div.quotient;
  v.remainder = div.remainder;
  v.divisible = div.remainder.is_zero_on_window();
  v.nonneg = tpoly_is_nonneg(div.quotient);
  v.side = side;
  return v;
}

WeakVerdict verify_weak(const ManifoldModel& m, const CohomologyData& coh, int k, Side side,
                        Weight order) {
  check_degree_count(m, coh);
  if (k < 0 || k > m.dim) throw std::invalid_argument("verify_weak: degree out of range");
  WeakVerdict v;
  v.degree = k;
  v.side = side;
  v.bound = weak_bound(m, k, side, order);
  const Character& h = coh.by_degree[static_cast<std::size_t>(k)];
  check_window_covers(v.bound, h, k);
  const auto r = char_leq(h, v.bound);
  v.ok = r.ok;
  v.weight = r.weight;
  v.lhs = r.lhs;
  v.rhs = r.rhs;
  return v;
}

AtiyahBottReport verify_atiyah_bott(const ManifoldModel& m, const CohomologyData& coh,
                                    Weight order) {
  check_degree_count(m, coh);
  AtiyahBottReport rep;
  rep.series = atiyah_bott_series(m, order);
  rep.expected = alternating_cohomology(coh);
  check_window_covers(rep.series, rep.expected, -1);
  const auto match = char_match(rep.series, rep.expected);
  rep.ok = match.ok;
  rep.weight = match.weight;
  rep.lhs = match.lhs;
  rep.rhs = match.rhs;
  return rep;
}

// ---- finite-temperature layer ----

Weight finite_T_prefactor_exponent(const std::vector<int>& weights, unsigned mask) {
  Weight r = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const Weight w = weights[k];
    const Weight aw = w > 0 ? w : -w;
    r -= aw;
    if (mask & (1u << k))
      r += w;
    else
      r -= w;
  }
  return r;
}

namespace {

Weight mask_shift(const std::vector<int>& weights, unsigned mask) {
  Weight s = 0;
  for (std::size_t k = 0; k < weights.size(); ++k)
    if (mask & (1u << k)) s += weights[k];
  return s;
}

// Descending expansion of 1/(1 - e^{-2T|w|} q^{-|w|}), truncated once the
// coefficients drop below tail_eps. Finite support, certified everywhere.
FloatCharacter descending_factor(int w, double T, double tail_eps) {
  const double aw = std::abs(static_cast<double>(w));
  std::vector<std::pair<Weight, double>> terms;
  double c = 1.0;
  const double step = std::exp(-2.0 * T * aw);
  for (Weight j = 0; c >= tail_eps; ++j, c *= step)
    terms.emplace_back(-j * static_cast<Weight>(std::llabs(w)), c);
  return FloatCharacter::from_terms(terms);
}

struct PointExpansion {
  FloatCharacter ascending;     // fiber * prod 1/(1-q^{|w|}), window through hi
  FloatCharacter descending;    // prod of descending factors, finite
  Weight positive_shift = 0;    // sum of positive weights (the surviving shift)
};

PointExpansion expand_point(const FixedPoint& p, double T, Weight hi, double tail_eps) {
  PointExpansion e;
  e.ascending = to_float(p.fiber);
  e.descending = FloatCharacter::monomial(0, 1.0);
  Weight sum_lo = p.fiber.support_empty() ? 0 : p.fiber.support_lo();
  std::vector<FloatCharacter> descs;
  for (int w : p.weights) {
    descs.push_back(descending_factor(w, T, tail_eps));
    sum_lo += descs.back().support_lo();
    if (w > 0) e.positive_shift += w;
  }
  const Weight margin = expansion_margin(0, sum_lo);
  for (int w : p.weights) {
    const int aw = w > 0 ? w : -w;
    e.ascending *= geometric_factor<double>(-aw, Side::Minus, hi + margin);
  }
  for (auto& d : descs) e.descending *= d;
  return e;
}

}  // namespace

FloatTPoly finite_T_series(const ManifoldModel& m, double T, Weight order, double tail_eps) {
  if (!(T > 0)) throw std::invalid_argument("finite_T_series: T must be positive");
  if (!(tail_eps > 0) || !(tail_eps < 1))
    throw std::invalid_argument("finite_T_series: tail_eps must be in (0, 1)");
  m.validate();
  FloatTPoly out(m.dim);
  for (const auto& p : m.points) {
    const unsigned nmask = 1u << p.weights.size();
    Weight min_shift = 0;
    for (int w : p.weights) min_shift += std::min(w, 0);
    const auto e = expand_point(p, T, order - min_shift, tail_eps);
    const FloatCharacter base = e.ascending * e.descending;
    for (unsigned mask = 0; mask < nmask; ++mask) {
      const double pref =
          std::exp(T * static_cast<double>(finite_T_prefactor_exponent(p.weights, mask)));
      const int deg = std::popcount(mask);
      out[deg] += base.shifted(mask_shift(p.weights, mask)).scaled(pref).truncated_above(order);
    }
  }
  return out;
}

FloatVerdict finite_T_verdict(const ManifoldModel& m, const CohomologyData& coh, double T,
                              Weight order, double tol, double tail_eps) {
  check_degree_count(m, coh);
  FloatTPoly p = finite_T_series(m, T, order, tail_eps);
  for (int k = 0; k <= m.dim; ++k) {
    const auto h = to_float(coh.by_degree[static_cast<std::size_t>(k)]);
    check_window_covers(p[k], coh.by_degree[static_cast<std::size_t>(k)], k);
    p[k] -= h;
  }
  auto div = tpoly_div_1_plus_t(p);
  FloatVerdict v;
  v.quotient = div.quotient;
  v.remainder = div.remainder;
  v.divisible = !div.remainder.window_empty() && div.remainder.max_abs_coefficient() <= tol;
  v.nonneg = tpoly_is_nonneg(div.quotient, tol);
  v.side = Side::Minus;
  return v;
}

FloatTPoly finite_T_point_difference(const FixedPoint& p, double T, Weight order,
                                     double tail_eps) {
  if (!(T > 0)) throw std::invalid_argument("finite_T_point_difference: T must be positive");
  if (!(tail_eps > 0) || !(tail_eps < 1))
    throw std::invalid_argument("finite_T_point_difference: tail_eps must be in (0, 1)");
  const int n = static_cast<int>(p.weights.size());
  const unsigned nmask = 1u << p.weights.size();
  Weight min_shift = 0;
  for (int w : p.weights) min_shift += std::min(w, 0);
  const auto e = expand_point(p, T, order - min_shift, tail_eps);

  FloatTPoly diff(n);
  // Surviving term minus its limit: the descending product equals 1 at
  // weight zero exactly, so the subtraction below cancels without roundoff.
  const FloatCharacter tail = e.descending - FloatCharacter::monomial(0, 1.0);
  const unsigned star = [&] {
    unsigned s = 0;
    for (std::size_t k = 0; k < p.weights.size(); ++k)
      if (p.weights[k] > 0) s |= 1u << k;
    return s;
  }();
  diff[std::popcount(star)] +=
      (e.ascending * tail).shifted(e.positive_shift).truncated_above(order);
  const FloatCharacter base = e.ascending * e.descending;
  for (unsigned mask = 0; mask < nmask; ++mask) {
    if (mask == star) continue;
    const double pref =
        std::exp(T * static_cast<double>(finite_T_prefactor_exponent(p.weights, mask)));
    diff[std::popcount(mask)] +=
        base.shifted(mask_shift(p.weights, mask)).scaled(pref).truncated_above(order);
  }
  return diff;
}

double finite_T_distance(const ManifoldModel& m, double T, Weight order, double tail_eps) {
  m.validate();
  FloatTPoly total(m.dim);
  for (const auto& p : m.points) total += finite_T_point_difference(p, T, order, tail_eps);
  return total.max_abs_coefficient();
}

int smallest_weight_magnitude(const ManifoldModel& m) {
  int best = 0;
  for (const auto& p : m.points)
    for (int w : p.weights) {
      const int aw = w > 0 ? w : -w;
      if (best == 0 || aw < best) best = aw;
    }
  return best;
}

}  // namespace eqmorse
